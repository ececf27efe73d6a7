#pragma once

// One-dimensional scanning and root refinement for scalar spectral
// functions.

#include <functional>
#include <vector>

namespace bext {

using ScalarFunction = std::function<double(double)>;

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Thread count: `requested` if > 0, else $BEXT_THREADS if set and valid,
/// else 1.
int resolve_threads(int requested);

/// Evenly spaced points lo, lo + step, ... <= hi (hi included when it lands on
/// the grid up to rounding).
std::vector<double> scan_grid(double lo, double hi, double step);

/// f evaluated at every x. Work is split into contiguous chunks across
/// `threads` workers; the result does not depend on the thread count.
std::vector<double> evaluate_grid(const ScalarFunction& f, const std::vector<double>& xs, int threads = 1);

/// [x[i-1], x[i+1]] around every interior strict local minimum
/// (v[i] < v[i-1], v[i] <= v[i+1]).
std::vector<Bracket> local_minimum_brackets(const std::vector<double>& xs, const std::vector<double>& vs);

/// [x[i], x[i+1]] wherever v changes sign (exact zeros produce a bracket on
/// their left).
std::vector<Bracket> sign_change_brackets(const std::vector<double>& xs, const std::vector<double>& vs);

/// Golden-section search for the minimizer of a unimodal f on [lo, hi];
/// stops when the bracket is narrower than `tol`.
double golden_section_minimize(const ScalarFunction& f, double lo, double hi, double tol);

/// Bisection on a sign-changing bracket down to width `tol`.
double bisect_root(const ScalarFunction& f, Bracket b, double tol);

}  // namespace bext
