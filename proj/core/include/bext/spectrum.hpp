#pragma once

// Sampled vector-valued wavefunctions Phi: [0, L] -> C^n and spectra built
// from them. Integrals use the trapezoid rule on the stored grid.

#include <cstddef>
#include <vector>

#include "bext/types.hpp"

namespace bext {

struct HybridState {
  std::vector<double> grid;  ///< ascending sample points
  CMatrix values;            ///< grid.size() x n_levels; row i is Phi(grid[i])

  int n_levels() const { return static_cast<int>(values.cols()); }
  std::size_t size() const { return grid.size(); }
};

/// Trapezoid weights for a (possibly non-uniform) ascending grid.
RVector trapezoid_weights(const std::vector<double>& grid);

/// <a, b> = int sum_k conj(a_k) b_k dx. Grids must coincide.
cplx inner_product(const HybridState& a, const HybridState& b);
double l2_norm(const HybridState& s);

/// Returns s / ||s||; throws std::domain_error on a zero-norm state.
HybridState normalized(const HybridState& s);

/// Multiplies by a phase so that the sample of largest modulus is real
/// positive.
HybridState fix_global_phase(const HybridState& s);

/// Uniform grid with m >= 2 points on [0, length].
std::vector<double> uniform_grid(double length, int m);

/// Eigenvalues with multiplicities and sampled eigenfunctions, grouped by
/// eigenvalue: eigenfunction j belongs to eigenvalues[block_of[j]].
struct SpectralResult {
  std::vector<double> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<HybridState> eigenfunctions;
  std::vector<std::size_t> block_of;

  std::size_t total_multiplicity() const;
  /// Eigenfunction energies in flattened order.
  std::vector<double> eigenfunction_energies() const;
  /// Every eigenvalue repeated by its multiplicity, ascending.
  std::vector<double> expanded_eigenvalues() const;
  /// Keeps whole eigenvalue blocks until at least `count` eigenfunctions are
  /// retained (or the result is exhausted).
  SpectralResult lowest_blocks(std::size_t count) const;
};

}  // namespace bext
