#pragma once

// Exact plane-wave matching for -d^2/dx^2 (x) 1 + 1 (x) diag(lambda) on [0, 1]
// with an arbitrary boundary unitary of dimension 2 * n_levels.
//
// On level a the general solution of -Phi'' = (E - lambda_a) Phi is written in
// the basis {cos(kappa x), sin(kappa x)/kappa}, kappa^2 = E - lambda_a. It
// spans the same space as A e^{i kappa x} + B e^{-i kappa x} but stays regular
// at kappa = 0 (it becomes {1, x}), so E = lambda_a needs no special casing.
// When lambda_a - E > 4 the level uses {e^{-q x}, e^{-q (1 - x)}}, q^2 = lambda_a - E,
// which keeps the matching matrix well conditioned for deep bound states.
// Coefficient vectors are ordered (f_0, g_0, f_1, g_1, ...), level-major like
// boundary vectors.
//
// The planar rotor (x) spin system is the two-level case lambda = (mu, -mu):
// level 0 is spin up (H_B = +mu), level 1 spin down.

#include <vector>

#include "bext/boundary.hpp"
#include "bext/spectrum.hpp"

namespace bext {

class MatchingProblem {
 public:
  /// Requires boundary.dim() == 2 * bulk_eigenvalues.size().
  MatchingProblem(std::vector<double> bulk_eigenvalues, BoundaryUnitary boundary);

  /// Rotor (x) spin with H_B = mu sigma_z, mu >= 0.
  static MatchingProblem rotor(double mu, BoundaryUnitary boundary);

  int n_levels() const { return static_cast<int>(bulk_.size()); }
  const std::vector<double>& bulk_eigenvalues() const { return bulk_; }
  const BoundaryUnitary& boundary() const { return boundary_; }

 private:
  std::vector<double> bulk_;
  BoundaryUnitary boundary_;
};

enum class SpinFamily { Identity, Diagonal, AntiDiagonal };

/// diag(e^{i alpha}, e^{-i alpha}).
CMatrix diagonal_spin_unitary(double alpha);
/// [[0, e^{i beta}], [e^{-i beta}, 0]].
CMatrix antidiagonal_spin_unitary(double beta);
/// U_{A,delta} (x) U_B for the chosen level family; `angle` is alpha or beta
/// (ignored for Identity).
BoundaryUnitary rotor_boundary(double delta, SpinFamily family, double angle);

/// M(E) = T_minus(E) - U T_plus(E): T_minus/T_plus send coefficients to the
/// boundary vectors phi - i phi_dot and phi + i phi_dot. E is an eigenvalue
/// iff M(E) has a nontrivial null space.
CMatrix matching_matrix(double energy, const MatchingProblem& problem);

/// Smallest singular value of M(E).
double spectral_indicator(double energy, const MatchingProblem& problem);

struct ScanOptions {
  double step = 0.01;          ///< grid step of the indicator scan
  double refine_tol = 1e-10;   ///< golden-section bracket width
  double nullity_tol = 1e-7;   ///< singular values below nullity_tol * ||M|| count as null
  int threads = 0;             ///< 0: $BEXT_THREADS or 1
};

/// Scans the indicator on [e_min, e_max], brackets local minima, refines
/// them by golden section and keeps the genuine zeros. Returns at most k_max
/// distinct eigenvalues (all of them when k_max <= 0) with multiplicities;
/// eigenfunctions are left empty.
SpectralResult find_eigenvalues(const MatchingProblem& problem, double e_min, double e_max, int k_max,
                                const ScanOptions& options = {});

/// Lowest eigenvalues up to a total multiplicity of at least `count`
/// (whole degenerate blocks are kept). The window starts just below
/// lower_spectral_bound and doubles in width until enough roots are found;
/// throws std::runtime_error if none are found below 1e6.
SpectralResult find_lowest_eigenvalues(const MatchingProblem& problem, std::size_t count,
                                       const ScanOptions& options = {});

struct MatchedMode {
  double energy = 0.0;
  CVector coefficients;  ///< basis coefficients, see header comment
  HybridState state;     ///< samples on [0, 1], L2-normalized, phase fixed
};

/// Orthonormal eigenfunctions for the null space of M(E). `multiplicity`
/// <= 0 uses the numerical nullity. Throws std::domain_error if E is not an
/// eigenvalue to tolerance (indicator >= nullity_tol * ||M||).
std::vector<MatchedMode> assemble_eigenspace(double energy, const MatchingProblem& problem, int m,
                                             int multiplicity = 0, double nullity_tol = 1e-7);

/// The eigenfunction belonging to the smallest singular value of M(E).
HybridState assemble_eigenfunction(double energy, const MatchingProblem& problem, int m,
                                   double nullity_tol = 1e-7);

/// find_eigenvalues followed by assemble_eigenspace for every root.
SpectralResult solve_spectrum(const MatchingProblem& problem, double e_min, double e_max, int k_max, int m,
                              const ScanOptions& options = {});

/// find_lowest_eigenvalues with eigenfunctions on m grid points.
SpectralResult solve_lowest_spectrum(const MatchingProblem& problem, std::size_t count, int m,
                                     const ScanOptions& options = {});

struct ModeValue {
  CVector value;       ///< Phi(x), one entry per level
  CVector derivative;  ///< Phi'(x)
};

/// Evaluates the solution with the given coefficients at any real x.
ModeValue evaluate_mode(const MatchingProblem& problem, double energy, const CVector& coefficients, double x);

/// max |phi - i phi_dot - U (phi + i phi_dot)| / ||coefficients|| for the
/// analytic mode.
double boundary_residual(const MatchingProblem& problem, double energy, const CVector& coefficients);

/// Lower bound min(lambda) - (a^2 + 2a), a = max(0, largest Robin eigenvalue),
/// from a trace inequality on [0, 1/2] and [1/2, 1]; every eigenvalue lies
/// above it.
double lower_spectral_bound(const MatchingProblem& problem);

/// Closed-form spectral function of the anti-diagonal family (independent of
/// beta):
///   sqrt(E^2 - mu^2) cos sqrt(E - mu) cos sqrt(E + mu)
///     - E sin sqrt(E - mu) sin sqrt(E + mu) - sqrt(E - mu) sqrt(E + mu) cos 2 delta
/// with principal complex roots. The value is real for |E| > mu and purely
/// imaginary for |E| < mu; the nonzero component is returned.
double sigma_beta_closed_form(double energy, double mu, double delta);

/// Sign changes of sigma_beta_closed_form on [e_min, e_max], bisected to
/// 1e-13. Its trivial zeros at E = +-mu (the sqrt prefactor vanishes there for
/// every delta) are dropped.
std::vector<double> sigma_beta_roots(double mu, double delta, double e_min, double e_max, double step = 0.01);

}  // namespace bext
