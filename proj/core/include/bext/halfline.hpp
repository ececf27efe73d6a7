#pragma once

// Closed-form point spectrum of the half-line (x) n-level system with
// boundary unitaries diagonal in the H_B eigenbasis.
//
// Conventions (also reported in every CLI payload):
//  * kinetic term -d^2/dx^2;
//  * half angles throughout: a level with boundary angle alpha has Robin
//    slope tan(alpha/2), and the sweep parameter is s = alpha_1 / 2;
//  * bound-state sign: level a binds iff tan(alpha_a/2) > 0, with decay rate
//    kappa_a = tan(alpha_a/2) and E = lambda_a - tan^2(alpha_a/2).
//
// The last convention is the opposite orientation of the Cayley map in
// boundary.hpp (U = e^{i alpha} gives phi_dot = -tan(alpha/2) phi). The
// boundary unitary realizing an angle in this module's convention is
// therefore e^{-i alpha}; use bound_state_boundary() whenever a half-line
// angle is handed to the FEM solver.

#include <array>
#include <optional>
#include <vector>

#include "bext/boundary.hpp"
#include "bext/spectrum.hpp"

namespace bext {

/// lambda - tan^2(alpha/2) if tan(alpha/2) > 0, otherwise no L^2 bound state
/// (alpha = 0 is Neumann, alpha = pi Dirichlet). Requires alpha in [0, 2 pi).
std::optional<double> bound_state_energy(double lambda, double alpha);

/// e^{-i alpha}: the unitary whose Robin law is phi_dot = +tan(alpha/2) phi.
BoundaryUnitary bound_state_boundary(double alpha);
/// diag(e^{-i alpha_a}) for a half-line with one angle per level.
BoundaryUnitary bound_state_boundary(const std::vector<double>& alphas);

struct BoundStateSolution {
  double energy = 0.0;
  std::vector<double> decay_rates;  ///< kappa_a > 0, one per populated level
  std::vector<cplx> amplitudes;     ///< C_a, one per populated level
  std::vector<int> populated_levels;

  /// sum_a |C_a|^2 / (2 kappa_a); equals 1 for normalized solutions.
  double norm_squared() const;
  /// Phi_a(x) = C_a e^{-kappa_a x} on `grid`; unpopulated levels are zero.
  HybridState sample(const std::vector<double>& grid, int n_levels) const;
  /// rho_B[a][b] = int Phi_a conj(Phi_b) dx = C_a conj(C_b) / (kappa_a + kappa_b).
  CMatrix reduced_density(int n_levels) const;
};

struct CompatPoint {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

struct CompatCurve {
  double sigma = 0.0;
  std::vector<CompatPoint> points;
};

/// tan^2(alpha1/2) - tan^2(alpha2/2) - sigma.
double compat_residual(double sigma, const CompatPoint& p);

/// Largest tan^2(alpha2/2) sampled by default. Beyond it a double-precision
/// angle near pi no longer resolves the curve relation to 1e-10.
inline constexpr double kDefaultMaxBinding = 100.0;

/// Samples s = alpha1/2 uniformly on [arctan sqrt(sigma),
/// arctan sqrt(sigma + max_binding)] and sets
/// alpha2 = 2 arctan sqrt(tan^2 s - sigma). The first point is (2 arctan
/// sqrt(sigma), 0). Throws std::invalid_argument for sigma <= 0,
/// n_samples < 2 or max_binding <= 0.
CompatCurve compat_curve(double sigma, int n_samples, double max_binding = kDefaultMaxBinding);

/// The four mirror images (alpha1, alpha2), (2pi - alpha1, alpha2),
/// (alpha1, 2pi - alpha2), (2pi - alpha1, 2pi - alpha2) used to draw the
/// curve periodically on the torus [0, 2pi)^2.
std::array<CompatPoint, 4> torus_images(const CompatPoint& p);

/// Two-level bound state on the compatibility curve at s = alpha1/2:
/// kappa_1 = tan s, kappa_2 = sqrt(tan^2 s - sigma), amplitudes proportional
/// to (c1, c2) and normalized, E = lambda2 + sigma - tan^2 s. At the threshold
/// tan^2 s = sigma only level 0 is populated (c2 is dropped). Throws
/// std::domain_error("below compatibility threshold") when tan^2 s < sigma.
BoundStateSolution sweep_state(double s, double sigma, cplx c1, cplx c2, double lambda2 = 0.0);

/// Chain alpha_l = 2 arctan sqrt(tan^2(alpha_1/2) - Lambda_1 + Lambda_l) making
/// all N levels degenerate at E = Lambda_l - tan^2(alpha_l/2). `big_lambdas`
/// must be descending. Throws std::domain_error naming the first infeasible
/// level.
std::vector<double> multipartite_curve(const std::vector<double>& big_lambdas, double alpha_1);

}  // namespace bext
