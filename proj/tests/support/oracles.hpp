#pragma once

// Closed-form reference values used by the tests. Nothing here calls into
// the library's solvers; each function is derived independently.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

/// Dirichlet Laplacian on [0, 1]: (j pi)^2, j = 1, 2, ...
inline double dirichlet_eigenvalue(int j) { return (j * pi) * (j * pi); }

/// Exact eigenvalue j of the piecewise-linear FEM pencil for the Dirichlet
/// Laplacian on [0, 1] with n equal elements:
/// (6 / h^2) (1 - cos t) / (2 + cos t), t = j pi h.
inline double linear_fem_dirichlet_eigenvalue(int j, int n) {
  const double h = 1.0 / n;
  const double t = j * pi * h;
  return 6.0 / (h * h) * (1.0 - std::cos(t)) / (2.0 + std::cos(t));
}

/// Lowest `count` values of (2 pi n - delta)^2, n in Z, ascending.
inline std::vector<double> quasi_periodic_eigenvalues(double delta, int count) {
  std::vector<double> v;
  for (int n = -count; n <= count; ++n) v.push_back(std::pow(2.0 * pi * n - delta, 2));
  std::sort(v.begin(), v.end());
  v.resize(static_cast<std::size_t>(count));
  return v;
}

/// <e^{-k1 x}, e^{-k2 x}> on [0, inf) divided by the two norms.
inline double exponential_overlap(double k1, double k2) { return 2.0 * std::sqrt(k1 * k2) / (k1 + k2); }

/// Entropy of a two-level state C1 e^{-k1 x} (x) e1 + C2 e^{-k2 x} (x) e2 with
/// level populations p_a = |C_a|^2 / (2 k_a): the reduced density is
/// [[p1, o sqrt(p1 p2)], [o sqrt(p1 p2), p2]] (real amplitudes), o the
/// normalized overlap, with eigenvalues (1 +- sqrt(1 - 4 p1 p2 (1 - o^2))) / 2.
inline double two_exponential_entropy(double c1, double k1, double c2, double k2) {
  double p1 = c1 * c1 / (2.0 * k1);
  double p2 = c2 * c2 / (2.0 * k2);
  const double total = p1 + p2;
  p1 /= total;
  p2 /= total;
  const double o = exponential_overlap(k1, k2);
  const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * p1 * p2 * (1.0 - o * o)));
  double s = 0.0;
  for (double p : {0.5 * (1.0 + disc), 0.5 * (1.0 - disc)}) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

/// Haar-random unitary (QR of a complex Ginibre matrix with the R-diagonal
/// phases divided out).
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

/// Random unitary whose eigenphases lie in [-max_phase, max_phase], so that
/// it stays away from -1 (no Dirichlet directions, bounded Robin matrix).
inline Eigen::MatrixXcd random_unitary_bounded_phase(int n, double max_phase, std::mt19937_64& rng) {
  const Eigen::MatrixXcd v = random_unitary(n, rng);
  std::uniform_real_distribution<double> u(-max_phase, max_phase);
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) d(i) = std::polar(1.0, u(rng));
  return v * d.asDiagonal() * v.adjoint();
}

}  // namespace oracle
