#include "bext/halfline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bext {

std::optional<double> bound_state_energy(double lambda, double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0 * kPi)) {
    throw std::invalid_argument("boundary angle must lie in [0, 2 pi)");
  }
  if (std::abs(alpha - kPi) < 1e-12) return std::nullopt;  // Dirichlet
  const double t = std::tan(alpha / 2.0);
  if (!(t > 0.0)) return std::nullopt;
  return lambda - t * t;
}

BoundaryUnitary bound_state_boundary(double alpha) { return make_phase(-alpha); }

BoundaryUnitary bound_state_boundary(const std::vector<double>& alphas) {
  std::vector<double> phases;
  phases.reserve(alphas.size());
  for (double a : alphas) phases.push_back(-a);
  return make_diagonal(phases);
}

double BoundStateSolution::norm_squared() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    acc += std::norm(amplitudes[i]) / (2.0 * decay_rates[i]);
  }
  return acc;
}

HybridState BoundStateSolution::sample(const std::vector<double>& grid, int n_levels) const {
  HybridState s;
  s.grid = grid;
  s.values = CMatrix::Zero(static_cast<Eigen::Index>(grid.size()), n_levels);
  for (std::size_t p = 0; p < populated_levels.size(); ++p) {
    const int level = populated_levels[p];
    if (level < 0 || level >= n_levels) throw std::out_of_range("populated level outside level space");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s.values(static_cast<Eigen::Index>(i), level) = amplitudes[p] * std::exp(-decay_rates[p] * grid[i]);
    }
  }
  return s;
}

CMatrix BoundStateSolution::reduced_density(int n_levels) const {
  CMatrix rho = CMatrix::Zero(n_levels, n_levels);
  for (std::size_t p = 0; p < populated_levels.size(); ++p) {
    for (std::size_t q = 0; q < populated_levels.size(); ++q) {
      rho(populated_levels[p], populated_levels[q]) =
          amplitudes[p] * std::conj(amplitudes[q]) / (decay_rates[p] + decay_rates[q]);
    }
  }
  return rho;
}

double compat_residual(double sigma, const CompatPoint& p) {
  const double t1 = std::tan(p.alpha1 / 2.0);
  const double t2 = std::tan(p.alpha2 / 2.0);
  return t1 * t1 - t2 * t2 - sigma;
}

CompatCurve compat_curve(double sigma, int n_samples, double max_binding) {
  if (!(sigma > 0.0)) throw std::invalid_argument("spectral gap sigma must be positive");
  if (n_samples < 2) throw std::invalid_argument("compat_curve needs at least 2 samples");
  if (!(max_binding > 0.0)) throw std::invalid_argument("max_binding must be positive");

  const double s_lo = std::atan(std::sqrt(sigma));
  const double s_hi = std::atan(std::sqrt(sigma + max_binding));
  CompatCurve curve{sigma, {}};
  curve.points.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (n_samples - 1);
    const double t = std::tan(s);
    const double rest = i == 0 ? 0.0 : std::max(0.0, t * t - sigma);
    curve.points.push_back({2.0 * s, 2.0 * std::atan(std::sqrt(rest))});
  }
  return curve;
}

std::array<CompatPoint, 4> torus_images(const CompatPoint& p) {
  const double two_pi = 2.0 * kPi;
  auto wrap = [two_pi](double a) { return a == 0.0 ? 0.0 : two_pi - a; };
  return {{{p.alpha1, p.alpha2},
           {wrap(p.alpha1), p.alpha2},
           {p.alpha1, wrap(p.alpha2)},
           {wrap(p.alpha1), wrap(p.alpha2)}}};
}

BoundStateSolution sweep_state(double s, double sigma, cplx c1, cplx c2, double lambda2) {
  if (!(s > 0.0 && s < kPi / 2.0)) throw std::invalid_argument("sweep parameter s must lie in (0, pi/2)");
  if (!(sigma > 0.0)) throw std::invalid_argument("spectral gap sigma must be positive");
  if (c1 == 0.0 && c2 == 0.0) throw std::invalid_argument("amplitudes (c1, c2) must not both vanish");

  const double t = std::tan(s);
  const double excess = t * t - sigma;
  const double tol = 1e-12 * std::max(1.0, sigma);
  if (excess < -tol) throw std::domain_error("below compatibility threshold");

  BoundStateSolution out;
  out.energy = lambda2 + sigma - t * t;
  out.decay_rates.push_back(t);
  out.amplitudes.push_back(c1);
  out.populated_levels.push_back(0);
  if (excess > tol && c2 != 0.0) {
    out.decay_rates.push_back(std::sqrt(excess));
    out.amplitudes.push_back(c2);
    out.populated_levels.push_back(1);
  }
  if (out.amplitudes.size() == 1 && c1 == 0.0) {
    // Only the non-normalizable level carries weight at the threshold.
    throw std::domain_error("state at the compatibility threshold needs c1 != 0");
  }
  const double scale = 1.0 / std::sqrt(out.norm_squared());
  for (auto& c : out.amplitudes) c *= scale;
  return out;
}

std::vector<double> multipartite_curve(const std::vector<double>& big_lambdas, double alpha_1) {
  if (big_lambdas.empty()) throw std::invalid_argument("multipartite_curve needs at least one level");
  for (std::size_t l = 1; l < big_lambdas.size(); ++l) {
    if (big_lambdas[l] > big_lambdas[l - 1]) {
      throw std::invalid_argument("bulk eigenvalues must be descending");
    }
  }
  const double t1 = std::tan(alpha_1 / 2.0);
  const double t1_sq = t1 * t1;
  std::vector<double> alphas;
  alphas.reserve(big_lambdas.size());
  alphas.push_back(alpha_1);
  for (std::size_t l = 1; l < big_lambdas.size(); ++l) {
    const double tl_sq = t1_sq - (big_lambdas.front() - big_lambdas[l]);
    if (tl_sq < 0.0) {
      throw std::domain_error("alpha_1 infeasible: tan^2(alpha_l/2) < 0 at level " + std::to_string(l + 1));
    }
    alphas.push_back(2.0 * std::atan(std::sqrt(tl_sq)));
  }
  return alphas;
}

}  // namespace bext
