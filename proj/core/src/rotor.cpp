#include "bext/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bext/scan.hpp"

namespace bext {

namespace {

// sin(z)/z, entire.
cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

struct LevelBasis {
  cplx f, df, g, dg;  // cos(kx), its derivative, x sinc(kx), its derivative
};

// Deep in the evanescent regime cos(kx) grows like cosh(qx) and swamps the
// x = 0 rows, so the channel switches to exponentials decaying from each end.
constexpr double kEvanescentSwitch = 4.0;

LevelBasis level_basis(double energy, double lambda, double x) {
  if (lambda - energy > kEvanescentSwitch) {
    const double q = std::sqrt(lambda - energy);
    const double left = std::exp(-q * x);
    const double right = std::exp(-q * (1.0 - x));
    return {left, -q * left, right, q * right};
  }
  const cplx k2 = energy - lambda;
  const cplx k = std::sqrt(k2);
  const cplx s = sinc(k * x);
  const cplx c = std::cos(k * x);
  return {c, -k2 * x * s, x * s, c};
}

// Boundary traces (phi, phi_dot) of every basis column, rows in SpinMajor order.
void boundary_maps(double energy, const MatchingProblem& p, CMatrix& phi, CMatrix& phi_dot) {
  const int n = p.n_levels();
  phi = CMatrix::Zero(2 * n, 2 * n);
  phi_dot = CMatrix::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    const double lambda = p.bulk_eigenvalues()[static_cast<std::size_t>(a)];
    for (int point = 0; point < 2; ++point) {
      const double x = static_cast<double>(point);
      const double outward = point == 0 ? -1.0 : 1.0;
      const LevelBasis b = level_basis(energy, lambda, x);
      const int row = 2 * a + point;
      phi(row, 2 * a) = b.f;
      phi(row, 2 * a + 1) = b.g;
      phi_dot(row, 2 * a) = outward * b.df;
      phi_dot(row, 2 * a + 1) = outward * b.dg;
    }
  }
}

}  // namespace

MatchingProblem::MatchingProblem(std::vector<double> bulk_eigenvalues, BoundaryUnitary boundary)
    : bulk_(std::move(bulk_eigenvalues)), boundary_(std::move(boundary)) {
  if (bulk_.empty()) throw std::invalid_argument("matching problem needs at least one level");
  if (boundary_.dim() != 2 * static_cast<int>(bulk_.size())) {
    throw std::invalid_argument("interval boundary unitary must have dimension 2 x n_levels");
  }
}

MatchingProblem MatchingProblem::rotor(double mu, BoundaryUnitary boundary) {
  if (!(mu >= 0.0)) throw std::invalid_argument("coupling mu must be >= 0");
  return MatchingProblem({mu, -mu}, std::move(boundary));
}

CMatrix diagonal_spin_unitary(double alpha) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, alpha);
  u(1, 1) = std::polar(1.0, -alpha);
  return u;
}

CMatrix antidiagonal_spin_unitary(double beta) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 1) = std::polar(1.0, beta);
  u(1, 0) = std::polar(1.0, -beta);
  return u;
}

BoundaryUnitary rotor_boundary(double delta, SpinFamily family, double angle) {
  const BoundaryUnitary ua = make_quasi_periodic(delta);
  switch (family) {
    case SpinFamily::Identity:
      return tensor_boundary(ua, CMatrix::Identity(2, 2));
    case SpinFamily::Diagonal:
      return tensor_boundary(ua, diagonal_spin_unitary(angle));
    case SpinFamily::AntiDiagonal:
      return tensor_boundary(ua, antidiagonal_spin_unitary(angle));
  }
  throw std::invalid_argument("unknown spin family");
}

CMatrix matching_matrix(double energy, const MatchingProblem& problem) {
  CMatrix phi;
  CMatrix phi_dot;
  boundary_maps(energy, problem, phi, phi_dot);
  const CMatrix t_minus = phi - kI * phi_dot;
  const CMatrix t_plus = phi + kI * phi_dot;
  return t_minus - problem.boundary().matrix() * t_plus;
}

double spectral_indicator(double energy, const MatchingProblem& problem) {
  const CMatrix m = matching_matrix(energy, problem);
  const RVector s = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  return s(s.size() - 1);
}

namespace {

struct RootInfo {
  double energy;
  int nullity;
};

std::optional<RootInfo> refine_root(const MatchingProblem& problem, Bracket b, const ScanOptions& opt) {
  const auto f = [&problem](double e) { return spectral_indicator(e, problem); };
  const double e = golden_section_minimize(f, b.lo, b.hi, opt.refine_tol);
  const RVector s = Eigen::JacobiSVD<CMatrix>(matching_matrix(e, problem)).singularValues();
  const double cutoff = opt.nullity_tol * std::max(1.0, s(0));
  int nullity = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) < cutoff) ++nullity;
  }
  if (nullity == 0) return std::nullopt;
  return RootInfo{e, nullity};
}

}  // namespace

SpectralResult find_eigenvalues(const MatchingProblem& problem, double e_min, double e_max, int k_max,
                                const ScanOptions& options) {
  if (!(e_min < e_max)) throw std::invalid_argument("scan window needs e_min < e_max");
  const auto xs = scan_grid(e_min, e_max, options.step);
  const auto f = [&problem](double e) { return spectral_indicator(e, problem); };
  const auto vs = evaluate_grid(f, xs, resolve_threads(options.threads));

  SpectralResult out;
  for (const Bracket& b : local_minimum_brackets(xs, vs)) {
    const auto root = refine_root(problem, b, options);
    if (!root) continue;
    if (!out.eigenvalues.empty() && std::abs(root->energy - out.eigenvalues.back()) < 1e-8) {
      out.multiplicities.back() = std::max(out.multiplicities.back(), root->nullity);
      continue;
    }
    out.eigenvalues.push_back(root->energy);
    out.multiplicities.push_back(root->nullity);
    if (k_max > 0 && static_cast<int>(out.eigenvalues.size()) >= k_max) break;
  }
  return out;
}

ModeValue evaluate_mode(const MatchingProblem& problem, double energy, const CVector& coefficients, double x) {
  const int n = problem.n_levels();
  ModeValue mv{CVector::Zero(n), CVector::Zero(n)};
  for (int a = 0; a < n; ++a) {
    const LevelBasis b = level_basis(energy, problem.bulk_eigenvalues()[static_cast<std::size_t>(a)], x);
    mv.value(a) = coefficients(2 * a) * b.f + coefficients(2 * a + 1) * b.g;
    mv.derivative(a) = coefficients(2 * a) * b.df + coefficients(2 * a + 1) * b.dg;
  }
  return mv;
}

double boundary_residual(const MatchingProblem& problem, double energy, const CVector& coefficients) {
  CMatrix phi;
  CMatrix phi_dot;
  boundary_maps(energy, problem, phi, phi_dot);
  const CVector bv = phi * coefficients;
  const CVector bd = phi_dot * coefficients;
  const CVector r = (bv - kI * bd) - problem.boundary().matrix() * (bv + kI * bd);
  return r.cwiseAbs().maxCoeff() / coefficients.norm();
}

std::vector<MatchedMode> assemble_eigenspace(double energy, const MatchingProblem& problem, int m,
                                             int multiplicity, double nullity_tol) {
  const CMatrix mat = matching_matrix(energy, problem);
  Eigen::JacobiSVD<CMatrix> svd(mat, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const auto dim = s.size();
  const double cutoff = nullity_tol * std::max(1.0, s(0));
  if (!(s(dim - 1) < cutoff)) throw std::domain_error("energy is not an eigenvalue to tolerance");
  int nullity = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (s(i) < cutoff) ++nullity;
  }
  const int count = multiplicity > 0 ? std::min<int>(multiplicity, static_cast<int>(dim)) : nullity;

  const std::vector<double> grid = uniform_grid(1.0, m);
  std::vector<MatchedMode> modes;
  for (int j = 0; j < count; ++j) {
    MatchedMode mode;
    mode.energy = energy;
    mode.coefficients = svd.matrixV().col(dim - 1 - j);
    mode.state.grid = grid;
    mode.state.values = CMatrix(m, problem.n_levels());
    for (int i = 0; i < m; ++i) {
      mode.state.values.row(i) = evaluate_mode(problem, energy, mode.coefficients, grid[static_cast<std::size_t>(i)])
                                     .value.transpose();
    }
    // Gram-Schmidt against the previous modes in the sampled L2 product.
    for (const auto& prev : modes) {
      const cplx ov = inner_product(prev.state, mode.state);
      mode.state.values -= ov * prev.state.values;
      mode.coefficients -= ov * prev.coefficients;
    }
    const double nrm = l2_norm(mode.state);
    mode.state.values /= nrm;
    mode.coefficients /= nrm;
    const HybridState fixed = fix_global_phase(mode.state);
    if (mode.state.values.size() > 0) {
      Eigen::Index r = 0;
      Eigen::Index c = 0;
      mode.state.values.cwiseAbs().maxCoeff(&r, &c);
      mode.coefficients *= fixed.values(r, c) / mode.state.values(r, c);
    }
    mode.state = fixed;
    modes.push_back(std::move(mode));
  }
  return modes;
}

HybridState assemble_eigenfunction(double energy, const MatchingProblem& problem, int m, double nullity_tol) {
  return assemble_eigenspace(energy, problem, m, 1, nullity_tol).front().state;
}

SpectralResult solve_spectrum(const MatchingProblem& problem, double e_min, double e_max, int k_max, int m,
                              const ScanOptions& options) {
  SpectralResult out = find_eigenvalues(problem, e_min, e_max, k_max, options);
  for (std::size_t b = 0; b < out.eigenvalues.size(); ++b) {
    auto modes = assemble_eigenspace(out.eigenvalues[b], problem, m, out.multiplicities[b], options.nullity_tol);
    for (auto& mode : modes) {
      out.eigenfunctions.push_back(std::move(mode.state));
      out.block_of.push_back(b);
    }
  }
  return out;
}

SpectralResult find_lowest_eigenvalues(const MatchingProblem& problem, std::size_t count,
                                       const ScanOptions& options) {
  if (count == 0) throw std::invalid_argument("count must be positive");
  const double lo = lower_spectral_bound(problem) - 1.0;
  for (double width = 64.0; width <= 1e6; width *= 2.0) {
    SpectralResult r = find_eigenvalues(problem, lo, lo + width, 0, options);
    // The top root of a window may be a degenerate block cut by the window
    // edge; only trust it once a larger root exists above it.
    if (r.eigenvalues.size() >= 2) {
      SpectralResult trusted = r;
      trusted.eigenvalues.pop_back();
      trusted.multiplicities.pop_back();
      if (trusted.total_multiplicity() >= count) return trusted.lowest_blocks(count);
    }
  }
  throw std::runtime_error("no eigenvalues found below 1e6");
}

SpectralResult solve_lowest_spectrum(const MatchingProblem& problem, std::size_t count, int m,
                                     const ScanOptions& options) {
  SpectralResult out = find_lowest_eigenvalues(problem, count, options);
  for (std::size_t b = 0; b < out.eigenvalues.size(); ++b) {
    auto modes = assemble_eigenspace(out.eigenvalues[b], problem, m, out.multiplicities[b], options.nullity_tol);
    for (auto& mode : modes) {
      out.eigenfunctions.push_back(std::move(mode.state));
      out.block_of.push_back(b);
    }
  }
  return out;
}

double lower_spectral_bound(const MatchingProblem& problem) {
  const RobinData robin = cayley_to_robin(problem.boundary());
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(robin.robin_matrix).eigenvalues();
  const double a = std::max(0.0, ev.maxCoeff());
  const double lmin = *std::min_element(problem.bulk_eigenvalues().begin(), problem.bulk_eigenvalues().end());
  return lmin - (a * a + 2.0 * a);
}

double sigma_beta_closed_form(double energy, double mu, double delta) {
  const cplx up = std::sqrt(cplx(energy - mu));
  const cplx dn = std::sqrt(cplx(energy + mu));
  const cplx root = std::sqrt(cplx(energy * energy - mu * mu));
  const cplx z = root * std::cos(up) * std::cos(dn) - energy * std::sin(up) * std::sin(dn) -
                 up * dn * std::cos(2.0 * delta);
  return z.real() + z.imag();
}

std::vector<double> sigma_beta_roots(double mu, double delta, double e_min, double e_max, double step) {
  const auto f = [mu, delta](double e) { return sigma_beta_closed_form(e, mu, delta); };
  const auto xs = scan_grid(e_min, e_max, step);
  std::vector<double> vs(xs.size());
  std::transform(xs.begin(), xs.end(), vs.begin(), f);
  // Stretches where the expression vanishes identically (mu = 0, E < 0) only
  // carry rounding noise; brackets must rise above it at both ends.
  const auto resolved = [](double v, double e) { return std::abs(v) > 1e-8 * (1.0 + std::abs(e)); };
  const auto ends_resolved = [&](const Bracket& b) { return resolved(f(b.lo), b.lo) && resolved(f(b.hi), b.hi); };

  std::vector<double> roots;
  for (const Bracket& b : sign_change_brackets(xs, vs)) {
    if (ends_resolved(b)) roots.push_back(bisect_root(f, b, 1e-13));
  }
  // Touching zeros: the derivative changes sign at the extremum of f.
  std::vector<double> mags(vs.size());
  std::transform(vs.begin(), vs.end(), mags.begin(), [](double v) { return std::abs(v); });
  for (const Bracket& b : local_minimum_brackets(xs, mags)) {
    if (!ends_resolved(b)) continue;
    const double h = 1e-5;
    const auto df = [&f, h](double e) { return f(e + h) - f(e - h); };
    if (df(b.lo) * df(b.hi) > 0.0) continue;
    const double r = bisect_root(df, b, 1e-13);
    if (!resolved(f(r), r)) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (std::abs(r - mu) < 1e-6 || std::abs(r + mu) < 1e-6) continue;
    if (!out.empty() && std::abs(r - out.back()) < 1e-8) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace bext
