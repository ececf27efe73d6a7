#include "bext/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace bext {

RVector trapezoid_weights(const std::vector<double>& grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  RVector w = RVector::Zero(m);
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    const double h = grid[static_cast<std::size_t>(i + 1)] - grid[static_cast<std::size_t>(i)];
    w(i) += 0.5 * h;
    w(i + 1) += 0.5 * h;
  }
  return w;
}

cplx inner_product(const HybridState& a, const HybridState& b) {
  if (a.grid.size() != b.grid.size() || a.values.cols() != b.values.cols()) {
    throw std::invalid_argument("inner_product: states live on different grids or level spaces");
  }
  const RVector w = trapezoid_weights(a.grid);
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i < a.values.rows(); ++i) {
    acc += w(i) * a.values.row(i).dot(b.values.row(i));
  }
  return acc;
}

double l2_norm(const HybridState& s) {
  const RVector w = trapezoid_weights(s.grid);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.values.rows(); ++i) acc += w(i) * s.values.row(i).squaredNorm();
  return std::sqrt(acc);
}

HybridState normalized(const HybridState& s) {
  const double n = l2_norm(s);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("cannot normalize a zero-norm state");
  HybridState out = s;
  out.values /= n;
  return out;
}

HybridState fix_global_phase(const HybridState& s) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  if (s.values.size() == 0) return s;
  const double peak = s.values.cwiseAbs().maxCoeff(&r, &c);
  if (peak == 0.0) return s;
  HybridState out = s;
  out.values *= std::abs(s.values(r, c)) / s.values(r, c);
  return out;
}

std::vector<double> uniform_grid(double length, int m) {
  if (m < 2 || !(length > 0.0)) throw std::invalid_argument("grid needs m >= 2 and length > 0");
  std::vector<double> g(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = length * i / (m - 1);
  return g;
}

std::size_t SpectralResult::total_multiplicity() const {
  std::size_t n = 0;
  for (int m : multiplicities) n += static_cast<std::size_t>(m);
  return n;
}

std::vector<double> SpectralResult::eigenfunction_energies() const {
  std::vector<double> e;
  e.reserve(block_of.size());
  for (std::size_t b : block_of) e.push_back(eigenvalues[b]);
  return e;
}

std::vector<double> SpectralResult::expanded_eigenvalues() const {
  std::vector<double> e;
  for (std::size_t b = 0; b < eigenvalues.size(); ++b) e.insert(e.end(), static_cast<std::size_t>(multiplicities[b]), eigenvalues[b]);
  return e;
}

SpectralResult SpectralResult::lowest_blocks(std::size_t count) const {
  SpectralResult out;
  std::size_t kept = 0;
  for (std::size_t b = 0; b < eigenvalues.size() && kept < count; ++b) {
    out.eigenvalues.push_back(eigenvalues[b]);
    out.multiplicities.push_back(multiplicities[b]);
    kept += static_cast<std::size_t>(multiplicities[b]);
  }
  for (std::size_t j = 0; j < eigenfunctions.size(); ++j) {
    if (block_of[j] < out.eigenvalues.size()) {
      out.eigenfunctions.push_back(eigenfunctions[j]);
      out.block_of.push_back(block_of[j]);
    }
  }
  return out;
}

}  // namespace bext
