#include "bext/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bext {

CMatrix reduced_density(const HybridState& state) {
  const RVector w = trapezoid_weights(state.grid);
  // rho = V^T W conj(V): rho(a, b) = sum_i w_i V(i, a) conj(V(i, b)).
  const CMatrix rho = state.values.transpose() * w.asDiagonal() * state.values.conjugate();
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw std::domain_error("cannot form the reduced density of a zero-norm state");
  return rho / tr;
}

double von_neumann_entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

EntanglementReport entanglement_from_density(const CMatrix& rho, double threshold) {
  EntanglementReport out;
  out.reduced_density = 0.5 * (rho + rho.adjoint());
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(out.reduced_density, Eigen::EigenvaluesOnly).eigenvalues();
  double total = 0.0;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    const double p = std::max(0.0, ev(i));
    out.schmidt_coefficients.push_back(p);
    total += p;
  }
  if (!(total > 0.0)) throw std::domain_error("density matrix has no positive weight");
  for (double& p : out.schmidt_coefficients) p /= total;
  out.entropy = von_neumann_entropy(out.schmidt_coefficients);
  out.separable = out.entropy < threshold;
  return out;
}

EntanglementReport entanglement_entropy(const HybridState& state, double threshold) {
  return entanglement_from_density(reduced_density(state), threshold);
}

SpectralResult canonicalize_degenerate_blocks(const SpectralResult& result) {
  SpectralResult out = result;
  const std::size_t total = result.eigenfunctions.size();
  std::size_t start = 0;
  while (start < total) {
    std::size_t end = start + 1;
    while (end < total && result.block_of[end] == result.block_of[start]) ++end;
    const auto d = static_cast<Eigen::Index>(end - start);
    if (d > 1) {
      const HybridState& first = result.eigenfunctions[start];
      const RVector w = trapezoid_weights(first.grid);
      const int n_levels = first.n_levels();
      CMatrix h = CMatrix::Zero(d, d);
      for (int a = 0; a < n_levels; ++a) {
        CMatrix cols(static_cast<Eigen::Index>(first.size()), d);
        for (Eigen::Index j = 0; j < d; ++j) cols.col(j) = result.eigenfunctions[start + static_cast<std::size_t>(j)].values.col(a);
        // Distinct, incommensurate weights per level.
        const double weight = 1.0 + 0.7071067811865476 * a + 0.3183098861837907 * a * a;
        h += weight * (cols.adjoint() * w.asDiagonal() * cols);
      }
      const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
      for (Eigen::Index i = 0; i < d; ++i) {
        HybridState s{first.grid, CMatrix::Zero(first.values.rows(), n_levels)};
        for (Eigen::Index j = 0; j < d; ++j) {
          s.values += es.eigenvectors()(j, i) * result.eigenfunctions[start + static_cast<std::size_t>(j)].values;
        }
        out.eigenfunctions[start + static_cast<std::size_t>(i)] = fix_global_phase(normalized(s));
      }
    }
    start = end;
  }
  return out;
}

namespace {

struct ProductFactor {
  CVector level;    // unit vector in C^n, phase fixed
  CVector profile;  // sqrt(w) * psi, unit Euclidean norm
};

ProductFactor factorize(const HybridState& s, const RVector& sqrt_w) {
  const CMatrix rho = reduced_density(s);
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  CVector level = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  Eigen::Index k = 0;
  level.cwiseAbs().maxCoeff(&k);
  level *= std::abs(level(k)) / level(k);
  CVector profile = sqrt_w.asDiagonal() * (s.values * level.conjugate());
  profile /= profile.norm();
  return {level, profile};
}

}  // namespace

DynamicsVerdict dynamics_separability_verdict(const SpectralResult& result, double tol) {
  if (result.eigenfunctions.empty()) throw std::invalid_argument("insufficient eigenfunctions: result is empty");
  const SpectralResult canon = canonicalize_degenerate_blocks(result);
  const std::size_t count = canon.eigenfunctions.size();

  // (i) every eigenfunction must be a product state.
  std::size_t worst = count;
  double worst_entropy = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double s = entanglement_entropy(canon.eigenfunctions[j], tol).entropy;
    if (s >= tol && s > worst_entropy) {
      worst = j;
      worst_entropy = s;
    }
  }
  if (worst < count) {
    return NonSeparable{NonSeparable::Kind::Entangled, worst, worst, worst_entropy,
                        "eigenfunction " + std::to_string(worst) + " is entangled"};
  }

  // (ii) group by level factor and compare profile sets.
  const int n_levels = canon.eigenfunctions.front().n_levels();
  const RVector sqrt_w = trapezoid_weights(canon.eigenfunctions.front().grid).cwiseSqrt();
  std::vector<ProductFactor> factors;
  factors.reserve(count);
  for (const auto& s : canon.eigenfunctions) factors.push_back(factorize(s, sqrt_w));

  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < count; ++j) {
    bool placed = false;
    for (auto& g : groups) {
      if (std::abs(factors[g.front()].level.dot(factors[j].level)) > 1.0 - 1e-3) {
        g.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({j});
  }
  if (static_cast<int>(groups.size()) < n_levels) {
    throw std::invalid_argument("insufficient eigenfunctions: only " + std::to_string(groups.size()) + " of " +
                                std::to_string(n_levels) + " levels are represented");
  }
  for (const auto& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("insufficient eigenfunctions: a level carries fewer than 2");
  }

  double worst_norm = 1.0;
  std::size_t witness = count;
  std::size_t partner = count;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t hi = gi + 1; hi < groups.size(); ++hi) {
      const auto& small = groups[gi].size() <= groups[hi].size() ? groups[gi] : groups[hi];
      const auto& large = groups[gi].size() <= groups[hi].size() ? groups[hi] : groups[gi];
      CMatrix span(sqrt_w.size(), static_cast<Eigen::Index>(large.size()));
      for (std::size_t t = 0; t < large.size(); ++t) span.col(static_cast<Eigen::Index>(t)) = factors[large[t]].profile;
      const Eigen::JacobiSVD<CMatrix> svd(span, Eigen::ComputeThinU);
      const RVector& sv = svd.singularValues();
      Eigen::Index rank = 0;
      while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
      const CMatrix q = svd.matrixU().leftCols(rank);
      for (std::size_t j : small) {
        const double norm = (q.adjoint() * factors[j].profile).norm();
        if (norm < 1.0 - tol && norm < worst_norm) {
          worst_norm = norm;
          witness = j;
          double best = -1.0;
          for (std::size_t t : large) {
            const double ov = std::abs(factors[t].profile.dot(factors[j].profile));
            if (ov > best) {
              best = ov;
              partner = t;
            }
          }
        }
      }
    }
  }
  if (witness < count) {
    return NonSeparable{NonSeparable::Kind::ProfileMismatch, witness, partner, worst_norm,
                        "profile of eigenfunction " + std::to_string(witness) +
                            " is not shared by the other level (best partner " + std::to_string(partner) + ")"};
  }
  return Separable{};
}

}  // namespace bext
