#include "bext/boundary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bext {

int boundary_points(Geometry g) { return g == Geometry::HalfLine ? 1 : 2; }

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const auto n = u.rows();
  return max_abs(u.adjoint() * u - CMatrix::Identity(n, n));
}

BoundaryUnitary::BoundaryUnitary(CMatrix entries) : u_(std::move(entries)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols()) {
    throw std::invalid_argument("boundary unitary must be a non-empty square matrix");
  }
  const double defect = unitarity_defect(u_);
  if (!(defect < kUnitarityTolerance)) {
    throw std::invalid_argument("boundary matrix is not unitary (max|U^dag U - 1| = " +
                                std::to_string(defect) + ")");
  }
}

ExtensionSpec::ExtensionSpec(Geometry geometry, int n_levels, std::vector<double> bulk_eigenvalues,
                             BoundaryUnitary boundary)
    : geometry_(geometry),
      n_levels_(n_levels),
      bulk_(std::move(bulk_eigenvalues)),
      boundary_(std::move(boundary)) {
  if (n_levels_ <= 0) throw std::invalid_argument("n_levels must be positive");
  if (static_cast<int>(bulk_.size()) != n_levels_) {
    throw std::invalid_argument("bulk_eigenvalues must have n_levels entries");
  }
  for (std::size_t a = 1; a < bulk_.size(); ++a) {
    if (bulk_[a] > bulk_[a - 1]) {
      throw std::invalid_argument("bulk_eigenvalues must be listed in descending order");
    }
  }
  if (boundary_.dim() != boundary_points(geometry_) * n_levels_) {
    throw std::invalid_argument("boundary dimension must equal boundary points x n_levels");
  }
}

RobinData cayley_to_robin(const BoundaryUnitary& u) {
  const int n = u.dim();
  // U is normal, so its complex Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<CMatrix> schur(u.matrix());
  const CMatrix& z = schur.matrixU();
  const CMatrix& t = schur.matrixT();

  std::vector<int> dirichlet;
  std::vector<int> free;
  for (int j = 0; j < n; ++j) {
    const cplx ev = t(j, j);
    (std::abs(ev + 1.0) < kDirichletThreshold ? dirichlet : free).push_back(j);
  }

  RobinData out;
  out.dirichlet_projector = CMatrix::Zero(n, n);
  out.robin_matrix = CMatrix::Zero(n, n);
  out.free_basis = CMatrix(n, static_cast<Eigen::Index>(free.size()));
  for (int j : dirichlet) {
    out.dirichlet_projector += z.col(j) * z.col(j).adjoint();
  }
  for (std::size_t c = 0; c < free.size(); ++c) {
    const int j = free[c];
    const cplx ev = t(j, j) / std::abs(t(j, j));
    // -i(1 - e)/(1 + e) = -tan(theta/2) = -Im(e)/(1 + Re(e)) for e = e^{i theta}.
    const double a = -ev.imag() / (1.0 + ev.real());
    out.robin_matrix += a * z.col(j) * z.col(j).adjoint();
    out.free_basis.col(static_cast<Eigen::Index>(c)) = z.col(j);
  }
  out.robin_matrix = 0.5 * (out.robin_matrix + out.robin_matrix.adjoint()).eval();
  out.dirichlet_projector = 0.5 * (out.dirichlet_projector + out.dirichlet_projector.adjoint()).eval();
  return out;
}

CMatrix robin_to_unitary(const RobinData& robin) {
  const int n = robin.dim();
  const CMatrix& q = robin.free_basis;
  const auto r = q.cols();
  CMatrix u = -robin.dirichlet_projector;
  if (r == 0) return u;
  const CMatrix a = q.adjoint() * robin.robin_matrix * q;
  const CMatrix id = CMatrix::Identity(r, r);
  const CMatrix ur = (id + kI * a).partialPivLu().solve(id - kI * a);
  u += q * ur * q.adjoint();
  (void)n;
  return u;
}

BoundaryUnitary make_quasi_periodic(double delta) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 1) = std::polar(1.0, delta);
  u(1, 0) = std::polar(1.0, -delta);
  return BoundaryUnitary(u);
}

BoundaryUnitary make_phase(double alpha) {
  CMatrix u(1, 1);
  u(0, 0) = std::polar(1.0, alpha);
  return BoundaryUnitary(u);
}

BoundaryUnitary make_diagonal(const std::vector<double>& phases) {
  const auto n = static_cast<Eigen::Index>(phases.size());
  CMatrix u = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) u(i, i) = std::polar(1.0, phases[static_cast<std::size_t>(i)]);
  return BoundaryUnitary(u);
}

BoundaryUnitary tensor_boundary(const BoundaryUnitary& u_a, const CMatrix& u_b) {
  if (!(unitarity_defect(u_b) < BoundaryUnitary::kUnitarityTolerance)) {
    throw std::invalid_argument("level factor U_B is not unitary");
  }
  const long long total = static_cast<long long>(u_a.dim()) * u_b.rows();
  if (total > std::numeric_limits<int>::max()) {
    throw std::overflow_error("tensor product dimension overflows");
  }
  const auto na = u_a.dim();
  const auto nb = u_b.rows();
  CMatrix u(na * nb, na * nb);
  for (Eigen::Index a = 0; a < nb; ++a) {
    for (Eigen::Index b = 0; b < nb; ++b) {
      u.block(a * na, b * na, na, na) = u_b(a, b) * u_a.matrix();
    }
  }
  return BoundaryUnitary(u);
}

namespace {

// Realignment R[(a,b),(i,j)] = U[a*np+i, b*np+j]; U = sum_k s_k B_k (x) A_k.
CMatrix realign(const CMatrix& u, int n_points, int n_levels) {
  CMatrix r(n_levels * n_levels, n_points * n_points);
  for (int a = 0; a < n_levels; ++a)
    for (int b = 0; b < n_levels; ++b)
      for (int i = 0; i < n_points; ++i)
        for (int j = 0; j < n_points; ++j)
          r(a * n_levels + b, i * n_points + j) = u(a * n_points + i, b * n_points + j);
  return r;
}

void check_split(const BoundaryUnitary& u, int n_points, int n_levels) {
  if (n_points <= 0 || n_levels <= 0 || u.dim() != n_points * n_levels) {
    throw std::invalid_argument("boundary dimension does not match n_points x n_levels");
  }
}

}  // namespace

RVector operator_schmidt_values(const CMatrix& u, int n_points, int n_levels) {
  return Eigen::JacobiSVD<CMatrix>(realign(u, n_points, n_levels)).singularValues();
}

TensorStructure classify_tensor_structure(const BoundaryUnitary& u, int n_points, int n_levels) {
  check_split(u, n_points, n_levels);
  const CMatrix r = realign(u.matrix(), n_points, n_levels);
  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > kSchmidtRankThreshold * s(0)) ++rank;
  }
  if (rank != 1) return NonProduct{rank};

  CMatrix ub(n_levels, n_levels);
  CMatrix ua(n_points, n_points);
  for (int a = 0; a < n_levels; ++a)
    for (int b = 0; b < n_levels; ++b) ub(a, b) = svd.matrixU()(a * n_levels + b, 0);
  for (int i = 0; i < n_points; ++i)
    for (int j = 0; j < n_points; ++j) ua(i, j) = s(0) * std::conj(svd.matrixV()(i * n_points + j, 0));

  // U_B U_B^dag = c 1 with c > 0; rescale both factors to unitary ones.
  const double c = ub.squaredNorm() / n_levels;
  ub /= std::sqrt(c);
  ua *= std::sqrt(c);

  const cplx diag0 = ub(0, 0);
  const CMatrix scalar_part = diag0 * CMatrix::Identity(n_levels, n_levels);
  if (max_abs(ub - scalar_part) < 1e-9) {
    return ProductWithIdentity{u.matrix().topLeftCorner(n_points, n_points)};
  }

  Eigen::Index pivot = 0;
  ub.col(0).cwiseAbs().maxCoeff(&pivot);
  const cplx phase = ub(pivot, 0) / std::abs(ub(pivot, 0));
  ub /= phase;
  ua *= phase;
  return Product{ua, ub};
}

bool predict_separable_dynamics(const ExtensionSpec& spec) {
  const auto structure = classify_tensor_structure(spec.boundary(), spec.n_points(), spec.n_levels());
  return std::holds_alternative<ProductWithIdentity>(structure);
}

DeficiencyIndices deficiency_indices(const ExtensionSpec& spec) {
  const int n = spec.n_points() * spec.n_levels();
  return {n, n};
}

}  // namespace bext
