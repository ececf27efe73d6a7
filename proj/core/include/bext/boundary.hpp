#pragma once

// Boundary-unitary parameterization of self-adjoint extensions of
// -d^2/dx^2 (x) 1 + 1 (x) H_B on a half-line or interval.
//
// Boundary data convention: phi is the boundary trace, phi_dot the OUTWARD
// normal derivative (so -Phi'(0) at the left end, +Phi'(L) at the right end).
// An extension is fixed by a unitary U through
//
//     phi - i phi_dot = U (phi + i phi_dot).
//
// Boundary vectors are laid out level-major ("SpinMajor"): level index outer,
// boundary point inner. For an interval with two levels the vector is
// (Phi_up(0), Phi_up(1), Phi_dn(0), Phi_dn(1)), and U_A (x) U_B is stored as
// the Kronecker product kron(U_B, U_A).

#include <variant>
#include <vector>

#include "bext/types.hpp"

namespace bext {

enum class Geometry { HalfLine, Interval };
enum class IndexOrdering { SpinMajor };

/// Number of boundary points of the particle domain (1 or 2).
int boundary_points(Geometry g);

class BoundaryUnitary {
 public:
  static constexpr double kUnitarityTolerance = 1e-12;

  /// Throws std::invalid_argument unless `entries` is square and
  /// max|U^dag U - 1| < kUnitarityTolerance.
  explicit BoundaryUnitary(CMatrix entries);

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMatrix& matrix() const { return u_; }
  IndexOrdering ordering() const { return IndexOrdering::SpinMajor; }
  cplx operator()(int row, int col) const { return u_(row, col); }

 private:
  CMatrix u_;
};

/// max|U^dag U - 1|.
double unitarity_defect(const CMatrix& u);

class ExtensionSpec {
 public:
  /// Validates boundary.dim() == points(geometry) * n_levels and that
  /// bulk_eigenvalues has n_levels entries in non-increasing order.
  ExtensionSpec(Geometry geometry, int n_levels, std::vector<double> bulk_eigenvalues,
                BoundaryUnitary boundary);

  Geometry geometry() const { return geometry_; }
  int n_levels() const { return n_levels_; }
  int n_points() const { return boundary_points(geometry_); }
  const std::vector<double>& bulk_eigenvalues() const { return bulk_; }
  const BoundaryUnitary& boundary() const { return boundary_; }

 private:
  Geometry geometry_;
  int n_levels_;
  std::vector<double> bulk_;
  BoundaryUnitary boundary_;
};

/// Partial Cayley transform of a boundary unitary.
///
/// W is the eigenspace of U for eigenvalue -1 (Dirichlet directions, phi = 0
/// there). On W-perp the condition reads phi_dot = A_U phi with
/// A_U = -i (1 + U)^{-1} (1 - U), Hermitian. For U = e^{i alpha} this is the
/// scalar Robin law phi_dot = -tan(alpha/2) phi.
struct RobinData {
  CMatrix dirichlet_projector;  ///< dim x dim projector onto W
  CMatrix robin_matrix;         ///< dim x dim, acts on W-perp, zero on W
  CMatrix free_basis;           ///< dim x r orthonormal basis of W-perp

  int dim() const { return static_cast<int>(robin_matrix.rows()); }
  int dirichlet_rank() const { return dim() - static_cast<int>(free_basis.cols()); }
};

/// Eigenvalues closer than this to -1 are treated as Dirichlet directions.
inline constexpr double kDirichletThreshold = 1e-10;

RobinData cayley_to_robin(const BoundaryUnitary& u);

/// Inverse map: U = (1 + i A)^{-1} (1 - i A) on W-perp and -1 on W.
CMatrix robin_to_unitary(const RobinData& robin);

/// Anti-diagonal quasi-periodic unitary [[0, e^{i delta}], [e^{-i delta}, 0]];
/// equivalent to Phi(0) = e^{i delta} Phi(1), Phi'(0) = e^{i delta} Phi'(1).
BoundaryUnitary make_quasi_periodic(double delta);

/// 1x1 unitary e^{i alpha} for a single boundary point.
BoundaryUnitary make_phase(double alpha);

/// diag(e^{i a_0}, e^{i a_1}, ...).
BoundaryUnitary make_diagonal(const std::vector<double>& phases);

/// U_A (x) U_B in SpinMajor layout, i.e. kron(u_b, u_a). Throws if u_b is
/// not unitary or the product dimension overflows int.
BoundaryUnitary tensor_boundary(const BoundaryUnitary& u_a, const CMatrix& u_b);

/// Tensor-structure verdicts. Global phases are folded into U_A.
struct ProductWithIdentity {
  CMatrix u_a;
};
struct Product {
  CMatrix u_a;
  CMatrix u_b;  ///< normalized so its first nonzero column entry of max modulus is real positive
};
struct NonProduct {
  int operator_schmidt_rank;
};
using TensorStructure = std::variant<ProductWithIdentity, Product, NonProduct>;

/// Relative singular-value cutoff for the operator Schmidt rank.
inline constexpr double kSchmidtRankThreshold = 1e-10;

/// Operator Schmidt singular values of u across the level|point split,
/// descending.
RVector operator_schmidt_values(const CMatrix& u, int n_points, int n_levels);

TensorStructure classify_tensor_structure(const BoundaryUnitary& u, int n_points, int n_levels);

/// Separable dynamics is predicted iff U = U_A (x) 1 up to a global phase.
bool predict_separable_dynamics(const ExtensionSpec& spec);

struct DeficiencyIndices {
  int n_plus = 0;
  int n_minus = 0;
  friend bool operator==(const DeficiencyIndices&, const DeficiencyIndices&) = default;
};

/// (n_A * n_levels, n_A * n_levels) with n_A = 1 on the half-line, 2 on the
/// interval.
DeficiencyIndices deficiency_indices(const ExtensionSpec& spec);

}  // namespace bext
