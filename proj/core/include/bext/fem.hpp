#pragma once

// Finite-element eigensolver for -d^2/dx^2 (x) 1 + 1 (x) diag(lambda) + V(x)
// on [0, L] with an arbitrary boundary unitary.
//
// Lagrange elements of order p on Gauss-Lobatto nodes over a uniform mesh.
// Unknowns are nodal values Phi_a(x_k); the weak form is
//   int conj(Phi)' Psi' + sum_a lambda_a conj(Phi_a) Psi_a + V conj(Phi) Psi
//     - <phi, A_U psi>_boundary,
// with the Dirichlet part of the boundary condition imposed by restricting
// boundary traces to W-perp (see RobinData). On the half line the far end
// x = L is clamped to zero.
//
// Interval nodes are numbered in folded order 0, N, 1, N-1, ... so that the
// coupling between the two ends stays inside a narrow band.

#include <functional>
#include <vector>

#include <Eigen/SparseCore>

#include "bext/boundary.hpp"
#include "bext/spectrum.hpp"

namespace bext {

using SparseCMatrix = Eigen::SparseMatrix<cplx>;

struct FemProblem {
  Geometry geometry = Geometry::Interval;
  int n_elements = 100;
  int element_order = 1;  ///< 1 = piecewise linear; up to 8
  double domain_length = 1.0;
  std::vector<double> bulk_eigenvalues{0.0};
  RobinData robin;  ///< dimension 2 * n_levels (interval) or n_levels (half line)
  std::function<double(double)> potential;  ///< optional scalar V(x)

  int n_levels() const { return static_cast<int>(bulk_eigenvalues.size()); }
  int boundary_dim() const { return boundary_points(geometry) * n_levels(); }
  double h() const { return domain_length / n_elements; }
};

/// Convenience: FemProblem with robin = cayley_to_robin(u).
FemProblem make_fem_problem(Geometry geometry, std::vector<double> bulk_eigenvalues, const BoundaryUnitary& u,
                            int n_elements, double length = 1.0, int element_order = 1);

/// Reduced system on the constrained subspace. Reduced dofs are the r free
/// boundary combinations (coefficients on robin.free_basis) followed by the
/// remaining unconstrained nodal values.
struct FemAssembly {
  std::vector<double> nodes;       ///< node coordinates, ascending
  std::vector<int> node_position;  ///< physical node -> position in dof ordering
  int n_levels = 1;
  SparseCMatrix stiffness;         ///< reduced K, Hermitian
  SparseCMatrix mass;              ///< reduced M, Hermitian positive definite
  SparseCMatrix prolongation;      ///< full nodal dofs x reduced dofs
  int kd = 0;                      ///< half-bandwidth of K and M

  int full_index(int node, int level) const { return node_position[static_cast<std::size_t>(node)] * n_levels + level; }
  int reduced_dim() const { return static_cast<int>(stiffness.rows()); }
};

/// Throws std::invalid_argument on inconsistent input (RobinData dimension,
/// element order, mesh size).
FemAssembly assemble(const FemProblem& problem);

struct FemEigenpairs {
  std::vector<double> eigenvalues;     ///< ascending Ritz values
  std::vector<CMatrix> eigenvectors;   ///< n_nodes x n_levels nodal values
  std::vector<double> mesh;            ///< node coordinates
  CMatrix reduced_vectors;             ///< columns M-orthonormal in reduced dofs
};

/// Lowest k eigenpairs. Eigenvalues come from a banded generalized Hermitian
/// eigensolve; eigenvectors from shifted block inverse iteration with banded
/// LU, finished by Rayleigh-Ritz, so each reported value is the Rayleigh
/// quotient of its vector.
FemEigenpairs solve_lowest(const FemAssembly& assembly, int k);
FemEigenpairs solve_lowest(const FemProblem& problem, int k);

/// Groups eigenvalues closer than cluster_tol * (1 + |E|) into blocks and
/// turns eigenvectors into trapezoid-normalized, phase-fixed HybridStates on
/// the mesh.
SpectralResult to_spectral_result(const FemEigenpairs& pairs, double cluster_tol = 1e-6);

/// max |phi - i phi_dot - U (phi + i phi_dot)| for eigenvector j, with
/// boundary derivatives from three-point one-sided differences of the nodal
/// values.
double boundary_condition_residual(const FemProblem& problem, const BoundaryUnitary& u, const FemEigenpairs& pairs,
                                   std::size_t j);

/// |E_fem - E| <= c h^2 (1 + max_a |E - lambda_a|)^2 for linear elements.
struct FemErrorModel {
  double c = 0.0;
  double bound(double h, double energy, const std::vector<double>& bulk_eigenvalues) const;
};

/// Fits c on the one-level Dirichlet problem on [0, 1] (exact values (j pi)^2)
/// as the largest ratio over the lowest k eigenvalues at n_elements.
FemErrorModel calibrate_error_model(int n_elements = 100, int k = 6);

struct ConvergenceRow {
  int n_elements = 0;
  double h = 0.0;
  std::vector<double> eigenvalues;
  std::vector<double> errors;  ///< |eigenvalue - reference|
};

struct ConvergenceTable {
  std::vector<double> reference;
  std::vector<ConvergenceRow> rows;
  /// observed_order[i][j] = log(err_ij / err_{i+1,j}) / log(h_i / h_{i+1}).
  std::vector<std::vector<double>> observed_order;
};

ConvergenceTable convergence_study(FemProblem problem, int k, const std::vector<int>& refinements,
                                   const std::vector<double>& reference);

}  // namespace bext
