#include "bext/fem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "banded.hpp"

namespace bext {

namespace {

using Triplets = std::vector<Eigen::Triplet<cplx>>;

struct Quadrature {
  RVector points;
  RVector weights;
};

// Golub-Welsch for Gauss-Legendre on [-1, 1].
Quadrature gauss_legendre(int q) {
  RMatrix jac = RMatrix::Zero(q, q);
  for (int n = 1; n < q; ++n) {
    const double b = n / std::sqrt(4.0 * n * n - 1.0);
    jac(n, n - 1) = b;
    jac(n - 1, n) = b;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(jac);
  Quadrature out{es.eigenvalues(), RVector(q)};
  for (int i = 0; i < q; ++i) out.weights(i) = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  return out;
}

// Gauss-Lobatto nodes: -1, roots of P_p', +1. The interior roots are the
// Gauss-Jacobi(1, 1) nodes.
RVector lobatto_nodes(int p) {
  RVector x(p + 1);
  x(0) = -1.0;
  x(p) = 1.0;
  const int m = p - 1;
  if (m > 0) {
    RMatrix jac = RMatrix::Zero(m, m);
    for (int n = 1; n < m; ++n) {
      const double b = std::sqrt(n * (n + 2.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0)));
      jac(n, n - 1) = b;
      jac(n - 1, n) = b;
    }
    const RVector r = Eigen::SelfAdjointEigenSolver<RMatrix>(jac).eigenvalues();
    for (int i = 0; i < m; ++i) x(i + 1) = r(i);
  }
  return x;
}

double lagrange(const RVector& nodes, int i, double xi) {
  double v = 1.0;
  for (Eigen::Index m = 0; m < nodes.size(); ++m) {
    if (m != i) v *= (xi - nodes(m)) / (nodes(i) - nodes(m));
  }
  return v;
}

double lagrange_derivative(const RVector& nodes, int i, double xi) {
  double sum = 0.0;
  for (Eigen::Index m = 0; m < nodes.size(); ++m) {
    if (m == i) continue;
    double term = 1.0 / (nodes(i) - nodes(m));
    for (Eigen::Index n = 0; n < nodes.size(); ++n) {
      if (n != i && n != m) term *= (xi - nodes(n)) / (nodes(i) - nodes(n));
    }
    sum += term;
  }
  return sum;
}

struct ReferenceElement {
  RVector nodes;
  Quadrature quad;
  RMatrix phi;   // phi(i, q) = l_i(xi_q)
  RMatrix dphi;  // derivative
};

ReferenceElement reference_element(int p) {
  ReferenceElement re{lobatto_nodes(p), gauss_legendre(p + 2), {}, {}};
  const auto nq = re.quad.points.size();
  re.phi.resize(p + 1, nq);
  re.dphi.resize(p + 1, nq);
  for (int i = 0; i <= p; ++i) {
    for (Eigen::Index q = 0; q < nq; ++q) {
      re.phi(i, q) = lagrange(re.nodes, i, re.quad.points(q));
      re.dphi(i, q) = lagrange_derivative(re.nodes, i, re.quad.points(q));
    }
  }
  return re;
}

std::vector<int> dof_positions(Geometry g, int n_nodes) {
  std::vector<int> pos(static_cast<std::size_t>(n_nodes));
  for (int k = 0; k < n_nodes; ++k) {
    if (g == Geometry::HalfLine) {
      pos[static_cast<std::size_t>(k)] = k;
    } else {
      const int mirror = n_nodes - 1 - k;
      pos[static_cast<std::size_t>(k)] = k <= mirror ? 2 * k : 2 * mirror + 1;
    }
  }
  return pos;
}

void validate(const FemProblem& p) {
  if (p.n_elements < 1) throw std::invalid_argument("n_elements must be positive");
  if (p.element_order < 1 || p.element_order > 8) throw std::invalid_argument("element_order must lie in 1..8");
  if (!(p.domain_length > 0.0)) throw std::invalid_argument("domain_length must be positive");
  if (p.bulk_eigenvalues.empty()) throw std::invalid_argument("at least one level is required");
  if (p.robin.dim() != p.boundary_dim()) {
    throw std::invalid_argument("RobinData dimension " + std::to_string(p.robin.dim()) + " does not match boundary dimension " +
                                std::to_string(p.boundary_dim()));
  }
}

}  // namespace

FemProblem make_fem_problem(Geometry geometry, std::vector<double> bulk_eigenvalues, const BoundaryUnitary& u,
                            int n_elements, double length, int element_order) {
  FemProblem p;
  p.geometry = geometry;
  p.n_elements = n_elements;
  p.element_order = element_order;
  p.domain_length = length;
  p.bulk_eigenvalues = std::move(bulk_eigenvalues);
  p.robin = cayley_to_robin(u);
  validate(p);
  return p;
}

FemAssembly assemble(const FemProblem& problem) {
  validate(problem);
  const int order = problem.element_order;
  const int n_levels = problem.n_levels();
  const int n_nodes = problem.n_elements * order + 1;
  const double h = problem.h();
  const ReferenceElement re = reference_element(order);

  FemAssembly out;
  out.n_levels = n_levels;
  out.node_position = dof_positions(problem.geometry, n_nodes);
  out.nodes.resize(static_cast<std::size_t>(n_nodes));
  for (int e = 0; e < problem.n_elements; ++e) {
    for (int i = 0; i <= order; ++i) {
      out.nodes[static_cast<std::size_t>(e * order + i)] = e * h + 0.5 * (re.nodes(i) + 1.0) * h;
    }
  }
  out.nodes.back() = problem.domain_length;

  // Full (unconstrained) matrices.
  const int n_full = n_nodes * n_levels;
  Triplets kt;
  Triplets mt;
  const auto nq = re.quad.points.size();
  for (int e = 0; e < problem.n_elements; ++e) {
    RMatrix ke = RMatrix::Zero(order + 1, order + 1);
    RMatrix me = RMatrix::Zero(order + 1, order + 1);
    RMatrix ve = RMatrix::Zero(order + 1, order + 1);
    for (Eigen::Index q = 0; q < nq; ++q) {
      const double w = re.quad.weights(q);
      const double x = e * h + 0.5 * (re.quad.points(q) + 1.0) * h;
      const double v = problem.potential ? problem.potential(x) : 0.0;
      for (int i = 0; i <= order; ++i) {
        for (int j = 0; j <= order; ++j) {
          ke(i, j) += w * re.dphi(i, q) * re.dphi(j, q) * (2.0 / h);
          const double mass = w * re.phi(i, q) * re.phi(j, q) * (h / 2.0);
          me(i, j) += mass;
          ve(i, j) += v * mass;
        }
      }
    }
    for (int a = 0; a < n_levels; ++a) {
      const double lambda = problem.bulk_eigenvalues[static_cast<std::size_t>(a)];
      for (int i = 0; i <= order; ++i) {
        for (int j = 0; j <= order; ++j) {
          const int gi = out.full_index(e * order + i, a);
          const int gj = out.full_index(e * order + j, a);
          kt.emplace_back(gi, gj, ke(i, j) + lambda * me(i, j) + ve(i, j));
          mt.emplace_back(gi, gj, me(i, j));
        }
      }
    }
  }
  SparseCMatrix k_full(n_full, n_full);
  SparseCMatrix m_full(n_full, n_full);
  k_full.setFromTriplets(kt.begin(), kt.end());
  m_full.setFromTriplets(mt.begin(), mt.end());

  // Boundary dofs in boundary-vector order (SpinMajor: index = point + n_points * level).
  const int n_points = boundary_points(problem.geometry);
  std::vector<int> boundary_dof(static_cast<std::size_t>(problem.boundary_dim()));
  for (int a = 0; a < n_levels; ++a) {
    for (int pt = 0; pt < n_points; ++pt) {
      const int node = pt == 0 ? 0 : n_nodes - 1;
      boundary_dof[static_cast<std::size_t>(n_points * a + pt)] = out.full_index(node, a);
    }
  }
  std::vector<char> eliminated(static_cast<std::size_t>(n_full), 0);
  for (int d : boundary_dof) eliminated[static_cast<std::size_t>(d)] = 1;
  if (problem.geometry == Geometry::HalfLine) {
    for (int a = 0; a < n_levels; ++a) eliminated[static_cast<std::size_t>(out.full_index(n_nodes - 1, a))] = 1;
  }

  const CMatrix& free = problem.robin.free_basis;
  const auto r = static_cast<int>(free.cols());
  Triplets pt;
  for (std::size_t b = 0; b < boundary_dof.size(); ++b) {
    for (int c = 0; c < r; ++c) {
      if (free(static_cast<Eigen::Index>(b), c) != cplx(0.0)) pt.emplace_back(boundary_dof[b], c, free(static_cast<Eigen::Index>(b), c));
    }
  }
  int col = r;
  for (int d = 0; d < n_full; ++d) {
    if (!eliminated[static_cast<std::size_t>(d)]) pt.emplace_back(d, col++, cplx(1.0));
  }
  out.prolongation.resize(n_full, col);
  out.prolongation.setFromTriplets(pt.begin(), pt.end());

  const SparseCMatrix ph = out.prolongation.adjoint();
  SparseCMatrix k_red = ph * k_full * out.prolongation;
  SparseCMatrix m_red = ph * m_full * out.prolongation;

  // -<phi, A psi> on the free boundary combinations.
  const CMatrix robin_free = free.adjoint() * problem.robin.robin_matrix * free;
  Triplets bt;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) bt.emplace_back(i, j, -robin_free(i, j));
  }
  SparseCMatrix boundary_term(col, col);
  boundary_term.setFromTriplets(bt.begin(), bt.end());
  k_red += boundary_term;

  out.stiffness = 0.5 * (k_red + SparseCMatrix(k_red.adjoint()));
  out.mass = 0.5 * (m_red + SparseCMatrix(m_red.adjoint()));
  out.stiffness.prune(cplx(0.0));
  out.mass.prune(cplx(0.0));
  out.kd = std::max(detail::bandwidth(out.stiffness), detail::bandwidth(out.mass));
  return out;
}

namespace {

CMatrix m_orthonormalize(const CMatrix& y, const SparseCMatrix& m) {
  const CMatrix gram = y.adjoint() * (m * y);
  Eigen::LLT<CMatrix> llt(0.5 * (gram + gram.adjoint()));
  if (llt.info() != Eigen::Success) throw std::runtime_error("lost M-orthogonality in inverse iteration");
  // y L^{-H}
  return llt.matrixU().solve<Eigen::OnTheRight>(y);
}

struct Cluster {
  std::size_t begin;
  std::size_t end;
};

std::vector<Cluster> clusters_of(const std::vector<double>& ev, double tol) {
  std::vector<Cluster> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev[i] - ev[i - 1] > tol * (1.0 + std::abs(ev[i]))) {
      out.push_back({start, i});
      start = i;
    }
  }
  return out;
}

}  // namespace

FemEigenpairs solve_lowest(const FemAssembly& asmb, int k) {
  const int n = asmb.reduced_dim();
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in 1..reduced system dimension");
  const int extra = std::min(n, k + 4);
  const std::vector<double> ev = detail::banded_lowest_eigenvalues(asmb.stiffness, asmb.mass, asmb.kd, extra);

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  CMatrix basis(n, 0);
  std::vector<double> ritz;
  for (const Cluster& cl : clusters_of(ev, 1e-6)) {
    if (static_cast<int>(cl.begin) >= k) break;
    const int d = static_cast<int>(cl.end - cl.begin);
    const double e0 = ev[cl.begin];
    const double shift = e0 - 1e-9 * (1.0 + std::abs(e0));
    const SparseCMatrix shifted = asmb.stiffness - shift * asmb.mass;
    const detail::BandedLu lu(shifted, asmb.kd);

    CMatrix x(n, d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = cplx(gauss(rng), gauss(rng));
    RVector theta;
    for (int it = 0; it < 30; ++it) {
      CMatrix y = asmb.mass * x;
      lu.solve(y);
      if (basis.cols() > 0) y -= basis * (basis.adjoint() * (asmb.mass * y));
      y = m_orthonormalize(y, asmb.mass);
      const CMatrix kh = y.adjoint() * (asmb.stiffness * y);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (kh + kh.adjoint()));
      x = y * es.eigenvectors();
      theta = es.eigenvalues();
      const CMatrix res = asmb.stiffness * x - (asmb.mass * x) * theta.asDiagonal();
      double worst = 0.0;
      for (int j = 0; j < d; ++j) {
        worst = std::max(worst, res.col(j).norm() / ((1.0 + std::abs(theta(j))) * std::max(1.0, (asmb.mass * x.col(j)).norm())));
      }
      if (it >= 2 && worst < 1e-12) break;
    }
    CMatrix grown(n, basis.cols() + d);
    grown << basis, x;
    basis = std::move(grown);
    for (int j = 0; j < d; ++j) ritz.push_back(theta(j));
  }

  std::vector<std::size_t> order(ritz.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&ritz](std::size_t a, std::size_t b) { return ritz[a] < ritz[b]; });

  FemEigenpairs out;
  out.mesh = asmb.nodes;
  out.reduced_vectors.resize(n, k);
  const auto n_nodes = static_cast<int>(asmb.nodes.size());
  for (int j = 0; j < k; ++j) {
    const std::size_t src = order[static_cast<std::size_t>(j)];
    out.eigenvalues.push_back(ritz[src]);
    out.reduced_vectors.col(j) = basis.col(static_cast<Eigen::Index>(src));
    const CVector full = asmb.prolongation * basis.col(static_cast<Eigen::Index>(src));
    CMatrix nodal(n_nodes, asmb.n_levels);
    for (int node = 0; node < n_nodes; ++node) {
      for (int a = 0; a < asmb.n_levels; ++a) nodal(node, a) = full(asmb.full_index(node, a));
    }
    out.eigenvectors.push_back(std::move(nodal));
  }
  return out;
}

FemEigenpairs solve_lowest(const FemProblem& problem, int k) { return solve_lowest(assemble(problem), k); }

SpectralResult to_spectral_result(const FemEigenpairs& pairs, double cluster_tol) {
  SpectralResult out;
  for (const Cluster& cl : clusters_of(pairs.eigenvalues, cluster_tol)) {
    double mean = 0.0;
    for (std::size_t i = cl.begin; i < cl.end; ++i) mean += pairs.eigenvalues[i];
    out.eigenvalues.push_back(mean / static_cast<double>(cl.end - cl.begin));
    out.multiplicities.push_back(static_cast<int>(cl.end - cl.begin));
    for (std::size_t i = cl.begin; i < cl.end; ++i) {
      HybridState s{pairs.mesh, pairs.eigenvectors[i]};
      out.eigenfunctions.push_back(fix_global_phase(normalized(s)));
      out.block_of.push_back(out.eigenvalues.size() - 1);
    }
  }
  return out;
}

double boundary_condition_residual(const FemProblem& problem, const BoundaryUnitary& u, const FemEigenpairs& pairs,
                                   std::size_t j) {
  if (u.dim() != problem.boundary_dim()) throw std::invalid_argument("boundary unitary dimension mismatch");
  const CMatrix& v = pairs.eigenvectors.at(j);
  const std::vector<double>& x = pairs.mesh;
  const auto n = static_cast<int>(x.size());
  if (n < 3) throw std::invalid_argument("need at least three mesh nodes");

  // d/dx at x0 from samples at x0, x1, x2 (second order, nonuniform spacing).
  const auto one_sided = [&](int i0, int i1, int i2, int a) {
    const double h1 = x[static_cast<std::size_t>(i1)] - x[static_cast<std::size_t>(i0)];
    const double h2 = x[static_cast<std::size_t>(i2)] - x[static_cast<std::size_t>(i0)];
    const cplx f0 = v(i0, a);
    const cplx f1 = v(i1, a);
    const cplx f2 = v(i2, a);
    return (f1 - f0) * (h2 / (h1 * (h2 - h1))) - (f2 - f0) * (h1 / (h2 * (h2 - h1)));
  };

  const int n_points = boundary_points(problem.geometry);
  const int dim = problem.boundary_dim();
  CVector phi(dim);
  CVector phi_dot(dim);
  for (int a = 0; a < problem.n_levels(); ++a) {
    phi(n_points * a) = v(0, a);
    phi_dot(n_points * a) = -one_sided(0, 1, 2, a);
    if (n_points == 2) {
      phi(n_points * a + 1) = v(n - 1, a);
      phi_dot(n_points * a + 1) = one_sided(n - 1, n - 2, n - 3, a);
    }
  }
  const CVector r = (phi - kI * phi_dot) - u.matrix() * (phi + kI * phi_dot);
  return r.cwiseAbs().maxCoeff();
}

double FemErrorModel::bound(double h, double energy, const std::vector<double>& bulk_eigenvalues) const {
  double kinetic = 0.0;
  for (double lambda : bulk_eigenvalues) kinetic = std::max(kinetic, std::abs(energy - lambda));
  return c * h * h * (1.0 + kinetic) * (1.0 + kinetic);
}

FemErrorModel calibrate_error_model(int n_elements, int k) {
  const BoundaryUnitary dirichlet(-CMatrix::Identity(2, 2));
  const FemProblem p = make_fem_problem(Geometry::Interval, {0.0}, dirichlet, n_elements);
  const FemEigenpairs pairs = solve_lowest(p, k);
  const double h = p.h();
  FemErrorModel model;
  for (int j = 0; j < k; ++j) {
    const double exact = std::pow((j + 1) * kPi, 2);
    const double err = std::abs(pairs.eigenvalues[static_cast<std::size_t>(j)] - exact);
    model.c = std::max(model.c, err / (h * h * (1.0 + exact) * (1.0 + exact)));
  }
  return model;
}

ConvergenceTable convergence_study(FemProblem problem, int k, const std::vector<int>& refinements,
                                   const std::vector<double>& reference) {
  if (static_cast<int>(reference.size()) < k) throw std::invalid_argument("reference spectrum shorter than k");
  ConvergenceTable table;
  table.reference.assign(reference.begin(), reference.begin() + k);
  for (int n : refinements) {
    problem.n_elements = n;
    const FemEigenpairs pairs = solve_lowest(problem, k);
    ConvergenceRow row{n, problem.h(), pairs.eigenvalues, {}};
    for (int j = 0; j < k; ++j) {
      row.errors.push_back(std::abs(row.eigenvalues[static_cast<std::size_t>(j)] - table.reference[static_cast<std::size_t>(j)]));
    }
    table.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const auto& a = table.rows[i];
    const auto& b = table.rows[i + 1];
    std::vector<double> orders;
    for (int j = 0; j < k; ++j) {
      const auto js = static_cast<std::size_t>(j);
      orders.push_back(std::log(a.errors[js] / b.errors[js]) / std::log(a.h / b.h));
    }
    table.observed_order.push_back(std::move(orders));
  }
  return table;
}

}  // namespace bext
