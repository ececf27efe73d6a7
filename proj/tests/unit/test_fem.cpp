#include <doctest.h>

#include <Eigen/Cholesky>

#include "bext/fem.hpp"
#include "bext/halfline.hpp"
#include "bext/rotor.hpp"
#include "oracles.hpp"

using namespace bext;

namespace {

const BoundaryUnitary& dirichlet2() {
  static const BoundaryUnitary u(-CMatrix::Identity(2, 2));
  return u;
}

}  // namespace

TEST_SUITE("fem") {

TEST_CASE("linear Dirichlet eigenvalues equal the discrete closed form") {
  for (int n : {10, 37, 200}) {
    const FemEigenpairs e = solve_lowest(make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), n), 5);
    for (int j = 0; j < 5; ++j) {
      const double exact = oracle::linear_fem_dirichlet_eigenvalue(j + 1, n);
      CHECK(std::abs(e.eigenvalues[static_cast<std::size_t>(j)] - exact) < 1e-10 * exact);
    }
  }
}

TEST_CASE("Dirichlet convergence is second order") {
  const FemProblem p = make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 50);
  const ConvergenceTable t = convergence_study(p, 1, {50, 100, 200, 400}, {oracle::dirichlet_eigenvalue(1)});
  REQUIRE(t.observed_order.size() == 3);
  for (const auto& o : t.observed_order) CHECK(o[0] == doctest::Approx(2.0).epsilon(0.02));
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    CHECK(t.rows[i].errors[0] / t.rows[i + 1].errors[0] == doctest::Approx(4.0).epsilon(0.02));
  }
  CHECK(t.rows.back().errors[0] < 1e-3);
}

TEST_CASE("higher-order elements converge faster") {
  const FemProblem p = make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 10, 1.0, 2);
  const ConvergenceTable t = convergence_study(p, 2, {10, 20, 40}, {oracle::dirichlet_eigenvalue(1), oracle::dirichlet_eigenvalue(2)});
  for (const auto& o : t.observed_order) {
    CHECK(o[0] > 3.8);
    CHECK(o[1] > 3.8);
  }
}

TEST_CASE("Neumann ground state is constant") {
  const FemEigenpairs e =
      solve_lowest(make_fem_problem(Geometry::Interval, {0.0}, BoundaryUnitary(CMatrix::Identity(2, 2)), 64), 2);
  CHECK(std::abs(e.eigenvalues[0]) < 1e-10);
  const CMatrix& v = e.eigenvectors[0];
  CHECK(max_abs(v.rowwise() - v.row(0)) < 1e-10);
  CHECK(e.eigenvalues[1] == doctest::Approx(kPi * kPi).epsilon(1e-2));
}

TEST_CASE("constant potential shifts the spectrum") {
  FemProblem p = make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 40);
  const FemEigenpairs base = solve_lowest(p, 4);
  p.potential = [](double) { return 3.25; };
  const FemEigenpairs shifted = solve_lowest(p, 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(shifted.eigenvalues[j] - base.eigenvalues[j] - 3.25) < 1e-9);
}

TEST_CASE("quasi-periodic spectrum, doubled by the levels") {
  const FemErrorModel model = calibrate_error_model();
  const FemProblem p = make_fem_problem(Geometry::Interval, {0.0, 0.0},
                                        rotor_boundary(kPi / 2, SpinFamily::Identity, 0.0), 200);
  const FemEigenpairs e = solve_lowest(p, 4);
  const std::vector<double> expect = {kPi * kPi / 4, kPi * kPi / 4, 9 * kPi * kPi / 4, 9 * kPi * kPi / 4};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(std::abs(e.eigenvalues[j] - expect[j]) <= model.bound(p.h(), expect[j], p.bulk_eigenvalues));
  }
}

TEST_CASE("matrix structure") {
  const auto u = rotor_boundary(kPi / 2, SpinFamily::AntiDiagonal, kPi / 2);
  const FemProblem p = make_fem_problem(Geometry::Interval, {10.0, -10.0}, u, 60);
  const FemAssembly a = assemble(p);
  const CMatrix k = CMatrix(a.stiffness);
  const CMatrix m = CMatrix(a.mass);
  CHECK(max_abs(k - k.adjoint()) < 1e-12);
  CHECK(max_abs(m - m.adjoint()) < 1e-15);
  const RVector mev = Eigen::SelfAdjointEigenSolver<CMatrix>(m).eigenvalues();
  CHECK(mev.minCoeff() > 0.0);
  CHECK(a.kd <= 2 * p.n_levels() + 1);
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
      if (std::abs(i - j) > a.kd) {
        CHECK(k(i, j) == cplx(0.0));
        CHECK(m(i, j) == cplx(0.0));
      }
    }
  }
  // One Dirichlet direction per level from the quasi-periodic factor.
  CHECK(a.reduced_dim() == 2 * 61 - 2);
}

TEST_CASE("eigenpair invariants") {
  const auto u = rotor_boundary(kPi / 2, SpinFamily::AntiDiagonal, kPi / 2);
  const FemProblem p = make_fem_problem(Geometry::Interval, {10.0, -10.0}, u, 400);
  const FemAssembly a = assemble(p);
  const FemEigenpairs e = solve_lowest(a, 6);
  const CMatrix& x = e.reduced_vectors;
  const CMatrix gram = x.adjoint() * (a.mass * x);
  CHECK(max_abs(gram - CMatrix::Identity(6, 6)) < 1e-10);
  for (int j = 0; j < 6; ++j) {
    const cplx rq = x.col(j).dot(a.stiffness * x.col(j)) / x.col(j).dot(a.mass * x.col(j));
    CHECK(std::abs(rq.real() - e.eigenvalues[static_cast<std::size_t>(j)]) < 1e-10 * (1.0 + std::abs(rq.real())));
    CHECK(boundary_condition_residual(p, u, e, static_cast<std::size_t>(j)) < 10.0 * p.h());
  }
  for (std::size_t j = 1; j < 6; ++j) CHECK(e.eigenvalues[j] >= e.eigenvalues[j - 1]);
}

TEST_CASE("degenerate clusters get independent eigenvectors") {
  const FemProblem p = make_fem_problem(Geometry::Interval, {0.0, 0.0},
                                        rotor_boundary(0.0, SpinFamily::Identity, 0.0), 100);
  const FemAssembly a = assemble(p);
  const FemEigenpairs e = solve_lowest(a, 6);
  const CMatrix gram = e.reduced_vectors.adjoint() * (a.mass * e.reduced_vectors);
  CHECK(max_abs(gram - CMatrix::Identity(6, 6)) < 1e-10);
  CHECK(std::abs(e.eigenvalues[0]) < 1e-10);
  CHECK(std::abs(e.eigenvalues[1]) < 1e-10);
  const SpectralResult sr = to_spectral_result(e);
  REQUIRE(sr.eigenvalues.size() == 2);
  CHECK(sr.multiplicities == std::vector<int>{2, 4});
}

TEST_CASE("truncated half-line reproduces the analytic bound state") {
  SUBCASE("one level") {
    for (double t : {0.3, 1.0, 2.5}) {
      const double alpha = 2.0 * std::atan(t);
      const FemProblem p = make_fem_problem(Geometry::HalfLine, {1.5}, bound_state_boundary(alpha), 800, 40.0, 3);
      const FemEigenpairs e = solve_lowest(p, 1);
      CHECK(std::abs(e.eigenvalues[0] - *bound_state_energy(1.5, alpha)) < 1e-6);
    }
  }
  SUBCASE("two levels at a compatibility point") {
    // lambda = (1, 0), tan^2(alpha1/2) = 4, tan^2(alpha2/2) = 3: E = -3 twice.
    const auto alphas = multipartite_curve({1.0, 0.0}, 2.0 * std::atan(2.0));
    const FemProblem p = make_fem_problem(Geometry::HalfLine, {1.0, 0.0}, bound_state_boundary(alphas), 800, 40.0, 3);
    const FemEigenpairs e = solve_lowest(p, 3);
    CHECK(std::abs(e.eigenvalues[0] + 3.0) < 1e-6);
    CHECK(std::abs(e.eigenvalues[1] + 3.0) < 1e-6);
    CHECK(e.eigenvalues[2] > 0.0);
  }
}

TEST_CASE("input validation") {
  FemProblem p = make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 10);
  p.bulk_eigenvalues = {0.0, 1.0};
  CHECK_THROWS_AS(assemble(p), std::invalid_argument);
  CHECK_THROWS_AS(make_fem_problem(Geometry::HalfLine, {0.0}, dirichlet2(), 10), std::invalid_argument);
  CHECK_THROWS_AS(make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 10, 1.0, 9), std::invalid_argument);
  CHECK_THROWS_AS(make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_lowest(make_fem_problem(Geometry::Interval, {0.0}, dirichlet2(), 4), 4), std::invalid_argument);
}

TEST_CASE("error model calibration") {
  const FemErrorModel m = calibrate_error_model();
  CHECK(m.c > 0.07);
  CHECK(m.c < 0.09);
  // Reduces to c h^2 (1 + |E|)^2 for one level at lambda = 0.
  CHECK(m.bound(0.01, 5.0, {0.0}) == doctest::Approx(m.c * 1e-4 * 36.0));
}

}  // TEST_SUITE
