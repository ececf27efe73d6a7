#include <doctest.h>

#include <random>

#include "bext/fem.hpp"
#include "bext/rotor.hpp"
#include "oracles.hpp"

using namespace bext;

namespace {

int nullity(const CMatrix& m, double tol = 1e-7) {
  const RVector s = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  int n = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) n += s(i) < tol * std::max(1.0, s(0)) ? 1 : 0;
  return n;
}

// Distinct roots, widening the window until `k` eigenvalues are found.
SpectralResult lowest_roots(const MatchingProblem& p, int k) {
  const double lo = lower_spectral_bound(p) - 1.0;
  for (double width = 60.0;; width *= 2.0) {
    SpectralResult r = find_eigenvalues(p, lo, lo + width, k);
    if (static_cast<int>(r.eigenvalues.size()) >= k) return r;
  }
}

}  // namespace

TEST_SUITE("rotor") {

TEST_CASE("matching matrix null spaces at known eigenvalues") {
  const auto periodic = MatchingProblem::rotor(0.0, rotor_boundary(0.0, SpinFamily::Identity, 0.0));
  CHECK(nullity(matching_matrix(4 * kPi * kPi, periodic)) == 4);
  CHECK(nullity(matching_matrix(0.0, periodic)) == 2);
  CHECK(spectral_indicator(3.0, periodic) > 1e-3);

  for (double delta : {kPi / 4, kPi / 2, 1.0}) {
    const auto qp = MatchingProblem::rotor(0.0, rotor_boundary(delta, SpinFamily::Identity, 0.0));
    for (double e : oracle::quasi_periodic_eigenvalues(delta, 4)) CHECK(nullity(matching_matrix(e, qp)) >= 2);
  }

  const auto shifted = MatchingProblem::rotor(10.0, rotor_boundary(kPi / 2, SpinFamily::Identity, 0.0));
  CHECK(spectral_indicator(kPi * kPi / 4 + 10.0, shifted) < 1e-8);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(MatchingProblem::rotor(-1.0, rotor_boundary(0.0, SpinFamily::Identity, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(MatchingProblem({0.0}, rotor_boundary(0.0, SpinFamily::Identity, 0.0)), std::invalid_argument);
  const auto p = MatchingProblem::rotor(1.0, rotor_boundary(0.0, SpinFamily::Identity, 0.0));
  CHECK_THROWS_AS(find_eigenvalues(p, 1.0, 0.0, 3), std::invalid_argument);
  CHECK(find_eigenvalues(p, 1.5, 1.6, 3).eigenvalues.empty());
}

TEST_CASE("periodic spectrum with multiplicities") {
  const auto p = MatchingProblem::rotor(0.0, rotor_boundary(0.0, SpinFamily::Identity, 0.0));
  const SpectralResult r = find_eigenvalues(p, -1.0, 50.0, 0);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(std::abs(r.eigenvalues[0]) < 1e-8);
  CHECK(r.multiplicities[0] == 2);
  CHECK(std::abs(r.eigenvalues[1] - 4 * kPi * kPi) < 1e-8);
  CHECK(r.multiplicities[1] == 4);
}

TEST_CASE("branch-point eigenvalues of decoupled channels") {
  const auto p = MatchingProblem::rotor(10.0, rotor_boundary(0.0, SpinFamily::Identity, 0.0));
  const SpectralResult r = find_eigenvalues(p, -11.0, 20.0, 0);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(std::abs(r.eigenvalues[0] + 10.0) < 1e-8);
  CHECK(std::abs(r.eigenvalues[1] - 10.0) < 1e-8);
  CHECK(r.multiplicities == std::vector<int>{1, 1});
}

TEST_CASE("decoupled quasi-periodic channels") {
  const double mu = 2.5;
  const double delta = 0.9;
  std::vector<double> expect;
  for (double e : oracle::quasi_periodic_eigenvalues(delta, 6)) {
    expect.push_back(e + mu);
    expect.push_back(e - mu);
  }
  std::sort(expect.begin(), expect.end());
  const auto p = MatchingProblem::rotor(mu, rotor_boundary(delta, SpinFamily::Identity, 0.0));
  const SpectralResult r = find_eigenvalues(p, -3.0, 200.0, 8);
  REQUIRE(r.eigenvalues.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(r.eigenvalues[i] - expect[i]) < 1e-8);
}

TEST_CASE("closed-form sigma_beta") {
  SUBCASE("mu = 0, delta = pi/2: first positive root pi^2/4") {
    const auto roots = sigma_beta_roots(0.0, kPi / 2, 0.5, 30.0);
    REQUIRE_FALSE(roots.empty());
    CHECK(std::abs(roots.front() - kPi * kPi / 4) < 1e-10);
  }
  SUBCASE("roots agree with the matching solver") {
    for (auto [mu, delta] : {std::pair{10.0, kPi / 2}, std::pair{3.0, 1.0}}) {
      const auto closed = sigma_beta_roots(mu, delta, -mu - 1.0, 100.0);
      const auto p = MatchingProblem::rotor(mu, rotor_boundary(delta, SpinFamily::AntiDiagonal, 0.3));
      const SpectralResult r = find_eigenvalues(p, -mu - 1.0, 100.0, 0);
      REQUIRE(closed.size() == r.eigenvalues.size());
      for (std::size_t i = 0; i < closed.size(); ++i) CHECK(std::abs(closed[i] - r.eigenvalues[i]) < 1e-8);
    }
  }
}

TEST_CASE("eigenfunction quality") {
  const auto p = MatchingProblem::rotor(10.0, rotor_boundary(kPi / 2, SpinFamily::AntiDiagonal, kPi / 2));
  const SpectralResult r = find_eigenvalues(p, -11.0, 100.0, 6);
  REQUIRE(r.eigenvalues.size() == 6);
  for (double e : r.eigenvalues) {
    // A true zero, not a grazing minimum.
    CHECK(spectral_indicator(e, p) < 1e-8);
    CHECK(spectral_indicator(e - 0.01, p) > 1e-4);
    CHECK(spectral_indicator(e + 0.01, p) > 1e-4);

    const auto modes = assemble_eigenspace(e, p, 2001);
    REQUIRE(modes.size() == 1);
    const MatchedMode& m = modes.front();
    CHECK(boundary_residual(p, e, m.coefficients) < 1e-8);
    CHECK(std::abs(l2_norm(m.state) - 1.0) < 1e-10);

    // -Phi'' + H_B Phi = E Phi by five-point differences of the analytic form.
    const double h = 1e-3;
    double worst = 0.0;
    for (double x = 0.05; x < 0.96; x += 0.05) {
      const auto at = [&](double y) { return evaluate_mode(p, e, m.coefficients, y).value; };
      const CVector f0 = at(x);
      const CVector d2 = (-at(x + 2 * h) + 16.0 * at(x + h) - 30.0 * f0 + 16.0 * at(x - h) - at(x - 2 * h)) / (12 * h * h);
      CVector res(2);
      res(0) = -d2(0) + 10.0 * f0(0) - e * f0(0);
      res(1) = -d2(1) - 10.0 * f0(1) - e * f0(1);
      worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-6);
    // Sampled state agrees with the coefficients.
    const CVector mid = evaluate_mode(p, e, m.coefficients, m.state.grid[1000]).value;
    CHECK((mid.transpose() - m.state.values.row(1000)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(assemble_eigenfunction(0.123, p, 101), std::domain_error);
}

TEST_CASE("degenerate eigenspaces are orthonormal") {
  const auto p = MatchingProblem::rotor(0.0, rotor_boundary(0.0, SpinFamily::Identity, 0.0));
  const auto modes = assemble_eigenspace(4 * kPi * kPi, p, 2001);
  REQUIRE(modes.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const cplx ov = inner_product(modes[i].state, modes[j].state);
      CHECK(std::abs(ov - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
  const auto constant = assemble_eigenspace(0.0, p, 101);
  REQUIRE(constant.size() == 2);
  for (const auto& m : constant) {
    const CMatrix& v = m.state.values;
    CHECK(max_abs(v.rowwise() - v.row(0)) < 1e-12);
  }
}

TEST_CASE("diagonal family: single-spin support") {
  const auto p = MatchingProblem::rotor(10.0, rotor_boundary(kPi / 2, SpinFamily::Diagonal, kPi / 2));
  const SpectralResult r = solve_spectrum(p, -11.0, 100.0, 6, 501);
  REQUIRE(r.eigenfunctions.size() == 6);
  for (const auto& f : r.eigenfunctions) {
    const double up = f.values.col(0).cwiseAbs().maxCoeff();
    const double dn = f.values.col(1).cwiseAbs().maxCoeff();
    CHECK(std::min(up, dn) < 1e-10);
    CHECK(std::max(up, dn) > 0.1);
  }
}

TEST_CASE("anti-diagonal family: spectrum independent of beta, eigenfunctions not") {
  std::vector<SpectralResult> runs;
  for (double beta : {0.0, kPi / 4, kPi / 2, kPi}) {
    const auto p = MatchingProblem::rotor(10.0, rotor_boundary(kPi / 2, SpinFamily::AntiDiagonal, beta));
    runs.push_back(solve_spectrum(p, -11.0, 100.0, 6, 501));
  }
  for (const auto& r : runs) {
    REQUIRE(r.eigenvalues.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(r.eigenvalues[i] - runs[0].eigenvalues[i]) < 1e-8);
  }
  double largest = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    const HybridState& a = runs[0].eigenfunctions[i];
    const HybridState& b = runs[2].eigenfunctions[i];
    const cplx ov = inner_product(a, b);
    const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : 1.0;
    HybridState diff{a.grid, a.values * phase - b.values};
    largest = std::max(largest, l2_norm(diff));
  }
  CHECK(largest > 1e-2);
}

TEST_CASE("lower spectral bound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix u = oracle::random_unitary_bounded_phase(4, 0.8 * kPi, rng);
    const MatchingProblem p({1.5, -1.5}, BoundaryUnitary(u));
    const double lo = lower_spectral_bound(p);
    const SpectralResult below = find_eigenvalues(p, lo - 50.0, lo, 0);
    CHECK(below.eigenvalues.empty());
  }
}

TEST_CASE("matching roots agree with the FEM for random configurations") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mu_dist(0.0, 10.0);
  std::uniform_real_distribution<double> delta_dist(0.0, 2.0 * kPi);
  const FemErrorModel model = calibrate_error_model();
  for (int trial = 0; trial < 10; ++trial) {
    const double mu = mu_dist(rng);
    const double delta = delta_dist(rng);
    const CMatrix ub = oracle::random_unitary(2, rng);
    const auto p = MatchingProblem::rotor(mu, tensor_boundary(make_quasi_periodic(delta), ub));
    const SpectralResult roots = lowest_roots(p, 6);
    const std::vector<double> flat = [&] {
      std::vector<double> v;
      for (std::size_t b = 0; b < roots.eigenvalues.size(); ++b) {
        for (int k = 0; k < roots.multiplicities[b]; ++k) v.push_back(roots.eigenvalues[b]);
      }
      return v;
    }();
    const FemProblem fp = make_fem_problem(Geometry::Interval, {mu, -mu}, p.boundary(), 400);
    const FemEigenpairs fe = solve_lowest(fp, 6);
    for (std::size_t j = 0; j < 6; ++j) {
      INFO("trial " << trial << " eigenvalue " << j << " mu " << mu);
      CHECK(std::abs(fe.eigenvalues[j] - flat[j]) <= model.bound(fp.h(), flat[j], fp.bulk_eigenvalues));
    }
  }
}

}  // TEST_SUITE
