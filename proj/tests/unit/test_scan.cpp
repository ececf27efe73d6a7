#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "bext/scan.hpp"

using namespace bext;

TEST_SUITE("scan") {

TEST_CASE("grid") {
  const auto xs = scan_grid(-1.0, 1.0, 0.5);
  REQUIRE(xs.size() == 5);
  CHECK(xs.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(scan_grid(1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(scan_grid(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("parallel evaluation is deterministic") {
  const auto xs = scan_grid(0.0, 10.0, 0.001);
  const auto f = [](double x) { return std::sin(x) * std::exp(-x); };
  const auto serial = evaluate_grid(f, xs, 1);
  for (int t : {2, 3, 8}) CHECK(evaluate_grid(f, xs, t) == serial);
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(4) == 4);
  ::setenv("BEXT_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  ::setenv("BEXT_THREADS", "junk", 1);
  CHECK(resolve_threads(0) == 1);
  ::unsetenv("BEXT_THREADS");
  CHECK(resolve_threads(0) == 1);
}

TEST_CASE("golden section on |x - c|") {
  const double c = 0.123456789;
  const double x = golden_section_minimize([c](double t) { return std::abs(t - c); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(x - c) < 1e-11);
}

TEST_CASE("brackets and bisection") {
  const auto xs = scan_grid(0.0, 10.0, 0.01);
  std::vector<double> vs;
  for (double x : xs) vs.push_back(std::cos(x));
  const auto br = sign_change_brackets(xs, vs);
  REQUIRE(br.size() == 3);
  const auto f = [](double x) { return std::cos(x); };
  CHECK(std::abs(bisect_root(f, br[0], 1e-14) - M_PI / 2) < 1e-13);
  CHECK(std::abs(bisect_root(f, br[2], 1e-14) - 5 * M_PI / 2) < 1e-13);

  std::vector<double> absval;
  for (double x : xs) absval.push_back(std::abs(std::sin(x)));
  const auto mins = local_minimum_brackets(xs, absval);
  REQUIRE(mins.size() == 3);  // pi, 2pi, 3pi; x = 0 is an endpoint
  CHECK(mins[0].lo < M_PI);
  CHECK(mins[0].hi > M_PI);
}

}  // TEST_SUITE
