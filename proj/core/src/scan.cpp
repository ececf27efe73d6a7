#include "bext/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace bext {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BEXT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the single-threaded default
    }
  }
  return 1;
}

std::vector<double> scan_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) throw std::invalid_argument("scan grid needs lo < hi and step > 0");
  const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  return xs;
}

std::vector<double> evaluate_grid(const ScalarFunction& f, const std::vector<double>& xs, int threads) {
  std::vector<double> out(xs.size());
  const std::size_t n = xs.size();
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(xs[i]);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) out[i] = f(xs[i]);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Bracket> local_minimum_brackets(const std::vector<double>& xs, const std::vector<double>& vs) {
  std::vector<Bracket> out;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (vs[i] < vs[i - 1] && vs[i] <= vs[i + 1]) out.push_back({xs[i - 1], xs[i + 1]});
  }
  return out;
}

std::vector<Bracket> sign_change_brackets(const std::vector<double>& xs, const std::vector<double>& vs) {
  std::vector<Bracket> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (vs[i] == 0.0 || (vs[i] < 0.0) != (vs[i + 1] < 0.0)) {
      if (vs[i + 1] == 0.0) continue;  // reported by the next interval
      out.push_back({xs[i], xs[i + 1]});
    }
  }
  return out;
}

double golden_section_minimize(const ScalarFunction& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

double bisect_root(const ScalarFunction& f, Bracket b, double tol) {
  double lo = b.lo;
  double hi = b.hi;
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bext
