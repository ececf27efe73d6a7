#include "banded.hpp"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace bext::detail {

namespace {

// Upper Hermitian band storage: ab[kd + i - j + j * (kd + 1)] = A(i, j), i <= j.
std::vector<cplx> upper_band(const SparseC& a, int kd) {
  const auto n = static_cast<std::size_t>(a.cols());
  const auto ld = static_cast<std::size_t>(kd + 1);
  std::vector<cplx> ab(ld * n, cplx(0.0));
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseC::InnerIterator it(a, j); it; ++it) {
      const auto i = static_cast<int>(it.row());
      if (i > j) continue;
      if (j - i > kd) throw std::logic_error("matrix entry outside declared band");
      ab[static_cast<std::size_t>(kd + i - j) + static_cast<std::size_t>(j) * ld] = it.value();
    }
  }
  return ab;
}

}  // namespace

int bandwidth(const SparseC& a) {
  int kd = 0;
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseC::InnerIterator it(a, j); it; ++it) kd = std::max(kd, std::abs(static_cast<int>(it.row()) - j));
  }
  return kd;
}

std::vector<double> banded_lowest_eigenvalues(const SparseC& k, const SparseC& m, int kd, int count) {
  const auto n = static_cast<lapack_int>(k.rows());
  if (count < 1 || count > n) throw std::invalid_argument("requested eigenvalue count out of range");
  std::vector<cplx> ab = upper_band(k, kd);
  std::vector<cplx> bb = upper_band(m, kd);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
  cplx q_dummy(0.0);
  cplx z_dummy(0.0);
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_zhbgvx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, kd, ab.data(), kd + 1, bb.data(),
                                         kd + 1, &q_dummy, 1, 0.0, 0.0, 1, count, abstol, &found, w.data(),
                                         &z_dummy, 1, ifail.data());
  if (info != 0) throw std::runtime_error("zhbgvx failed, info = " + std::to_string(info));
  w.resize(static_cast<std::size_t>(found));
  return w;
}

BandedLu::BandedLu(const SparseC& a, int kd) : n_(static_cast<int>(a.rows())), kd_(kd) {
  // General band storage for zgbtrf: row kl + ku + i - j holds A(i, j).
  const auto ld = static_cast<std::size_t>(3 * kd + 1);
  ab_.assign(ld * static_cast<std::size_t>(n_), cplx(0.0));
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseC::InnerIterator it(a, j); it; ++it) {
      const auto i = static_cast<int>(it.row());
      if (std::abs(i - j) > kd) throw std::logic_error("matrix entry outside declared band");
      ab_[static_cast<std::size_t>(2 * kd + i - j) + static_cast<std::size_t>(j) * ld] = it.value();
    }
  }
  ipiv_.resize(static_cast<std::size_t>(n_));
  const lapack_int info =
      LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n_, n_, kd_, kd_, ab_.data(), static_cast<lapack_int>(ld), ipiv_.data());
  if (info < 0) throw std::runtime_error("zgbtrf failed, info = " + std::to_string(info));
  // info > 0 flags an exactly singular U; the shift never lands on an
  // eigenvalue exactly, so treat it as a failure too.
  if (info > 0) throw std::runtime_error("shifted FEM matrix is singular");
}

void BandedLu::solve(CMatrix& b) const {
  const auto ld = static_cast<lapack_int>(3 * kd_ + 1);
  const lapack_int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n_, kd_, kd_, static_cast<lapack_int>(b.cols()),
                                         ab_.data(), ld, ipiv_.data(), b.data(), static_cast<lapack_int>(b.rows()));
  if (info != 0) throw std::runtime_error("zgbtrs failed, info = " + std::to_string(info));
}

}  // namespace bext::detail
