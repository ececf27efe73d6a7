#pragma once

// Thin wrappers over LAPACK banded Hermitian routines.

#include <vector>

#include <Eigen/SparseCore>

#include "bext/types.hpp"

namespace bext::detail {

using SparseC = Eigen::SparseMatrix<cplx>;

/// max |i - j| over stored entries.
int bandwidth(const SparseC& a);

/// Lowest `count` eigenvalues of K x = E M x (K Hermitian, M HPD, both with
/// half-bandwidth <= kd), ascending. Throws std::runtime_error on LAPACK
/// failure.
std::vector<double> banded_lowest_eigenvalues(const SparseC& k, const SparseC& m, int kd, int count);

/// LU factorization of a general banded matrix with partial pivoting.
class BandedLu {
 public:
  BandedLu(const SparseC& a, int kd);
  /// Solves A X = B in place.
  void solve(CMatrix& b) const;

 private:
  int n_;
  int kd_;
  std::vector<cplx> ab_;
  std::vector<int> ipiv_;
};

}  // namespace bext::detail
