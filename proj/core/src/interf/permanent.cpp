// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/interf/permanent.hpp"

#include <bit>
#include <string>
#include <vector>

namespace bsc::interf {

cplx permanent(const Eigen::Ref<const Eigen::MatrixXcd>& a) {
  const auto n = a.rows();
  if (a.cols() != n) throw ValidationError("permanent of a non-square matrix");
  if (n > kMaxPermanentSize) throw GuardError("permanent limited to n <= " + std::to_string(kMaxPermanentSize));
  switch (n) {
    case 0: return 1.0;
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) + a(1, 2) * a(2, 1)) + a(0, 1) * (a(1, 0) * a(2, 2) + a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) + a(1, 1) * a(2, 0));
    default: break;
  }

  // Ryser: per(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij, with
  // S visited in Gray-code order so each step adds or removes one column.
  std::vector<cplx> row_sum(static_cast<std::size_t>(n), cplx{});
  cplx total = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit) {
      for (Eigen::Index i = 0; i < n; ++i) row_sum[i] += a(i, j);
    } else {
      for (Eigen::Index i = 0; i < n; ++i) row_sum[i] -= a(i, j);
    }
    cplx prod = row_sum[0];
    for (Eigen::Index i = 1; i < n; ++i) prod *= row_sum[i];
    if (std::popcount(gray) & 1) total -= prod;
    else total += prod;
  }
  return (n & 1) ? -total : total;
}

cplx determinant(const Eigen::Ref<const Eigen::MatrixXcd>& a) {
  if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
  switch (a.rows()) {
    case 0: return 1.0;
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    default: return Eigen::MatrixXcd(a).partialPivLu().determinant();
  }
}

}  // namespace bsc::interf
