// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "bsc/common.hpp"
#include "bsc/hamlib/ladder.hpp"

namespace bsc::homodyne {

/// Bound on |K| for the single-rail raising/lowering kernels. Shot values of
/// a term with k raising and k lowering symbols are bounded by
/// |coefficient| * kSigmaBound^(2k).
inline constexpr double kSigmaBound = 2.07317;

/// Scaled parabolic cylinder values e^{-x^2} D_{-k}(-2ix) for k = 0..max_order.
///
/// Seeds are D_0 and D_{-1} (the latter via the Dawson integral), then the
/// three-term recurrence D_{v-1} = (z D_v - D_{v+1}) / v is run towards
/// more negative orders.
std::vector<cplx> scaled_parabolic_cylinder(int max_order, double x);

/// Pattern function of the operator |n+lambda><n| (lambda >= 0) or of its
/// adjoint |n><n-lambda| (lambda < 0, evaluated as the complex conjugate).
///
/// With phi uniform on [0, pi) and x drawn from the quadrature density of
/// X_phi = (b+ e^{i phi} + b e^{-i phi}) / 2, the mean of K equals the
/// expectation of the operator.
cplx pattern_kernel(int n, int lambda, double phi, double x);

/// Kernel of a single-rail symbol: Plus = |1><0|, Minus = |0><1|,
/// P0 = |0><0|, P1 = |1><1| and Z = P0 - P1. Identity has no kernel in this
/// protocol (it is read by photon counting) and throws ValidationError.
cplx kernel(hamlib::Symbol symbol, double phi, double x);

/// Closed interval bounding Re K over all (phi, x).
struct KernelRange {
  double lo;
  double hi;
};

/// Immutable table of the single-rail kernels with their certified ranges.
class KernelTable {
 public:
  struct Entry {
    hamlib::Symbol symbol;
    KernelRange range;
  };

  static const KernelTable& instance();

  cplx operator()(hamlib::Symbol symbol, double phi, double x) const { return kernel(symbol, phi, x); }
  KernelRange range(hamlib::Symbol symbol) const;
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  KernelTable();
  std::vector<Entry> entries_;
};

}  // namespace bsc::homodyne
