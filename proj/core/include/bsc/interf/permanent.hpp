// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "bsc/common.hpp"

namespace bsc::interf {

inline constexpr int kMaxPermanentSize = 20;

/// Exact permanent by Ryser's formula with Gray-code column subsets,
/// O(2^n n). Throws ValidationError for non-square input and GuardError for
/// n > 20. The 0x0 permanent is 1.
cplx permanent(const Eigen::Ref<const Eigen::MatrixXcd>& a);

/// Determinant by partially pivoted LU (1 for the 0x0 matrix).
cplx determinant(const Eigen::Ref<const Eigen::MatrixXcd>& a);

}  // namespace bsc::interf
