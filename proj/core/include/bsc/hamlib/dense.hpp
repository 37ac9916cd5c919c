// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "bsc/hamlib/fermion.hpp"
#include "bsc/hamlib/ladder.hpp"

namespace bsc::hamlib {

inline constexpr int kMaxDenseModes = 14;

/// Occupation-basis matrix on 2^M states, basis index bit i = n_i.
/// Throws GuardError for M > 14.
Eigen::MatrixXcd to_dense(const FermiTermSum& op, int modes);
Eigen::MatrixXcd to_dense(const LadderTermSum& op);

/// Applies a normal-ordered monomial to occupation bitstring `bits`.
/// Returns false if the monomial annihilates it; otherwise `out` and `sign`
/// receive the image and the fermionic sign.
bool apply_monomial(const Monomial& m, std::uint64_t bits, std::uint64_t& out, int& sign);

/// Matrix of `op` restricted to the span of the given occupation bitstrings
/// (all of equal particle number for a number-conserving op).
Eigen::MatrixXcd sector_matrix(const FermiTermSum& op, std::span<const std::uint64_t> basis);

}  // namespace bsc::hamlib
