// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/hamlib/dense.hpp"

#include <bit>
#include <string>
#include <unordered_map>

namespace bsc::hamlib {

namespace {

void guard(int modes) {
  if (modes < 0 || modes > kMaxDenseModes) {
    throw GuardError("dense matrices limited to " + std::to_string(kMaxDenseModes) + " modes, got " +
                     std::to_string(modes));
  }
}

}  // namespace

bool apply_monomial(const Monomial& m, std::uint64_t bits, std::uint64_t& out, int& sign) {
  sign = 1;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    const std::uint64_t mask = std::uint64_t{1} << it->mode;
    const bool set = bits & mask;
    if (set == it->dagger) return false;
    if (std::popcount(bits & (mask - 1)) & 1) sign = -sign;
    bits ^= mask;
  }
  out = bits;
  return true;
}

Eigen::MatrixXcd to_dense(const FermiTermSum& op, int modes) {
  guard(modes);
  if (op.mode_span() > modes) throw ValidationError("operator references modes beyond the requested mode count");
  const std::uint64_t dim = std::uint64_t{1} << modes;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [m, c] : op.terms()) {
    for (std::uint64_t s = 0; s < dim; ++s) {
      std::uint64_t t;
      int sign;
      if (apply_monomial(m, s, t, sign)) d(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += c * double(sign);
    }
  }
  return d;
}

Eigen::MatrixXcd to_dense(const LadderTermSum& op) {
  guard(op.modes());
  const std::uint64_t dim = std::uint64_t{1} << op.modes();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [s, c] : op.terms()) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (auto r = apply(s, b)) d(static_cast<Eigen::Index>(r->first), static_cast<Eigen::Index>(b)) += c * r->second;
    }
  }
  return d;
}

Eigen::MatrixXcd sector_matrix(const FermiTermSum& op, std::span<const std::uint64_t> basis) {
  std::unordered_map<std::uint64_t, Eigen::Index> where;
  where.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) where.emplace(basis[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [m, c] : op.terms()) {
    for (Eigen::Index col = 0; col < n; ++col) {
      std::uint64_t t;
      int sign;
      if (!apply_monomial(m, basis[static_cast<std::size_t>(col)], t, sign)) continue;
      auto it = where.find(t);
      if (it != where.end()) d(it->second, col) += c * double(sign);
    }
  }
  return d;
}

}  // namespace bsc::hamlib
