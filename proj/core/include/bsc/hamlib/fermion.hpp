// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bsc/common.hpp"

namespace bsc::hamlib {

/// Coefficients below this magnitude are dropped after every algebra step.
inline constexpr double kPruneTolerance = 1e-12;

/// A single creation (dagger) or annihilation operator on one mode.
struct Ladder {
  int mode = 0;
  bool dagger = false;

  auto operator<=>(const Ladder&) const = default;
};

inline Ladder cr(int mode) { return {mode, true}; }
inline Ladder an(int mode) { return {mode, false}; }

/// Product of ladder operators, leftmost applied last.
using Monomial = std::vector<Ladder>;

/// Weighted sum of normal-ordered fermionic monomials.
///
/// Normal form: creators first in ascending mode order, then annihilators in
/// descending mode order, so f+_0 f+_1 f_1 f_0 = n_0 n_1. The empty monomial
/// is the identity.
class FermiTermSum {
 public:
  using TermMap = std::map<Monomial, cplx>;

  FermiTermSum() = default;

  static FermiTermSum identity(cplx c = 1.0);

  /// Adds c * product(ops) after normal ordering `ops`.
  void add(std::span<const Ladder> ops, cplx c);
  void add(std::initializer_list<Ladder> ops, cplx c) { add(std::span<const Ladder>(ops.begin(), ops.size()), c); }

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Coefficient of an already normal-ordered monomial (0 if absent).
  cplx coefficient(const Monomial& m) const;

  /// Largest mode index referenced plus one.
  int mode_span() const;

  FermiTermSum adjoint() const;

  FermiTermSum& operator+=(const FermiTermSum& other);
  FermiTermSum& operator*=(cplx c);
  friend FermiTermSum operator+(FermiTermSum a, const FermiTermSum& b) { return a += b; }
  friend FermiTermSum operator*(FermiTermSum a, cplx c) { return a *= c; }

  std::string to_string() const;

 private:
  friend FermiTermSum multiply_normal_order(const FermiTermSum& a, const FermiTermSum& b);

  void accumulate(const Monomial& normal, cplx c);
  void prune();

  TermMap terms_;
};

/// Normal-ordered product a*b using the canonical anticommutation relations.
FermiTermSum multiply_normal_order(const FermiTermSum& a, const FermiTermSum& b);

inline FermiTermSum operator*(const FermiTermSum& a, const FermiTermSum& b) { return multiply_normal_order(a, b); }

/// True if `m` satisfies the normal-form ordering (and has no repeats).
bool is_normal_ordered(std::span<const Ladder> m);

}  // namespace bsc::hamlib
