// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsc/common.hpp"
#include "bsc/hamlib/fermion.hpp"

namespace bsc::hamlib {

/// Single-mode operator symbols. Plus = |1><0|, Minus = |0><1|,
/// P0 = |0><0|, P1 = |1><1|, Z = P0 - P1.
enum class Symbol : std::uint8_t { I, Z, Plus, Minus, P0, P1 };

char symbol_char(Symbol s);
/// 'I','Z','+','-','0','1'.
std::optional<Symbol> symbol_from_char(char c);

/// One symbol per mode.
using LadderString = std::vector<Symbol>;

std::string to_string(const LadderString& s);
LadderString ladder_string_from(const std::string& text);

/// Number of Plus and Minus symbols (the k of a term is half of this for
/// number-conserving strings).
int count_raising(const LadderString& s);
int count_lowering(const LadderString& s);
bool is_diagonal(const LadderString& s);

/// Applies the string to qubit basis state `bits` (bit i = mode i).
/// Returns the image bitstring and its matrix element, or nullopt if the
/// string annihilates the state.
std::optional<std::pair<std::uint64_t, double>> apply(const LadderString& s, std::uint64_t bits);

/// Hermitian conjugate string (Plus <-> Minus).
LadderString adjoint(const LadderString& s);

/// Weighted sum of ladder strings over a fixed number of modes.
class LadderTermSum {
 public:
  using TermMap = std::map<LadderString, cplx>;

  explicit LadderTermSum(int modes = 0) : modes_(modes) {}

  int modes() const noexcept { return modes_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add(const LadderString& s, cplx c);
  cplx coefficient(const LadderString& s) const;
  cplx constant() const { return coefficient(LadderString(modes_, Symbol::I)); }

  /// Rewrites P0 -> (I+Z)/2 and P1 -> (I-Z)/2 (Pauli export form).
  LadderTermSum expand_projectors() const;

  /// max |c - conj(c_partner)| over terms; zero for a Hermitian sum.
  double hermiticity_defect() const;

 private:
  int modes_;
  TermMap terms_;
};

/// Jordan-Wigner image: f+_j = Z_0..Z_{j-1} Plus_j, f_j = Z_0..Z_{j-1} Minus_j,
/// reduced per mode into {I,Z,Plus,Minus,P0,P1}. `modes` must cover every
/// referenced mode.
LadderTermSum jordan_wigner(const FermiTermSum& op, int modes, bool expand_projectors = false);

}  // namespace bsc::hamlib
