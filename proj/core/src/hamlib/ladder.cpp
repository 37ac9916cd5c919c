// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/hamlib/ladder.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bsc::hamlib {

namespace {

// Real 2x2 matrix in the {|0>,|1>} basis, m[row][col].
using Mat2 = std::array<std::array<int, 2>, 2>;

constexpr Mat2 kIdentity{{{1, 0}, {0, 1}}};
constexpr Mat2 kZ{{{1, 0}, {0, -1}}};
constexpr Mat2 kPlus{{{0, 0}, {1, 0}}};
constexpr Mat2 kMinus{{{0, 1}, {0, 0}}};

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

// Decomposes a single-mode product into sign * symbol; sign 0 means zero.
std::pair<Symbol, int> classify(const Mat2& m) {
  if (m[0][1] == 0 && m[1][0] == 0) {
    const int a = m[0][0], b = m[1][1];
    if (a == 0 && b == 0) return {Symbol::I, 0};
    if (a == b) return {Symbol::I, a};
    if (a == -b) return {Symbol::Z, a};
    if (b == 0) return {Symbol::P0, a};
    return {Symbol::P1, b};
  }
  if (m[0][0] == 0 && m[1][1] == 0 && m[0][1] == 0) return {Symbol::Plus, m[1][0]};
  if (m[0][0] == 0 && m[1][1] == 0 && m[1][0] == 0) return {Symbol::Minus, m[0][1]};
  // Products of Z and single ladder operators never leave this set.
  return {Symbol::I, 0};
}

}  // namespace

char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::I: return 'I';
    case Symbol::Z: return 'Z';
    case Symbol::Plus: return '+';
    case Symbol::Minus: return '-';
    case Symbol::P0: return '0';
    case Symbol::P1: return '1';
  }
  return '?';
}

std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case 'I': return Symbol::I;
    case 'Z': return Symbol::Z;
    case '+': return Symbol::Plus;
    case '-': return Symbol::Minus;
    case '0': return Symbol::P0;
    case '1': return Symbol::P1;
    default: return std::nullopt;
  }
}

std::string to_string(const LadderString& s) {
  std::string out;
  out.reserve(s.size());
  for (auto sym : s) out.push_back(symbol_char(sym));
  return out;
}

LadderString ladder_string_from(const std::string& text) {
  LadderString s;
  s.reserve(text.size());
  for (char c : text) {
    auto sym = symbol_from_char(c);
    if (!sym) throw ValidationError(std::string("invalid ladder symbol '") + c + "'");
    s.push_back(*sym);
  }
  return s;
}

int count_raising(const LadderString& s) { return static_cast<int>(std::count(s.begin(), s.end(), Symbol::Plus)); }
int count_lowering(const LadderString& s) { return static_cast<int>(std::count(s.begin(), s.end(), Symbol::Minus)); }
bool is_diagonal(const LadderString& s) { return count_raising(s) == 0 && count_lowering(s) == 0; }

std::optional<std::pair<std::uint64_t, double>> apply(const LadderString& s, std::uint64_t bits) {
  double value = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::uint64_t mask = std::uint64_t{1} << i;
    const bool set = bits & mask;
    switch (s[i]) {
      case Symbol::I: break;
      case Symbol::Z: if (set) value = -value; break;
      case Symbol::Plus: if (set) return std::nullopt; bits |= mask; break;
      case Symbol::Minus: if (!set) return std::nullopt; bits &= ~mask; break;
      case Symbol::P0: if (set) return std::nullopt; break;
      case Symbol::P1: if (!set) return std::nullopt; break;
    }
  }
  return std::pair{bits, value};
}

LadderString adjoint(const LadderString& s) {
  LadderString out(s);
  for (auto& sym : out) {
    if (sym == Symbol::Plus) sym = Symbol::Minus;
    else if (sym == Symbol::Minus) sym = Symbol::Plus;
  }
  return out;
}

void LadderTermSum::add(const LadderString& s, cplx c) {
  if (static_cast<int>(s.size()) != modes_) throw ValidationError("ladder string length does not match mode count");
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneTolerance) terms_.erase(it);
}

cplx LadderTermSum::coefficient(const LadderString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? cplx{} : it->second;
}

LadderTermSum LadderTermSum::expand_projectors() const {
  LadderTermSum out(modes_);
  for (const auto& [s, c] : terms_) {
    std::vector<std::pair<LadderString, cplx>> partial{{s, c}};
    for (int i = 0; i < modes_; ++i) {
      if (s[i] != Symbol::P0 && s[i] != Symbol::P1) continue;
      const double zsign = s[i] == Symbol::P0 ? 1.0 : -1.0;
      std::vector<std::pair<LadderString, cplx>> next;
      next.reserve(2 * partial.size());
      for (auto& [ps, pc] : partial) {
        LadderString a = ps, b = ps;
        a[i] = Symbol::I;
        b[i] = Symbol::Z;
        next.emplace_back(std::move(a), 0.5 * pc);
        next.emplace_back(std::move(b), 0.5 * zsign * pc);
      }
      partial = std::move(next);
    }
    for (auto& [ps, pc] : partial) out.add(ps, pc);
  }
  return out;
}

double LadderTermSum::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& [s, c] : terms_) {
    worst = std::max(worst, std::abs(c - std::conj(coefficient(adjoint(s)))));
  }
  return worst;
}

LadderTermSum jordan_wigner(const FermiTermSum& op, int modes, bool expand) {
  if (op.mode_span() > modes) throw ValidationError("operator references modes beyond the requested mode count");
  LadderTermSum out(modes);
  std::vector<Mat2> per_mode(static_cast<std::size_t>(modes));
  for (const auto& [mono, c] : op.terms()) {
    std::fill(per_mode.begin(), per_mode.end(), kIdentity);
    for (const auto& l : mono) {
      for (int j = 0; j < l.mode; ++j) per_mode[j] = mul(per_mode[j], kZ);
      per_mode[l.mode] = mul(per_mode[l.mode], l.dagger ? kPlus : kMinus);
    }
    LadderString s(static_cast<std::size_t>(modes), Symbol::I);
    int sign = 1;
    for (int j = 0; j < modes && sign != 0; ++j) {
      auto [sym, sg] = classify(per_mode[j]);
      s[j] = sym;
      sign *= sg;
    }
    if (sign != 0) out.add(s, c * static_cast<double>(sign));
  }
  return expand ? out.expand_projectors() : out;
}

}  // namespace bsc::hamlib
