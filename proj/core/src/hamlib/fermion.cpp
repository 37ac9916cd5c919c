// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/hamlib/fermion.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace bsc::hamlib {

namespace {

// Sort key of the normal form: creators ascending, then annihilators descending.
std::pair<int, int> order_key(const Ladder& l) { return l.dagger ? std::pair{0, l.mode} : std::pair{1, -l.mode}; }

// Expands c * ops into normal-ordered monomials, appending to `out`.
void normal_order(Monomial ops, cplx c, std::vector<std::pair<Monomial, cplx>>& out) {
  for (;;) {
    std::size_t i = 0;
    for (; i + 1 < ops.size(); ++i) {
      if (order_key(ops[i]) >= order_key(ops[i + 1])) break;
    }
    if (i + 1 >= ops.size()) {
      out.emplace_back(std::move(ops), c);
      return;
    }
    const Ladder a = ops[i], b = ops[i + 1];
    if (a == b) return;  // f f = f+ f+ = 0
    if (a.mode == b.mode && !a.dagger && b.dagger) {
      // f_p f+_p = 1 - f+_p f_p
      Monomial contracted;
      contracted.reserve(ops.size() - 2);
      contracted.insert(contracted.end(), ops.begin(), ops.begin() + static_cast<std::ptrdiff_t>(i));
      contracted.insert(contracted.end(), ops.begin() + static_cast<std::ptrdiff_t>(i) + 2, ops.end());
      normal_order(std::move(contracted), c, out);
    }
    std::swap(ops[i], ops[i + 1]);
    c = -c;
  }
}

}  // namespace

bool is_normal_ordered(std::span<const Ladder> m) {
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    if (order_key(m[i]) >= order_key(m[i + 1])) return false;
  }
  return true;
}

FermiTermSum FermiTermSum::identity(cplx c) {
  FermiTermSum s;
  s.accumulate({}, c);
  s.prune();
  return s;
}

void FermiTermSum::accumulate(const Monomial& normal, cplx c) { terms_[normal] += c; }

void FermiTermSum::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneTolerance; });
}

void FermiTermSum::add(std::span<const Ladder> ops, cplx c) {
  std::vector<std::pair<Monomial, cplx>> expanded;
  normal_order(Monomial(ops.begin(), ops.end()), c, expanded);
  for (auto& [m, v] : expanded) accumulate(m, v);
  prune();
}

cplx FermiTermSum::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx{} : it->second;
}

int FermiTermSum::mode_span() const {
  int span = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& l : m) span = std::max(span, l.mode + 1);
  }
  return span;
}

FermiTermSum FermiTermSum::adjoint() const {
  FermiTermSum out;
  std::vector<std::pair<Monomial, cplx>> expanded;
  for (const auto& [m, c] : terms_) {
    Monomial rev(m.rbegin(), m.rend());
    for (auto& l : rev) l.dagger = !l.dagger;
    expanded.clear();
    normal_order(std::move(rev), std::conj(c), expanded);
    for (auto& [mm, v] : expanded) out.accumulate(mm, v);
  }
  out.prune();
  return out;
}

FermiTermSum& FermiTermSum::operator+=(const FermiTermSum& other) {
  for (const auto& [m, c] : other.terms_) accumulate(m, c);
  prune();
  return *this;
}

FermiTermSum& FermiTermSum::operator*=(cplx c) {
  for (auto& [m, v] : terms_) v *= c;
  prune();
  return *this;
}

std::string FermiTermSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (const auto& l : m) os << " f" << (l.dagger ? "+" : "") << l.mode;
  }
  return first ? "0" : os.str();
}

FermiTermSum multiply_normal_order(const FermiTermSum& a, const FermiTermSum& b) {
  FermiTermSum out;
  std::vector<std::pair<Monomial, cplx>> expanded;
  Monomial joined;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      joined.assign(ma.begin(), ma.end());
      joined.insert(joined.end(), mb.begin(), mb.end());
      expanded.clear();
      normal_order(joined, ca * cb, expanded);
      for (auto& [m, v] : expanded) out.accumulate(m, v);
    }
  }
  out.prune();
  return out;
}

}  // namespace bsc::hamlib
