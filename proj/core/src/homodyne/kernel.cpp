// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/homodyne/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <gsl/gsl_sf_dawson.h>

namespace bsc::homodyne {

using hamlib::Symbol;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

cplx minus_i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

}  // namespace

std::vector<cplx> scaled_parabolic_cylinder(int max_order, double x) {
  if (max_order < 0) throw ValidationError("parabolic cylinder order must be nonnegative");
  std::vector<cplx> d(static_cast<std::size_t>(max_order) + 1);
  // z = -2ix, so z^2/4 = -x^2 and erfc(z/sqrt2) = 1 + i erfi(sqrt2 x).
  const double s = std::numbers::sqrt2 * x;
  d[0] = 1.0;
  if (max_order >= 1) {
    d[1] = cplx(std::sqrt(std::numbers::pi / 2.0) * std::exp(-2.0 * x * x), std::numbers::sqrt2 * gsl_sf_dawson(s));
  }
  const cplx z(0.0, -2.0 * x);
  for (int k = 1; k < max_order; ++k) d[k + 1] = (d[k - 1] - z * d[k]) / static_cast<double>(k);
  return d;
}

cplx pattern_kernel(int n, int lambda, double phi, double x) {
  if (lambda < 0) return std::conj(pattern_kernel(n + lambda, -lambda, phi, x));
  if (n < 0) throw ValidationError("pattern function needs a nonnegative photon number");
  const auto d = scaled_parabolic_cylinder(2 * n + lambda + 2, x);
  const cplx phase = minus_i_pow(lambda);
  double sum = 0.0;
  for (int nu = 0; nu <= n; ++nu) {
    const double w = ((nu & 1) ? -1.0 : 1.0) / factorial(nu) * choose(n + lambda, n - nu) * factorial(2 * nu + lambda + 1);
    sum += w * (phase * d[static_cast<std::size_t>(2 * nu + lambda + 2)]).real();
  }
  const double pref = 2.0 * std::sqrt(factorial(n) / factorial(n + lambda));
  return pref * sum * std::polar(1.0, -lambda * phi);
}

cplx kernel(Symbol symbol, double phi, double x) {
  switch (symbol) {
    case Symbol::Plus: return pattern_kernel(0, 1, phi, x);
    case Symbol::Minus: return pattern_kernel(1, -1, phi, x);
    case Symbol::P0: return pattern_kernel(0, 0, phi, x);
    case Symbol::P1: return pattern_kernel(1, 0, phi, x);
    case Symbol::Z: return pattern_kernel(0, 0, phi, x) - pattern_kernel(1, 0, phi, x);
    default: break;
  }
  throw ValidationError(std::string("no single-rail kernel for symbol '") + hamlib::symbol_char(symbol) + "'");
}

KernelTable::KernelTable()
    : entries_{{Symbol::Plus, {-kSigmaBound, kSigmaBound}},
               {Symbol::Minus, {-kSigmaBound, kSigmaBound}},
               {Symbol::Z, {-2.92345, 5.33333}},
               {Symbol::P0, {-0.6, 2.0001}},
               {Symbol::P1, {-2.0001, 2.02}}} {}

const KernelTable& KernelTable::instance() {
  static const KernelTable table;
  return table;
}

KernelRange KernelTable::range(Symbol symbol) const {
  for (const auto& e : entries_)
    if (e.symbol == symbol) return e.range;
  throw ValidationError(std::string("no single-rail kernel for symbol '") + hamlib::symbol_char(symbol) + "'");
}

}  // namespace bsc::homodyne
