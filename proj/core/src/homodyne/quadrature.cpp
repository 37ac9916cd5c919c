// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/homodyne/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bsc::homodyne {

void hermite_functions(int n_max, double x, std::span<double> out) {
  if (n_max < 0 || out.size() < static_cast<std::size_t>(n_max) + 1) {
    throw ValidationError("hermite_functions output span too small");
  }
  const double y = std::numbers::sqrt2 * x;
  out[0] = std::pow(2.0 / std::numbers::pi, 0.25) * std::exp(-x * x);
  if (n_max >= 1) out[1] = std::numbers::sqrt2 * y * out[0];
  for (int n = 1; n < n_max; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * y * out[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  }
}

double hermite_function(int n, double x) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  hermite_functions(n, x, v);
  return v.back();
}

double quadrature_density(const Eigen::MatrixXcd& rho, double phi, double x) {
  const int dim = static_cast<int>(rho.rows());
  if (dim == 0) return 0.0;
  std::vector<double> psi(static_cast<std::size_t>(dim));
  hermite_functions(dim - 1, x, psi);
  double p = 0.0;
  for (int n = 0; n < dim; ++n) {
    p += rho(n, n).real() * psi[n] * psi[n];
    for (int m = n + 1; m < dim; ++m) p += 2.0 * (rho(n, m) * std::polar(1.0, -(n - m) * phi)).real() * psi[n] * psi[m];
  }
  return p;
}

QuadratureDensity::QuadratureDensity(std::vector<Component> components, std::vector<double> phases)
    : components_(std::move(components)), phases_(std::move(phases)) {
  for (const auto& [occ, amp] : components_) {
    if (occ.size() != phases_.size()) throw ValidationError("component and phase counts differ");
    for (int n : occ) {
      if (n < 0) throw ValidationError("negative photon number");
      n_max_ = std::max(n_max_, n);
    }
  }
}

double QuadratureDensity::joint(std::span<const double> x) const {
  if (x.size() != phases_.size()) throw ValidationError("quadrature count does not match modes");
  std::vector<std::vector<double>> psi(phases_.size(), std::vector<double>(static_cast<std::size_t>(n_max_) + 1));
  for (std::size_t j = 0; j < x.size(); ++j) hermite_functions(n_max_, x[j], psi[j]);
  cplx amp = 0.0;
  for (const auto& [occ, c] : components_) {
    cplx term = c;
    for (std::size_t j = 0; j < occ.size(); ++j) term *= std::polar(psi[j][occ[j]], -occ[j] * phases_[j]);
    amp += term;
  }
  return std::norm(amp);
}

Eigen::MatrixXcd QuadratureDensity::reduced(int mode) const {
  if (mode < 0 || mode >= modes()) throw ValidationError("mode out of range");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_max_ + 1, n_max_ + 1);
  for (const auto& [oa, ca] : components_)
    for (const auto& [ob, cb] : components_) {
      bool same_rest = true;
      for (int j = 0; j < modes() && same_rest; ++j) same_rest = (j == mode) || oa[j] == ob[j];
      if (same_rest) rho(oa[mode], ob[mode]) += ca * std::conj(cb);
    }
  return rho;
}

double QuadratureDensity::marginal(int mode, double x) const {
  return quadrature_density(reduced(mode), phases_[static_cast<std::size_t>(mode)], x);
}

QuadratureGrid::QuadratureGrid(int n_max, int points)
    : n_max_(n_max), points_(points), x_max_(std::sqrt(n_max + 1.0) + 2.0) {
  if (n_max < 0) throw ValidationError("negative photon cutoff");
  if (points < 16) throw ValidationError("quadrature grid needs at least 16 points");
  step_ = 2.0 * x_max_ / (points_ - 1);
  const int dim = n_max_ + 1;
  const std::size_t pairs = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  cumulative_.assign(pairs * points_, 0.0);
  std::vector<double> prev(static_cast<std::size_t>(dim)), cur(static_cast<std::size_t>(dim));
  hermite_functions(n_max_, x(0), prev);
  for (int g = 1; g < points_; ++g) {
    hermite_functions(n_max_, x(g), cur);
    for (int n = 0; n < dim; ++n)
      for (int m = n; m < dim; ++m) {
        const std::size_t base = pair_index(n, m) * points_;
        cumulative_[base + g] = cumulative_[base + g - 1] + 0.5 * step_ * (prev[n] * prev[m] + cur[n] * cur[m]);
      }
    std::swap(prev, cur);
  }
}

std::size_t QuadratureGrid::pair_index(int n, int m) const {
  // Row-major upper triangle.
  const int dim = n_max_ + 1;
  return static_cast<std::size_t>(n) * dim - static_cast<std::size_t>(n) * (n - 1) / 2 + (m - n);
}

void QuadratureGrid::weights(const Eigen::MatrixXcd& rho, double phi, std::vector<double>& w) const {
  const int dim = static_cast<int>(rho.rows());
  if (dim > n_max_ + 1) {
    throw ValidationError("density matrix exceeds grid photon cutoff " + std::to_string(n_max_));
  }
  w.assign(static_cast<std::size_t>(n_max_ + 1) * (n_max_ + 2) / 2, 0.0);
  for (int n = 0; n < dim; ++n) {
    w[pair_index(n, n)] = rho(n, n).real();
    for (int m = n + 1; m < dim; ++m) w[pair_index(n, m)] = 2.0 * (rho(n, m) * std::polar(1.0, -(n - m) * phi)).real();
  }
}

double QuadratureGrid::cdf_with(const std::vector<double>& w, int g) const {
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] != 0.0) s += w[k] * cumulative_[k * points_ + g];
  return s;
}

double QuadratureGrid::cdf(const Eigen::MatrixXcd& rho, double phi, int g) const {
  std::vector<double> w;
  weights(rho, phi, w);
  return cdf_with(w, std::clamp(g, 0, points_ - 1));
}

double QuadratureGrid::sample(const Eigen::MatrixXcd& rho, double phi, double u) const {
  std::vector<double> w;
  weights(rho, phi, w);
  const double target = u * cdf_with(w, points_ - 1);
  // Smallest g with cdf(g) >= target.
  int lo = 0, hi = points_ - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (cdf_with(w, mid) >= target) hi = mid;
    else lo = mid + 1;
  }
  if (lo == 0) return x(0);
  const double c0 = cdf_with(w, lo - 1);
  const double c1 = cdf_with(w, lo);
  const double t = c1 > c0 ? std::clamp((target - c0) / (c1 - c0), 0.0, 1.0) : 0.5;
  return x(lo - 1) + t * step_;
}

}  // namespace bsc::homodyne
