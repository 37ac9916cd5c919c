// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bsc/common.hpp"

namespace bsc::homodyne {

/// Quadrature wavefunction <x|n> for X = (b+ + b)/2 (vacuum variance 1/4):
/// (2/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt2 x) e^{-x^2}.
double hermite_function(int n, double x);

/// psi_0(x) .. psi_{n_max}(x) by the stable three-term recurrence.
void hermite_functions(int n_max, double x, std::span<double> out);

/// p(phi, x) = <x_phi| rho |x_phi> for a single-mode density matrix in the
/// photon-number basis, using <x_phi|n> = e^{-i n phi} psi_n(x).
double quadrature_density(const Eigen::MatrixXcd& rho, double phi, double x);

/// Joint quadrature density of a multi-mode pure superposition with one phase
/// per mode.
class QuadratureDensity {
 public:
  using Component = std::pair<Occupation, cplx>;

  QuadratureDensity(std::vector<Component> components, std::vector<double> phases);

  int modes() const noexcept { return static_cast<int>(phases_.size()); }

  double joint(std::span<const double> x) const;

  /// Reduced single-mode density matrix of `mode` (photon-number basis).
  Eigen::MatrixXcd reduced(int mode) const;

  double marginal(int mode, double x) const;

 private:
  std::vector<Component> components_;
  std::vector<double> phases_;
  int n_max_ = 0;
};

/// Fixed grid on [-x_max, x_max] with tabulated cumulative integrals of
/// psi_n psi_m, used for inverse-CDF sampling of quadrature outcomes.
class QuadratureGrid {
 public:
  /// x_max = sqrt(n_max + 1) + 2, i.e. four vacuum standard deviations past
  /// the classical turning point of the highest Fock state.
  explicit QuadratureGrid(int n_max, int points = 4096);

  int n_max() const noexcept { return n_max_; }
  int points() const noexcept { return points_; }
  double x_max() const noexcept { return x_max_; }
  double x(int g) const noexcept { return -x_max_ + step_ * g; }

  /// Integral of the density over [-x_max, x(g)].
  double cdf(const Eigen::MatrixXcd& rho, double phi, int g) const;

  /// Integral over the whole grid (1 up to truncation for a normalized rho).
  double total(const Eigen::MatrixXcd& rho, double phi) const { return cdf(rho, phi, points_ - 1); }

  /// Inverse CDF at u in [0,1), linear between grid points.
  double sample(const Eigen::MatrixXcd& rho, double phi, double u) const;

 private:
  // Symmetric weights w_nm = Re(rho_nm e^{-i(n-m)phi}), doubled off the diagonal.
  void weights(const Eigen::MatrixXcd& rho, double phi, std::vector<double>& w) const;
  double cdf_with(const std::vector<double>& w, int g) const;
  std::size_t pair_index(int n, int m) const;

  int n_max_;
  int points_;
  double x_max_;
  double step_;
  // cumulative_[pair_index(n,m) * points + g], n <= m.
  std::vector<double> cumulative_;
};

}  // namespace bsc::homodyne
