// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bsc/homodyne/quadrature.hpp"
#include "oracles.hpp"

namespace bsc::homodyne {
namespace {

double simpson(auto f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * k);
  return s * h / 3.0;
}

TEST(Hermite, Orthonormal) {
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) {
      const double v = simpson([&](double x) { return hermite_function(n, x) * hermite_function(m, x); }, -9, 9);
      EXPECT_NEAR(v, n == m ? 1.0 : 0.0, 1e-10) << n << " " << m;
    }
}

TEST(Hermite, VacuumVarianceIsQuarter) {
  const double v = simpson([](double x) { return x * x * std::pow(hermite_function(0, x), 2); }, -9, 9);
  EXPECT_NEAR(v, 0.25, 1e-12);
  std::vector<double> all(5);
  hermite_functions(4, 0.37, all);
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(all[n], hermite_function(n, 0.37), 1e-14);
}

TEST(Density, NormalizedAndPhaseCovariant) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd a = oracle::random_complex(3, 3, rng);
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  for (double phi : {0.0, 1.0, 2.5}) {
    EXPECT_NEAR(simpson([&](double x) { return quadrature_density(rho, phi, x); }, -9, 9), 1.0, 1e-10);
  }
  // Coherence rho_01 shifts the mean quadrature: <X_phi> = Re(rho_01 e^{i phi}).
  const double phi = 0.8;
  const double mean = simpson([&](double x) { return x * quadrature_density(rho, phi, x); }, -9, 9);
  const cplx c01 = rho(0, 1) * std::exp(cplx(0, phi));
  const cplx c12 = rho(1, 2) * std::exp(cplx(0, phi)) * std::sqrt(2.0);
  EXPECT_NEAR(mean, (c01 + c12).real(), 1e-10);
}

TEST(Density, JointMarginalAndReduced) {
  // (|10> + i|01>)/sqrt2 on two modes.
  std::vector<QuadratureDensity::Component> comps{{{1, 0}, 1.0 / std::sqrt(2.0)},
                                                  {{0, 1}, cplx(0, 1) / std::sqrt(2.0)}};
  QuadratureDensity d(comps, {0.3, 1.1});
  const auto r0 = d.reduced(0);
  EXPECT_NEAR(r0(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(r0(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r0(0, 1)), 0.0, 1e-15);
  const double x0 = 0.4;
  const double marg = simpson([&](double y) { return d.joint(std::vector<double>{x0, y}); }, -9, 9);
  EXPECT_NEAR(marg, d.marginal(0, x0), 1e-10);
  EXPECT_NEAR(d.marginal(0, x0), quadrature_density(r0, 0.3, x0), 1e-14);
}

TEST(Grid, CdfAndSampling) {
  std::mt19937_64 rng(5);
  const QuadratureGrid grid(3);
  EXPECT_NEAR(grid.x_max(), 4.0, 1e-15);
  const Eigen::MatrixXcd a = oracle::random_complex(4, 4, rng);
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  const double phi = 0.6;
  EXPECT_NEAR(grid.total(rho, phi), 1.0, 1e-4);
  const int g = grid.points() / 3;
  const double ref = simpson([&](double x) { return quadrature_density(rho, phi, x); }, -grid.x_max(), grid.x(g));
  EXPECT_NEAR(grid.cdf(rho, phi, g), ref, 1e-5);

  // Empirical CDF of inverse-CDF samples against the tabulated CDF.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = grid.sample(rho, phi, u(rng));
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int k = 0; k < grid.points(); k += 64) {
    const double emp =
        static_cast<double>(std::upper_bound(xs.begin(), xs.end(), grid.x(k)) - xs.begin()) / xs.size();
    ks = std::max(ks, std::abs(emp - grid.cdf(rho, phi, k) / grid.total(rho, phi)));
  }
  EXPECT_LT(ks, 0.015);
}

}  // namespace
}  // namespace bsc::homodyne
