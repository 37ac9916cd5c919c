// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bsc/fock/sector.hpp"
#include "bsc/interf/interferometer.hpp"
#include "bsc/interf/permanent.hpp"
#include "oracles.hpp"

namespace bsc::interf {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

TEST(Permanent, MatchesPermutationSum) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const MatrixXcd a = oracle::random_complex(n, n, rng);
      const cplx ref = oracle::brute_permanent(a);
      EXPECT_LE(std::abs(permanent(a) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << n;
    }
  }
}

TEST(Permanent, KnownValues) {
  EXPECT_EQ(permanent(MatrixXcd::Zero(0, 0)), cplx(1.0));
  MatrixXcd ones = MatrixXcd::Ones(5, 5);
  EXPECT_NEAR(permanent(ones).real(), 120.0, 1e-10);
  EXPECT_NEAR(std::abs(permanent(MatrixXcd::Identity(9, 9)) - 1.0), 0.0, 1e-12);
}

TEST(Permanent, Guards) {
  EXPECT_THROW(permanent(MatrixXcd::Zero(2, 3)), ValidationError);
  EXPECT_THROW(permanent(MatrixXcd::Zero(kMaxPermanentSize + 1, kMaxPermanentSize + 1)), GuardError);
}

TEST(Determinant, MatchesEigen) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 6; ++n) {
    const MatrixXcd a = oracle::random_complex(n, n, rng);
    EXPECT_LE(std::abs(determinant(a) - a.determinant()), 1e-10 * std::max(1.0, std::abs(a.determinant())));
  }
}

TEST(Interferometer, HongOuMandel) {
  MatrixXcd g = MatrixXcd::Zero(2, 2);
  g(0, 1) = g(1, 0) = M_PI / 4.0;
  const Interferometer bs(g, ParamMask::full(2));
  const std::vector<int> in{1, 1};
  EXPECT_LT(std::abs(amplitude_boson(bs, in, in)), 1e-12);
  const std::vector<int> bunched{2, 0};
  EXPECT_NEAR(std::abs(amplitude_boson(bs, in, bunched)), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Interferometer, RejectsBadGenerators) {
  MatrixXcd g = MatrixXcd::Zero(3, 3);
  g(0, 1) = 1.0;
  EXPECT_THROW(Interferometer{g}, ValidationError);
  g(1, 0) = 1.0;
  ParamMask mask = ParamMask::excitation(3, std::vector<int>{0, 1});
  EXPECT_THROW(Interferometer(g, mask), ValidationError);
  EXPECT_THROW(Interferometer::from_unitary(MatrixXcd::Ones(2, 2)), ValidationError);
}

TEST(Interferometer, ParamRoundTrip) {
  std::mt19937_64 rng(3);
  const auto mask = ParamMask::full(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> p(mask.parameter_count());
  for (auto& v : p) v = u(rng);
  const auto it = Interferometer::from_params(p, mask);
  const auto q = it.params();
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-14);
  EXPECT_EQ(mask.parameter_count(), 16);
  const std::vector<int> ref{0, 1};
  EXPECT_EQ(ParamMask::excitation(4, ref).parameter_count(), 16 - 2);
}

// Full sector evolution against exp(i G) of the many-body generator.
TEST(Interferometer, EvolutionMatchesDenseExponential) {
  std::mt19937_64 rng(21);
  for (int m = 2; m <= 6; ++m) {
    for (int n = 1; n <= std::min(3, m); ++n) {
      const MatrixXcd g = oracle::random_hermitian(m, rng, 0.7);
      const Interferometer it(g, ParamMask::full(m));
      auto sector = fock::build_sector(m, n);
      const auto basis = oracle::boson_basis(m, n);
      const MatrixXcd big = oracle::expi_hermitian(oracle::boson_generator(g, basis));
      // Random input superposition.
      VectorXcd v = oracle::random_complex(static_cast<int>(sector->dim()), 1, rng);
      v.normalize();
      fock::BosonState in{sector, v};
      const auto out = evolve(it, in);
      for (std::size_t i = 0; i < sector->dim(); ++i) {
        cplx ref = 0.0;
        const auto row = std::find(basis.begin(), basis.end(), sector->state(i)) - basis.begin();
        for (std::size_t j = 0; j < sector->dim(); ++j) {
          const auto col = std::find(basis.begin(), basis.end(), sector->state(j)) - basis.begin();
          ref += big(row, col) * v(j);
        }
        EXPECT_LT(std::abs(out.amplitudes(i) - ref), 1e-9) << m << " " << n;
      }
      EXPECT_NEAR(out.norm(), 1.0, 1e-9);
    }
  }
}

TEST(Interferometer, EncodedAmplitudesAgreeWithRyser) {
  std::mt19937_64 rng(8);
  const int m = 8;
  const std::vector<int> ref{0, 1, 2, 3};
  const MatrixXcd g = oracle::random_hermitian(m, rng, 0.5);
  const Interferometer it(g, ParamMask::full(m));
  auto sector = fock::build_sector(m, 4);
  const VectorXcd enc = encoded_amplitudes(it.unitary(), *sector, ref);
  const auto& pos = sector->encoded_positions();
  ASSERT_EQ(static_cast<std::size_t>(enc.size()), pos.size());
  for (std::size_t r = 0; r < pos.size(); ++r) {
    const std::vector<int> in{1, 1, 1, 1, 0, 0, 0, 0};
    EXPECT_LT(std::abs(enc(r) - amplitude_boson(it, in, sector->state(pos[r]))), 1e-12);
  }
}

TEST(Interferometer, NumeratorExpansionMatchesEncodedContraction) {
  std::mt19937_64 rng(9);
  const int m = 6;
  const std::vector<int> ref{0, 1, 2};
  const Interferometer it(oracle::random_hermitian(m, rng, 0.6), ParamMask::full(m));
  auto sector = fock::build_sector(m, 3);
  const int d = static_cast<int>(sector->encoded_positions().size());
  const MatrixXcd h = oracle::random_hermitian(d, rng);
  const VectorXcd c = encoded_amplitudes(it.unitary(), *sector, ref);
  const cplx direct = c.adjoint() * h * c;
  EXPECT_LT(std::abs(numerator_expansion(it, h, *sector, ref) - direct), 1e-11);
}

TEST(Interferometer, FermionSectorUnitaryMatchesDenseExponential) {
  std::mt19937_64 rng(12);
  const int m = 5, n = 2;
  const MatrixXcd beta = oracle::random_hermitian(m, rng, 0.6);
  const MatrixXcd u = oracle::expi_hermitian(beta);
  // exp(i sum beta_pq f+_p f_q) on the full Fock space.
  hamlib::FermiTermSum gen;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) gen.add({hamlib::cr(p), hamlib::an(q)}, beta(p, q));
  const MatrixXcd big = oracle::expi_hermitian(oracle::fermi_dense(gen, m));
  auto sector = fock::build_sector(m, n);
  const MatrixXcd d = fermion_sector_unitary(u, *sector);
  const auto& bits = sector->encoded_bits();
  for (std::size_t t = 0; t < bits.size(); ++t)
    for (std::size_t s = 0; s < bits.size(); ++s) EXPECT_LT(std::abs(d(t, s) - big(bits[t], bits[s])), 1e-10);
  VectorXcd v = oracle::random_complex(static_cast<int>(bits.size()), 1, rng);
  v(1) = 0.0;
  EXPECT_LT((fermion_sector_apply(u, *sector, v) - d * v).norm(), 1e-12);
}

TEST(Interferometer, FermionAmplitudeIsDeterminant) {
  std::mt19937_64 rng(4);
  const Interferometer it(oracle::random_hermitian(4, rng), ParamMask::full(4));
  const std::vector<int> in{1, 0, 1, 0}, out{0, 1, 0, 1};
  EXPECT_LT(std::abs(amplitude_fermion(it, in, out) - transition_submatrix(it.unitary(), in, out).determinant()),
            1e-13);
}

// Property: random generators keep the evolved state normalized.
TEST(Interferometer, NormPreserved) {
  std::mt19937_64 rng(77);
  auto sector = fock::build_sector(6, 3);
  const std::vector<int> ref{0, 1, 2};
  for (int rep = 0; rep < 100; ++rep) {
    const Interferometer it(oracle::random_hermitian(6, rng, 1.5), ParamMask::full(6));
    EXPECT_NEAR(evolve(it, fock::reference_state(sector, ref)).norm(), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace bsc::interf
