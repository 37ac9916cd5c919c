// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "bsc/fock/sector.hpp"
#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/hamlib/ladder.hpp"
#include "bsc/homodyne/estimator.hpp"
#include "bsc/interf/interferometer.hpp"
#include "bsc/lossmit/loss.hpp"
#include "oracles.hpp"

namespace bsc::lossmit {
namespace {

using homodyne::MeasTerm;

const std::string kData = BSC_TEST_DATA_DIR;

interf::Interferometer random_interferometer(int m, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  return interf::Interferometer(oracle::random_hermitian(m, rng, scale), interf::ParamMask::full(m));
}

TEST(LossChannel, Validates) {
  EXPECT_THROW(LossChannel{0.0}.validate(), ValidationError);
  EXPECT_THROW(LossChannel{1.2}.validate(), ValidationError);
  EXPECT_NO_THROW(LossChannel{1.0}.validate());
}

// Lost-photon counts from a three-photon mode follow Binomial(3, 1 - s).
TEST(ApplyLoss, BinomialStatistics) {
  auto sector = fock::build_sector(3, 3);
  fock::BosonState st{sector, Eigen::VectorXcd::Zero(sector->dim())};
  st.amplitudes(sector->index(Occupation{3, 0, 0})) = 1.0;
  const double s = 0.7;
  const int trials = 20000;
  std::map<int, int> hist;
  Engine rng = make_engine(42);
  for (int i = 0; i < trials; ++i) {
    const auto tr = apply_loss(st, LossChannel{s}, rng);
    ++hist[tr.lost];
    EXPECT_EQ(tr.state.sector->photons(), 3 - tr.lost);
    EXPECT_NEAR(tr.state.norm(), 1.0, 1e-12);
  }
  for (int l = 0; l <= 3; ++l) {
    const double p = fock::binomial(3, l) * std::pow(s, 3 - l) * std::pow(1 - s, l);
    const double sd = std::sqrt(trials * p * (1 - p));
    EXPECT_LE(std::abs(hist[l] - trials * p), 5 * sd) << l;
  }
  const auto same = apply_loss(st, LossChannel{1.0}, 1);
  EXPECT_EQ(same.lost, 0);
}

TEST(ApplyLoss, ConditionalStateOfSuperposition) {
  // (|1,0> + |0,1>)/sqrt2 losing its photon leaves vacuum; surviving keeps the superposition.
  auto sector = fock::build_sector(2, 1);
  fock::BosonState st{sector, Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0))};
  int lost = 0;
  const int trials = 10000;
  Engine rng = make_engine(3);
  for (int i = 0; i < trials; ++i) {
    const auto tr = apply_loss(st, LossChannel{0.6}, rng);
    lost += tr.lost;
    if (tr.lost == 0) EXPECT_LT((tr.state.amplitudes - st.amplitudes).norm(), 1e-12);
  }
  EXPECT_NEAR(lost / double(trials), 0.4, 5 * std::sqrt(0.24 / trials));
}

TEST(LossyDevice, BranchWeightsSumToOne) {
  auto sector = fock::build_sector(4, 2);
  const std::vector<int> ref{0, 1};
  const LossyDevice dev(fock::reference_state(sector, ref), random_interferometer(4, 1, 0.5), LossChannel{0.8});
  double total = 0.0;
  for (const auto& b : dev.branches()) total += b.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(dev.branches().front().lost, 0);
  EXPECT_NEAR(dev.branches().front().probability, 0.64, 1e-12);
  EXPECT_EQ(dev.branches().size(), 4u);
}

TEST(CountEvents, Predicates) {
  MeasTerm t{1.0, hamlib::ladder_string_from("+-ZI"), true};  // k = 1, N = 2
  CalibrationHistogram h;
  h[{1, 1, 0, 0}] = 5;  // n1, diagonal count 0 -> not n2
  h[{0, 0, 1, 1}] = 3;  // n1, diagonal count 2 -> not n2 (needs N - k = 1)
  h[{1, 0, 1, 0}] = 4;  // n1 and n2
  h[{0, 0, 1, 0}] = 7;  // n2 only (lost photon)
  h[{2, 0, 0, 0}] = 2;  // neither
  const auto c = count_events(h, t, 2);
  EXPECT_EQ(c.total, 21u);
  EXPECT_EQ(c.n1, 12u);
  EXPECT_EQ(c.n2, 11u);
  EXPECT_EQ(c.n3, 4u);
}

TEST(Correct, FactorAndFailures) {
  homodyne::ShotStats s;
  for (int i = 0; i < 10; ++i) s.add(i < 5 ? 2.0 : 0.0, i < 5);
  MitigationCounts c{80, 50, 40, 100};
  const auto e = correct(s, c);
  EXPECT_DOUBLE_EQ(e.raw, 2.0);
  EXPECT_DOUBLE_EQ(e.corrected, 2.0 * (40.0 / 80.0) * (50.0 / 40.0));
  EXPECT_EQ(e.gated_shots, 5u);
  EXPECT_THROW(correct(s, MitigationCounts{0, 1, 0, 10}), Uncorrectable);
  EXPECT_THROW(correct(s, MitigationCounts{5, 5, 0, 10}), Uncorrectable);
  EXPECT_THROW(correct(homodyne::ShotStats{}, c), Uncorrectable);
}

TEST(Mitigation, RecoversLosslessValue) {
  const auto h = hamlib::load_hamiltonian(kData + "/h2_sto3g_1.00.fcidump");
  const auto terms = homodyne::pair_hermitian(hamlib::jordan_wigner(hamlib::to_fermi(h), 4));
  auto sector = fock::build_sector(4, 2);
  const std::vector<int> ref{0, 1};
  const LossyDevice dev(fock::reference_state(sector, ref), random_interferometer(4, 9, 0.7), LossChannel{0.75});
  const auto& ideal = dev.ideal_output();
  const double q = fock::projection_ratio(ideal);
  MitigationBudget b{60000, 200000, {}};
  const auto est = mitigated_estimates(dev, terms, b, 5);
  ASSERT_EQ(est.size(), terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const double target = homodyne::exact_term_value(ideal, terms[t]) / q;
    EXPECT_LE(std::abs(est[t].corrected - target), 5 * est[t].corrected_stderr + 1e-12)
        << hamlib::to_string(terms[t].string);
    if (terms[t].sigma_pairs() == 0) EXPECT_DOUBLE_EQ(est[t].corrected, est[t].raw);
  }
  // Determinism.
  const auto again = mitigated_estimates(dev, terms, b, 5);
  for (std::size_t t = 0; t < terms.size(); ++t) EXPECT_EQ(again[t].corrected, est[t].corrected);
  b.hybrid_shots = 0;
  EXPECT_THROW(mitigated_estimates(dev, terms, b, 5), ValidationError);
}

}  // namespace
}  // namespace bsc::lossmit
