// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bsc/fock/sector.hpp"
#include "oracles.hpp"

namespace bsc::fock {
namespace {

TEST(Sector, SmallExamples) {
  auto s = build_sector(2, 1);
  ASSERT_EQ(s->dim(), 2u);
  EXPECT_EQ(s->state(0), (Occupation{1, 0}));
  EXPECT_EQ(s->state(1), (Occupation{0, 1}));
  EXPECT_TRUE(s->encoded(0) && s->encoded(1));

  auto t = build_sector(4, 2);
  EXPECT_EQ(t->dim(), 10u);
  EXPECT_EQ(t->encoded_positions().size(), 6u);

  auto u = build_sector(8, 4);
  EXPECT_EQ(u->dim(), 330u);
  EXPECT_EQ(u->encoded_positions().size(), 70u);
}

TEST(Sector, MatchesEnumerationAndIndexes) {
  for (int m = 1; m <= 7; ++m) {
    for (int n = 1; n <= m; ++n) {
      auto s = build_sector(m, n);
      const auto ref = oracle::boson_basis(m, n);
      ASSERT_EQ(s->dim(), ref.size());
      std::size_t enc = 0;
      for (std::size_t i = 0; i < s->dim(); ++i) {
        EXPECT_EQ(s->index(s->state(i)), i);
        if (i > 0) EXPECT_TRUE(s->state(i - 1) > s->state(i));
        bool single = true;
        for (int v : s->state(i)) single = single && v <= 1;
        EXPECT_EQ(s->encoded(i), single);
        enc += single;
      }
      EXPECT_DOUBLE_EQ(static_cast<double>(s->dim()), binomial(m + n - 1, n));
      EXPECT_DOUBLE_EQ(static_cast<double>(enc), binomial(m, n));
    }
  }
}

TEST(Sector, EncodedRankFollowsSectorOrder) {
  auto s = build_sector(6, 3);
  const auto& bits = s->encoded_bits();
  for (std::size_t r = 0; r < bits.size(); ++r) {
    EXPECT_EQ(s->encoded_rank(bits[r]), r);
    const auto& occ = s->state(s->encoded_positions()[r]);
    EXPECT_EQ(encode_to_qubit_index(occ), bits[r]);
  }
  EXPECT_FALSE(s->encoded_rank(0b1).has_value());
}

TEST(Sector, Guards) {
  EXPECT_THROW(build_sector(3, 4), Error);
  EXPECT_THROW(build_sector(kMaxModes + 1, 2), Error);
  EXPECT_THROW(build_sector(3, 0), Error);
}

TEST(ReferenceState, Examples) {
  auto s = build_sector(4, 2);
  const std::vector<int> occ{0, 1};
  const auto st = reference_state(s, occ);
  EXPECT_EQ(st.amplitudes(s->index(Occupation{1, 1, 0, 0})), cplx(1.0));
  EXPECT_DOUBLE_EQ(st.norm(), 1.0);
  EXPECT_DOUBLE_EQ(projection_ratio(st), 1.0);

  auto s6 = build_sector(6, 2);
  const std::vector<int> occ2{0, 3};
  EXPECT_EQ(reference_state(s6, occ2).amplitudes(s6->index(Occupation{1, 0, 0, 1, 0, 0})), cplx(1.0));
  const std::vector<int> bad{0};
  EXPECT_THROW(reference_state(s, bad), ValidationError);
}

TEST(ProjectionRatio, Examples) {
  auto s = build_sector(2, 2);
  BosonState st{s, Eigen::VectorXcd::Zero(3)};
  st.amplitudes(s->index(Occupation{2, 0})) = 1.0;
  EXPECT_DOUBLE_EQ(projection_ratio(st), 0.0);
  st.amplitudes.setConstant(1.0 / std::sqrt(3.0));
  EXPECT_NEAR(projection_ratio(st), 1.0 / 3.0, 1e-15);
}

TEST(RatioRmn, ClosedForms) {
  for (int m = 1; m <= 20; ++m) EXPECT_DOUBLE_EQ(ratio_rmn(m, 1), 1.0);
  EXPECT_NEAR(ratio_rmn(4, 2), 0.6, 1e-15);
}

TEST(RatioRmn, AgreesWithCounting) {
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= m; ++n) {
      const auto s = build_sector(m, n);
      const double counted = static_cast<double>(s->encoded_positions().size()) / static_cast<double>(s->dim());
      EXPECT_NEAR(ratio_rmn(m, n), counted, 1e-13 * counted) << m << "," << n;
      EXPECT_LE(ratio_rmn_lower_bound(m, n), ratio_rmn(m, n) * (1 + 1e-12));
    }
  }
}

TEST(RatioRmn, QuadraticModeScaling) {
  for (double eta : {0.5, 1.0, 2.0}) {
    double prev = 2.0;
    for (int n = 1; n <= 40; ++n) {
      const double m = eta * n * n;
      EXPECT_GE(ratio_rmn(m, n), std::exp(-1.0 / eta)) << eta << " " << n;
      const double lb = ratio_rmn_lower_bound(m, n);
      EXPECT_LE(lb, prev) << eta << " " << n;
      prev = lb;
    }
  }
}

TEST(Encoding, QubitIndex) {
  EXPECT_EQ(encode_to_qubit_index(Occupation{1, 0, 1, 0}), 5u);
  EXPECT_FALSE(encode_to_qubit_index(Occupation{2, 0}).has_value());
}

}  // namespace
}  // namespace bsc::fock
