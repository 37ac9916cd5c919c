// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/fock/sector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bsc::fock {

namespace {

void enumerate(int mode, int remaining, Occupation& current, std::vector<Occupation>& out) {
  const int modes = static_cast<int>(current.size());
  if (mode == modes - 1) {
    current[mode] = remaining;
    out.push_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[mode] = v;
    enumerate(mode + 1, remaining - v, current, out);
  }
  current[mode] = 0;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

FockSector::FockSector(int modes, int photons) : modes_(modes), photons_(photons) {
  if (modes < 1 || modes > kMaxModes || photons < 0 || photons > modes) {
    throw GuardError("sector requires 0 <= N <= M <= " + std::to_string(kMaxModes) + ", got M=" +
                     std::to_string(modes) + " N=" + std::to_string(photons));
  }
  count_.assign(modes + 1, std::vector<std::size_t>(photons + 1, 0));
  count_[0][0] = 1;
  for (int m = 1; m <= modes; ++m) {
    for (int n = 0; n <= photons; ++n) {
      count_[m][n] = static_cast<std::size_t>(binomial(m + n - 1, n));
    }
  }

  Occupation current(modes, 0);
  basis_.reserve(count_[modes][photons]);
  enumerate(0, photons, current, basis_);

  encoded_mask_.resize(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto bits = encode_to_qubit_index(basis_[i]);
    encoded_mask_[i] = bits.has_value();
    if (bits) {
      encoded_positions_.push_back(i);
      encoded_bits_.push_back(*bits);
    }
  }
}

std::size_t FockSector::index(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != modes_) {
    throw ValidationError("occupation vector has " + std::to_string(occ.size()) + " modes, sector has " +
                          std::to_string(modes_));
  }
  int total = 0;
  for (int v : occ) {
    if (v < 0) throw ValidationError("negative occupation");
    total += v;
  }
  if (total != photons_) {
    throw ValidationError("occupation holds " + std::to_string(total) + " photons, sector has " +
                          std::to_string(photons_));
  }
  std::size_t rank = 0;
  int remaining = photons_;
  for (int i = 0; i + 1 < modes_; ++i) {
    const int rest_modes = modes_ - i - 1;
    for (int w = occ[i] + 1; w <= remaining; ++w) rank += count_[rest_modes][remaining - w];
    remaining -= occ[i];
  }
  return rank;
}

std::optional<std::size_t> FockSector::encoded_rank(std::uint64_t bits) const {
  // encoded_bits_ is sorted descending: larger occupation at mode 0 first.
  auto it = std::lower_bound(encoded_bits_.begin(), encoded_bits_.end(), bits,
                             [](std::uint64_t a, std::uint64_t b) {
                               // Descending lexicographic order over (n_0, n_1, ...) with n_i
                               // stored in bit i is ascending order of the bit-reversed value.
                               for (int i = 0; i < 64; ++i) {
                                 const auto ba = (a >> i) & 1U, bb = (b >> i) & 1U;
                                 if (ba != bb) return ba > bb;
                               }
                               return false;
                             });
  if (it == encoded_bits_.end() || *it != bits) return std::nullopt;
  return static_cast<std::size_t>(it - encoded_bits_.begin());
}

SectorPtr build_sector(int modes, int photons) {
  if (photons < 1 || photons > modes || modes > kMaxModes) {
    throw GuardError("build_sector requires 1 <= N <= M <= " + std::to_string(kMaxModes) + ", got M=" +
                     std::to_string(modes) + " N=" + std::to_string(photons));
  }
  return std::make_shared<const FockSector>(modes, photons);
}

BosonState reference_state(SectorPtr sector, std::span<const int> occupied) {
  if (static_cast<int>(occupied.size()) != sector->photons()) {
    throw ValidationError("reference needs " + std::to_string(sector->photons()) + " occupied modes, got " +
                          std::to_string(occupied.size()));
  }
  Occupation occ(sector->modes(), 0);
  for (int m : occupied) {
    if (m < 0 || m >= sector->modes()) throw ValidationError("occupied mode out of range");
    if (occ[m]) throw ValidationError("occupied mode listed twice");
    occ[m] = 1;
  }
  BosonState s{sector, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->dim()))};
  s.amplitudes[static_cast<Eigen::Index>(sector->index(occ))] = 1.0;
  return s;
}

double projection_ratio(const BosonState& state) {
  double q = 0.0;
  for (auto pos : state.sector->encoded_positions()) {
    q += std::norm(state.amplitudes[static_cast<Eigen::Index>(pos)]);
  }
  return q;
}

double ratio_rmn(double modes, int photons) {
  if (photons < 0 || !(modes > photons - 1)) throw ValidationError("ratio_rmn requires 0 <= N < M + 1");
  double r = 1.0;
  for (int j = 0; j < photons; ++j) r *= (modes - j) / (modes + photons - 1 - j);
  return r;
}

double ratio_rmn_lower_bound(double modes, int photons) {
  if (photons < 0 || !(modes > 0.0)) throw ValidationError("bound requires M > 0");
  return std::pow((modes - photons + 1) / modes, photons);
}

std::optional<std::uint64_t> encode_to_qubit_index(std::span<const int> occ) {
  if (occ.size() > 64) return std::nullopt;
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] < 0 || occ[i] > 1) return std::nullopt;
    if (occ[i]) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

}  // namespace bsc::fock
