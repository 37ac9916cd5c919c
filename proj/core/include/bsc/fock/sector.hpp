// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bsc/common.hpp"

namespace bsc::fock {

inline constexpr int kMaxModes = 16;

/// Basis of the M-mode, N-photon bosonic Fock space.
///
/// States are ordered lexicographically with mode 0 as the most significant
/// position, largest first: (N,0,...,0) is index 0 and (0,...,0,N) is last.
/// The encoded sub-basis (every mode holding at most one photon) is the
/// single-rail image of the N-electron fermionic space.
class FockSector {
 public:
  /// Any photon count 0 <= n <= M is accepted here (post-loss sectors may
  /// hold fewer photons than the reference). `build_sector` applies the
  /// stricter 1 <= N guard.
  FockSector(int modes, int photons);

  int modes() const noexcept { return modes_; }
  int photons() const noexcept { return photons_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  const Occupation& state(std::size_t i) const { return basis_[i]; }
  const std::vector<Occupation>& basis() const noexcept { return basis_; }

  /// Position of `occ` in the basis. Throws ValidationError if `occ` does not
  /// belong to this sector.
  std::size_t index(std::span<const int> occ) const;

  bool encoded(std::size_t i) const { return encoded_mask_[i]; }
  const std::vector<bool>& encoded_mask() const noexcept { return encoded_mask_; }

  /// Sector positions of the encoded states, in basis order.
  const std::vector<std::size_t>& encoded_positions() const noexcept { return encoded_positions_; }

  /// Qubit index (bit i = n_i) of each encoded state, in basis order.
  const std::vector<std::uint64_t>& encoded_bits() const noexcept { return encoded_bits_; }

  /// Position of a qubit bitstring within the encoded sub-basis.
  std::optional<std::size_t> encoded_rank(std::uint64_t bits) const;

 private:
  int modes_;
  int photons_;
  std::vector<Occupation> basis_;
  std::vector<bool> encoded_mask_;
  std::vector<std::size_t> encoded_positions_;
  std::vector<std::uint64_t> encoded_bits_;
  // count_[m][n] = number of n-photon states on m modes.
  std::vector<std::vector<std::size_t>> count_;
};

using SectorPtr = std::shared_ptr<const FockSector>;

/// Enumerate an N-photon sector. Guard: 1 <= N <= M <= 16.
SectorPtr build_sector(int modes, int photons);

/// Pure state over a sector basis.
struct BosonState {
  SectorPtr sector;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Single photons on `occupied` modes, vacuum elsewhere.
BosonState reference_state(SectorPtr sector, std::span<const int> occupied);

/// Weight of the state inside the encoded sub-basis, <Phi|Q|Phi>.
double projection_ratio(const BosonState& state);

/// C(M,N) / C(M+N-1,N) as the telescoping product
/// prod_{j=0}^{N-1} (M-j)/(M+N-1-j). The product is also evaluated for
/// non-integer M (e.g. M = eta N^2); it needs M > N - 1.
double ratio_rmn(double modes, int photons);

/// Lower-bound expression ((M-N+1)/M)^N of ratio_rmn.
double ratio_rmn_lower_bound(double modes, int photons);

/// Qubit index with bit i = n_i, or nullopt if some mode holds two or more
/// photons (not representable in the single-rail encoding).
std::optional<std::uint64_t> encode_to_qubit_index(std::span<const int> occ);

/// Binomial coefficient as a double (exact below 2^53).
double binomial(int n, int k);

}  // namespace bsc::fock
