// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "bsc/common.hpp"
#include "bsc/fock/sector.hpp"
#include "bsc/homodyne/estimator.hpp"
#include "bsc/interf/interferometer.hpp"
#include "bsc/rng.hpp"

namespace bsc::lossmit {

/// Insufficient calibration statistics (n1 = 0 or n3 = 0), or no hybrid shot
/// passed the gate.
class Uncorrectable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Uniform photon loss: every photon survives independently with
/// probability `survival`.
struct LossChannel {
  double survival = 1.0;

  void validate() const;
};

/// One quantum trajectory of the loss channel.
struct LossTrajectory {
  std::vector<int> lost_per_mode;
  int lost = 0;
  /// Normalized post-loss state in the (N - lost)-photon sector.
  fock::BosonState state;
};

/// Samples a Kraus branch mode by mode (lose l of n photons with weight
/// C(n,l) s^{n-l} (1-s)^l) and returns the conditional pure state.
LossTrajectory apply_loss(const fock::BosonState& state, const LossChannel& channel, Engine& rng);
LossTrajectory apply_loss(const fock::BosonState& state, const LossChannel& channel, std::uint64_t seed);

/// Calibration event counts for one term.
struct MitigationCounts {
  std::uint64_t n1 = 0;  // N photons in total, at most one per mode
  std::uint64_t n2 = 0;  // N - k photons on the diagonal modes, at most one each
  std::uint64_t n3 = 0;  // n1 events that also carry N - k on the diagonal modes
  std::uint64_t total = 0;
};

/// Histogram of full photon-number readouts from the lossy device.
using CalibrationHistogram = std::map<Occupation, std::uint64_t>;

MitigationCounts count_events(const CalibrationHistogram& histogram, const homodyne::MeasTerm& term, int photons);

/// Lossy linear-optical device: loss acts on the input state, which then
/// passes through the interferometer (uniform loss commutes with passive optics).
class LossyDevice {
 public:
  LossyDevice(fock::BosonState input, interf::Interferometer interferometer, LossChannel channel);

  int photons() const noexcept { return input_.sector->photons(); }
  int modes() const noexcept { return input_.sector->modes(); }
  const LossChannel& channel() const noexcept { return channel_; }

  /// One Kraus branch of the channel with its device output.
  struct Branch {
    std::vector<int> lost_per_mode;
    int lost = 0;
    double probability = 0.0;
    fock::BosonState output;
  };

  /// All branches with nonzero weight; the lossless branch comes first.
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  const fock::BosonState& ideal_output() const { return branches_.front().output; }

  /// Index of a sampled branch.
  std::size_t sample_branch(Engine& rng) const;

  /// Pure photon-number readouts over `shots` trajectories.
  CalibrationHistogram calibrate(std::uint64_t shots, std::uint64_t seed) const;

 private:
  fock::BosonState input_;
  interf::Interferometer interferometer_;
  LossChannel channel_;
  std::vector<Branch> branches_;
  std::vector<double> cumulative_;

  friend class TermRunner;
};

struct MitigatedEstimate {
  double corrected = 0.0;
  double corrected_stderr = 0.0;
  double raw = 0.0;  // mean over gated hybrid shots
  double raw_stderr = 0.0;
  MitigationCounts counts;
  std::uint64_t hybrid_shots = 0;
  std::uint64_t gated_shots = 0;
};

struct MitigationBudget {
  std::uint64_t hybrid_shots = 0;       // per term
  std::uint64_t calibration_shots = 0;  // shared by all terms
  /// Per-term hybrid shot counts; overrides hybrid_shots when non-empty.
  std::vector<std::uint64_t> hybrid_per_term;
};

/// (n3/n1) (n2/n3) raw, evaluated in that order so a zero n3 is reported.
/// Throws Uncorrectable on n1 = 0, n3 = 0 or no gated hybrid shot.
MitigatedEstimate correct(const homodyne::ShotStats& hybrid, const MitigationCounts& counts);

/// Hybrid shots for one term on the lossy device with the gate N - k.
homodyne::ShotStats run_lossy_shots(const LossyDevice& device, const homodyne::MeasTerm& term, std::uint64_t shots,
                                    std::uint64_t seed, std::uint64_t stream_id);

/// Corrected estimates for several terms sharing one calibration pass. A
/// diagonal term (k = 0) passes the gate only on lossless encoded shots, so
/// its correction factor is exactly one.
std::vector<MitigatedEstimate> mitigated_estimates(const LossyDevice& device, const std::vector<homodyne::MeasTerm>& terms,
                                                   const MitigationBudget& budget, std::uint64_t seed);

MitigatedEstimate mitigated_estimate(const LossyDevice& device, const homodyne::MeasTerm& term,
                                     const MitigationBudget& budget, std::uint64_t seed);

}  // namespace bsc::lossmit
