// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "bsc/common.hpp"
#include "bsc/fock/sector.hpp"
#include "bsc/hamlib/ladder.hpp"
#include "bsc/homodyne/quadrature.hpp"
#include "bsc/rng.hpp"

namespace bsc::homodyne {

/// Raised when the denominator estimate is not positive, so the ratio
/// estimator has no meaningful value.
class UnreliableEstimate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// One measured term. A string and its adjoint are merged into a single
/// `paired` term whose shot value is 2 Re(c * prod K).
struct MeasTerm {
  cplx coefficient;
  hamlib::LadderString string;
  bool paired = false;

  /// Number of raising symbols (equal to the number of lowering ones).
  int sigma_pairs() const { return hamlib::count_raising(string); }
  /// |c|, doubled for paired terms.
  double magnitude() const;
};

/// Merge Hermitian-conjugate strings. Throws ValidationError if the operator
/// is not Hermitian (within 1e-10) or a term changes the photon number.
std::vector<MeasTerm> pair_hermitian(const hamlib::LadderTermSum& op);

/// Upper bound on the per-shot variance of a term: magnitude^2 * 2.07317^(4k).
double term_variance_bound(const MeasTerm& term);

/// Exact <Phi|A|Phi> through the single-rail embedding; amplitudes outside
/// the encoded sub-basis meet zero matrix elements. Returns the real part.
double exact_expectation(const fock::BosonState& state, const hamlib::LadderTermSum& op);
cplx exact_expectation_complex(const fock::BosonState& state, const hamlib::LadderString& string);

/// Exact mean of a term's shot value.
double exact_term_value(const fock::BosonState& state, const MeasTerm& term);

/// One emulated hybrid shot.
struct ShotRecord {
  std::size_t term = 0;
  /// Photon counts on the modes carrying I, Z, P0 or P1, ascending mode order.
  std::vector<int> diagonal_outcomes;
  /// Phase and quadrature per homodyned mode; empty when the shot was gated out.
  std::vector<double> phases;
  std::vector<double> quadratures;
  double value = 0.0;
  /// Diagonal modes held exactly the target photon number, at most one each.
  bool passed = false;
};

/// Full photon-number readout of a state (all modes counted).
class PhotonCounter {
 public:
  explicit PhotonCounter(const fock::BosonState& state);

  /// Sector index of a sampled configuration.
  std::size_t sample_index(Engine& rng) const;
  const Occupation& sample(Engine& rng) const { return state_.sector->state(sample_index(rng)); }
  const fock::BosonState& state() const noexcept { return state_; }

 private:
  fock::BosonState state_;
  std::vector<double> cumulative_;
};

/// Precomputed sampler for one term on one state.
///
/// A shot counts all diagonal modes, evaluates the diagonal factor
/// (I -> 1, Z -> +1/-1, P0/P1 -> indicator, any mode with two or more photons
/// -> 0), and gates on the diagonal photon total. Off-diagonal modes are then
/// homodyned one after another from their conditional quadrature densities.
class TermSampler {
 public:
  /// `diagonal_target` defaults to N - k for an N-photon state.
  TermSampler(const fock::BosonState& state, MeasTerm term, std::shared_ptr<const QuadratureGrid> grid,
              std::optional<int> diagonal_target = std::nullopt);

  ShotRecord shot(Engine& rng) const;

  const MeasTerm& term() const noexcept { return term_; }
  const std::vector<int>& diagonal_modes() const noexcept { return diagonal_; }
  const std::vector<int>& homodyne_modes() const noexcept { return offdiag_; }

 private:
  struct Component {
    Occupation occ;  // counts on homodyne modes
    cplx amp;
  };
  struct Group {
    std::vector<int> counts;
    double factor = 0.0;
    bool passed = false;
    std::vector<Component> components;
  };

  MeasTerm term_;
  std::shared_ptr<const QuadratureGrid> grid_;
  PhotonCounter counter_;
  std::vector<int> diagonal_;
  std::vector<int> offdiag_;
  std::vector<Group> groups_;
  std::vector<std::size_t> group_of_;
};

/// A grid large enough for every state in the N-photon sector.
std::shared_ptr<const QuadratureGrid> grid_for(int photons);

/// One shot of `term` on `state` from a fresh engine seeded by `seed`.
ShotRecord sample_term_shot(const fock::BosonState& state, const MeasTerm& term, std::uint64_t seed);

/// Running sums of shot values.
struct ShotStats {
  std::uint64_t shots = 0;
  std::uint64_t passed = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v, bool pass) {
    ++shots;
    passed += pass ? 1 : 0;
    sum += v;
    sum_sq += v * v;
  }
  void merge(const ShotStats& o) {
    shots += o.shots;
    passed += o.passed;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const { return shots ? sum / static_cast<double>(shots) : 0.0; }
  /// Unbiased per-shot sample variance.
  double variance() const;
  /// Standard error of the mean.
  double standard_error() const;
};

/// Shots are drawn in blocks of this size, each block from its own seed
/// sub-stream, so any block-aligned split into shards reproduces the same
/// shots.
inline constexpr std::uint64_t kShotBlock = 4096;

/// Shots [begin, end) of the stream identified by (seed, stream_id).
/// Appends to `log` if non-null.
ShotStats run_shots(const TermSampler& sampler, std::uint64_t seed, std::uint64_t stream_id, std::uint64_t begin,
                    std::uint64_t end, std::vector<ShotRecord>* log = nullptr);

/// Pure photon-number shots estimating <Q>: value 1 when every mode holds at
/// most one photon.
ShotStats run_projection_shots(const PhotonCounter& counter, std::uint64_t seed, std::uint64_t stream_id,
                               std::uint64_t begin, std::uint64_t end);

struct EstimateReport {
  double mean = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double numerator_variance = 0.0;    // of the mean
  double denominator_variance = 0.0;  // of the mean
  /// Delta-method variance of the ratio from empirical shot variances.
  double empirical_variance = 0.0;
  double variance_bound = 0.0;
  double bias_bound = 0.0;
  std::vector<std::uint64_t> numerator_shots;    // per numerator term
  std::vector<std::uint64_t> denominator_shots;  // per metric term
  int m_h = 0;
  int m_v = 0;
  int k_h = 0;
  int k_v = 0;
  double chi = 0.0;
  double projection_ratio = 0.0;
  double projection_ratio_stderr = 0.0;
  std::uint64_t projection_shots = 0;

  double standard_error() const;
};

struct EstimateOptions {
  std::uint64_t numerator_budget = 0;    // N_H
  std::uint64_t denominator_budget = 0;  // N_V
  std::uint64_t seed = 0;
  /// Lower bound on <Q> used in the analytic bounds. Defaults to the
  /// measured projection ratio minus three standard errors, floored at 0.05.
  std::optional<double> chi;
  unsigned threads = 1;
  /// Collects every shot when non-null (numerator terms first).
  std::vector<ShotRecord>* log = nullptr;
};

/// Ratio estimate <H>/<Q> with the denominator from pure photon counting.
EstimateReport estimate_energy(const fock::BosonState& state, const hamlib::LadderTermSum& h,
                               const EstimateOptions& options);

/// Ratio estimate <H>/<M> with a measured metric operator M (e.g. V+V).
EstimateReport estimate_energy(const fock::BosonState& state, const hamlib::LadderTermSum& h,
                               const hamlib::LadderTermSum& metric, const EstimateOptions& options);

/// CSV with header term_id,diagonal_outcomes,phases,quadratures,value; list
/// fields are ';'-separated.
void write_shot_log(std::ostream& out, const std::vector<ShotRecord>& records);

}  // namespace bsc::homodyne
