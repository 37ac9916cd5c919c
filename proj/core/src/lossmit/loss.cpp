// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/lossmit/loss.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace bsc::lossmit {

using homodyne::MeasTerm;
using homodyne::ShotStats;

namespace {

constexpr std::uint64_t kCalibrationStream = std::uint64_t{1} << 40;

struct KrausOutcome {
  double probability = 0.0;
  fock::BosonState state;
};

// E_l on `mode`: removes l photons with amplitude sqrt(C(n,l) s^{n-l} (1-s)^l).
KrausOutcome kraus_branch(const fock::BosonState& in, int mode, int l, double survival) {
  const auto& sector = *in.sector;
  auto out_sector = std::make_shared<const fock::FockSector>(sector.modes(), sector.photons() - l);
  KrausOutcome out{0.0, {out_sector, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out_sector->dim()))}};
  for (std::size_t s = 0; s < sector.dim(); ++s) {
    const cplx a = in.amplitudes[static_cast<Eigen::Index>(s)];
    const int n = sector.state(s)[mode];
    if (a == cplx{} || n < l) continue;
    Occupation occ = sector.state(s);
    occ[mode] -= l;
    const double w = fock::binomial(n, l) * std::pow(survival, n - l) * std::pow(1.0 - survival, l);
    out.state.amplitudes[static_cast<Eigen::Index>(out_sector->index(occ))] += a * std::sqrt(w);
  }
  out.probability = out.state.amplitudes.squaredNorm();
  if (out.probability > 0.0) out.state.amplitudes /= std::sqrt(out.probability);
  return out;
}

int max_occupation(const fock::BosonState& st, int mode) {
  int n = 0;
  for (std::size_t s = 0; s < st.sector->dim(); ++s)
    if (st.amplitudes[static_cast<Eigen::Index>(s)] != cplx{}) n = std::max(n, st.sector->state(s)[mode]);
  return n;
}

template <typename Draw>
void run_blocks(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t shots, Draw draw) {
  for (std::uint64_t block = 0; block * homodyne::kShotBlock < shots; ++block) {
    Engine rng = make_engine(seed, {stream_id, block});
    const std::uint64_t last = std::min(shots, (block + 1) * homodyne::kShotBlock);
    for (std::uint64_t i = block * homodyne::kShotBlock; i < last; ++i) draw(rng);
  }
}

}  // namespace

void LossChannel::validate() const {
  if (!(survival > 0.0 && survival <= 1.0)) {
    throw ValidationError("survival probability must lie in (0, 1], got " + std::to_string(survival));
  }
}

LossTrajectory apply_loss(const fock::BosonState& state, const LossChannel& channel, Engine& rng) {
  channel.validate();
  const int modes = state.sector->modes();
  LossTrajectory traj{std::vector<int>(static_cast<std::size_t>(modes), 0), 0, state};
  if (channel.survival == 1.0) return traj;
  for (int m = 0; m < modes; ++m) {
    const int top = max_occupation(traj.state, m);
    if (top == 0) continue;
    const double u = uniform01(rng);
    double acc = 0.0;
    std::optional<KrausOutcome> pick;
    for (int l = 0; l <= top; ++l) {
      KrausOutcome k = kraus_branch(traj.state, m, l, channel.survival);
      acc += k.probability;
      if (k.probability > 0.0) {
        pick = std::move(k);
        traj.lost_per_mode[m] = l;
      }
      if (u < acc) break;
    }
    traj.lost += traj.lost_per_mode[m];
    traj.state = std::move(pick->state);
  }
  return traj;
}

LossTrajectory apply_loss(const fock::BosonState& state, const LossChannel& channel, std::uint64_t seed) {
  Engine rng = make_engine(seed);
  return apply_loss(state, channel, rng);
}

MitigationCounts count_events(const CalibrationHistogram& histogram, const MeasTerm& term, int photons) {
  const int k = term.sigma_pairs();
  MitigationCounts c;
  for (const auto& [occ, n] : histogram) {
    if (occ.size() != term.string.size()) throw ValidationError("calibration outcome length does not match term");
    c.total += n;
    int total = 0, diag = 0;
    bool all_single = true, diag_single = true;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      total += occ[m];
      all_single = all_single && occ[m] <= 1;
      const auto s = term.string[m];
      if (s != hamlib::Symbol::Plus && s != hamlib::Symbol::Minus) {
        diag += occ[m];
        diag_single = diag_single && occ[m] <= 1;
      }
    }
    const bool e1 = total == photons && all_single;
    const bool e2 = diag == photons - k && diag_single;
    if (e1) c.n1 += n;
    if (e2) c.n2 += n;
    if (e1 && diag == photons - k) c.n3 += n;
  }
  return c;
}

LossyDevice::LossyDevice(fock::BosonState input, interf::Interferometer interferometer, LossChannel channel)
    : input_(std::move(input)), interferometer_(std::move(interferometer)), channel_(channel) {
  channel_.validate();
  if (!input_.sector) throw ValidationError("input state has no sector");
  const double norm = input_.norm();
  if (std::abs(norm - 1.0) > 1e-9) throw ValidationError("input state is not normalized");
  const int modes = input_.sector->modes();

  // Enumerate Kraus branches depth-first over modes, lossless branch first.
  std::function<void(int, std::vector<int>&, double, const fock::BosonState&)> expand =
      [&](int m, std::vector<int>& lost, double prob, const fock::BosonState& st) {
        if (m == modes) {
          Branch b;
          b.lost_per_mode = lost;
          for (int l : lost) b.lost += l;
          b.probability = prob;
          b.output = interf::evolve(interferometer_, st);
          branches_.push_back(std::move(b));
          return;
        }
        const int top = channel_.survival == 1.0 ? 0 : max_occupation(st, m);
        for (int l = 0; l <= top; ++l) {
          KrausOutcome k = kraus_branch(st, m, l, channel_.survival);
          if (k.probability <= 0.0) continue;
          lost[m] = l;
          expand(m + 1, lost, prob * k.probability, k.state);
        }
        lost[m] = 0;
      };
  std::vector<int> lost(static_cast<std::size_t>(modes), 0);
  expand(0, lost, 1.0, input_);

  double acc = 0.0;
  for (const auto& b : branches_) cumulative_.push_back(acc += b.probability);
  for (auto& c : cumulative_) c /= acc;
}

std::size_t LossyDevice::sample_branch(Engine& rng) const {
  if (branches_.size() == 1) return 0;
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), branches_.size() - 1);
}

CalibrationHistogram LossyDevice::calibrate(std::uint64_t shots, std::uint64_t seed) const {
  std::vector<homodyne::PhotonCounter> counters;
  counters.reserve(branches_.size());
  for (const auto& b : branches_) counters.emplace_back(b.output);
  CalibrationHistogram hist;
  run_blocks(seed, kCalibrationStream, shots, [&](Engine& rng) {
    const std::size_t b = sample_branch(rng);
    ++hist[counters[b].sample(rng)];
  });
  return hist;
}

ShotStats run_lossy_shots(const LossyDevice& device, const MeasTerm& term, std::uint64_t shots, std::uint64_t seed,
                          std::uint64_t stream_id) {
  const auto grid = homodyne::grid_for(device.photons());
  const int target = device.photons() - term.sigma_pairs();
  std::vector<std::optional<homodyne::TermSampler>> samplers(device.branches().size());
  ShotStats stats;
  run_blocks(seed, stream_id, shots, [&](Engine& rng) {
    const std::size_t b = device.sample_branch(rng);
    if (!samplers[b]) samplers[b].emplace(device.branches()[b].output, term, grid, target);
    const auto rec = samplers[b]->shot(rng);
    stats.add(rec.value, rec.passed);
  });
  return stats;
}

MitigatedEstimate correct(const ShotStats& hybrid, const MitigationCounts& counts) {
  MitigatedEstimate e;
  e.counts = counts;
  e.hybrid_shots = hybrid.shots;
  e.gated_shots = hybrid.passed;
  if (counts.n1 == 0) throw Uncorrectable("no calibration shot carried N photons in the encoded space (n1 = 0)");
  if (counts.n3 == 0) throw Uncorrectable("no calibration shot matched the term's photon split (n3 = 0)");
  if (hybrid.passed == 0) throw Uncorrectable("no hybrid shot passed the photon-number gate");

  // Shot values outside the gate are exactly zero, so the gated mean and its
  // variance follow from the running sums.
  const double g = static_cast<double>(hybrid.passed);
  e.raw = hybrid.sum / g;
  const double raw_var = g > 1 ? std::max(0.0, (hybrid.sum_sq - g * e.raw * e.raw) / (g - 1.0)) : 0.0;
  e.raw_stderr = std::sqrt(raw_var / g);

  const double n1 = static_cast<double>(counts.n1);
  const double n2 = static_cast<double>(counts.n2);
  const double n3 = static_cast<double>(counts.n3);
  const double factor = (n3 / n1) * (n2 / n3);
  e.corrected = factor * e.raw;

  // Delta method on the multinomial calibration counts; n1 and n2 events
  // overlap exactly in the n3 events.
  const double t = static_cast<double>(counts.total);
  const double p1 = n1 / t, p2 = n2 / t, p3 = n3 / t;
  const double rel = (1.0 - p1) / (t * p1) + (p2 > 0.0 ? (1.0 - p2) / (t * p2) : 0.0) -
                     (p2 > 0.0 ? 2.0 * (p3 - p1 * p2) / (t * p1 * p2) : 0.0);
  const double factor_var = factor * factor * std::max(0.0, rel);
  e.corrected_stderr = std::sqrt(factor * factor * e.raw_stderr * e.raw_stderr + e.raw * e.raw * factor_var);
  return e;
}

std::vector<MitigatedEstimate> mitigated_estimates(const LossyDevice& device, const std::vector<MeasTerm>& terms,
                                                   const MitigationBudget& budget, std::uint64_t seed) {
  if (!budget.hybrid_per_term.empty() && budget.hybrid_per_term.size() != terms.size()) {
    throw ValidationError("per-term shot list does not match the term count");
  }
  auto shots_for = [&](std::size_t t) {
    return budget.hybrid_per_term.empty() ? budget.hybrid_shots : budget.hybrid_per_term[t];
  };
  for (std::size_t t = 0; t < terms.size(); ++t)
    if (shots_for(t) == 0) throw ValidationError("shot budgets must be positive");
  if (budget.calibration_shots == 0) throw ValidationError("shot budgets must be positive");
  const CalibrationHistogram hist = device.calibrate(budget.calibration_shots, seed);
  std::vector<MitigatedEstimate> out;
  out.reserve(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const ShotStats s = run_lossy_shots(device, terms[t], shots_for(t), seed, t);
    out.push_back(correct(s, count_events(hist, terms[t], device.photons())));
  }
  return out;
}

MitigatedEstimate mitigated_estimate(const LossyDevice& device, const MeasTerm& term, const MitigationBudget& budget,
                                     std::uint64_t seed) {
  return mitigated_estimates(device, {term}, budget, seed).front();
}

}  // namespace bsc::lossmit
