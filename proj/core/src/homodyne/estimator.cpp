// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/homodyne/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <string>

#include "bsc/homodyne/kernel.hpp"
#include "bsc/parallel.hpp"

namespace bsc::homodyne {

using hamlib::LadderString;
using hamlib::LadderTermSum;
using hamlib::Symbol;

namespace {

constexpr std::uint64_t kMetricStream = std::uint64_t{1} << 32;
constexpr std::uint64_t kProjectionStream = std::uint64_t{2} << 32;

bool is_homodyne(Symbol s) { return s == Symbol::Plus || s == Symbol::Minus; }

double diagonal_factor(Symbol s, int count) {
  if (count >= 2) return 0.0;
  switch (s) {
    case Symbol::I: return 1.0;
    case Symbol::Z: return count == 0 ? 1.0 : -1.0;
    case Symbol::P0: return count == 0 ? 1.0 : 0.0;
    case Symbol::P1: return count == 1 ? 1.0 : 0.0;
    default: break;
  }
  throw ValidationError("not a diagonal symbol");
}

}  // namespace

double MeasTerm::magnitude() const { return (paired ? 2.0 : 1.0) * std::abs(coefficient); }

std::vector<MeasTerm> pair_hermitian(const LadderTermSum& op) {
  std::vector<MeasTerm> out;
  for (const auto& [s, c] : op.terms()) {
    if (hamlib::count_raising(s) != hamlib::count_lowering(s)) {
      throw ValidationError("term " + hamlib::to_string(s) + " changes the photon number");
    }
    const LadderString adj = hamlib::adjoint(s);
    const cplx partner = op.coefficient(adj);
    if (std::abs(partner - std::conj(c)) > 1e-10) {
      throw ValidationError("operator is not Hermitian at term " + hamlib::to_string(s));
    }
    if (adj == s) {
      out.push_back({c, s, false});
    } else if (s < adj) {
      out.push_back({c, s, true});
    }
  }
  return out;
}

double term_variance_bound(const MeasTerm& term) {
  const double m = term.magnitude();
  return m * m * std::pow(kSigmaBound, 4 * term.sigma_pairs());
}

cplx exact_expectation_complex(const fock::BosonState& state, const LadderString& string) {
  const auto& sector = *state.sector;
  if (static_cast<int>(string.size()) != sector.modes()) throw ValidationError("term length does not match modes");
  const auto& bits = sector.encoded_bits();
  const auto& pos = sector.encoded_positions();
  cplx sum = 0.0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    const cplx cj = state.amplitudes[static_cast<Eigen::Index>(pos[j])];
    if (cj == cplx{}) continue;
    const auto hit = hamlib::apply(string, bits[j]);
    if (!hit) continue;
    const auto i = sector.encoded_rank(hit->first);
    if (!i) continue;  // string moved out of the N-photon encoded space
    sum += std::conj(state.amplitudes[static_cast<Eigen::Index>(pos[*i])]) * hit->second * cj;
  }
  return sum;
}

double exact_expectation(const fock::BosonState& state, const LadderTermSum& op) {
  cplx sum = 0.0;
  for (const auto& [s, c] : op.terms()) sum += c * exact_expectation_complex(state, s);
  return sum.real();
}

double exact_term_value(const fock::BosonState& state, const MeasTerm& term) {
  return (term.paired ? 2.0 : 1.0) * (term.coefficient * exact_expectation_complex(state, term.string)).real();
}

PhotonCounter::PhotonCounter(const fock::BosonState& state) : state_(state) {
  if (!state_.sector) throw ValidationError("state has no sector");
  const auto n = state_.amplitudes.size();
  cumulative_.resize(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc += std::norm(state_.amplitudes[i]);
    cumulative_[static_cast<std::size_t>(i)] = acc;
  }
  if (!(acc > 0.0)) throw ValidationError("cannot sample from a zero state");
  for (auto& c : cumulative_) c /= acc;
}

std::size_t PhotonCounter::sample_index(Engine& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

TermSampler::TermSampler(const fock::BosonState& state, MeasTerm term, std::shared_ptr<const QuadratureGrid> grid,
                         std::optional<int> diagonal_target)
    : term_(std::move(term)), grid_(std::move(grid)), counter_(state) {
  const auto& sector = *state.sector;
  if (static_cast<int>(term_.string.size()) != sector.modes()) throw ValidationError("term length does not match modes");
  if (hamlib::count_raising(term_.string) != hamlib::count_lowering(term_.string)) {
    throw ValidationError("term changes the photon number");
  }
  if (!grid_ || grid_->n_max() < sector.photons()) throw ValidationError("quadrature grid cutoff below photon number");
  for (int m = 0; m < sector.modes(); ++m) (is_homodyne(term_.string[m]) ? offdiag_ : diagonal_).push_back(m);
  const int target = diagonal_target.value_or(sector.photons() - term_.sigma_pairs());

  std::map<std::vector<int>, std::size_t> index;
  group_of_.resize(sector.dim());
  const double norm2 = state.amplitudes.squaredNorm();
  for (std::size_t s = 0; s < sector.dim(); ++s) {
    const auto& occ = sector.state(s);
    std::vector<int> counts;
    counts.reserve(diagonal_.size());
    for (int m : diagonal_) counts.push_back(occ[m]);
    auto [it, fresh] = index.try_emplace(counts, groups_.size());
    if (fresh) {
      Group g;
      g.counts = counts;
      int total = 0;
      bool single = true;
      g.factor = 1.0;
      for (std::size_t d = 0; d < diagonal_.size(); ++d) {
        total += counts[d];
        single = single && counts[d] <= 1;
        g.factor *= diagonal_factor(term_.string[diagonal_[d]], counts[d]);
      }
      g.passed = single && total == target;
      if (!g.passed) g.factor = 0.0;
      groups_.push_back(std::move(g));
    }
    group_of_[s] = it->second;
    const cplx a = state.amplitudes[static_cast<Eigen::Index>(s)];
    if (a == cplx{}) continue;
    Occupation off;
    off.reserve(offdiag_.size());
    for (int m : offdiag_) off.push_back(occ[m]);
    groups_[it->second].components.push_back({std::move(off), a / std::sqrt(norm2)});
  }
  for (auto& g : groups_) {
    double w = 0.0;
    for (const auto& c : g.components) w += std::norm(c.amp);
    if (w > 0.0)
      for (auto& c : g.components) c.amp /= std::sqrt(w);
  }
}

ShotRecord TermSampler::shot(Engine& rng) const {
  ShotRecord rec;
  const Group& g = groups_[group_of_[counter_.sample_index(rng)]];
  rec.diagonal_outcomes = g.counts;
  rec.passed = g.passed;
  if (g.factor == 0.0) return rec;

  std::vector<Component> comps = g.components;
  cplx product = term_.coefficient;
  const std::size_t k = offdiag_.size();
  rec.phases.reserve(k);
  rec.quadratures.reserve(k);
  std::vector<double> psi(static_cast<std::size_t>(grid_->n_max()) + 1);
  for (std::size_t j = 0; j < k; ++j) {
    int n_max = 0;
    for (const auto& c : comps) n_max = std::max(n_max, c.occ[j]);
    // Reduced density matrix of mode j: contract components that agree on
    // all later modes.
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (const auto& a : comps)
      for (const auto& b : comps) {
        bool same = true;
        for (std::size_t r = j + 1; r < k && same; ++r) same = a.occ[r] == b.occ[r];
        if (same) rho(a.occ[j], b.occ[j]) += a.amp * std::conj(b.amp);
      }
    const double phi = std::numbers::pi * uniform01(rng);
    const double x = grid_->sample(rho, phi, uniform01(rng));
    rec.phases.push_back(phi);
    rec.quadratures.push_back(x);
    product *= kernel(term_.string[offdiag_[j]], phi, x);

    // Collapse: amplitudes of the remaining modes given outcome (phi, x).
    hermite_functions(n_max, x, psi);
    std::vector<Component> next;
    for (const auto& a : comps) {
      const cplx w = a.amp * std::polar(psi[a.occ[j]], -a.occ[j] * phi);
      auto it = std::find_if(next.begin(), next.end(), [&](const Component& c) {
        return std::equal(c.occ.begin() + static_cast<long>(j) + 1, c.occ.end(), a.occ.begin() + static_cast<long>(j) + 1);
      });
      if (it == next.end()) {
        Component c{a.occ, w};
        c.occ[j] = 0;
        next.push_back(std::move(c));
      } else {
        it->amp += w;
      }
    }
    double norm2 = 0.0;
    for (const auto& c : next) norm2 += std::norm(c.amp);
    if (norm2 > 0.0)
      for (auto& c : next) c.amp /= std::sqrt(norm2);
    comps = std::move(next);
  }
  rec.value = g.factor * (term_.paired ? 2.0 : 1.0) * product.real();
  return rec;
}

std::shared_ptr<const QuadratureGrid> grid_for(int photons) { return std::make_shared<const QuadratureGrid>(photons); }

ShotRecord sample_term_shot(const fock::BosonState& state, const MeasTerm& term, std::uint64_t seed) {
  TermSampler sampler(state, term, grid_for(state.sector->photons()));
  Engine rng = make_engine(seed);
  return sampler.shot(rng);
}

double ShotStats::variance() const {
  if (shots < 2) return 0.0;
  const double n = static_cast<double>(shots);
  const double m = sum / n;
  return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

double ShotStats::standard_error() const {
  return shots ? std::sqrt(variance() / static_cast<double>(shots)) : 0.0;
}

namespace {

template <typename Draw>
ShotStats run_blocks(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t begin, std::uint64_t end, Draw draw) {
  ShotStats total;
  if (end <= begin) return total;
  for (std::uint64_t block = begin / kShotBlock; block * kShotBlock < end; ++block) {
    Engine rng = make_engine(seed, {stream_id, block});
    ShotStats part;
    const std::uint64_t first = block * kShotBlock;
    const std::uint64_t last = std::min(end, first + kShotBlock);
    for (std::uint64_t i = first; i < last; ++i) {
      // Shots before `begin` in this block are replayed and discarded.
      draw(rng, i >= begin ? &part : nullptr);
    }
    total.merge(part);
  }
  return total;
}

}  // namespace

ShotStats run_shots(const TermSampler& sampler, std::uint64_t seed, std::uint64_t stream_id, std::uint64_t begin,
                    std::uint64_t end, std::vector<ShotRecord>* log) {
  return run_blocks(seed, stream_id, begin, end, [&](Engine& rng, ShotStats* stats) {
    ShotRecord rec = sampler.shot(rng);
    if (!stats) return;
    stats->add(rec.value, rec.passed);
    if (log) {
      rec.term = static_cast<std::size_t>(stream_id);
      log->push_back(std::move(rec));
    }
  });
}

ShotStats run_projection_shots(const PhotonCounter& counter, std::uint64_t seed, std::uint64_t stream_id,
                               std::uint64_t begin, std::uint64_t end) {
  return run_blocks(seed, stream_id, begin, end, [&](Engine& rng, ShotStats* stats) {
    const auto& occ = counter.sample(rng);
    if (!stats) return;
    const bool encoded = std::all_of(occ.begin(), occ.end(), [](int n) { return n <= 1; });
    stats->add(encoded ? 1.0 : 0.0, encoded);
  });
}

double EstimateReport::standard_error() const { return std::sqrt(empirical_variance); }

namespace {

struct TermBatch {
  std::vector<MeasTerm> terms;
  std::vector<ShotStats> stats;
  std::vector<std::vector<ShotRecord>> logs;
  std::uint64_t per_term = 0;
};

void run_batch(const fock::BosonState& state, TermBatch& batch, std::uint64_t budget, std::uint64_t stream_base,
               std::size_t log_offset, const EstimateOptions& opt, const std::shared_ptr<const QuadratureGrid>& grid) {
  const std::size_t m = batch.terms.size();
  if (m == 0) return;
  if (budget < m) {
    throw ValidationError("shot budget " + std::to_string(budget) + " is smaller than the term count " + std::to_string(m));
  }
  batch.per_term = budget / m;
  batch.stats.assign(m, {});
  batch.logs.assign(opt.log ? m : 0, {});
  parallel_for(m, opt.threads, [&](std::size_t t) {
    TermSampler sampler(state, batch.terms[t], grid);
    batch.stats[t] = run_shots(sampler, opt.seed, stream_base + t, 0, batch.per_term, opt.log ? &batch.logs[t] : nullptr);
    if (opt.log)
      for (auto& rec : batch.logs[t]) rec.term = log_offset + t;
  });
  if (opt.log)
    for (auto& l : batch.logs) opt.log->insert(opt.log->end(), l.begin(), l.end());
}

EstimateReport finish(const TermBatch& num, const std::vector<MeasTerm>& metric_terms, double den, double den_var,
                      std::vector<std::uint64_t> den_shots, std::uint64_t n_v, const ShotStats& q,
                      const EstimateOptions& opt) {
  EstimateReport r;
  for (const auto& s : num.stats) {
    r.numerator += s.mean();
    r.numerator_variance += s.shots ? s.variance() / static_cast<double>(s.shots) : 0.0;
    r.numerator_shots.push_back(s.shots);
  }
  r.denominator = den;
  r.denominator_variance = den_var;
  r.denominator_shots = std::move(den_shots);
  r.projection_ratio = q.mean();
  r.projection_ratio_stderr = q.standard_error();
  r.projection_shots = q.shots;
  if (!(den > 0.0) || std::abs(den) < 1e-12) {
    throw UnreliableEstimate("denominator estimate " + std::to_string(den) + " is not positive");
  }
  r.mean = r.numerator / den;
  r.empirical_variance = (r.numerator_variance + r.mean * r.mean * den_var) / (den * den);

  r.m_h = static_cast<int>(num.terms.size());
  r.m_v = static_cast<int>(metric_terms.size());
  double sum_h2 = 0.0, h_norm = 0.0, sum_g2 = 0.0;
  for (const auto& t : num.terms) {
    sum_h2 += t.magnitude() * t.magnitude();
    h_norm += t.magnitude();
    r.k_h = std::max(r.k_h, t.sigma_pairs());
  }
  for (const auto& t : metric_terms) {
    sum_g2 += t.magnitude() * t.magnitude();
    r.k_v = std::max(r.k_v, t.sigma_pairs());
  }
  r.chi = opt.chi.value_or(std::max(0.05, r.projection_ratio - 3.0 * r.projection_ratio_stderr));
  if (!(r.chi > 0.0)) throw ValidationError("projection-ratio lower bound must be positive");
  const double chi2 = r.chi * r.chi;
  const double fv = std::pow(kSigmaBound, 4 * r.k_v) * r.m_v * sum_g2 / (chi2 * static_cast<double>(n_v));
  const double fh = std::pow(kSigmaBound, 4 * r.k_h) * r.m_h * sum_h2 / (chi2 * static_cast<double>(opt.numerator_budget));
  r.variance_bound = fv * h_norm * h_norm + fh;
  r.bias_bound = fv * h_norm;
  return r;
}

void check_budgets(const EstimateOptions& opt) {
  if (opt.numerator_budget == 0 || opt.denominator_budget == 0) throw ValidationError("shot budgets must be positive");
}

}  // namespace

EstimateReport estimate_energy(const fock::BosonState& state, const LadderTermSum& h, const EstimateOptions& opt) {
  check_budgets(opt);
  const auto grid = grid_for(state.sector->photons());
  TermBatch num;
  num.terms = pair_hermitian(h);
  run_batch(state, num, opt.numerator_budget, 0, 0, opt, grid);
  const PhotonCounter counter(state);
  const ShotStats q = run_projection_shots(counter, opt.seed, kProjectionStream, 0, opt.denominator_budget);
  const std::vector<MeasTerm> metric{{1.0, LadderString(static_cast<std::size_t>(state.sector->modes()), Symbol::I), false}};
  const double var = q.shots ? q.variance() / static_cast<double>(q.shots) : 0.0;
  return finish(num, metric, q.mean(), var, {q.shots}, opt.denominator_budget, q, opt);
}

EstimateReport estimate_energy(const fock::BosonState& state, const LadderTermSum& h, const LadderTermSum& metric,
                               const EstimateOptions& opt) {
  check_budgets(opt);
  const auto grid = grid_for(state.sector->photons());
  TermBatch num;
  num.terms = pair_hermitian(h);
  run_batch(state, num, opt.numerator_budget, 0, 0, opt, grid);
  TermBatch den;
  den.terms = pair_hermitian(metric);
  run_batch(state, den, opt.denominator_budget, kMetricStream, num.terms.size(), opt, grid);
  double d = 0.0, d_var = 0.0;
  std::vector<std::uint64_t> shots;
  for (const auto& s : den.stats) {
    d += s.mean();
    d_var += s.shots ? s.variance() / static_cast<double>(s.shots) : 0.0;
    shots.push_back(s.shots);
  }
  const PhotonCounter counter(state);
  const ShotStats q = run_projection_shots(counter, opt.seed, kProjectionStream, 0, opt.denominator_budget);
  return finish(num, den.terms, d, d_var, std::move(shots), opt.denominator_budget, q, opt);
}

void write_shot_log(std::ostream& out, const std::vector<ShotRecord>& records) {
  auto join = [&out](const auto& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ';';
      out << v[i];
    }
  };
  const auto old_precision = out.precision(17);
  out << "term_id,diagonal_outcomes,phases,quadratures,value\n";
  for (const auto& r : records) {
    out << r.term << ',';
    join(r.diagonal_outcomes);
    out << ',';
    join(r.phases);
    out << ',';
    join(r.quadratures);
    out << ',' << r.value << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bsc::homodyne
