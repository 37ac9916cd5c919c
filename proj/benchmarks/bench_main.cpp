// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "bsc/fock/sector.hpp"
#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/hamlib/ladder.hpp"
#include "bsc/homodyne/estimator.hpp"
#include "bsc/interf/interferometer.hpp"
#include "bsc/interf/permanent.hpp"
#include "bsc/solver/problem.hpp"

namespace {

using namespace bsc;

Eigen::MatrixXcd random_hermitian(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.4);
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

void BM_Permanent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  for (auto _ : state) benchmark::DoNotOptimize(interf::permanent(a));
}
BENCHMARK(BM_Permanent)->DenseRange(4, 16, 4);

void BM_Evolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), n = m / 2;
  const interf::Interferometer it(random_hermitian(m, 2), interf::ParamMask::full(m));
  std::vector<int> ref(n);
  for (int i = 0; i < n; ++i) ref[i] = i;
  const auto in = fock::reference_state(fock::build_sector(m, n), ref);
  for (auto _ : state) benchmark::DoNotOptimize(interf::evolve(it, in));
}
BENCHMARK(BM_Evolve)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_SamplerShots(benchmark::State& state) {
  const auto h = hamlib::load_hamiltonian(std::string(BSC_BENCH_DATA_DIR) + "/h4_line_1.00.fcidump");
  const auto terms = homodyne::pair_hermitian(hamlib::jordan_wigner(hamlib::to_fermi(h), h.modes));
  const interf::Interferometer it(random_hermitian(h.modes, 3), interf::ParamMask::full(h.modes));
  std::vector<int> ref(h.electrons);
  for (int i = 0; i < h.electrons; ++i) ref[i] = i;
  const auto st = interf::evolve(it, fock::reference_state(fock::build_sector(h.modes, h.electrons), ref));
  // The term with the most off-diagonal modes.
  std::size_t pick = 0;
  for (std::size_t t = 0; t < terms.size(); ++t)
    if (terms[t].sigma_pairs() > terms[pick].sigma_pairs()) pick = t;
  const homodyne::TermSampler sampler(st, terms[pick], homodyne::grid_for(h.electrons));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(homodyne::run_shots(sampler, ++seed, 0, 0, homodyne::kShotBlock));
  state.SetItemsProcessed(state.iterations() * homodyne::kShotBlock);
}
BENCHMARK(BM_SamplerShots)->Unit(benchmark::kMillisecond);

void BM_CostH4(benchmark::State& state) {
  const auto h = hamlib::load_hamiltonian(std::string(BSC_BENCH_DATA_DIR) + "/h4_square_1.50.fcidump");
  const auto p = solver::make_problem(h, solver::Method::BsCisd);
  auto a = solver::zero_params(p);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (auto& v : a.alpha) v = u(rng);
  for (auto& v : a.beta) v = u(rng);
  solver::CostEvaluator ev(p);
  for (auto _ : state) benchmark::DoNotOptimize(ev(a));
}
BENCHMARK(BM_CostH4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
