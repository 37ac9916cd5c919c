// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/hamlib/ladder.hpp"
#include "bsc/hamlib/transform.hpp"
#include "bsc/homodyne/estimator.hpp"
#include "bsc/solver/optimize.hpp"
#include "bsc/solver/problem.hpp"
#include "bsc/solver/reference.hpp"
#include "bsc/solver/scan.hpp"
#include "oracles.hpp"

namespace bsc::solver {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

const std::string kData = BSC_TEST_DATA_DIR;

hamlib::SecondQuantHam load(const std::string& name) { return hamlib::load_hamiltonian(kData + "/" + name); }

AnsatzParams random_params(const Problem& p, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  AnsatzParams a = zero_params(p);
  for (auto& v : a.alpha) v = u(rng);
  for (auto& v : a.beta) v = u(rng);
  return a;
}

// Qubit-space vector of the encoded part of exp(i alpha) |ref>, built from
// the dense boson generator.
VectorXcd encoded_qubit_vector(const Problem& p, const AnsatzParams& a) {
  const auto it = interf::Interferometer::from_params(a.alpha, p.alpha_mask);
  const int m = p.modes(), n = p.electrons();
  const auto basis = oracle::boson_basis(m, n);
  const MatrixXcd u = oracle::expi_hermitian(oracle::boson_generator(it.generator(), basis));
  std::vector<int> ref(m, 0);
  for (int i : p.reference) ref[i] = 1;
  const auto col = std::find(basis.begin(), basis.end(), ref) - basis.begin();
  VectorXcd q = VectorXcd::Zero(1 << m);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    int bits = 0;
    bool single = true;
    for (int k = 0; k < m; ++k) {
      single = single && basis[r][k] <= 1;
      if (basis[r][k] == 1) bits |= 1 << k;
    }
    if (single) q(bits) = u(r, col);
  }
  return q;
}

double dense_cost(const Problem& p, const AnsatzParams& a) {
  const VectorXcd q = encoded_qubit_vector(p, a);
  const MatrixXcd h = oracle::hamiltonian_dense(p.hamiltonian);
  const int m = p.modes();
  MatrixXcd v;
  if (p.method == Method::BsHf) {
    const MatrixXcd beta = hf_generator(p, a.beta);
    hamlib::FermiTermSum gen;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gen.add({hamlib::cr(i), hamlib::an(j)}, beta(i, j));
    v = oracle::expi_hermitian(oracle::fermi_dense(gen, m));
  } else {
    const auto spec = classical_spec(p, a.beta);
    v = MatrixXcd::Identity(1 << m, 1 << m);
    std::vector<MatrixXcd> f(m);
    for (int j = 0; j < m; ++j) f[j] = oracle::annihilator(j, m);
    for (const auto& [ia, t] : spec.singles) v += t * f[ia.second].adjoint() * f[ia.first];
    for (const auto& [x, t] : spec.doubles) v += t * f[x[2]].adjoint() * f[x[3]].adjoint() * f[x[1]] * f[x[0]];
  }
  const cplx num = (q.adjoint() * v.adjoint() * h * v * q)(0);
  const cplx den = (q.adjoint() * v.adjoint() * v * q)(0);
  return (num / den).real();
}

TEST(Problem, Shapes) {
  const auto hf = make_problem(load("h2_sto3g_0.75.fcidump"), Method::BsHf);
  EXPECT_EQ(hf.modes(), 4);
  EXPECT_EQ(hf.alpha_size(), 16 - 2);  // occ-occ pair (0,1) frozen, re and im
  EXPECT_EQ(hf.beta_size(), 16);
  const auto ci = make_problem(load("h4_line_1.00.fcidump"), Method::BsCisd);
  EXPECT_EQ(ci.beta_size(), 16 + 36);
  const auto full = make_problem(load("h2_sto3g_0.75.fcidump"), Method::BsHf, {AlphaMask::Full});
  EXPECT_EQ(full.alpha_size(), 16);
  const auto a = random_params(ci, 1, 0.1);
  const auto back = unpack(ci, a.pack());
  EXPECT_EQ(back.alpha, a.alpha);
  EXPECT_EQ(back.beta, a.beta);
  EXPECT_THROW(unpack(ci, std::vector<double>(3)), ValidationError);
  EXPECT_EQ(method_from_string("bs-cisd"), Method::BsCisd);
  EXPECT_THROW(method_from_string("uccsd"), ValidationError);
}

TEST(Cost, ZeroParamsGiveReferenceEnergy) {
  for (const char* f : {"h2_sto3g_0.75.fcidump", "h4_square_1.50.fcidump"}) {
    const auto h = load(f);
    const auto p = make_problem(h, Method::BsCisd);
    const auto c = cost(p, zero_params(p));
    EXPECT_NEAR(c.energy, determinant_energy(h), 1e-12);
    EXPECT_NEAR(c.projection_ratio, 1.0, 1e-14);
  }
}

TEST(Cost, MatchesDenseOracle) {
  for (auto method : {Method::BsHf, Method::BsCisd}) {
    for (const char* f : {"h2_sto3g_1.00.fcidump", "lih_1.50.fcidump"}) {
      const auto p = make_problem(load(f), method);
      for (std::uint64_t seed : {1u, 2u}) {
        const auto a = random_params(p, seed, 0.3);
        EXPECT_NEAR(cost(p, a).energy, dense_cost(p, a), 1e-10) << f;
        CostEvaluator ev(p);
        EXPECT_NEAR(ev(a).energy, cost(p, a).energy, 1e-12);
        EXPECT_NEAR(ev(a).energy, cost(p, a).energy, 1e-12);  // cached path
      }
    }
  }
}

// Symbolic route: transformed operator -> Jordan-Wigner -> exact expectation.
TEST(Cost, MatchesSymbolicRoute) {
  for (auto method : {Method::BsHf, Method::BsCisd}) {
    const auto p = make_problem(load("h4_square_1.00.fcidump"), method);
    const auto a = random_params(p, 5, 0.2);
    const auto st = output_state(p, a.alpha);
    double e;
    if (method == Method::BsHf) {
      const auto ht = hamlib::transform_hf(p.hamiltonian, hf_generator(p, a.beta));
      e = homodyne::exact_expectation(st, hamlib::jordan_wigner(hamlib::to_fermi(ht), p.modes())) /
          fock::projection_ratio(st);
    } else {
      const auto ops = hamlib::transform_cisd(p.hamiltonian, classical_spec(p, a.beta));
      e = homodyne::exact_expectation(st, hamlib::jordan_wigner(ops.hamiltonian, p.modes())) /
          homodyne::exact_expectation(st, hamlib::jordan_wigner(ops.metric, p.modes()));
    }
    EXPECT_NEAR(cost(p, a).energy, e, 1e-10);
    EXPECT_NEAR(cost(p, a).projection_ratio, fock::projection_ratio(st), 1e-12);
  }
}

TEST(Cost, PenaltyAddsProjectionTerm) {
  const auto p = make_problem(load("h2_sto3g_1.00.fcidump"), Method::BsHf);
  const auto a = random_params(p, 3, 0.4);
  const auto c = cost(p, a);
  EXPECT_NEAR(cost_penalized(p, a, 0.0), c.energy, 1e-14);
  EXPECT_NEAR(cost_penalized(p, a, 0.5), c.energy - 0.5 * c.projection_ratio, 1e-12);
}

TEST(Reference, EnergiesAgreeWithOracle) {
  for (const char* f : {"h2_sto3g_0.75.fcidump", "lih_1.00.fcidump", "h4_line_1.50.fcidump"}) {
    const auto h = load(f);
    EXPECT_NEAR(fci_energy(h), oracle::ground_energy(h), 1e-10) << f;
    EXPECT_GE(cisd_energy(h), fci_energy(h) - 1e-10);
    EXPECT_LE(cisd_energy(h), determinant_energy(h) + 1e-10);
  }
  // Two electrons: CISD spans the whole space.
  const auto lih = load("lih_1.50.fcidump");
  EXPECT_NEAR(cisd_energy(lih), fci_energy(lih), 1e-9);
}

TEST(Reference, Hierarchy) {
  OptimizeConfig cfg;
  cfg.restarts = 3;
  const auto r = reference_energies(load("h2_sto3g_0.75.fcidump"), cfg);
  EXPECT_LT(r.fci, r.hf + 1e-12);
  EXPECT_LE(r.cisd, r.hf + 1e-10);
  EXPECT_LE(r.hf, r.determinant + 1e-10);
  EXPECT_NEAR(r.cisd, r.fci, 1e-10);
}

TEST(Minimize, Rosenbrock) {
  const Objective f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const auto g = fd_gradient(f, std::vector<double>{0.5, 0.5}, 1e-6);
  EXPECT_NEAR(g[0], -400 * 0.5 * (0.5 - 0.25) - 2 * 0.5, 1e-5);
  EXPECT_NEAR(g[1], 200 * (0.5 - 0.25), 1e-5);
  for (auto kind : {OptimizerKind::Bfgs, OptimizerKind::Simplex}) {
    MinimizeOptions o;
    o.kind = kind;
    o.max_iter = 5000;
    const auto r = minimize(f, {-1.2, 1.0}, o);
    EXPECT_NEAR(r.x[0], 1.0, 1e-3) << to_string(kind);
    EXPECT_NEAR(r.x[1], 1.0, 2e-3);
  }
  const Objective bad = [](std::span<const double> x) { return x[0] > 0.05 ? NAN : x[0] * x[0]; };
  EXPECT_NO_THROW(minimize(bad, {0.04}, MinimizeOptions{}));
}

TEST(Optimize, H2ReachesFciDeterministically) {
  const auto h = load("h2_sto3g_1.00.fcidump");
  const auto p = make_problem(h, Method::BsHf);
  OptimizeConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 11;
  const auto out = optimize(p, cfg);
  EXPECT_EQ(out.restarts.size(), 3u);
  EXPECT_LT(std::abs(out.best.energy - fci_energy(h)), 1.6e-3);
  for (const auto& r : out.restarts) EXPECT_GE(r.energy, out.best.energy);
  EXPECT_FALSE(out.best.trace.empty());
  cfg.threads = 2;
  const auto again = optimize(p, cfg);
  EXPECT_EQ(again.best.energy, out.best.energy);
  EXPECT_EQ(again.best.params.alpha, out.best.params.alpha);
  cfg.seed = 12;
  EXPECT_NE(optimize(p, cfg).best.params.alpha, out.best.params.alpha);
}

TEST(Optimize, InitialParamsScaleAndSeed) {
  const auto p = make_problem(load("h2_sto3g_1.00.fcidump"), Method::BsHf);
  OptimizeConfig cfg;
  cfg.init_scale = 0.05;
  const auto a = initial_params(p, cfg, 0), b = initial_params(p, cfg, 1);
  for (double v : a) EXPECT_LE(std::abs(v), 0.05);
  EXPECT_NE(a, b);
  EXPECT_EQ(a, initial_params(p, cfg, 0));
  cfg.freeze_alpha = true;
  for (double v : unpack(p, initial_params(p, cfg, 0)).alpha) EXPECT_EQ(v, 0.0);
}

TEST(Scan, ManifestAndCsv) {
  EXPECT_THROW(parse_manifest("{"), ParseError);
  EXPECT_THROW(parse_manifest("[{\"label\":\"x\"}]"), ParseError);
  const auto entries = parse_manifest(R"([{"label":"a","file":"h2_sto3g_0.75.fcidump","method":"bs-hf"},
                                          {"label":"b","file":"missing.fcidump","method":"bs-hf"}])");
  ASSERT_EQ(entries.size(), 2u);
  OptimizeConfig cfg;
  cfg.restarts = 2;
  const auto rows = scan_pes(entries, cfg, "/nonexistent", kData);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].failed);
  EXPECT_TRUE(rows[1].failed);
  EXPECT_LT(std::abs(rows[0].e_bsc - rows[0].e_fci), 1.6e-3);
  std::ostringstream ss;
  write_scan_csv(ss, rows);
  std::istringstream in(ss.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "label,e_bsc,e_hf,e_cisd,e_fci,q_ratio,converged");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "a,");
  std::getline(in, line);
  EXPECT_EQ(line, "b,nan,nan,nan,nan,nan,failed");
}

}  // namespace
}  // namespace bsc::solver
