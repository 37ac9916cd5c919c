// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "bsc/common.hpp"
#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/hamlib/ladder.hpp"
#include "bsc/hamlib/transform.hpp"
#include "bsc/homodyne/estimator.hpp"
#include "bsc/lossmit/loss.hpp"
#include "bsc/solver/optimize.hpp"
#include "bsc/solver/problem.hpp"
#include "bsc/solver/reference.hpp"
#include "bsc/solver/scan.hpp"
#include "serialize.hpp"

#ifndef BSC_DEFAULT_DATA_DIR
#define BSC_DEFAULT_DATA_DIR ""
#endif

namespace bsc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// "-" or empty means stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what(), 0);
  }
}

solver::AlphaMask mask_from_string(const std::string& s) {
  if (s == "excitation") return solver::AlphaMask::Excitation;
  if (s == "full") return solver::AlphaMask::Full;
  throw ValidationError("unknown alpha mask: " + s);
}

void check_optimize_args(const OptimizeArgs& a) {
  if (a.restarts < 1) throw ValidationError("--restarts must be positive");
  if (a.max_iter < 1) throw ValidationError("--max-iter must be positive");
  if (!(a.lambda >= 0.0) || !std::isfinite(a.lambda)) throw ValidationError("--lambda must be non-negative");
  if (!(a.init_scale > 0.0) || !std::isfinite(a.init_scale)) throw ValidationError("--init-scale must be positive");
}

solver::OptimizeConfig make_config(const OptimizeArgs& a, const Common& c) {
  check_optimize_args(a);
  solver::OptimizeConfig cfg;
  cfg.restarts = a.restarts;
  cfg.lambda = a.lambda;
  cfg.seed = c.seed;
  cfg.init_scale = a.init_scale;
  cfg.threads = c.threads;
  cfg.minimizer.kind = solver::optimizer_from_string(a.minimizer);
  cfg.minimizer.max_iter = a.max_iter;
  return cfg;
}

json config_json(const OptimizeArgs& a, const Common& c) {
  return {{"seed", c.seed},
          {"restarts", a.restarts},
          {"lambda", a.lambda},
          {"max_iter", a.max_iter},
          {"init_scale", a.init_scale},
          {"minimizer", a.minimizer},
          {"alpha_mask", a.alpha_mask}};
}

std::string trace_csv(const solver::VqeResult& r) {
  std::string s = "iteration,energy,projection_ratio\n";
  char buf[128];
  for (const auto& p : r.trace) {
    std::snprintf(buf, sizeof buf, "%d,%.10f,%.10f\n", p.iteration, p.energy, p.projection_ratio);
    s += buf;
  }
  return s;
}

// Hamiltonian-side operators for a fixed beta.
struct MeasuredOperators {
  hamlib::LadderTermSum hamiltonian;
  std::optional<hamlib::LadderTermSum> metric;
};

MeasuredOperators measured_operators(const solver::Problem& p, const std::vector<double>& beta) {
  const int m = p.modes();
  if (p.method == solver::Method::BsHf) {
    const auto ht = hamlib::transform_hf(p.hamiltonian, solver::hf_generator(p, beta));
    return {hamlib::jordan_wigner(hamlib::to_fermi(ht), m), std::nullopt};
  }
  const auto ops = hamlib::transform_cisd(p.hamiltonian, solver::classical_spec(p, beta));
  return {hamlib::jordan_wigner(ops.hamiltonian, m), hamlib::jordan_wigner(ops.metric, m)};
}

struct Summed {
  double value = 0.0;
  double variance = 0.0;
  double raw = 0.0;
  double raw_variance = 0.0;
};

Summed sum_estimates(const std::vector<lossmit::MitigatedEstimate>& e, std::size_t begin, std::size_t end) {
  Summed s;
  for (std::size_t t = begin; t < end; ++t) {
    s.value += e[t].corrected;
    s.variance += e[t].corrected_stderr * e[t].corrected_stderr;
    s.raw += e[t].raw;
    s.raw_variance += e[t].raw_stderr * e[t].raw_stderr;
  }
  return s;
}

// Delta-method ratio of two independent sums.
std::pair<double, double> ratio(double num, double num_var, double den, double den_var) {
  if (!(std::abs(den) > 0.0)) throw NumericalError("metric estimate is zero");
  const double r = num / den;
  return {r, std::sqrt((num_var + r * r * den_var) / (den * den))};
}

json term_json(const homodyne::MeasTerm& t, const lossmit::MitigatedEstimate& e) {
  json j = to_json(e);
  j["string"] = hamlib::to_string(t.string);
  j["coefficient"] = {t.coefficient.real(), t.coefficient.imag()};
  j["paired"] = t.paired;
  return j;
}

}  // namespace

fs::path data_dir() {
  if (const char* env = std::getenv("BSC_DATA_DIR"); env && *env) return env;
  return BSC_DEFAULT_DATA_DIR;
}

fs::path locate_input(const std::string& file) {
  if (file.empty()) throw ValidationError("empty input path");
  const fs::path p(file);
  if (fs::exists(p)) return p;
  if (p.is_relative()) {
    if (const char* env = std::getenv("BSC_DATA_DIR"); env && *env && fs::exists(fs::path(env) / p))
      return fs::path(env) / p;
    const fs::path built(BSC_DEFAULT_DATA_DIR);
    if (!built.empty() && fs::exists(built / p)) return built / p;
  }
  throw ValidationError("input not found: " + file);
}

int cmd_ingest(const IngestArgs& a, const Common&) {
  const auto h = hamlib::load_hamiltonian(locate_input(a.input));
  h.validate();
  const auto jw = hamlib::jordan_wigner(hamlib::to_fermi(h), h.modes);
  if (!a.output.empty()) write_text(a.output, hamlib::to_json(h));
  std::cerr << "M " << h.modes << "\nN " << h.electrons << "\none_body_terms "
            << (h.one_body.array().abs() > 0.0).count() << "\ntwo_body_terms " << h.two_body.size()
            << "\nladder_terms " << jw.size() << "\n";
  return 0;
}

int cmd_exact(const ExactArgs& a, const Common& c) {
  if (a.restarts < 1) throw ValidationError("--restarts must be positive");
  const auto h = hamlib::load_hamiltonian(locate_input(a.input));
  solver::OptimizeConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  const auto r = solver::reference_energies(h, cfg);
  std::cout << "determinant " << energy_text(r.determinant) << "\nhf " << energy_text(r.hf) << "\ncisd "
            << energy_text(r.cisd) << "\nfci " << energy_text(r.fci) << "\n";
  if (!a.output.empty()) {
    json j{{"schema_version", kSchemaVersion},
           {"hamiltonian", a.input},
           {"modes", h.modes},
           {"electrons", h.electrons},
           {"seed", c.seed},
           {"energies", to_json(r)}};
    write_text(a.output, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_optimize(const OptimizeArgs& a, const Common& c) {
  const auto cfg = make_config(a, c);
  auto h = hamlib::load_hamiltonian(locate_input(a.input));
  solver::ProblemOptions po;
  po.alpha_mask = mask_from_string(a.alpha_mask);
  const auto problem = solver::make_problem(std::move(h), solver::method_from_string(a.method), po);
  const auto out = solver::optimize(problem, cfg);

  json restarts = json::array();
  for (const auto& r : out.restarts) restarts.push_back(to_json(r, false));
  json j{{"schema_version", kSchemaVersion},
         {"hamiltonian", a.input},
         {"method", solver::to_string(problem.method)},
         {"modes", problem.modes()},
         {"electrons", problem.electrons()},
         {"config", config_json(a, c)},
         {"best", to_json(out.best, false)},
         {"restarts", restarts}};
  write_text(a.output, j.dump(2) + "\n");

  if (!a.trace_dir.empty()) {
    fs::create_directories(a.trace_dir);
    for (const auto& r : out.restarts) {
      char name[64];
      std::snprintf(name, sizeof name, "trace_%03d.csv", r.restart);
      write_text((fs::path(a.trace_dir) / name).string(), trace_csv(r));
    }
  }
  std::cerr << "energy " << energy_text(out.best.energy) << " restart " << out.best.restart << "\n";
  return 0;
}

int cmd_measure(const MeasureArgs& a, const Common& c) {
  if (a.shots_h == 0 || a.shots_v == 0) throw ValidationError("shot budgets must be positive");
  if (!(a.loss >= 0.0 && a.loss < 1.0)) throw ValidationError("--loss must lie in [0, 1)");
  if (a.chi && !(*a.chi > 0.0 && *a.chi <= 1.0)) throw ValidationError("--chi must lie in (0, 1]");

  const fs::path params_path = locate_input(a.params);
  const json in = parse_json(read_text(params_path), params_path.string());
  check_schema(in, params_path.string());
  std::string ham;
  std::string method;
  std::string mask = "excitation";
  solver::AnsatzParams params;
  try {
    ham = in.at("hamiltonian").get<std::string>();
    method = in.at("method").get<std::string>();
    if (in.contains("config")) mask = in["config"].value("alpha_mask", mask);
    params = params_from_json(in.at("best").at("params"));
  } catch (const json::exception& e) {
    throw ParseError(params_path.string() + ": " + e.what(), 0);
  }
  fs::path ham_path;
  try {
    ham_path = locate_input(ham);
  } catch (const ValidationError&) {
    ham_path = locate_input((params_path.parent_path() / ham).string());
  }
  solver::ProblemOptions po;
  po.alpha_mask = mask_from_string(mask);
  const auto problem = solver::make_problem(hamlib::load_hamiltonian(ham_path), solver::method_from_string(method), po);
  if (static_cast<int>(params.alpha.size()) != problem.alpha_size() ||
      static_cast<int>(params.beta.size()) != problem.beta_size()) {
    throw ValidationError("parameter sizes do not match the Hamiltonian");
  }

  const double exact = solver::cost(problem, params).energy;
  const auto ops = measured_operators(problem, params.beta);
  json j{{"schema_version", kSchemaVersion},
         {"hamiltonian", ham},
         {"method", method},
         {"seed", c.seed},
         {"shots_h", a.shots_h},
         {"shots_v", a.shots_v},
         {"exact_energy", exact}};

  if (a.loss == 0.0) {
    const auto state = solver::output_state(problem, params.alpha);
    std::vector<homodyne::ShotRecord> log;
    homodyne::EstimateOptions eo;
    eo.numerator_budget = a.shots_h;
    eo.denominator_budget = a.shots_v;
    eo.seed = c.seed;
    eo.chi = a.chi;
    eo.threads = c.threads;
    eo.log = a.shot_log.empty() ? nullptr : &log;
    const auto report = ops.metric ? homodyne::estimate_energy(state, ops.hamiltonian, *ops.metric, eo)
                                   : homodyne::estimate_energy(state, ops.hamiltonian, eo);
    j["loss"] = 0.0;
    j["estimate"] = to_json(report);
    if (!a.shot_log.empty()) {
      std::ostringstream ss;
      homodyne::write_shot_log(ss, log);
      write_text(a.shot_log, ss.str());
    }
    std::cerr << "estimate " << energy_text(report.mean) << " +- " << energy_text(report.standard_error())
              << "\nexact " << energy_text(exact) << "\n";
  } else {
    if (!a.shot_log.empty()) throw ValidationError("--shot-log is only available without --loss");
    const std::vector<int>& occ = problem.reference;
    lossmit::LossyDevice device(fock::reference_state(problem.sector, occ),
                                interf::Interferometer::from_params(params.alpha, problem.alpha_mask),
                                lossmit::LossChannel{1.0 - a.loss});
    auto terms = homodyne::pair_hermitian(ops.hamiltonian);
    const std::size_t m_h = terms.size();
    lossmit::MitigationBudget budget;
    budget.calibration_shots = a.calibration_shots ? a.calibration_shots : a.shots_v;
    budget.hybrid_per_term.assign(m_h, a.shots_h / m_h);
    if (ops.metric) {
      const auto mterms = homodyne::pair_hermitian(*ops.metric);
      budget.hybrid_per_term.insert(budget.hybrid_per_term.end(), mterms.size(), a.shots_v / mterms.size());
      terms.insert(terms.end(), mterms.begin(), mterms.end());
    }
    const auto est = lossmit::mitigated_estimates(device, terms, budget, c.seed);
    const auto num = sum_estimates(est, 0, m_h);
    double corrected = num.value, corrected_se = std::sqrt(num.variance);
    double raw = num.raw, raw_se = std::sqrt(num.raw_variance);
    if (ops.metric) {
      const auto den = sum_estimates(est, m_h, est.size());
      std::tie(corrected, corrected_se) = ratio(num.value, num.variance, den.value, den.variance);
      std::tie(raw, raw_se) = ratio(num.raw, num.raw_variance, den.raw, den.raw_variance);
    }
    json tj = json::array();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      auto e = term_json(terms[t], est[t]);
      e["role"] = t < m_h ? "hamiltonian" : "metric";
      tj.push_back(std::move(e));
    }
    j["loss"] = a.loss;
    j["survival"] = 1.0 - a.loss;
    j["calibration_shots"] = budget.calibration_shots;
    j["corrected"] = {{"energy", corrected}, {"standard_error", corrected_se}};
    j["raw"] = {{"energy", raw}, {"standard_error", raw_se}};
    j["terms"] = tj;
    std::cerr << "corrected " << energy_text(corrected) << " +- " << energy_text(corrected_se) << "\nraw "
              << energy_text(raw) << " +- " << energy_text(raw_se) << "\nexact " << energy_text(exact) << "\n";
  }
  write_text(a.output, j.dump(2) + "\n");
  return 0;
}

int cmd_scan(const ScanArgs& a, const Common& c) {
  const auto cfg = make_config(a.optimize, c);
  const fs::path manifest = locate_input(a.manifest);
  const auto entries = solver::read_manifest(manifest);
  const auto rows = solver::scan_pes(entries, cfg, manifest.parent_path(), data_dir());
  std::ostringstream ss;
  solver::write_scan_csv(ss, rows);
  write_text(a.output, ss.str());
  for (const auto& r : rows)
    if (r.failed) std::cerr << "warning: " << r.label << " failed: " << r.error << "\n";
  return 0;
}

int cmd_report(const ReportArgs& a, const Common&) {
  if (!(a.threshold > 0.0)) throw ValidationError("--threshold must be positive");
  const fs::path path = locate_input(a.input);
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != "label,e_bsc,e_hf,e_cisd,e_fci,q_ratio,converged")
    throw ParseError(path.string() + ": unexpected scan header", 1);

  json rows = json::array();
  bool all_ok = true;
  std::size_t failed = 0;
  std::size_t lineno = 1;
  std::printf("%-16s %14s %14s %14s %8s\n", "label", "bsc-fci", "hf-fci", "cisd-fci", "accurate");
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 7) throw ParseError(path.string() + ": expected 7 columns", lineno);
    if (f[6] == "failed") {
      ++failed;
      all_ok = false;
      rows.push_back({{"label", f[0]}, {"failed", true}});
      std::printf("%-16s %14s\n", f[0].c_str(), "failed");
      continue;
    }
    double v[5];
    for (int k = 0; k < 5; ++k) {
      char* end = nullptr;
      v[k] = std::strtod(f[k + 1].c_str(), &end);
      if (end == f[k + 1].c_str() || *end != '\0') throw ParseError(path.string() + ": bad number", lineno);
    }
    const double fci = v[3];
    const bool ok = std::abs(v[0] - fci) < a.threshold;
    all_ok = all_ok && ok;
    rows.push_back({{"label", f[0]},
                    {"failed", false},
                    {"error_bsc", v[0] - fci},
                    {"error_hf", v[1] - fci},
                    {"error_cisd", v[2] - fci},
                    {"q_ratio", v[4]},
                    {"converged", f[6] == "1" || f[6] == "true"},
                    {"chemically_accurate", ok}});
    std::printf("%-16s %14.10f %14.10f %14.10f %8s\n", f[0].c_str(), v[0] - fci, v[1] - fci, v[2] - fci,
                ok ? "yes" : "no");
  }
  if (!a.output.empty()) {
    json j{{"schema_version", kSchemaVersion},
           {"source", a.input},
           {"threshold", a.threshold},
           {"failed_rows", failed},
           {"all_chemically_accurate", all_ok},
           {"rows", rows}};
    write_text(a.output, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace bsc::cli
