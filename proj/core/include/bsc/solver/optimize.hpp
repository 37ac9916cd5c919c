// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bsc/common.hpp"
#include "bsc/solver/problem.hpp"

namespace bsc::solver {

enum class OptimizerKind { Bfgs, Simplex };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& text);

struct MinimizeOptions {
  OptimizerKind kind = OptimizerKind::Bfgs;
  int max_iter = 1000;
  /// Central finite-difference step.
  double fd_step = 1e-6;
  /// Stop when the gradient norm falls below this (BFGS).
  double gradient_tol = 1e-6;
  /// Stop when the simplex size falls below this.
  double simplex_tol = 1e-8;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
  /// "gradient", "no-progress", "simplex-size", "max-iter" or "non-finite".
  std::string status;
};

using Objective = std::function<double(std::span<const double>)>;
using IterationHook = std::function<void(int iteration, std::span<const double> x, double f)>;

/// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h.
std::vector<double> fd_gradient(const Objective& f, std::span<const double> x, double h);

/// Quasi-Newton (BFGS, finite-difference gradients) or Nelder-Mead
/// minimization. A BFGS run that hits a non-finite value falls back to the
/// simplex from the same start.
MinimizeResult minimize(const Objective& f, std::vector<double> x0, const MinimizeOptions& options,
                        const IterationHook& hook = {});

struct OptimizeConfig {
  int restarts = 10;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  /// Initial parameters are uniform in [-init_scale, init_scale].
  double init_scale = 0.1;
  unsigned threads = 1;
  /// Hold alpha at zero (the standalone HF / CISD manifolds).
  bool freeze_alpha = false;
  MinimizeOptions minimizer;
};

struct TracePoint {
  int iteration = 0;
  double energy = 0.0;
  double projection_ratio = 0.0;
};

struct VqeResult {
  double energy = 0.0;
  AnsatzParams params;
  double projection_ratio = 0.0;
  int iterations = 0;
  int restart = 0;
  bool converged = false;
  std::string status;
  std::vector<TracePoint> trace;
};

struct OptimizeOutcome {
  VqeResult best;
  /// Every restart in restart order.
  std::vector<VqeResult> restarts;
};

/// All restarts ended on a non-finite cost.
class OptimizationFailed : public NumericalError {
 public:
  OptimizationFailed(const std::string& what, std::vector<VqeResult> restarts)
      : NumericalError(what), restarts_(std::move(restarts)) {}
  const std::vector<VqeResult>& restarts() const noexcept { return restarts_; }

 private:
  std::vector<VqeResult> restarts_;
};

/// Initial packed parameters of restart `r` (frozen slots are zero).
std::vector<double> initial_params(const Problem& problem, const OptimizeConfig& config, int r);

/// Best-of-restarts minimization of cost_penalized on the exact path.
/// Deterministic in config.seed regardless of the thread count.
OptimizeOutcome optimize(const Problem& problem, const OptimizeConfig& config);

}  // namespace bsc::solver
