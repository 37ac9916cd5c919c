// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/solver/optimize.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "bsc/parallel.hpp"
#include "bsc/rng.hpp"

namespace bsc::solver {

std::string to_string(OptimizerKind k) { return k == OptimizerKind::Bfgs ? "bfgs" : "simplex"; }

OptimizerKind optimizer_from_string(const std::string& text) {
  if (text == "bfgs") return OptimizerKind::Bfgs;
  if (text == "simplex") return OptimizerKind::Simplex;
  throw ValidationError("unknown optimizer '" + text + "' (expected bfgs or simplex)");
}

std::vector<double> fd_gradient(const Objective& f, std::span<const double> x, double h) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = xp[i];
    xp[i] = xi + h;
    const double fp = f(xp);
    xp[i] = xi - h;
    const double fm = f(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

namespace {

struct GslContext {
  const Objective* f;
  double h;
};

std::span<const double> view(const gsl_vector* v) { return {v->data, v->size}; }

double gsl_f(const gsl_vector* x, void* p) {
  const auto* ctx = static_cast<const GslContext*>(p);
  const double v = (*ctx->f)(view(x));
  return std::isfinite(v) ? v : GSL_POSINF;
}

void gsl_df(const gsl_vector* x, void* p, gsl_vector* g) {
  const auto* ctx = static_cast<const GslContext*>(p);
  const auto grad = fd_gradient(*ctx->f, view(x), ctx->h);
  for (std::size_t i = 0; i < grad.size(); ++i) gsl_vector_set(g, i, grad[i]);
}

void gsl_fdf(const gsl_vector* x, void* p, double* f, gsl_vector* g) {
  *f = gsl_f(x, p);
  gsl_df(x, p, g);
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

VectorPtr to_gsl(const std::vector<double>& x) {
  VectorPtr v(gsl_vector_alloc(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) gsl_vector_set(v.get(), i, x[i]);
  return v;
}

std::vector<double> from_gsl(const gsl_vector* v) { return {v->data, v->data + v->size}; }

MinimizeResult run_bfgs(const Objective& f, const std::vector<double>& x0, const MinimizeOptions& opt,
                        const IterationHook& hook) {
  GslContext ctx{&f, opt.fd_step};
  gsl_multimin_function_fdf fn{&gsl_f, &gsl_df, &gsl_fdf, x0.size(), &ctx};
  std::unique_ptr<gsl_multimin_fdfminimizer, decltype(&gsl_multimin_fdfminimizer_free)> s(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, x0.size()),
      &gsl_multimin_fdfminimizer_free);
  auto x = to_gsl(x0);
  MinimizeResult r;
  gsl_multimin_fdfminimizer_set(s.get(), &fn, x.get(), 0.01, 0.1);
  if (!std::isfinite(s->f)) {
    r.x = x0;
    r.f = s->f;
    r.status = "non-finite";
    return r;
  }
  int stalls = 0;
  r.status = "max-iter";
  for (r.iterations = 0; r.iterations < opt.max_iter;) {
    const int status = gsl_multimin_fdfminimizer_iterate(s.get());
    if (status == GSL_ENOPROG || status == GSL_ENOPROGJ) {
      // Line search stalled. One restart of the curvature model is allowed;
      // a second consecutive stall means we are at the resolution limit.
      if (++stalls >= 2) {
        r.status = "no-progress";
        break;
      }
      gsl_multimin_fdfminimizer_restart(s.get());
      continue;
    }
    if (status != GSL_SUCCESS) {
      r.status = "non-finite";
      break;
    }
    stalls = 0;
    ++r.iterations;
    if (!std::isfinite(s->f)) {
      r.status = "non-finite";
      break;
    }
    if (hook) hook(r.iterations, view(s->x), s->f);
    if (gsl_multimin_test_gradient(s->gradient, opt.gradient_tol) == GSL_SUCCESS) {
      r.status = "gradient";
      break;
    }
  }
  r.x = from_gsl(s->x);
  r.f = s->f;
  const double gnorm = gsl_blas_dnrm2(s->gradient);
  r.converged = r.status == "gradient" || (r.status == "no-progress" && gnorm < 1e-4);
  if (!std::isfinite(r.f)) r.status = "non-finite";
  return r;
}

MinimizeResult run_simplex(const Objective& f, const std::vector<double>& x0, const MinimizeOptions& opt,
                           const IterationHook& hook) {
  GslContext ctx{&f, opt.fd_step};
  gsl_multimin_function fn{&gsl_f, x0.size(), &ctx};
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, x0.size()), &gsl_multimin_fminimizer_free);
  auto x = to_gsl(x0);
  VectorPtr step(gsl_vector_alloc(x0.size()));
  gsl_vector_set_all(step.get(), 0.05);
  MinimizeResult r;
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());
  r.status = "max-iter";
  for (r.iterations = 0; r.iterations < opt.max_iter;) {
    const int status = gsl_multimin_fminimizer_iterate(s.get());
    if (status != GSL_SUCCESS) {
      r.status = "no-progress";
      break;
    }
    ++r.iterations;
    if (hook) hook(r.iterations, view(s->x), s->fval);
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), opt.simplex_tol) == GSL_SUCCESS) {
      r.status = "simplex-size";
      break;
    }
  }
  r.x = from_gsl(s->x);
  r.f = s->fval;
  r.converged = r.status == "simplex-size";
  if (!std::isfinite(r.f)) r.status = "non-finite";
  return r;
}

}  // namespace

MinimizeResult minimize(const Objective& f, std::vector<double> x0, const MinimizeOptions& options,
                        const IterationHook& hook) {
  gsl_set_error_handler_off();
  if (x0.empty()) {
    MinimizeResult r;
    r.f = f(x0);
    r.converged = std::isfinite(r.f);
    r.status = r.converged ? "gradient" : "non-finite";
    return r;
  }
  if (options.kind == OptimizerKind::Simplex) return run_simplex(f, x0, options, hook);
  MinimizeResult r = run_bfgs(f, x0, options, hook);
  if (r.status == "non-finite") return run_simplex(f, x0, options, hook);
  return r;
}

std::vector<double> initial_params(const Problem& problem, const OptimizeConfig& config, int r) {
  Engine rng = make_engine(config.seed, {static_cast<std::uint64_t>(r)});
  const auto na = static_cast<std::size_t>(problem.alpha_size());
  std::vector<double> x(na + static_cast<std::size_t>(problem.beta_size()), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = config.init_scale * (2.0 * uniform01(rng) - 1.0);
    if (!(config.freeze_alpha && i < na)) x[i] = v;
  }
  return x;
}

OptimizeOutcome optimize(const Problem& problem, const OptimizeConfig& config) {
  if (config.restarts < 1) throw ValidationError("restarts must be at least 1");
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda)) throw ValidationError("lambda must be finite and >= 0");
  const auto na = static_cast<std::size_t>(problem.alpha_size());
  const std::size_t offset = config.freeze_alpha ? na : 0;

  std::vector<VqeResult> results(static_cast<std::size_t>(config.restarts));
  parallel_for(results.size(), config.threads, [&](std::size_t r) {
    std::vector<double> full = initial_params(problem, config, static_cast<int>(r));
    auto expand = [&](std::span<const double> free) {
      std::vector<double> x(full.size(), 0.0);
      std::copy(free.begin(), free.end(), x.begin() + static_cast<long>(offset));
      return x;
    };
    CostEvaluator eval(problem);
    const Objective f = [&](std::span<const double> free) {
      try {
        const CostValue v = eval(unpack(problem, expand(free)));
        return v.energy - config.lambda * v.projection_ratio;
      } catch (const NumericalError&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    VqeResult& out = results[r];
    out.restart = static_cast<int>(r);
    auto record = [&](int it, std::span<const double> free) {
      try {
        const CostValue v = eval(unpack(problem, expand(free)));
        out.trace.push_back({it, v.energy, v.projection_ratio});
      } catch (const NumericalError&) {
        out.trace.push_back({it, std::numeric_limits<double>::quiet_NaN(), 0.0});
      }
    };
    std::vector<double> x0(full.begin() + static_cast<long>(offset), full.end());
    record(0, x0);
    const MinimizeResult m =
        minimize(f, x0, config.minimizer, [&](int it, std::span<const double> x, double) { record(it, x); });
    out.params = unpack(problem, expand(m.x));
    out.iterations = m.iterations;
    out.converged = m.converged;
    out.status = m.status;
    try {
      const CostValue v = cost(problem, out.params);
      out.energy = v.energy;
      out.projection_ratio = v.projection_ratio;
    } catch (const NumericalError&) {
      out.energy = std::numeric_limits<double>::quiet_NaN();
      out.status = "non-finite";
      out.converged = false;
    }
  });

  OptimizeOutcome outcome;
  const VqeResult* best = nullptr;
  for (const auto& r : results) {
    if (!std::isfinite(r.energy)) continue;
    const double score = r.energy - config.lambda * r.projection_ratio;
    if (!best || score < best->energy - config.lambda * best->projection_ratio) best = &r;
  }
  if (!best) throw OptimizationFailed("all restarts ended on a non-finite cost", results);
  outcome.best = *best;
  outcome.restarts = std::move(results);
  return outcome;
}

}  // namespace bsc::solver
