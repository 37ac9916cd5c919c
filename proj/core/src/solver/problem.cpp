// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/solver/problem.hpp"

#include <cmath>
#include <numeric>

#include "bsc/hamlib/dense.hpp"

namespace bsc::solver {

std::string to_string(Method m) { return m == Method::BsHf ? "bs-hf" : "bs-cisd"; }

Method method_from_string(const std::string& text) {
  if (text == "bs-hf") return Method::BsHf;
  if (text == "bs-cisd") return Method::BsCisd;
  throw ValidationError("unknown method '" + text + "' (expected bs-hf or bs-cisd)");
}

int Problem::beta_size() const {
  return method == Method::BsHf ? modes() * modes() : static_cast<int>(excitations.size());
}

std::size_t Problem::reference_rank() const {
  std::uint64_t bits = 0;
  for (int m : reference) bits |= std::uint64_t{1} << m;
  return *sector->encoded_rank(bits);
}

Problem make_problem(hamlib::SecondQuantHam h, Method method, const ProblemOptions& options) {
  h.validate();
  Problem p;
  const int m = h.modes, n = h.electrons;
  p.sector = fock::build_sector(m, n);
  p.reference.resize(static_cast<std::size_t>(n));
  std::iota(p.reference.begin(), p.reference.end(), 0);
  p.alpha_mask = options.alpha_mask == AlphaMask::Full ? interf::ParamMask::full(m)
                                                       : interf::ParamMask::excitation(m, p.reference);
  p.method = method;
  p.h_encoded = hamlib::sector_matrix(hamlib::to_fermi(h), p.sector->encoded_bits());
  p.real_hamiltonian = p.h_encoded.imag().cwiseAbs().maxCoeff() == 0.0;
  if (p.real_hamiltonian) p.h_real = p.h_encoded.real();
  if (method == Method::BsCisd) {
    p.excitations = hamlib::cisd_excitations(m, n);
    int param = 0;
    auto add = [&](const hamlib::FermiTermSum& op) {
      const Eigen::MatrixXcd d = hamlib::sector_matrix(op, p.sector->encoded_bits());
      for (Eigen::Index c = 0; c < d.cols(); ++c)
        for (Eigen::Index r = 0; r < d.rows(); ++r)
          if (d(r, c) != cplx{}) p.excitation_elements.push_back({param, int(r), int(c), d(r, c).real()});
      ++param;
    };
    for (const auto& [i, a] : p.excitations.singles) {
      hamlib::FermiTermSum op;
      op.add({hamlib::cr(a), hamlib::an(i)}, 1.0);
      add(op);
    }
    for (const auto& [i, j, a, b] : p.excitations.doubles) {
      hamlib::FermiTermSum op;
      op.add({hamlib::cr(a), hamlib::cr(b), hamlib::an(j), hamlib::an(i)}, 1.0);
      add(op);
    }
  }
  p.hamiltonian = std::move(h);
  return p;
}

std::vector<double> AnsatzParams::pack() const {
  std::vector<double> out(alpha);
  out.insert(out.end(), beta.begin(), beta.end());
  return out;
}

AnsatzParams unpack(const Problem& problem, std::span<const double> packed) {
  const auto na = static_cast<std::size_t>(problem.alpha_size());
  const auto nb = static_cast<std::size_t>(problem.beta_size());
  if (packed.size() != na + nb) {
    throw ValidationError("expected " + std::to_string(na + nb) + " parameters, got " + std::to_string(packed.size()));
  }
  return {{packed.begin(), packed.begin() + static_cast<long>(na)}, {packed.begin() + static_cast<long>(na), packed.end()}};
}

AnsatzParams zero_params(const Problem& problem) {
  return {std::vector<double>(static_cast<std::size_t>(problem.alpha_size()), 0.0),
          std::vector<double>(static_cast<std::size_t>(problem.beta_size()), 0.0)};
}

Eigen::MatrixXcd hf_generator(const Problem& problem, std::span<const double> beta) {
  return interf::Interferometer::from_params(beta, interf::ParamMask::full(problem.modes())).generator();
}

hamlib::ClassicalOpSpec classical_spec(const Problem& problem, std::span<const double> beta) {
  if (static_cast<int>(beta.size()) != problem.beta_size()) throw ValidationError("beta length mismatch");
  hamlib::ClassicalOpSpec spec;
  if (problem.method == Method::BsHf) {
    spec.variant = hamlib::ClassicalOpSpec::Variant::HF;
    spec.hf_generator = hf_generator(problem, beta);
    return spec;
  }
  spec.variant = hamlib::ClassicalOpSpec::Variant::CISD;
  std::size_t k = 0;
  for (const auto& s : problem.excitations.singles) spec.singles[s] = beta[k++];
  for (const auto& d : problem.excitations.doubles) spec.doubles[d] = beta[k++];
  return spec;
}

Eigen::VectorXcd encoded_output(const Problem& problem, std::span<const double> alpha) {
  const auto it = interf::Interferometer::from_params(alpha, problem.alpha_mask);
  return interf::encoded_amplitudes(it.unitary(), *problem.sector, problem.reference);
}

fock::BosonState output_state(const Problem& problem, std::span<const double> alpha) {
  const auto it = interf::Interferometer::from_params(alpha, problem.alpha_mask);
  return interf::evolve(it, fock::reference_state(problem.sector, problem.reference));
}

CostValue CostEvaluator::operator()(const AnsatzParams& params) {
  const Problem& problem = *problem_;
  if (static_cast<int>(params.alpha.size()) != problem.alpha_size() ||
      static_cast<int>(params.beta.size()) != problem.beta_size()) {
    throw ValidationError("parameter lengths do not match the problem");
  }
  if (!have_alpha_ || params.alpha != alpha_) {
    amplitudes_ = encoded_output(problem, params.alpha);
    alpha_ = params.alpha;
    have_alpha_ = true;
  }
  const Eigen::VectorXcd& c = amplitudes_;
  CostValue v;
  v.projection_ratio = c.squaredNorm();
  Eigen::VectorXcd psi;
  if (problem.method == Method::BsHf) {
    if (!have_beta_ || params.beta != beta_) {
      u_beta_ = hamlib::unitary_from_generator(hf_generator(problem, params.beta));
      beta_ = params.beta;
      have_beta_ = true;
    }
    psi = interf::fermion_sector_apply(u_beta_, *problem.sector, c);
    v.denominator = v.projection_ratio;
  } else {
    psi = c;
    for (const auto& e : problem.excitation_elements) psi[e.row] += params.beta[e.param] * e.sign * c[e.col];
    v.denominator = psi.squaredNorm();
  }
  if (!(v.denominator >= 1e-12)) {
    throw NumericalError("degenerate ansatz: denominator " + std::to_string(v.denominator) + " below 1e-12");
  }
  if (problem.real_hamiltonian) {
    const Eigen::VectorXd re = psi.real(), im = psi.imag();
    v.energy = (re.dot(problem.h_real * re) + im.dot(problem.h_real * im)) / v.denominator;
  } else {
    v.energy = psi.dot(problem.h_encoded * psi).real() / v.denominator;
  }
  return v;
}

CostValue cost(const Problem& problem, const AnsatzParams& params) { return CostEvaluator(problem)(params); }

double cost_penalized(const Problem& problem, const AnsatzParams& params, double lambda) {
  const CostValue v = cost(problem, params);
  return v.energy - lambda * v.projection_ratio;
}

}  // namespace bsc::solver
