// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bsc/common.hpp"
#include "bsc/fock/sector.hpp"
#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/hamlib/transform.hpp"
#include "bsc/interf/interferometer.hpp"

namespace bsc::solver {

enum class Method { BsHf, BsCisd };

std::string to_string(Method m);
/// Accepts "bs-hf" and "bs-cisd". Throws ValidationError otherwise.
Method method_from_string(const std::string& text);

/// Interferometer parameter restriction.
enum class AlphaMask { Excitation, Full };

struct ProblemOptions {
  AlphaMask alpha_mask = AlphaMask::Excitation;
};

/// Everything the exact-path cost needs, precomputed once per Hamiltonian.
///
/// The reference determinant occupies modes 0..N-1 (orbitals are ingested in
/// ascending energy order). All operators are stored as matrices on the
/// encoded N-photon sub-basis, where the single-rail image of the fermionic
/// N-electron space lives.
struct Problem {
  hamlib::SecondQuantHam hamiltonian;
  Method method = Method::BsHf;
  std::vector<int> reference;
  fock::SectorPtr sector;
  interf::ParamMask alpha_mask;
  /// H on the encoded basis, and its real part when H is real.
  Eigen::MatrixXcd h_encoded;
  Eigen::MatrixXd h_real;
  bool real_hamiltonian = false;
  /// CISD excitation list and the nonzero matrix elements of each excitation
  /// operator on the encoded basis: <row| E_param |col> = sign.
  struct ExcitationElement {
    int param;
    int row;
    int col;
    double sign;
  };
  hamlib::ExcitationList excitations;
  std::vector<ExcitationElement> excitation_elements;

  int modes() const { return hamiltonian.modes; }
  int electrons() const { return hamiltonian.electrons; }
  int alpha_size() const { return alpha_mask.parameter_count(); }
  /// BS-HF: full Hermitian generator (M^2 reals); BS-CISD: one real
  /// amplitude per single and double excitation.
  int beta_size() const;
  /// Position of the reference determinant in the encoded basis.
  std::size_t reference_rank() const;
};

Problem make_problem(hamlib::SecondQuantHam h, Method method, const ProblemOptions& options = {});

/// Parameter vectors of the ansatz. Packing is alpha followed by beta.
struct AnsatzParams {
  std::vector<double> alpha;
  std::vector<double> beta;

  std::vector<double> pack() const;
};

AnsatzParams unpack(const Problem& problem, std::span<const double> packed);
AnsatzParams zero_params(const Problem& problem);

/// Hermitian generator from BS-HF beta, packed like a full ParamMask.
Eigen::MatrixXcd hf_generator(const Problem& problem, std::span<const double> beta);

/// The classical operator described by beta, for the symbolic route.
hamlib::ClassicalOpSpec classical_spec(const Problem& problem, std::span<const double> beta);

struct CostValue {
  double energy = 0.0;
  /// <Phi(alpha)|Q|Phi(alpha)>.
  double projection_ratio = 0.0;
  /// <Phi|V+V|Phi>; equals projection_ratio for BS-HF.
  double denominator = 0.0;
};

/// Exact corrected energy <Phi|H_T|Phi> / <Phi|V+V|Phi>. Throws
/// NumericalError when the denominator falls below 1e-12.
CostValue cost(const Problem& problem, const AnsatzParams& params);

/// Cost evaluation that reuses the interferometer output when alpha is
/// unchanged and the classical-operator matrix when beta is unchanged (the
/// common case inside finite-difference gradients). Not thread safe; use one
/// evaluator per thread.
class CostEvaluator {
 public:
  explicit CostEvaluator(const Problem& problem) : problem_(&problem) {}
  CostValue operator()(const AnsatzParams& params);

 private:
  const Problem* problem_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  bool have_alpha_ = false;
  bool have_beta_ = false;
  Eigen::VectorXcd amplitudes_;
  Eigen::MatrixXcd u_beta_;
};

/// cost - lambda <Q>.
double cost_penalized(const Problem& problem, const AnsatzParams& params, double lambda);

/// Encoded amplitudes of the interferometer output for the reference input.
Eigen::VectorXcd encoded_output(const Problem& problem, std::span<const double> alpha);

/// Full output state U(alpha)|ref> over the N-photon sector.
fock::BosonState output_state(const Problem& problem, std::span<const double> alpha);

}  // namespace bsc::solver
