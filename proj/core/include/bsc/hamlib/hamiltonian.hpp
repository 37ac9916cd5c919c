// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "bsc/common.hpp"
#include "bsc/hamlib/fermion.hpp"

namespace bsc::hamlib {

/// Spin-orbital electronic Hamiltonian
///   H = constant + sum_pq h_pq f+_p f_q + 1/2 sum_pqrs h_pqrs f+_p f+_q f_r f_s.
struct SecondQuantHam {
  using TwoBodyIndex = std::array<int, 4>;

  int modes = 0;       ///< spin orbitals M
  int electrons = 0;   ///< N
  double constant = 0.0;
  Eigen::MatrixXcd one_body;                 ///< M x M
  std::map<TwoBodyIndex, cplx> two_body;     ///< sparse h_pqrs

  /// Throws ValidationError on N > M, shape mismatch, or a non-Hermitian
  /// integral set (|h_pq - conj(h_qp)| or |h_pqrs - conj(h_srqp)| > tol).
  void validate(double tol = 1e-10) const;
};

/// Reads a Molpro-style FCIDUMP with real integrals and 8-fold symmetry.
/// Spatial orbital k becomes spin orbitals 2k (alpha) and 2k+1 (beta).
SecondQuantHam parse_fcidump(std::istream& in);
SecondQuantHam read_fcidump(const std::filesystem::path& path);

/// Hamiltonian JSON:
/// {"schema_version":"1.0","m":M,"n":N,"constant":c,
///  "one_body":[[i,j,re,im],...],"two_body":[[p,q,r,s,re,im],...]}
std::string to_json(const SecondQuantHam& h);
SecondQuantHam from_json(std::string_view text);

/// Reads FCIDUMP or JSON, chosen by content.
SecondQuantHam load_hamiltonian(const std::filesystem::path& path);

/// Operator form of `h`, constant included as the identity monomial.
FermiTermSum to_fermi(const SecondQuantHam& h);

/// Integrals rotated by u = exp(i beta): one_body' = u+ h u and the same on
/// all four two-body indices. The result equals V+ H V for the many-body
/// operator V = exp(i sum_pq beta_pq f+_p f_q). Throws ValidationError if
/// beta is not Hermitian.
SecondQuantHam transform_hf(const SecondQuantHam& h, const Eigen::MatrixXcd& beta);

/// exp(i g) for Hermitian g, by eigendecomposition.
Eigen::MatrixXcd unitary_from_generator(const Eigen::MatrixXcd& generator);

}  // namespace bsc::hamlib
