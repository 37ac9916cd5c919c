// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bsc/common.hpp"
#include "bsc/fock/sector.hpp"

namespace bsc::interf {

/// Which generator entries are free. Only the upper triangle (p <= q) is
/// consulted; the lower triangle follows from Hermiticity.
class ParamMask {
 public:
  explicit ParamMask(int modes = 0, bool value = true);

  /// Photon-excitation restriction: all diagonal entries plus
  /// occupied-virtual and virtual-virtual couplings. Occupied-occupied
  /// couplings are frozen to zero.
  static ParamMask excitation(int modes, std::span<const int> occupied);
  static ParamMask full(int modes) { return ParamMask(modes, true); }

  int modes() const noexcept { return modes_; }
  bool free(int p, int q) const;
  void set(int p, int q, bool value);

  /// Number of real parameters: one per free diagonal entry, two per free
  /// off-diagonal entry (real and imaginary part).
  int parameter_count() const;

 private:
  int modes_;
  std::vector<bool> upper_;
};

/// Linear optical interferometer given by a Hermitian generator alpha.
///
/// The mode matrix is u = exp(i alpha); the many-body operator on Fock space
/// is exp(i sum_pq alpha_pq b+_p b_q), which sends b+_q to sum_p u_pq b+_p.
class Interferometer {
 public:
  Interferometer() = default;

  /// Throws ValidationError if `generator` is not Hermitian or has entries
  /// outside `mask`.
  Interferometer(Eigen::MatrixXcd generator, ParamMask mask);
  explicit Interferometer(Eigen::MatrixXcd generator);

  /// Unpacks real parameters in mask order: for p = 0..M-1, q = p..M-1 with
  /// (p,q) free: diagonal -> alpha_pp, off-diagonal -> Re, Im of alpha_pq.
  static Interferometer from_params(std::span<const double> params, const ParamMask& mask);

  /// Inverse of from_params.
  std::vector<double> params() const;

  /// Identity interferometer on `modes` modes.
  static Interferometer identity(int modes);

  /// Interferometer with a prescribed mode unitary (generator not tracked).
  static Interferometer from_unitary(Eigen::MatrixXcd unitary);

  int modes() const noexcept { return static_cast<int>(unitary_.rows()); }
  const Eigen::MatrixXcd& generator() const noexcept { return generator_; }
  const Eigen::MatrixXcd& unitary() const noexcept { return unitary_; }
  const ParamMask& mask() const noexcept { return mask_; }

 private:
  Eigen::MatrixXcd generator_;
  Eigen::MatrixXcd unitary_;
  ParamMask mask_;
};

/// Submatrix of `u` with row q repeated t_q times and column p repeated s_p
/// times (rows from the output pattern, columns from the input).
Eigen::MatrixXcd transition_submatrix(const Eigen::MatrixXcd& u, std::span<const int> in, std::span<const int> out);

/// <T|U|S> = Per(u_{T,S}) / sqrt(prod s_p! prod t_p!). Throws
/// ValidationError if the photon numbers differ.
cplx amplitude_boson(const Interferometer& spec, std::span<const int> in, std::span<const int> out);

/// Fermionic counterpart <T|U_F|S> = Det(u_{T,S}) for 0/1 occupations.
cplx amplitude_fermion(const Interferometer& spec, std::span<const int> in, std::span<const int> out);

/// Exact photon evolution of `in` through the interferometer.
fock::BosonState evolve(const Interferometer& spec, const fock::BosonState& in);

/// Amplitudes of U|ref> on the encoded sub-basis only, Per(u_{T,ref}) for
/// each encoded T in sector order. `ref` is the list of singly occupied modes.
/// All permanents are built together by expansion over row subsets, which
/// costs sum_k C(M,k) k operations instead of one Ryser sum per T.
Eigen::VectorXcd encoded_amplitudes(const Eigen::MatrixXcd& u, const fock::FockSector& sector,
                                    std::span<const int> ref);

/// sum_ij conj(Per(u_{i,ref})) H_ij Per(u_{j,ref}) over the encoded basis,
/// evaluated term by term with Ryser permanents.
cplx numerator_expansion(const Interferometer& spec, const Eigen::MatrixXcd& h_encoded,
                         const fock::FockSector& sector, std::span<const int> ref);

/// Matrix of the fermionic Gaussian unitary with mode matrix `u` on the
/// encoded basis: entry (T,S) = Det(u_{T,S}).
Eigen::MatrixXcd fermion_sector_unitary(const Eigen::MatrixXcd& u, const fock::FockSector& sector);

/// fermion_sector_unitary(u, sector) * v, skipping zero entries of v.
Eigen::VectorXcd fermion_sector_apply(const Eigen::MatrixXcd& u, const fock::FockSector& sector,
                                      const Eigen::VectorXcd& v);

}  // namespace bsc::interf
