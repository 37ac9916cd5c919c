// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bsc/hamlib/fermion.hpp"
#include "bsc/hamlib/hamiltonian.hpp"

namespace bsc::hamlib {

/// Classical operator V_C applied on the Hamiltonian side of the ansatz.
struct ClassicalOpSpec {
  enum class Variant { Identity, HF, CISD };

  Variant variant = Variant::Identity;
  Eigen::MatrixXcd hf_generator;  ///< HF: Hermitian beta
  std::map<std::pair<int, int>, double> singles;       ///< (i, a) -> t_ia
  std::map<std::array<int, 4>, double> doubles;        ///< (i, j, a, b) -> t_ijab, i<j, a<b
};

/// 1 + T1 + T2 with T1 = sum t_ia f+_a f_i and T2 = sum t_ijab f+_a f+_b f_j f_i,
/// relative to the lowest-`electrons` reference determinant. Throws
/// ValidationError for amplitudes that are not occupied -> virtual.
FermiTermSum cisd_operator(const ClassicalOpSpec& spec, int modes, int electrons);

struct TransformedOperators {
  FermiTermSum hamiltonian;  ///< V+ H V
  FermiTermSum metric;       ///< V+ V
};

/// V+ H V and V+ V for V = 1 + T1 + T2, both normal ordered.
TransformedOperators transform_cisd(const SecondQuantHam& h, const ClassicalOpSpec& spec);

/// All occupied -> virtual single and double excitations of the
/// lowest-`electrons` reference, in the order used for CISD parameter vectors.
struct ExcitationList {
  std::vector<std::pair<int, int>> singles;        ///< (i, a)
  std::vector<std::array<int, 4>> doubles;         ///< (i, j, a, b)
  std::size_t size() const { return singles.size() + doubles.size(); }
};
ExcitationList cisd_excitations(int modes, int electrons);

}  // namespace bsc::hamlib
