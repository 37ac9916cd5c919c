// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/solver/optimize.hpp"

namespace bsc::solver {

/// Lowest eigenvalue of H over the whole N-electron space.
double fci_energy(const hamlib::SecondQuantHam& h);

/// Lowest eigenvalue of H restricted to the reference determinant plus all
/// single and double excitations of it.
double cisd_energy(const hamlib::SecondQuantHam& h);

/// <ref|H|ref> for the lowest-N determinant.
double determinant_energy(const hamlib::SecondQuantHam& h);

/// Hartree-Fock by beta-only optimization: the BS-HF ansatz with the
/// interferometer frozen to the identity, i.e. min over orbital rotations of
/// the single-determinant energy.
OptimizeOutcome hf_optimize(const hamlib::SecondQuantHam& h, const OptimizeConfig& config);

struct ReferenceEnergies {
  double determinant = 0.0;
  double hf = 0.0;
  double cisd = 0.0;
  double fci = 0.0;
};

ReferenceEnergies reference_energies(const hamlib::SecondQuantHam& h, const OptimizeConfig& hf_config);

}  // namespace bsc::solver
