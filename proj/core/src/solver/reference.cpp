// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/solver/reference.hpp"

#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bsc/fock/sector.hpp"
#include "bsc/hamlib/dense.hpp"
#include "bsc/hamlib/transform.hpp"

namespace bsc::solver {

namespace {

struct EncodedHamiltonian {
  fock::SectorPtr sector;
  Eigen::MatrixXcd h;
};

EncodedHamiltonian encode(const hamlib::SecondQuantHam& h) {
  h.validate();
  auto sector = fock::build_sector(h.modes, h.electrons);
  return {sector, hamlib::sector_matrix(hamlib::to_fermi(h), sector->encoded_bits())};
}

std::uint64_t reference_bits(int electrons) { return (std::uint64_t{1} << electrons) - 1; }

double lowest(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  return es.eigenvalues()(0);
}

}  // namespace

double fci_energy(const hamlib::SecondQuantHam& h) { return lowest(encode(h).h); }

double cisd_energy(const hamlib::SecondQuantHam& h) {
  const auto enc = encode(h);
  const std::uint64_t ref = reference_bits(h.electrons);
  std::vector<std::size_t> keep{*enc.sector->encoded_rank(ref)};
  const auto ex = hamlib::cisd_excitations(h.modes, h.electrons);
  for (const auto& [i, a] : ex.singles) keep.push_back(*enc.sector->encoded_rank(ref ^ (1ULL << i) ^ (1ULL << a)));
  for (const auto& [i, j, a, b] : ex.doubles) {
    keep.push_back(*enc.sector->encoded_rank(ref ^ (1ULL << i) ^ (1ULL << j) ^ (1ULL << a) ^ (1ULL << b)));
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      sub(r, c) = enc.h(static_cast<Eigen::Index>(keep[r]), static_cast<Eigen::Index>(keep[c]));
  return lowest(sub);
}

double determinant_energy(const hamlib::SecondQuantHam& h) {
  const auto enc = encode(h);
  const auto r = static_cast<Eigen::Index>(*enc.sector->encoded_rank(reference_bits(h.electrons)));
  return enc.h(r, r).real();
}

OptimizeOutcome hf_optimize(const hamlib::SecondQuantHam& h, const OptimizeConfig& config) {
  OptimizeConfig c = config;
  c.freeze_alpha = true;
  c.lambda = 0.0;
  return optimize(make_problem(h, Method::BsHf), c);
}

ReferenceEnergies reference_energies(const hamlib::SecondQuantHam& h, const OptimizeConfig& hf_config) {
  ReferenceEnergies r;
  r.determinant = determinant_energy(h);
  r.hf = hf_optimize(h, hf_config).best.energy;
  r.cisd = cisd_energy(h);
  r.fci = fci_energy(h);
  return r;
}

}  // namespace bsc::solver
