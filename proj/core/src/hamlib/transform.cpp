// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/hamlib/transform.hpp"

#include <string>

namespace bsc::hamlib {

ExcitationList cisd_excitations(int modes, int electrons) {
  ExcitationList ex;
  for (int i = 0; i < electrons; ++i)
    for (int a = electrons; a < modes; ++a) ex.singles.emplace_back(i, a);
  for (int i = 0; i < electrons; ++i)
    for (int j = i + 1; j < electrons; ++j)
      for (int a = electrons; a < modes; ++a)
        for (int b = a + 1; b < modes; ++b) ex.doubles.push_back({i, j, a, b});
  return ex;
}

FermiTermSum cisd_operator(const ClassicalOpSpec& spec, int modes, int electrons) {
  auto occupied = [&](int p) { return p >= 0 && p < electrons; };
  auto virtual_ = [&](int p) { return p >= electrons && p < modes; };
  FermiTermSum v = FermiTermSum::identity();
  for (const auto& [ia, t] : spec.singles) {
    const auto [i, a] = ia;
    if (!occupied(i) || !virtual_(a)) {
      throw ValidationError("single amplitude (" + std::to_string(i) + "," + std::to_string(a) +
                            ") is not an occupied -> virtual excitation");
    }
    v.add({cr(a), an(i)}, t);
  }
  for (const auto& [ijab, t] : spec.doubles) {
    const auto [i, j, a, b] = ijab;
    if (!occupied(i) || !occupied(j) || !virtual_(a) || !virtual_(b) || i == j || a == b) {
      throw ValidationError("double amplitude (" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(a) + "," + std::to_string(b) +
                            ") is not an occupied -> virtual excitation");
    }
    v.add({cr(a), cr(b), an(j), an(i)}, t);
  }
  return v;
}

TransformedOperators transform_cisd(const SecondQuantHam& h, const ClassicalOpSpec& spec) {
  if (spec.variant != ClassicalOpSpec::Variant::CISD && spec.variant != ClassicalOpSpec::Variant::Identity) {
    throw ValidationError("transform_cisd needs a CISD (or identity) operator spec");
  }
  const FermiTermSum v = cisd_operator(spec, h.modes, h.electrons);
  const FermiTermSum vd = v.adjoint();
  TransformedOperators out;
  out.hamiltonian = vd * (to_fermi(h) * v);
  out.metric = vd * v;
  return out;
}

}  // namespace bsc::hamlib
