// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/interf/interferometer.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/interf/permanent.hpp"

namespace bsc::interf {

namespace {

std::size_t upper_index(int modes, int p, int q) {
  return static_cast<std::size_t>(p) * modes + static_cast<std::size_t>(q);
}

double factorial_product(std::span<const int> occ) {
  double f = 1.0;
  for (int n : occ)
    for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int total(std::span<const int> occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

}  // namespace

ParamMask::ParamMask(int modes, bool value)
    : modes_(modes), upper_(static_cast<std::size_t>(modes) * modes, value) {}

ParamMask ParamMask::excitation(int modes, std::span<const int> occupied) {
  ParamMask mask(modes, true);
  std::vector<bool> occ(static_cast<std::size_t>(modes), false);
  for (int m : occupied) occ.at(static_cast<std::size_t>(m)) = true;
  for (int p = 0; p < modes; ++p)
    for (int q = p + 1; q < modes; ++q)
      if (occ[p] && occ[q]) mask.set(p, q, false);
  return mask;
}

bool ParamMask::free(int p, int q) const {
  if (p > q) std::swap(p, q);
  return upper_[upper_index(modes_, p, q)];
}

void ParamMask::set(int p, int q, bool value) {
  if (p > q) std::swap(p, q);
  upper_[upper_index(modes_, p, q)] = value;
}

int ParamMask::parameter_count() const {
  int n = 0;
  for (int p = 0; p < modes_; ++p)
    for (int q = p; q < modes_; ++q)
      if (free(p, q)) n += (p == q) ? 1 : 2;
  return n;
}

Interferometer::Interferometer(Eigen::MatrixXcd generator, ParamMask mask)
    : generator_(std::move(generator)), mask_(std::move(mask)) {
  const auto m = generator_.rows();
  if (generator_.cols() != m || mask_.modes() != m) throw ValidationError("generator and mask shapes differ");
  if ((generator_ - generator_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("interferometer generator is not Hermitian");
  }
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q)
      if (!mask_.free(p, q) && std::abs(generator_(p, q)) > 0.0) {
        throw ValidationError("generator entry (" + std::to_string(p) + "," + std::to_string(q) +
                              ") lies outside the parameter mask");
      }
  unitary_ = hamlib::unitary_from_generator(generator_);
}

Interferometer::Interferometer(Eigen::MatrixXcd generator)
    : Interferometer(generator, ParamMask::full(static_cast<int>(generator.rows()))) {}

Interferometer Interferometer::from_params(std::span<const double> params, const ParamMask& mask) {
  if (static_cast<int>(params.size()) != mask.parameter_count()) {
    throw ValidationError("expected " + std::to_string(mask.parameter_count()) + " interferometer parameters, got " +
                          std::to_string(params.size()));
  }
  const int m = mask.modes();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(m, m);
  std::size_t k = 0;
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      if (!mask.free(p, q)) continue;
      if (p == q) {
        g(p, p) = params[k++];
      } else {
        g(p, q) = cplx(params[k], params[k + 1]);
        g(q, p) = std::conj(g(p, q));
        k += 2;
      }
    }
  Interferometer it;
  it.unitary_ = hamlib::unitary_from_generator(g);
  it.generator_ = std::move(g);
  it.mask_ = mask;
  return it;
}

std::vector<double> Interferometer::params() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(mask_.parameter_count()));
  for (int p = 0; p < modes(); ++p)
    for (int q = p; q < modes(); ++q) {
      if (!mask_.free(p, q)) continue;
      if (p == q) {
        out.push_back(generator_(p, p).real());
      } else {
        out.push_back(generator_(p, q).real());
        out.push_back(generator_(p, q).imag());
      }
    }
  return out;
}

Interferometer Interferometer::identity(int modes) { return Interferometer(Eigen::MatrixXcd::Zero(modes, modes)); }

Interferometer Interferometer::from_unitary(Eigen::MatrixXcd unitary) {
  const auto m = unitary.rows();
  if (unitary.cols() != m) throw ValidationError("mode unitary must be square");
  if ((unitary * unitary.adjoint() - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("mode matrix is not unitary");
  }
  Interferometer it;
  it.unitary_ = std::move(unitary);
  it.mask_ = ParamMask::full(static_cast<int>(m));
  it.generator_ = Eigen::MatrixXcd::Zero(m, m);
  return it;
}

Eigen::MatrixXcd transition_submatrix(const Eigen::MatrixXcd& u, std::span<const int> in, std::span<const int> out) {
  const int n = total(in);
  Eigen::MatrixXcd sub(n, n);
  std::vector<int> rows, cols;
  rows.reserve(static_cast<std::size_t>(n));
  cols.reserve(static_cast<std::size_t>(n));
  for (std::size_t q = 0; q < out.size(); ++q)
    for (int r = 0; r < out[q]; ++r) rows.push_back(static_cast<int>(q));
  for (std::size_t p = 0; p < in.size(); ++p)
    for (int r = 0; r < in[p]; ++r) cols.push_back(static_cast<int>(p));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sub(i, j) = u(rows[i], cols[j]);
  return sub;
}

cplx amplitude_boson(const Interferometer& spec, std::span<const int> in, std::span<const int> out) {
  if (static_cast<int>(in.size()) != spec.modes() || static_cast<int>(out.size()) != spec.modes()) {
    throw ValidationError("occupation length does not match interferometer modes");
  }
  if (total(in) != total(out)) throw ValidationError("photon number differs between input and output");
  const cplx per = permanent(transition_submatrix(spec.unitary(), in, out));
  return per / std::sqrt(factorial_product(in) * factorial_product(out));
}

cplx amplitude_fermion(const Interferometer& spec, std::span<const int> in, std::span<const int> out) {
  if (static_cast<int>(in.size()) != spec.modes() || static_cast<int>(out.size()) != spec.modes()) {
    throw ValidationError("occupation length does not match interferometer modes");
  }
  for (int v : in) if (v < 0 || v > 1) throw ValidationError("fermionic occupation must be 0 or 1");
  for (int v : out) if (v < 0 || v > 1) throw ValidationError("fermionic occupation must be 0 or 1");
  if (total(in) != total(out)) throw ValidationError("particle number differs between input and output");
  return determinant(transition_submatrix(spec.unitary(), in, out));
}

fock::BosonState evolve(const Interferometer& spec, const fock::BosonState& in) {
  const auto& sector = *in.sector;
  if (sector.modes() != spec.modes()) throw ValidationError("state and interferometer mode counts differ");
  if (in.amplitudes.size() != static_cast<Eigen::Index>(sector.dim())) {
    throw ValidationError("state amplitude vector does not match its sector");
  }
  fock::BosonState out{in.sector, Eigen::VectorXcd::Zero(in.amplitudes.size())};
  for (std::size_t s = 0; s < sector.dim(); ++s) {
    const cplx a = in.amplitudes[static_cast<Eigen::Index>(s)];
    if (a == cplx{}) continue;
    const auto& src = sector.state(s);
    const double fs = factorial_product(src);
    for (std::size_t t = 0; t < sector.dim(); ++t) {
      const auto& dst = sector.state(t);
      const cplx per = permanent(transition_submatrix(spec.unitary(), src, dst));
      out.amplitudes[static_cast<Eigen::Index>(t)] += a * per / std::sqrt(fs * factorial_product(dst));
    }
  }
  return out;
}

namespace {

// table[mask] = Per (or Det) of u restricted to the rows in `mask` and the
// first popcount(mask) entries of `cols`, by expansion along the last column.
// Only masks with popcount <= cols.size() are filled.
void expand_minors(const Eigen::MatrixXcd& u, std::span<const int> cols, bool fermion, std::vector<cplx>& table) {
  const int m = static_cast<int>(u.rows());
  const int n = static_cast<int>(cols.size());
  const std::size_t full = std::size_t{1} << m;
  if (table.size() != full) table.assign(full, cplx{});
  table[0] = 1.0;
  // Layer k reads only layer k-1, so stale entries from earlier calls are
  // overwritten before use.
  for (int k = 1; k <= n; ++k) {
    const int col = cols[static_cast<std::size_t>(k - 1)];
    const std::size_t last = ((std::size_t{1} << k) - 1) << (m - k);
    for (std::size_t mask = (std::size_t{1} << k) - 1;;) {
      cplx acc = 0.0;
      int pos = 0;
      for (std::size_t rest = mask; rest; rest &= rest - 1, ++pos) {
        const int t = std::countr_zero(rest);
        const cplx term = u(t, col) * table[mask & ~(std::size_t{1} << t)];
        // Laplace sign (-1)^{pos + k - 1} for the determinant.
        acc += (fermion && ((pos + k - 1) & 1)) ? -term : term;
      }
      table[mask] = acc;
      if (mask == last) break;
      // Next mask with the same popcount (Gosper).
      const std::size_t low = mask & (~mask + 1);
      const std::size_t ripple = mask + low;
      mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
  }
}

void check_sector(const Eigen::MatrixXcd& u, const fock::FockSector& sector) {
  if (u.rows() != sector.modes() || u.cols() != sector.modes()) {
    throw ValidationError("mode matrix does not match the sector");
  }
}

}  // namespace

Eigen::VectorXcd encoded_amplitudes(const Eigen::MatrixXcd& u, const fock::FockSector& sector,
                                    std::span<const int> ref) {
  check_sector(u, sector);
  if (static_cast<int>(ref.size()) != sector.photons()) throw ValidationError("reference size differs from photon count");
  std::vector<cplx> table;
  expand_minors(u, ref, false, table);
  const auto& bits = sector.encoded_bits();
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(bits.size()));
  for (std::size_t k = 0; k < bits.size(); ++k) amps[static_cast<Eigen::Index>(k)] = table[bits[k]];
  return amps;
}

cplx numerator_expansion(const Interferometer& spec, const Eigen::MatrixXcd& h_encoded,
                         const fock::FockSector& sector, std::span<const int> ref) {
  // Term by term: sum_ij conj(Per_i) H_ij Per_j with each permanent from Ryser.
  const auto& bits = sector.encoded_bits();
  const auto d = static_cast<Eigen::Index>(bits.size());
  if (h_encoded.rows() != d || h_encoded.cols() != d) {
    throw ValidationError("encoded operator dimension does not match the sector");
  }
  Occupation in(static_cast<std::size_t>(sector.modes()), 0);
  for (int r : ref) in.at(static_cast<std::size_t>(r)) = 1;
  std::vector<cplx> per(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) per[k] = amplitude_boson(spec, in, sector.state(sector.encoded_positions()[k]));
  cplx sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sum += std::conj(per[i]) * h_encoded(i, j) * per[j];
  return sum;
}

Eigen::VectorXcd fermion_sector_apply(const Eigen::MatrixXcd& u, const fock::FockSector& sector,
                                      const Eigen::VectorXcd& v) {
  check_sector(u, sector);
  const auto& bits = sector.encoded_bits();
  if (v.size() != static_cast<Eigen::Index>(bits.size())) throw ValidationError("vector does not match the sector");
  if (sector.photons() == 2) {
    // Two particles: with C the antisymmetric matrix C_ab = v_{ab} (a<b),
    // sum_S v_S det(u_{T,S}) = (u C u^T)_{t1 t2}.
    const int m = sector.modes();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
    for (std::size_t s = 0; s < bits.size(); ++s) {
      const int a = std::countr_zero(bits[s]);
      const int b = std::countr_zero(bits[s] & (bits[s] - 1));
      c(a, b) = v[static_cast<Eigen::Index>(s)];
      c(b, a) = -v[static_cast<Eigen::Index>(s)];
    }
    const Eigen::MatrixXcd w = u * c * u.transpose();
    Eigen::VectorXcd out(v.size());
    for (std::size_t t = 0; t < bits.size(); ++t) {
      out[static_cast<Eigen::Index>(t)] = w(std::countr_zero(bits[t]), std::countr_zero(bits[t] & (bits[t] - 1)));
    }
    return out;
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  std::vector<cplx> table;
  std::vector<int> cols;
  for (std::size_t s = 0; s < bits.size(); ++s) {
    const cplx w = v[static_cast<Eigen::Index>(s)];
    if (w == cplx{}) continue;
    cols.clear();
    for (int q = 0; q < sector.modes(); ++q)
      if ((bits[s] >> q) & 1U) cols.push_back(q);
    expand_minors(u, cols, true, table);
    for (std::size_t t = 0; t < bits.size(); ++t) out[static_cast<Eigen::Index>(t)] += w * table[bits[t]];
  }
  return out;
}

Eigen::MatrixXcd fermion_sector_unitary(const Eigen::MatrixXcd& u, const fock::FockSector& sector) {
  check_sector(u, sector);
  const auto& bits = sector.encoded_bits();
  const auto d = static_cast<Eigen::Index>(bits.size());
  Eigen::MatrixXcd out(d, d);
  std::vector<cplx> table;
  std::vector<int> cols;
  for (Eigen::Index s = 0; s < d; ++s) {
    cols.clear();
    for (int q = 0; q < sector.modes(); ++q)
      if ((bits[static_cast<std::size_t>(s)] >> q) & 1U) cols.push_back(q);
    expand_minors(u, cols, true, table);
    for (Eigen::Index t = 0; t < d; ++t) out(t, s) = table[bits[static_cast<std::size_t>(t)]];
  }
  return out;
}

}  // namespace bsc::interf
