// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

// Slow, independent reference implementations used only by tests. Nothing
// here calls into the production evolution, permanent or kernel code.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bsc/common.hpp"
#include "bsc/hamlib/fermion.hpp"
#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/hamlib/ladder.hpp"

namespace bsc::oracle {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  MatrixXcd a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

inline MatrixXcd random_hermitian(int n, std::mt19937_64& rng, double scale = 1.0) {
  const MatrixXcd a = random_complex(n, n, rng, scale);
  return (a + a.adjoint()) / 2.0;
}

// exp(i g) for Hermitian g.
inline MatrixXcd expi_hermitian(const MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);
  const VectorXcd phase = (cplx(0, 1) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

// Sum over all n! permutations.
inline cplx brute_permanent(const MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx total = 0.0;
  do {
    cplx t = 1.0;
    for (int i = 0; i < n; ++i) t *= a(i, p[i]);
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Occupation vectors with `photons` bosons in `modes` modes, any order.
inline void enumerate(int modes, int photons, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == modes - 1) {
    cur.push_back(photons);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int n = photons; n >= 0; --n) {
    cur.push_back(n);
    enumerate(modes, photons - n, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> boson_basis(int modes, int photons) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerate(modes, photons, cur, out);
  return out;
}

// Matrix of sum_pq g_pq b+_p b_q over an explicit boson basis, assembled
// from ladder-operator matrix elements.
inline MatrixXcd boson_generator(const MatrixXcd& g, const std::vector<std::vector<int>>& basis) {
  const int d = static_cast<int>(basis.size());
  MatrixXcd out = MatrixXcd::Zero(d, d);
  const int m = static_cast<int>(g.rows());
  for (int col = 0; col < d; ++col) {
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        if (g(p, q) == cplx(0.0) || basis[col][q] == 0) continue;
        std::vector<int> occ = basis[col];
        double amp = std::sqrt(static_cast<double>(occ[q]));
        occ[q] -= 1;
        amp *= std::sqrt(static_cast<double>(occ[p] + 1));
        occ[p] += 1;
        const auto it = std::find(basis.begin(), basis.end(), occ);
        out(it - basis.begin(), col) += g(p, q) * amp;
      }
    }
  }
  return out;
}

// --- Fermions on 2^M qubit states, bit i = mode i ------------------------

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Single-mode symbol as a 2x2 matrix in basis {|0>, |1>}.
inline MatrixXcd symbol_matrix(hamlib::Symbol s) {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  switch (s) {
    case hamlib::Symbol::I: m(0, 0) = m(1, 1) = 1.0; break;
    case hamlib::Symbol::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case hamlib::Symbol::Plus: m(1, 0) = 1.0; break;
    case hamlib::Symbol::Minus: m(0, 1) = 1.0; break;
    case hamlib::Symbol::P0: m(0, 0) = 1.0; break;
    case hamlib::Symbol::P1: m(1, 1) = 1.0; break;
  }
  return m;
}

// Tensor product with mode 0 as the least significant bit.
inline MatrixXcd string_matrix(const hamlib::LadderString& s) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (const auto sym : s) out = kron(symbol_matrix(sym), out);
  return out;
}

inline MatrixXcd ladder_dense(const hamlib::LadderTermSum& op) {
  const int dim = 1 << op.modes();
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : op.terms()) out += c * string_matrix(s);
  return out;
}

// Annihilator f_j by counting occupied modes below j.
inline MatrixXcd annihilator(int j, int modes) {
  const int dim = 1 << modes;
  MatrixXcd f = MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    if (!(b >> j & 1)) continue;
    const int below = __builtin_popcount(static_cast<unsigned>(b) & ((1u << j) - 1));
    f(b ^ (1 << j), b) = (below % 2) ? -1.0 : 1.0;
  }
  return f;
}

// f_j or f_j^+ on the basis state |b>, sign from occupied modes below j.
// Returns false when the state is annihilated.
inline bool apply_ladder(int j, bool dagger, int& b, double& sign) {
  if (((b >> j) & 1) == (dagger ? 1 : 0)) return false;
  if (__builtin_popcount(static_cast<unsigned>(b) & ((1u << j) - 1)) % 2) sign = -sign;
  b ^= 1 << j;
  return true;
}

// Column by column: each monomial acts right to left on every basis state.
inline MatrixXcd fermi_dense(const hamlib::FermiTermSum& op, int modes) {
  const int dim = 1 << modes;
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  for (const auto& [mono, coef] : op.terms())
    for (int col = 0; col < dim; ++col) {
      int b = col;
      double sign = 1.0;
      bool alive = true;
      for (auto it = mono.rbegin(); alive && it != mono.rend(); ++it) alive = apply_ladder(it->mode, it->dagger, b, sign);
      if (alive) out(b, col) += sign * coef;
    }
  return out;
}

// Many-body Hamiltonian straight from the integrals.
inline MatrixXcd hamiltonian_dense(const hamlib::SecondQuantHam& h) {
  const int m = h.modes;
  const int dim = 1 << m;
  MatrixXcd out = h.constant * MatrixXcd::Identity(dim, dim);
  auto act = [&](std::initializer_list<std::pair<int, bool>> ops, cplx v) {
    for (int col = 0; col < dim; ++col) {
      int b = col;
      double sign = 1.0;
      bool alive = true;
      for (auto it = std::rbegin(ops); alive && it != std::rend(ops); ++it)
        alive = apply_ladder(it->first, it->second, b, sign);
      if (alive) out(b, col) += sign * v;
    }
  };
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      if (h.one_body(p, q) != cplx(0.0)) act({{p, true}, {q, false}}, h.one_body(p, q));
  for (const auto& [idx, v] : h.two_body) act({{idx[0], true}, {idx[1], true}, {idx[2], false}, {idx[3], false}}, 0.5 * v);
  return out;
}

inline std::vector<int> number_sector(int modes, int electrons) {
  std::vector<int> out;
  for (int b = 0; b < (1 << modes); ++b)
    if (__builtin_popcount(static_cast<unsigned>(b)) == electrons) out.push_back(b);
  return out;
}

inline MatrixXcd restrict(const MatrixXcd& op, const std::vector<int>& idx) {
  MatrixXcd out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = op(idx[i], idx[j]);
  return out;
}

inline double ground_energy(const hamlib::SecondQuantHam& h) {
  const MatrixXcd hs = restrict(hamiltonian_dense(h), number_sector(h.modes, h.electrons));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hs);
  return es.eigenvalues()(0);
}

// --- Pattern-function oracle ---------------------------------------------

// <m|D(beta)|n> via associated Laguerre polynomials.
inline cplx displacement_element(int m, int n, cplx beta) {
  const double b2 = std::norm(beta);
  const double pre = std::exp(-b2 / 2.0);
  auto fact = [](int k) { return std::tgamma(k + 1.0); };
  if (m >= n) {
    return std::sqrt(fact(n) / fact(m)) * std::pow(beta, m - n) * pre * std::assoc_laguerre(n, m - n, b2);
  }
  return std::sqrt(fact(m) / fact(n)) * std::pow(-std::conj(beta), n - m) * pre * std::assoc_laguerre(m, n - m, b2);
}

// K(phi,x) of |n+lambda><n| as the Fourier integral
//   int dr |r|/4 e^{-irx} <n| D(i r e^{i phi} / 2) |n+lambda>
// by composite Simpson on [-r_max, r_max].
inline cplx kernel_integral(int n, int lambda, double phi, double x, double r_max = 40.0, int panels = 16000) {
  const double h = 2.0 * r_max / panels;
  cplx sum = 0.0;
  for (int k = 0; k <= panels; ++k) {
    const double r = -r_max + h * k;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const cplx beta = cplx(0, 1) * r * std::exp(cplx(0, phi)) / 2.0;
    sum += w * std::abs(r) / 4.0 * std::exp(cplx(0, -r * x)) * displacement_element(n, n + lambda, beta);
  }
  return sum * h / 3.0;
}

}  // namespace bsc::oracle
