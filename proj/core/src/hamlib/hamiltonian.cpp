// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/hamlib/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace bsc::hamlib {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr const char* kSchemaVersion = "1.0";

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Integral store keyed by packed spatial indices; every symmetry image is
// written and must agree with what is already there.
class SymmetricStore {
 public:
  void set(std::uint64_t key, double v, std::size_t line) {
    auto [it, inserted] = values_.try_emplace(key, v);
    if (!inserted && std::abs(it->second - v) > kSymmetryTol) {
      throw ValidationError("line " + std::to_string(line) + ": integral " + std::to_string(v) +
                            " contradicts its symmetry partner " + std::to_string(it->second) +
                            " (non-Hermitian integral set)");
    }
  }
  const std::unordered_map<std::uint64_t, double>& values() const { return values_; }

 private:
  std::unordered_map<std::uint64_t, double> values_;
};

std::uint64_t pack(int i, int j, int k = 0, int l = 0) {
  return (static_cast<std::uint64_t>(i) << 48) | (static_cast<std::uint64_t>(j) << 32) |
         (static_cast<std::uint64_t>(k) << 16) | static_cast<std::uint64_t>(l);
}

int field(std::uint64_t key, int which) { return static_cast<int>((key >> (48 - 16 * which)) & 0xFFFF); }

std::pair<std::string, std::size_t> read_header(std::istream& in, std::size_t& line_no) {
  std::string header, line;
  bool started = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string u = upper(line);
    if (!started) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (u.find("&FCI") == std::string::npos) throw ParseError("expected '&FCI' header", line_no);
      started = true;
    }
    header += u + " ";
    auto trimmed = u;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    if (u.find("&END") != std::string::npos || trimmed.rfind('/', 0) == 0) return {header, line_no};
  }
  throw ParseError(started ? "unterminated &FCI header" : "empty FCIDUMP", line_no);
}

int header_int(const std::string& header, const std::string& key, std::size_t line) {
  // Match KEY= as a whole word (NORB must not match e.g. XNORB).
  std::size_t pos = 0;
  while ((pos = header.find(key, pos)) != std::string::npos) {
    const bool word_start = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
    std::size_t p = pos + key.size();
    while (p < header.size() && header[p] == ' ') ++p;
    if (word_start && p < header.size() && header[p] == '=') {
      ++p;
      while (p < header.size() && header[p] == ' ') ++p;
      std::size_t end = p;
      while (end < header.size() && (std::isdigit(static_cast<unsigned char>(header[end])) || header[end] == '-')) ++end;
      if (end == p) throw ParseError("header key " + key + " has no integer value", line);
      return std::stoi(header.substr(p, end - p));
    }
    pos += key.size();
  }
  throw ParseError("header is missing " + key, line);
}

}  // namespace

void SecondQuantHam::validate(double tol) const {
  if (modes <= 0) throw ValidationError("Hamiltonian needs at least one mode");
  if (electrons <= 0 || electrons > modes) {
    throw ValidationError("electron count " + std::to_string(electrons) + " incompatible with " +
                          std::to_string(modes) + " modes");
  }
  if (one_body.rows() != modes || one_body.cols() != modes) throw ValidationError("one-body matrix shape mismatch");
  if ((one_body - one_body.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("one-body integrals are not Hermitian");
  }
  for (const auto& [idx, v] : two_body) {
    for (int x : idx) {
      if (x < 0 || x >= modes) throw ValidationError("two-body index out of range");
    }
    auto it = two_body.find({idx[3], idx[2], idx[1], idx[0]});
    const cplx partner = it == two_body.end() ? cplx{} : it->second;
    if (std::abs(v - std::conj(partner)) > tol) throw ValidationError("two-body integrals are not Hermitian");
  }
}

SecondQuantHam parse_fcidump(std::istream& in) {
  std::size_t line_no = 0;
  auto [header, header_line] = read_header(in, line_no);
  const int norb = header_int(header, "NORB", header_line);
  const int nelec = header_int(header, "NELEC", header_line);
  if (norb <= 0) throw ParseError("NORB must be positive", header_line);
  if (nelec <= 0) throw ParseError("NELEC must be positive", header_line);

  SymmetricStore one, two;
  double constant = 0.0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), 'D', 'E');
    std::replace(line.begin(), line.end(), 'd', 'e');
    std::istringstream ls(line);
    double v;
    int i, j, k, l;
    std::string extra;
    if (!(ls >> v >> i >> j >> k >> l) || (ls >> extra)) {
      throw ParseError("integral line must read 'value i j k l'", line_no);
    }
    for (int x : {i, j, k, l}) {
      if (x < 0 || x > norb) throw ParseError("orbital index " + std::to_string(x) + " outside 0..NORB", line_no);
    }
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      constant = v;
    } else if (k == 0 && l == 0) {
      if (j == 0) continue;  // orbital energy
      if (i == 0) throw ParseError("one-body line with zero first index", line_no);
      one.set(pack(i, j), v, line_no);
      one.set(pack(j, i), v, line_no);
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0) throw ParseError("two-body line with zero index", line_no);
      for (auto [a, b, c, d] : {std::array{i, j, k, l}, std::array{j, i, k, l}, std::array{i, j, l, k},
                                std::array{j, i, l, k}, std::array{k, l, i, j}, std::array{l, k, i, j},
                                std::array{k, l, j, i}, std::array{l, k, j, i}}) {
        two.set(pack(a, b, c, d), v, line_no);
      }
    }
  }

  SecondQuantHam h;
  h.modes = 2 * norb;
  h.electrons = nelec;
  h.constant = constant;
  h.one_body = Eigen::MatrixXcd::Zero(h.modes, h.modes);
  for (const auto& [key, v] : one.values()) {
    const int i = field(key, 0) - 1, j = field(key, 1) - 1;
    for (int s = 0; s < 2; ++s) h.one_body(2 * i + s, 2 * j + s) = v;
  }
  // (ij|kl) a+_{i s} a+_{k t} a_{l t} a_{j s}  ->  h_{P Q R S} with
  // P = (i,s), Q = (k,t), R = (l,t), S = (j,s).
  for (const auto& [key, v] : two.values()) {
    if (v == 0.0) continue;
    const int i = field(key, 0) - 1, j = field(key, 1) - 1, k = field(key, 2) - 1, l = field(key, 3) - 1;
    for (int s = 0; s < 2; ++s) {
      for (int t = 0; t < 2; ++t) {
        const int p = 2 * i + s, q = 2 * k + t, r = 2 * l + t, ss = 2 * j + s;
        if (p == q || r == ss) continue;
        h.two_body[{p, q, r, ss}] = v;
      }
    }
  }
  h.validate();
  return h;
}

SecondQuantHam read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return parse_fcidump(in);
}

std::string to_json(const SecondQuantHam& h) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["m"] = h.modes;
  j["n"] = h.electrons;
  j["constant"] = h.constant;
  auto one = nlohmann::json::array();
  for (int p = 0; p < h.modes; ++p) {
    for (int q = 0; q < h.modes; ++q) {
      const cplx v = h.one_body(p, q);
      if (v != cplx{}) one.push_back({p, q, v.real(), v.imag()});
    }
  }
  j["one_body"] = std::move(one);
  auto two = nlohmann::json::array();
  for (const auto& [idx, v] : h.two_body) two.push_back({idx[0], idx[1], idx[2], idx[3], v.real(), v.imag()});
  j["two_body"] = std::move(two);
  return j.dump(1);
}

SecondQuantHam from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("Hamiltonian JSON: ") + e.what(), 0);
  }
  try {
    if (j.contains("schema_version")) {
      const auto v = j.at("schema_version").get<std::string>();
      if (v.substr(0, v.find('.')) != "1") throw ValidationError("unsupported Hamiltonian schema version " + v);
    }
    SecondQuantHam h;
    h.modes = j.at("m").get<int>();
    h.electrons = j.at("n").get<int>();
    h.constant = j.at("constant").get<double>();
    if (h.modes <= 0 || h.modes > 64) throw ValidationError("mode count out of range");
    h.one_body = Eigen::MatrixXcd::Zero(h.modes, h.modes);
    for (const auto& e : j.at("one_body")) {
      const int p = e.at(0).get<int>(), q = e.at(1).get<int>();
      if (p < 0 || q < 0 || p >= h.modes || q >= h.modes) throw ValidationError("one-body index out of range");
      h.one_body(p, q) = cplx(e.at(2).get<double>(), e.at(3).get<double>());
    }
    for (const auto& e : j.at("two_body")) {
      h.two_body[{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<int>()}] =
          cplx(e.at(4).get<double>(), e.at(5).get<double>());
    }
    h.validate();
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("Hamiltonian JSON: ") + e.what(), 0);
  }
}

SecondQuantHam load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError(path.string() + " is empty", 0);
  if (text[first] == '{') return from_json(text);
  std::istringstream is(text);
  return parse_fcidump(is);
}

FermiTermSum to_fermi(const SecondQuantHam& h) {
  FermiTermSum op;
  if (h.constant != 0.0) op += FermiTermSum::identity(h.constant);
  for (int p = 0; p < h.modes; ++p) {
    for (int q = 0; q < h.modes; ++q) {
      const cplx v = h.one_body(p, q);
      if (std::abs(v) >= kPruneTolerance) op.add({cr(p), an(q)}, v);
    }
  }
  for (const auto& [idx, v] : h.two_body) {
    if (std::abs(v) >= kPruneTolerance) op.add({cr(idx[0]), cr(idx[1]), an(idx[2]), an(idx[3])}, 0.5 * v);
  }
  return op;
}

Eigen::MatrixXcd unitary_from_generator(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const Eigen::VectorXcd phases = (cplx(0.0, 1.0) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

SecondQuantHam transform_hf(const SecondQuantHam& h, const Eigen::MatrixXcd& beta) {
  const int m = h.modes;
  if (beta.rows() != m || beta.cols() != m) throw ValidationError("beta must be M x M");
  if ((beta - beta.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw ValidationError("beta is not Hermitian");
  const Eigen::MatrixXcd u = unitary_from_generator(beta);
  const Eigen::MatrixXcd ud = u.adjoint();

  SecondQuantHam out;
  out.modes = m;
  out.electrons = h.electrons;
  out.constant = h.constant;
  out.one_body = ud * h.one_body * u;

  // h'_pqrs = sum u+_pa u+_qb h_abcd u_cr u_ds, one index at a time.
  const std::size_t m2 = static_cast<std::size_t>(m) * m, m3 = m2 * m;
  auto at = [&](int a, int b, int c, int d) { return static_cast<std::size_t>(a) * m3 + b * m2 + c * m + d; };
  std::vector<cplx> t(m3 * m, cplx{}), s(m3 * m);
  for (const auto& [idx, v] : h.two_body) t[at(idx[0], idx[1], idx[2], idx[3])] = v;
  for (int axis = 0; axis < 4; ++axis) {
    std::fill(s.begin(), s.end(), cplx{});
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            const cplx v = t[at(a, b, c, d)];
            if (v == cplx{}) continue;
            for (int x = 0; x < m; ++x) {
              switch (axis) {
                case 0: s[at(x, b, c, d)] += ud(x, a) * v; break;
                case 1: s[at(a, x, c, d)] += ud(x, b) * v; break;
                case 2: s[at(a, b, x, d)] += v * u(c, x); break;
                case 3: s[at(a, b, c, x)] += v * u(d, x); break;
              }
            }
          }
    std::swap(t, s);
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          if (c == d) continue;
          const cplx v = t[at(a, b, c, d)];
          if (std::abs(v) >= 1e-14) out.two_body[{a, b, c, d}] = v;
        }
    }
  return out;
}

}  // namespace bsc::hamlib
