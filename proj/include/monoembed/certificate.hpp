#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bias.hpp"
#include "embedding.hpp"

namespace monoembed {

// Text format:
//   embedding <r> <m> [relaxed]
//   phi <m-ary string of length 2^r> | phi -
//   omega-enum <K>            followed by K lines "a/b; psi(0) ... psi(m-1)"
//   | omega-sampler and <r> | omega-sampler threshold <t1> ... | omega-sampler bias <flip> <a1> ... <as>
//   mu1 <m rationals>
//   mu2 <2^r rationals>       relaxed only

namespace detail {

inline char digit_char(int v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }
inline int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  throw std::invalid_argument(std::string("certificate: bad phi digit '") + c + "'");
}

/// Recognizes [complement of] and(a1) x complement(and(i)) x ... and returns (flip, a).
inline std::optional<std::pair<bool, std::vector<int>>> bias_digits_of(const LocalEmbedding& e) {
  const LocalEmbedding* cur = &e;
  bool flip = false;
  if (cur->kind() == LocalEmbedding::Kind::Complement) {
    flip = true;
    cur = cur->children()[0].get();
  }
  std::vector<int> factors;  // i for each complement(and(i)), right to left
  while (cur->kind() == LocalEmbedding::Kind::Product) {
    const auto& rhs = *cur->children()[1];
    if (rhs.kind() != LocalEmbedding::Kind::Complement || rhs.children()[0]->kind() != LocalEmbedding::Kind::And) return std::nullopt;
    factors.push_back(rhs.r());
    cur = cur->children()[0].get();
  }
  if (cur->kind() != LocalEmbedding::Kind::And) return std::nullopt;
  int top = 1;
  for (int i : factors) top = std::max(top, i);
  std::vector<int> a(static_cast<std::size_t>(top), 0);
  a[0] = cur->r();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    if (*it < 2) return std::nullopt;
    if (it != factors.rbegin() && *it < *(it - 1)) return std::nullopt;
    ++a[static_cast<std::size_t>(*it - 1)];
  }
  return std::make_pair(flip, a);
}

}  // namespace detail

inline void write_certificate(std::ostream& out, const LocalEmbedding& e) {
  const int r = e.r(), m = e.m();
  if (m > 36) throw std::invalid_argument("certificate: m > 36 not representable");
  out << "embedding " << r << ' ' << m << (e.relaxed() ? " relaxed" : "") << '\n';
  out << "phi ";
  if (r <= kMaxPhiTableBits) {
    for (auto v : e.phi_table()) out << detail::digit_char(v);
  } else {
    out << '-';
  }
  out << '\n';
  const bool builtin = !e.has_phi_override() && e.kind() != LocalEmbedding::Kind::Explicit;
  std::optional<std::pair<bool, std::vector<int>>> bias;
  if (builtin) bias = detail::bias_digits_of(e);
  if (builtin && e.kind() == LocalEmbedding::Kind::And) {
    out << "omega-sampler and " << r << '\n';
  } else if (builtin && e.kind() == LocalEmbedding::Kind::Threshold) {
    out << "omega-sampler threshold";
    for (int t : e.thresholds()) out << ' ' << t;
    out << '\n';
  } else if (bias) {
    out << "omega-sampler bias " << (bias->first ? 1 : 0);
    for (int v : bias->second) out << ' ' << v;
    out << '\n';
  } else {
    auto atoms = e.enumerate_omega();
    if (!atoms) throw std::invalid_argument("certificate: Omega is neither enumerable nor a built-in sampler");
    out << "omega-enum " << atoms->size() << '\n';
    for (const auto& at : *atoms) {
      out << to_fraction_string(at.prob) << ';';
      for (auto v : at.psi) out << ' ' << v;
      out << '\n';
    }
  }
  out << "mu1";
  for (const auto& v : e.mu1()) out << ' ' << to_fraction_string(v);
  out << '\n';
  if (e.relaxed()) {
    out << "mu2";
    for (const auto& v : *e.mu2()) out << ' ' << to_fraction_string(v);
    out << '\n';
  }
}

inline EmbeddingPtr read_certificate(std::istream& in) {
  std::string line, word;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') return std::istringstream(line);
    throw std::invalid_argument("certificate: unexpected end of input");
  };
  auto head = next_line();
  int r = 0, m = 0;
  head >> word >> r >> m;
  if (word != "embedding" || r < 1 || m < 2) throw std::invalid_argument("certificate: bad header");
  std::string flag;
  const bool relaxed = static_cast<bool>(head >> flag) && flag == "relaxed";

  auto phi_line = next_line();
  std::string phi_text;
  phi_line >> word >> phi_text;
  if (word != "phi") throw std::invalid_argument("certificate: expected phi line");
  std::optional<std::vector<std::uint8_t>> phi;
  if (phi_text != "-") {
    if (r > kMaxPhiTableBits || phi_text.size() != (std::size_t{1} << r)) throw std::invalid_argument("certificate: phi length must be 2^r");
    std::vector<std::uint8_t> t;
    t.reserve(phi_text.size());
    for (char c : phi_text) {
      const int v = detail::char_digit(c);
      if (v >= m) throw std::invalid_argument("certificate: phi value out of range");
      t.push_back(static_cast<std::uint8_t>(v));
    }
    phi = std::move(t);
  }

  auto omega_line = next_line();
  omega_line >> word;
  EmbeddingPtr base;
  std::vector<OmegaAtom> atoms;
  if (word == "omega-enum") {
    std::size_t K = 0;
    omega_line >> K;
    for (std::size_t k = 0; k < K; ++k) {
      auto al = next_line();
      std::string prob;
      std::getline(al, prob, ';');
      OmegaAtom at{parse_rational(prob), {}};
      std::uint64_t v;
      while (al >> v) at.psi.push_back(v);
      atoms.push_back(std::move(at));
    }
  } else if (word == "omega-sampler") {
    std::string kind;
    omega_line >> kind;
    if (kind == "and") {
      int rr = 0;
      omega_line >> rr;
      base = and_embedding(rr);
    } else if (kind == "threshold") {
      std::vector<int> t;
      int v;
      while (omega_line >> v) t.push_back(v);
      base = LocalEmbedding::threshold(r, t);
    } else if (kind == "bias") {
      int flip = 0;
      omega_line >> flip;
      std::vector<int> a;
      int v;
      while (omega_line >> v) a.push_back(v);
      base = bias_embedding(a, flip != 0);
    } else {
      throw std::invalid_argument("certificate: unknown sampler " + kind);
    }
    if (base->r() != r || base->m() != m) throw std::invalid_argument("certificate: sampler does not match header");
  } else {
    throw std::invalid_argument("certificate: expected omega-enum or omega-sampler");
  }

  auto mu1_line = next_line();
  mu1_line >> word;
  if (word != "mu1") throw std::invalid_argument("certificate: expected mu1 line");
  std::vector<Rational> mu1;
  while (mu1_line >> word) mu1.push_back(parse_rational(word));
  std::optional<std::vector<Rational>> mu2;
  if (relaxed) {
    auto mu2_line = next_line();
    mu2_line >> word;
    if (word != "mu2") throw std::invalid_argument("certificate: expected mu2 line");
    std::vector<Rational> v;
    while (mu2_line >> word) v.push_back(parse_rational(word));
    mu2 = std::move(v);
  }

  if (!base) {
    if (!phi) throw std::invalid_argument("certificate: explicit Omega needs a phi table");
    return LocalEmbedding::explicit_embedding(r, m, std::move(*phi), std::move(atoms), std::move(mu1), std::move(mu2));
  }
  if (relaxed) throw std::invalid_argument("certificate: built-in samplers are not relaxed");
  // Declared phi and mu1 are what gets verified against the built-in Psi.
  return LocalEmbedding::with_overrides(*base, std::move(phi), std::move(mu1));
}

inline void write_certificate_file(const std::string& path, const LocalEmbedding& e) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_certificate(out, e);
}

inline EmbeddingPtr read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_certificate(in);
}

}  // namespace monoembed
