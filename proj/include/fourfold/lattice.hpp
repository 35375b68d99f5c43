#pragma once

// Integer intersection lattices with exact signature computation.  The
// signature comes from congruent diagonalization over the rationals; no
// floating point anywhere.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourfold/common.hpp"
#include "fourfold/smith.hpp"

namespace fourfold {

namespace detail {

struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool zero() const { return num == 0; }
  int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }

  friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw error("rational division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
};

}  // namespace detail

struct SignatureCounts {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  int signature() const { return positive - negative; }
  int rank() const { return positive + negative; }
};

struct IntersectionLattice {
  std::vector<std::string> basis;
  IntMat gram;

  size_t rank() const { return basis.size(); }

  std::optional<size_t> index_of(const std::string& label) const {
    for (size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == label) return i;
    return std::nullopt;
  }

  long long pairing(const IntRow& a, const IntRow& b) const {
    long long s = 0;
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) s += a[i] * gram[i][j] * b[j];
    return s;
  }

  long long square(const IntRow& a) const { return pairing(a, a); }

  // row of pairings <v, e_i>
  IntRow pairing_row(const IntRow& v) const {
    IntRow out(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) out[i] += v[j] * gram[j][i];
    return out;
  }

  bool symmetric() const {
    if (gram.size() != basis.size()) return false;
    for (size_t i = 0; i < gram.size(); ++i) {
      if (gram[i].size() != basis.size()) return false;
      for (size_t j = 0; j < gram.size(); ++j)
        if (gram[i][j] != gram[j][i]) return false;
    }
    return true;
  }

  // A form is odd exactly when some basis vector has odd self-pairing.
  bool odd() const {
    for (size_t i = 0; i < gram.size(); ++i)
      if (gram[i][i] % 2 != 0) return true;
    return false;
  }

  friend bool operator==(const IntersectionLattice&, const IntersectionLattice&) = default;
};

// Exact inertia of the symmetric gram matrix.
inline SignatureCounts signature_counts(const IntMat& gram) {
  using detail::Rat;
  size_t n = gram.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Rat(gram[i][j]);

  SignatureCounts out;
  for (size_t i = 0; i < n; ++i) {
    if (a[i][i].zero()) {
      size_t swap_with = n;
      for (size_t j = i + 1; j < n; ++j)
        if (!a[j][j].zero()) {
          swap_with = j;
          break;
        }
      if (swap_with < n) {
        for (size_t k = 0; k < n; ++k) std::swap(a[i][k], a[swap_with][k]);
        for (size_t k = 0; k < n; ++k) std::swap(a[k][i], a[k][swap_with]);
      } else {
        size_t partner = n;
        for (size_t j = i + 1; j < n; ++j)
          if (!a[i][j].zero()) {
            partner = j;
            break;
          }
        if (partner == n) {
          ++out.zero;
          continue;
        }
        // e_i += e_partner makes the diagonal entry 2*a[i][partner]
        for (size_t k = 0; k < n; ++k) a[i][k] = a[i][k] + a[partner][k];
        for (size_t k = 0; k < n; ++k) a[k][i] = a[k][i] + a[k][partner];
      }
    }
    if (a[i][i].zero()) {
      ++out.zero;
      continue;
    }
    if (a[i][i].sign() > 0) ++out.positive;
    else ++out.negative;
    for (size_t j = i + 1; j < n; ++j) {
      if (a[j][i].zero()) continue;
      Rat f = a[j][i] / a[i][i];
      for (size_t k = 0; k < n; ++k) a[j][k] = a[j][k] - f * a[i][k];
      for (size_t k = 0; k < n; ++k) a[k][j] = a[k][j] - f * a[k][i];
    }
  }
  return out;
}

inline SignatureCounts signature_counts(const IntersectionLattice& l) {
  return signature_counts(l.gram);
}

inline int signature(const IntersectionLattice& l) { return signature_counts(l).signature(); }

inline void to_json(nlohmann::json& j, const IntersectionLattice& l) {
  j = nlohmann::json::object();
  j["basis"] = l.basis;
  j["gram"] = l.gram;
}

inline void from_json(const nlohmann::json& j, IntersectionLattice& l) {
  l.basis = j.at("basis").get<std::vector<std::string>>();
  if (j.contains("diag")) {
    IntRow d = j.at("diag").get<IntRow>();
    if (d.size() != l.basis.size())
      throw parse_error("lattice diag length does not match basis");
    l.gram.assign(d.size(), IntRow(d.size(), 0));
    for (size_t i = 0; i < d.size(); ++i) l.gram[i][i] = d[i];
  } else {
    l.gram = j.at("gram").get<IntMat>();
  }
  if (!l.symmetric()) throw validation_error("gram matrix is not symmetric");
}

}  // namespace fourfold
