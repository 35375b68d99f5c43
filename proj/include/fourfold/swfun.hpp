#pragma once

// Sparse integer-valued functions on characteristic lattice classes.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourfold/common.hpp"
#include "fourfold/lattice.hpp"

namespace fourfold {

struct SWFunction {
  std::map<IntRow, long long> entries;

  bool empty() const { return entries.empty(); }

  long long value(const IntRow& k) const {
    auto it = entries.find(k);
    return it == entries.end() ? 0 : it->second;
  }

  friend bool operator==(const SWFunction&, const SWFunction&) = default;
};

inline IntRow negated(const IntRow& k) {
  IntRow out = k;
  for (auto& x : out) x = -x;
  return out;
}

// k is characteristic when its pairing with every basis vector matches that
// vector's self-pairing mod 2.
inline bool is_characteristic(const IntersectionLattice& l, const IntRow& k) {
  if (k.size() != l.rank()) return false;
  IntRow pr = l.pairing_row(k);
  for (size_t i = 0; i < l.rank(); ++i) {
    long long diff = pr[i] - l.gram[i][i];
    if (diff % 2 != 0) return false;
  }
  return true;
}

// (-1)^((e+sigma)/4); requires e+sigma divisible by 4.
inline int conjugation_sign(long long e, long long sigma) {
  long long s = e + sigma;
  if (s % 4 != 0)
    throw precondition_error("conjugation sign undefined: e+sigma = " + std::to_string(s) +
                             " is not divisible by 4");
  return (s / 4) % 2 == 0 ? 1 : -1;
}

// Nonzero-valued classes together with negation-partner bookkeeping.
inline std::vector<IntRow> basic_classes(const SWFunction& f) {
  std::vector<IntRow> out;
  for (const auto& [k, v] : f.entries)
    if (v != 0) out.push_back(k);
  return out;
}

inline std::string format_class(const IntersectionLattice& l, const IntRow& k) {
  std::string s;
  for (size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    long long c = k[i];
    if (s.empty()) {
      if (c == -1) s += "-";
      else if (c != 1) s += std::to_string(c);
    } else {
      s += c < 0 ? " - " : " + ";
      long long a = c < 0 ? -c : c;
      if (a != 1) s += std::to_string(a);
    }
    s += l.basis[i];
  }
  return s.empty() ? "0" : s;
}

inline void to_json(nlohmann::json& j, const SWFunction& f) {
  auto arr = nlohmann::json::array();
  for (const auto& [k, v] : f.entries) {
    nlohmann::json e;
    e["k"] = k;
    e["value"] = v;
    arr.push_back(e);
  }
  j = nlohmann::json::object();
  j["entries"] = arr;
}

inline void from_json(const nlohmann::json& j, SWFunction& f) {
  f = {};
  for (const auto& e : j.at("entries"))
    f.entries[e.at("k").get<IntRow>()] = e.at("value").get<long long>();
}

}  // namespace fourfold
