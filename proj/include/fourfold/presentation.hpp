#pragma once

// Finitely presented groups: an ordered generator list plus relator words.
// Relators are stored freely reduced; cyclic reduction is applied only
// inside algorithms that are insensitive to conjugation.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourfold/common.hpp"
#include "fourfold/word.hpp"

namespace fourfold {

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::optional<size_t> generator_index(const std::string& g) const {
    for (size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == g) return i;
    return std::nullopt;
  }

  bool has_generator(const std::string& g) const { return generator_index(g).has_value(); }

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

inline void check_presentation(const Presentation& p) {
  for (size_t i = 0; i < p.generators.size(); ++i)
    for (size_t j = i + 1; j < p.generators.size(); ++j)
      if (p.generators[i] == p.generators[j])
        throw precondition_error("duplicate generator '" + p.generators[i] + "'");
  for (const auto& r : p.relators)
    for (const auto& l : r.letters)
      if (!p.has_generator(l.gen))
        throw precondition_error("relator uses undeclared generator '" + l.gen + "'");
}

inline Presentation make_presentation(std::vector<std::string> gens,
                                      const std::vector<std::string>& relator_strs) {
  Presentation p;
  p.generators = std::move(gens);
  for (const auto& s : relator_strs) {
    Word w = parse_word(s);
    if (!w.empty()) p.relators.push_back(std::move(w));
  }
  check_presentation(p);
  return p;
}

inline std::vector<long long> exponent_vector(const Presentation& p, const Word& w) {
  std::vector<long long> v(p.generators.size(), 0);
  for (const auto& l : w.letters) {
    auto idx = p.generator_index(l.gen);
    if (!idx) throw precondition_error("word uses undeclared generator '" + l.gen + "'");
    v[*idx] += l.exp;
  }
  return v;
}

// Exponent-sum matrix: one row per relator, one column per generator.
inline std::vector<std::vector<long long>> relator_matrix(const Presentation& p) {
  std::vector<std::vector<long long>> m;
  m.reserve(p.relators.size());
  for (const auto& r : p.relators) m.push_back(exponent_vector(p, r));
  return m;
}

inline std::string to_string(const Presentation& p) {
  std::string s = "< ";
  for (size_t i = 0; i < p.generators.size(); ++i) {
    if (i) s += ", ";
    s += p.generators[i];
  }
  s += " | ";
  for (size_t i = 0; i < p.relators.size(); ++i) {
    if (i) s += ", ";
    s += to_string(p.relators[i]);
  }
  s += " >";
  return s;
}

inline void to_json(nlohmann::json& j, const Presentation& p) {
  j = nlohmann::json::object();
  j["generators"] = p.generators;
  auto rels = nlohmann::json::array();
  for (const auto& r : p.relators) rels.push_back(to_string(r));
  j["relators"] = rels;
}

inline void from_json(const nlohmann::json& j, Presentation& p) {
  std::vector<std::string> gens = j.at("generators").get<std::vector<std::string>>();
  std::vector<std::string> rels;
  for (const auto& r : j.at("relators")) rels.push_back(r.get<std::string>());
  p = make_presentation(std::move(gens), rels);
}

}  // namespace fourfold
