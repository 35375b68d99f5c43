#pragma once

// Bounded certification of group-theoretic claims.  Proofs come from coset
// enumeration or relator-insertion search; refutations come from abelian or
// class-2 nilpotent quotients, or from a closed coset table.  Unknown is
// always a legal outcome: the word problem is not decidable in general.

#include <deque>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fourfold/abelian.hpp"
#include "fourfold/coset.hpp"
#include "fourfold/presentation.hpp"
#include "fourfold/smith.hpp"
#include "fourfold/word.hpp"

namespace fourfold {

enum class ProofStatus { Proven, Refuted, Unknown };

struct ProofVerdict {
  ProofStatus status = ProofStatus::Unknown;
  std::string witness;  // Refuted always carries one

  bool proven() const { return status == ProofStatus::Proven; }
  bool refuted() const { return status == ProofStatus::Refuted; }
};

inline std::string to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::Proven: return "Proven";
    case ProofStatus::Refuted: return "Refuted";
    default: return "Unknown";
  }
}

struct Effort {
  CosetLimits cosets;
  long long max_rewrite_steps = 10'000;
};

inline ProofVerdict prove_trivial(const Presentation& p, const Effort& effort = {}) {
  AbelianInvariants ab = abelianization(p);
  if (!ab.trivial())
    return {ProofStatus::Refuted, "abelianization is " + to_string(ab)};
  CosetResult cr = coset_enumerate(p, effort.cosets);
  if (cr.completed) {
    if (cr.index == 1)
      return {ProofStatus::Proven,
              "coset enumeration closed with index 1 (" +
                  std::to_string(cr.cosets_defined) + " cosets defined)"};
    return {ProofStatus::Refuted,
            "coset enumeration closed: group order " + std::to_string(cr.index)};
  }
  return {ProofStatus::Unknown, "coset enumeration exhausted its limits"};
}

namespace detail {

// Image of a word in the free class-2 nilpotent group, coordinatized by the
// degree-<=2 truncation of the Magnus expansion g_i -> 1 + X_i: a vector of
// exponent sums plus an n-by-n matrix of quadratic coefficients.
struct Class2Element {
  IntRow lin;
  IntMat quad;
};

inline Class2Element class2_image(const Presentation& p, const Word& w) {
  size_t n = p.generators.size();
  Class2Element el{IntRow(n, 0), IntMat(n, IntRow(n, 0))};
  for (const auto& l : w.letters) {
    size_t g = *p.generator_index(l.gen);
    long long e = l.exp;
    // multiply (lin, quad) by g^e = (e*E_g, C(e,2)*E_gg)
    for (size_t i = 0; i < n; ++i) el.quad[i][g] += el.lin[i] * e;
    el.quad[g][g] += e * (e - 1) / 2;
    el.lin[g] += e;
  }
  return el;
}

inline IntRow flatten(const Class2Element& el) {
  IntRow out = el.lin;
  for (const auto& row : el.quad) out.insert(out.end(), row.begin(), row.end());
  return out;
}

// Lattice containing the image of the relators' normal closure in the
// class-2 quotient (an overapproximation, so non-membership is a sound
// refutation of w being a relator consequence).
inline IntMat class2_closure_lattice(const Presentation& p) {
  size_t n = p.generators.size();
  std::vector<Class2Element> rels;
  rels.reserve(p.relators.size());
  for (const auto& r : p.relators) rels.push_back(class2_image(p, r));

  IntMat lattice;
  for (const auto& r : rels) lattice.push_back(flatten(r));
  // central corrections: commutators with generators span v_r /\ e_k,
  // which also generate all v_r /\ v_s reordering terms
  for (const auto& r : rels)
    for (size_t k = 0; k < n; ++k) {
      Class2Element c{IntRow(n, 0), IntMat(n, IntRow(n, 0))};
      for (size_t i = 0; i < n; ++i) {
        c.quad[k][i] += r.lin[i];
        c.quad[i][k] -= r.lin[i];
      }
      lattice.push_back(flatten(c));
    }
  // cross terms of products of relator images
  for (const auto& r : rels)
    for (const auto& s : rels) {
      Class2Element c{IntRow(n, 0), IntMat(n, IntRow(n, 0))};
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) c.quad[i][j] += r.lin[i] * s.lin[j];
      lattice.push_back(flatten(c));
    }
  return lattice;
}

// Breadth-first relator-insertion search for a reduction of w to the empty
// word.  Sound and incomplete by design.
inline bool rewrite_search(const Presentation& p, const Word& w, long long max_steps) {
  std::vector<Word> rules;
  for (const auto& r : p.relators) {
    Word cr = cyclic_reduce(r);
    if (cr.empty()) continue;
    auto pieces = detail::expand_letters(cr);
    for (int sign = 0; sign < 2; ++sign) {
      Word base = sign ? inverse(cr) : cr;
      auto pl = detail::expand_letters(base);
      for (size_t rot = 0; rot < pl.size(); ++rot) {
        std::vector<Letter> ls;
        for (size_t i = 0; i < pl.size(); ++i) {
          const auto& [g, s] = pl[(rot + i) % pl.size()];
          ls.push_back({g, s});
        }
        Word rotated = free_reduce(std::move(ls));
        if (!rotated.empty()) rules.push_back(std::move(rotated));
      }
    }
  }
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  if (rules.empty()) return false;

  long long max_rule = 0;
  for (const auto& r : rules) max_rule = std::max(max_rule, r.length());
  long long cap = w.length() + 2 * max_rule + 2;

  constexpr size_t seen_cap = 200'000;  // bounds memory, not soundness
  std::deque<Word> queue{w};
  std::unordered_set<std::string> seen{to_string(w)};
  long long steps = 0;
  while (!queue.empty() && steps < max_steps) {
    Word cur = queue.front();
    queue.pop_front();
    ++steps;
    auto letters = detail::expand_letters(cur);
    for (const auto& rule : rules) {
      for (size_t pos = 0; pos <= letters.size(); ++pos) {
        std::vector<Letter> cand;
        cand.reserve(letters.size() + rule.letters.size());
        for (size_t i = 0; i < pos; ++i) cand.push_back({letters[i].first, letters[i].second});
        cand.insert(cand.end(), rule.letters.begin(), rule.letters.end());
        for (size_t i = pos; i < letters.size(); ++i)
          cand.push_back({letters[i].first, letters[i].second});
        Word next = free_reduce(std::move(cand));
        if (next.empty()) return true;
        if (next.length() > cap) continue;
        if (seen.size() >= seen_cap) continue;
        std::string key = to_string(next);
        if (seen.insert(key).second) queue.push_back(std::move(next));
      }
    }
  }
  return false;
}

}  // namespace detail

// Does w reduce to the identity as a consequence of p's relators?
inline ProofVerdict derive_relation(const Presentation& p, const Word& w,
                                    const Effort& effort = {}) {
  for (const auto& l : w.letters)
    if (!p.has_generator(l.gen))
      throw precondition_error("derive_relation: word uses undeclared generator '" + l.gen + "'");

  Word rw = free_reduce(w);
  if (rw.empty()) return {ProofStatus::Proven, "freely reduces to the identity"};

  // quotient refutations
  if (!in_row_lattice(relator_matrix(p), exponent_vector(p, rw)))
    return {ProofStatus::Refuted, "nonzero image in the abelianization"};
  if (!in_row_lattice(detail::class2_closure_lattice(p),
                      detail::flatten(detail::class2_image(p, rw))))
    return {ProofStatus::Refuted, "nontrivial image in the class-2 nilpotent quotient"};

  // a closed coset table decides the question outright; probe with a small
  // budget so infinite groups fall through quickly
  CosetLimits probe = effort.cosets;
  probe.max_cosets = std::min<long long>(probe.max_cosets, 20'000);
  ClosedTable table = coset_enumerate_table(p, probe);
  if (table.result.completed) {
    if (trace_word(p, table, rw) == 0)
      return {ProofStatus::Proven,
              "trivial in the regular representation (group order " +
                  std::to_string(table.result.index) + ")"};
    return {ProofStatus::Refuted,
            "nontrivial in the closed coset table (group order " +
                std::to_string(table.result.index) + ")"};
  }

  if (detail::rewrite_search(p, rw, effort.max_rewrite_steps))
    return {ProofStatus::Proven, "reduced to the identity by relator insertions"};
  return {ProofStatus::Unknown, "no derivation found within the search budget"};
}

// --- Tietze elimination ------------------------------------------------------

// Remove each identified generator after substituting its defining word.
// Every identification must be witnessed by a relator equivalent to g*w^-1,
// so the move preserves the group (and in particular its abelianization).
inline Presentation eliminate_generators(
    const Presentation& p, const std::vector<std::pair<std::string, Word>>& identifications) {
  for (const auto& [g, w] : identifications) {
    if (!p.has_generator(g))
      throw precondition_error("eliminate_generators: unknown generator '" + g + "'");
    for (const auto& l : w.letters)
      if (!p.has_generator(l.gen))
        throw precondition_error("eliminate_generators: defining word uses undeclared generator '" +
                                 l.gen + "'");
  }

  // resolve definitions among themselves; a cycle means no valid ordering
  std::vector<std::pair<std::string, Word>> defs = identifications;
  auto is_identified = [&](const std::string& g) {
    for (const auto& [h, _] : defs)
      if (h == g) return true;
    return false;
  };
  std::vector<std::pair<std::string, Word>> ordered;
  std::vector<bool> done(defs.size(), false);
  for (size_t round = 0; round < defs.size(); ++round) {
    bool progress = false;
    for (size_t i = 0; i < defs.size(); ++i) {
      if (done[i]) continue;
      bool blocked = false;
      for (const auto& l : defs[i].second.letters)
        if (is_identified(l.gen) && l.gen != defs[i].first) {
          bool resolved = false;
          for (const auto& [h, _] : ordered)
            if (h == l.gen) resolved = true;
          if (!resolved) blocked = true;
        }
      if (blocked) continue;
      if (contains_generator(defs[i].second, defs[i].first))
        throw precondition_error("eliminate_generators: '" + defs[i].first +
                                 "' defined in terms of itself");
      Word w = defs[i].second;
      for (const auto& [h, hw] : ordered) w = substitute(w, h, hw);
      if (contains_generator(w, defs[i].first))
        throw precondition_error("eliminate_generators: cyclic identification chain at '" +
                                 defs[i].first + "'");
      ordered.emplace_back(defs[i].first, w);
      done[i] = true;
      progress = true;
    }
    if (!progress) break;
  }
  for (size_t i = 0; i < defs.size(); ++i)
    if (!done[i])
      throw precondition_error("eliminate_generators: cyclic identification chain at '" +
                               defs[i].first + "'");

  Presentation cur = p;
  for (const auto& [g, w] : ordered) {
    Word witness_target = concat(Word{{{g, 1}}}, inverse(w));
    bool witnessed = false;
    for (const auto& r : cur.relators)
      if (same_relator(r, witness_target)) {
        witnessed = true;
        break;
      }
    if (!witnessed)
      throw precondition_error("eliminate_generators: identification '" + g + " = " +
                               to_string(w) + "' is not backed by a relator");
    Presentation next;
    for (const auto& h : cur.generators)
      if (h != g) next.generators.push_back(h);
    for (const auto& r : cur.relators) {
      Word s = substitute(r, g, w);
      if (!s.empty()) next.relators.push_back(std::move(s));
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace fourfold
