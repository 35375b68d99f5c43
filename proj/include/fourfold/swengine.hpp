#pragma once

// Basic-class bookkeeping: exhaustive enumeration of characteristic classes
// under adjunction and simple-type constraints, the surgery product formula,
// the blow-up formula, and the minimality gap test.  Everything is exact
// integer arithmetic over declared lattices.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fourfold/common.hpp"
#include "fourfold/lattice.hpp"
#include "fourfold/surface.hpp"
#include "fourfold/swfun.hpp"

namespace fourfold {

struct BasicClassProblem {
  IntersectionLattice lattice;
  std::vector<SurfaceClass> surfaces;  // constraint surfaces; genus 0 entries are ignored
  long long e = 0;
  long long sigma = 0;
  bool simple_type = true;
};

namespace detail {

struct LinearConstraint {
  IntRow coeffs;
  long long bound = 0;     // |coeffs . k| <= bound
  size_t last_support = 0; // largest index with a nonzero coefficient
  std::string label;
};

struct ParityConstraint {
  IntRow coeffs;
  long long target = 0;  // coeffs . k == target (mod 2)
  size_t last_support = 0;
};

inline size_t last_support_index(const IntRow& v) {
  size_t last = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) last = i;
  return last;
}

inline std::vector<LinearConstraint> adjunction_constraints(const BasicClassProblem& p) {
  std::vector<LinearConstraint> out;
  for (const auto& s : p.surfaces) {
    if (s.genus < 1) continue;  // spheres carry no adjunction bound here
    if (!s.coords)
      throw precondition_error("basic-class problem: constraint surface '" + s.label +
                               "' has no coordinates");
    LinearConstraint c;
    c.coeffs = p.lattice.pairing_row(*s.coords);
    c.bound = 2 * s.genus - 2 - s.square;
    c.last_support = last_support_index(c.coeffs);
    c.label = s.label;
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ParityConstraint> parity_constraints(const BasicClassProblem& p) {
  std::vector<ParityConstraint> out;
  for (size_t i = 0; i < p.lattice.rank(); ++i) {
    ParityConstraint c;
    c.coeffs = IntRow(p.lattice.gram[i].begin(), p.lattice.gram[i].end());
    c.target = p.lattice.gram[i][i];
    c.last_support = last_support_index(c.coeffs);
    out.push_back(std::move(c));
  }
  return out;
}

struct Box {
  std::vector<std::optional<long long>> lo, hi;
};

// Interval propagation: each adjunction inequality bounds one coordinate in
// terms of the current ranges of the others.  Coordinates that stay
// unbounded after a fixpoint make the enumeration ill-posed.
inline Box derive_bounds(const BasicClassProblem& p,
                         const std::vector<LinearConstraint>& cons) {
  size_t n = p.lattice.rank();
  Box box{std::vector<std::optional<long long>>(n), std::vector<std::optional<long long>>(n)};
  for (int round = 0; round < 200; ++round) {
    bool changed = false;
    for (const auto& c : cons) {
      for (size_t i = 0; i < n; ++i) {
        if (c.coeffs[i] == 0) continue;
        // bounds of sum_{j != i} c_j k_j
        std::optional<long long> rest_lo = 0, rest_hi = 0;
        for (size_t j = 0; j < n; ++j) {
          if (j == i || c.coeffs[j] == 0) continue;
          long long cj = c.coeffs[j];
          std::optional<long long> term_lo = cj > 0 ? box.lo[j] : box.hi[j];
          std::optional<long long> term_hi = cj > 0 ? box.hi[j] : box.lo[j];
          if (rest_lo && term_lo) *rest_lo += cj * *term_lo;
          else rest_lo.reset();
          if (rest_hi && term_hi) *rest_hi += cj * *term_hi;
          else rest_hi.reset();
        }
        long long ci = c.coeffs[i];
        auto floor_div = [](long long a, long long b) {
          long long q = a / b;
          if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
          return q;
        };
        auto ceil_div = [&](long long a, long long b) { return -floor_div(-a, b); };
        // -bound - rest <= ci*k_i <= bound - rest
        if (rest_hi) {
          long long num = -c.bound - *rest_hi;
          if (ci > 0) {
            long long cand = ceil_div(num, ci);
            if (!box.lo[i] || cand > *box.lo[i]) box.lo[i] = cand, changed = true;
          } else {
            long long cand = floor_div(num, ci);
            if (!box.hi[i] || cand < *box.hi[i]) box.hi[i] = cand, changed = true;
          }
        }
        if (rest_lo) {
          long long num = c.bound - *rest_lo;
          if (ci > 0) {
            long long cand = floor_div(num, ci);
            if (!box.hi[i] || cand < *box.hi[i]) box.hi[i] = cand, changed = true;
          } else {
            long long cand = ceil_div(num, ci);
            if (!box.lo[i] || cand > *box.lo[i]) box.lo[i] = cand, changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
  return box;
}

}  // namespace detail

// Exact check that k satisfies every constraint of the problem.
inline bool verify_basic_class(const BasicClassProblem& p, const IntRow& k) {
  if (k.size() != p.lattice.rank()) return false;
  if (!is_characteristic(p.lattice, k)) return false;
  for (const auto& s : p.surfaces) {
    if (s.genus < 1 || !s.coords) continue;
    long long pairing = p.lattice.pairing(k, *s.coords);
    if (pairing < 0) pairing = -pairing;
    if (s.square + pairing > 2 * s.genus - 2) return false;
  }
  if (p.simple_type && p.lattice.square(k) != 2 * p.e + 3 * p.sigma) return false;
  return true;
}

// All characteristic classes satisfying the adjunction inequality for every
// positive-genus constraint surface and, under simple type, the square
// condition.  Bounds are derived per coordinate and the box is scanned
// exhaustively; the output is sorted and closed under negation.
inline std::vector<IntRow> enumerate_basic_classes(const BasicClassProblem& p) {
  size_t n = p.lattice.rank();
  if (!p.lattice.symmetric())
    throw precondition_error("basic-class problem: gram matrix is not symmetric");
  auto cons = detail::adjunction_constraints(p);
  for (const auto& c : cons)
    if (c.bound < 0) return {};  // an impossible adjunction bound
  auto parity = detail::parity_constraints(p);
  detail::Box box = detail::derive_bounds(p, cons);
  for (size_t i = 0; i < n; ++i)
    if (!box.lo[i] || !box.hi[i])
      throw unbounded_error("no adjunction constraint bounds coefficient of '" +
                            p.lattice.basis[i] + "'");

  std::vector<IntRow> found;
  IntRow k(n, 0);
  auto complete_up_to = [&](size_t depth) {
    for (const auto& c : cons) {
      if (c.last_support + 1 != depth) continue;
      long long v = 0;
      for (size_t j = 0; j < depth; ++j) v += c.coeffs[j] * k[j];
      if (v < 0) v = -v;
      if (v > c.bound) return false;
    }
    for (const auto& c : parity) {
      if (c.last_support + 1 != depth) continue;
      long long v = 0;
      for (size_t j = 0; j < depth; ++j) v += c.coeffs[j] * k[j];
      if (((v - c.target) % 2 + 2) % 2 != 0) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == n) {
      if (p.simple_type && p.lattice.square(k) != 2 * p.e + 3 * p.sigma) return;
      found.push_back(k);
      return;
    }
    for (long long v = *box.lo[depth]; v <= *box.hi[depth]; ++v) {
      k[depth] = v;
      if (!complete_up_to(depth + 1)) continue;
      self(self, depth + 1);
    }
    k[depth] = 0;
  };
  rec(rec, 0);
  std::sort(found.begin(), found.end());

  for (const auto& c : found) {
    if (!std::binary_search(found.begin(), found.end(), negated(c)))
      throw error("internal: enumerated class set is not closed under negation");
    if (!verify_basic_class(p, c)) throw error("internal: enumerated class fails re-verification");
  }
  return found;
}

// ---------------------------------------------------------------------------

// Surgery product formula for the 1/n family: the value before surgery plus
// n times the finite orbit sum on the 0-surgery side.
inline long long mms_value(long long sw_at_k, const std::vector<long long>& orbit_values,
                           long long n) {
  long long total = 0;
  for (long long v : orbit_values) total += v;
  return sw_at_k + n * total;
}

// Blow-up formula: every class k splits into k+E and k-E with the same value.
// E must be a new orthogonal square -1 class; keys gain one coordinate at
// e_index.
inline SWFunction blowup_sw(const SWFunction& f, const IntersectionLattice& extended,
                            size_t e_index) {
  size_t n = extended.rank();
  if (e_index >= n) throw precondition_error("blowup_sw: e_index out of range");
  if (extended.gram[e_index][e_index] != -1)
    throw precondition_error("blowup_sw: the new class must have square -1");
  for (size_t j = 0; j < n; ++j)
    if (j != e_index && extended.gram[e_index][j] != 0)
      throw precondition_error("blowup_sw: the new class must be orthogonal to the old basis");
  SWFunction out;
  for (const auto& [k, v] : f.entries) {
    if (k.size() != n - 1) throw precondition_error("blowup_sw: key length mismatch");
    IntRow up;
    up.reserve(n);
    up.insert(up.end(), k.begin(), k.begin() + e_index);
    up.push_back(1);
    up.insert(up.end(), k.begin() + e_index, k.end());
    out.entries[up] = v;
    up[e_index] = -1;
    out.entries[up] = v;
  }
  return out;
}

// The restricted fiber-sum value used for the lattice-jump families: with
// both sides of simple type, a genus-two square-zero sum surface, and one
// distinguished class per side, the glued value is the product.
struct CanonicalSumHypotheses {
  bool both_simple_type = false;
  bool genus2_square_zero_sum_surface = false;
  bool one_basic_class_per_side = false;
};

inline long long canonical_sum_sw(long long value_a, long long value_b,
                                  const CanonicalSumHypotheses& h) {
  if (!h.both_simple_type || !h.genus2_square_zero_sum_surface || !h.one_basic_class_per_side)
    throw precondition_error("canonical_sum_sw: hypotheses not asserted");
  return value_a * value_b;
}

// ---------------------------------------------------------------------------

enum class MinimalityStatus { Minimal, NotExcluded };

struct MinimalityReport {
  MinimalityStatus status = MinimalityStatus::Minimal;
  std::vector<long long> difference_squares;  // sorted, one per unordered pair
};

inline std::string to_string(MinimalityStatus s) {
  return s == MinimalityStatus::Minimal ? "Minimal" : "NotExcluded";
}

// A pair of basic classes differing by a square -4 vector leaves room for an
// exceptional sphere; otherwise the blow-up pattern is excluded and the
// manifold is minimal.
inline MinimalityReport minimality_gap_check(const std::vector<IntRow>& classes,
                                             const IntersectionLattice& lattice) {
  std::vector<IntRow> sorted = classes;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& k : sorted)
    if (!std::binary_search(sorted.begin(), sorted.end(), negated(k)))
      throw precondition_error("minimality_gap_check: class set is not closed under negation");
  MinimalityReport out;
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      IntRow d(sorted[i].size());
      for (size_t t = 0; t < d.size(); ++t) d[t] = sorted[i][t] - sorted[j][t];
      long long sq = lattice.square(d);
      out.difference_squares.push_back(sq);
      if (sq == -4) out.status = MinimalityStatus::NotExcluded;
    }
  std::sort(out.difference_squares.begin(), out.difference_squares.end());
  out.difference_squares.erase(
      std::unique(out.difference_squares.begin(), out.difference_squares.end()),
      out.difference_squares.end());
  return out;
}

// ---------------------------------------------------------------------------

enum class FamilyStatus { InfiniteFamily, PairwiseDistinct, Inconclusive };

struct FamilyVerdict {
  FamilyStatus status = FamilyStatus::Inconclusive;
  std::string reason;
};

inline std::string to_string(FamilyStatus s) {
  switch (s) {
    case FamilyStatus::InfiniteFamily: return "InfiniteFamily";
    case FamilyStatus::PairwiseDistinct: return "PairwiseDistinct";
    default: return "Inconclusive";
  }
}

// Nontrivial invariants on the 0-surgery give an infinite family; a single
// basic class up to sign upgrades it to pairwise distinct.
inline FamilyVerdict fps_family(const SWFunction& sw_x0) {
  std::vector<IntRow> nonzero = basic_classes(sw_x0);
  if (nonzero.empty())
    return {FamilyStatus::Inconclusive, "the 0-surgery invariant vanishes"};
  std::vector<IntRow> orbits;
  for (const auto& k : nonzero) {
    IntRow canon = std::min(k, negated(k));
    orbits.push_back(canon);
  }
  std::sort(orbits.begin(), orbits.end());
  orbits.erase(std::unique(orbits.begin(), orbits.end()), orbits.end());
  if (orbits.size() == 1)
    return {FamilyStatus::PairwiseDistinct,
            "one basic class up to sign: every pair of members is distinct"};
  return {FamilyStatus::InfiniteFamily,
          std::to_string(orbits.size()) + " basic classes up to sign: infinitely many "
          "distinct members"};
}

}  // namespace fourfold
