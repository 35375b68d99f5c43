#pragma once

// Rule-based verdicts from the cited classification and minimality theorems.
// Hypotheses arrive as named flags with provenance strings; the rules here
// only combine them, they never re-prove the theorems.

#include <map>
#include <sstream>
#include <string>

#include "fourfold/manifold.hpp"
#include "fourfold/prover.hpp"

namespace fourfold {

// --- homeomorphism typing ----------------------------------------------------

struct HomeoType {
  long long b2plus = 0;
  long long b2minus = 0;
  std::string parity;  // "odd" is the only branch handled
  std::string descriptor;

  friend bool operator==(const HomeoType&, const HomeoType&) = default;
};

// Simply connected (certified) + odd indefinite declared form + (e, sigma)
// pins the homeomorphism type m CP^2 # n CP^2bar.
inline HomeoType freedman_type(const Manifold& m, const Effort& effort = {}) {
  ProofVerdict v = prove_trivial(m.pi1, effort);
  if (!v.proven())
    throw precondition_error("freedman_type: fundamental group not certified trivial (" +
                             to_string(v.status) + ": " + v.witness + ")");
  if (!m.lattice_complete)
    throw precondition_error("freedman_type: the intersection lattice is not declared complete");
  if (!m.lattice.odd())
    throw precondition_error("freedman_type: even forms are outside this classification rule");
  BettiNumbers b = betti(m.e, m.sigma, 0);
  if (b.b2plus < 1 || b.b2minus < 1)
    throw precondition_error("freedman_type: the form is definite");
  HomeoType out;
  out.b2plus = b.b2plus;
  out.b2minus = b.b2minus;
  out.parity = "odd";
  std::ostringstream os;
  os << b.b2plus << " CP^2 # " << b.b2minus << " CP^2bar";
  out.descriptor = os.str();
  return out;
}

// --- hypothesis bundles -------------------------------------------------------

struct Hypothesis {
  bool value = false;
  std::string provenance;
};

struct Hypotheses {
  std::map<std::string, Hypothesis> items;

  bool holds(const std::string& name) const {
    auto it = items.find(name);
    return it != items.end() && it->second.value;
  }

  void check_provenance() const {
    for (const auto& [name, h] : items)
      if (h.value && h.provenance.empty())
        throw precondition_error("hypothesis '" + name + "' asserted without provenance");
  }
};

// --- minimality ---------------------------------------------------------------

enum class Minimality { Minimal, NotMinimal, Undetermined };

inline std::string to_string(Minimality m) {
  switch (m) {
    case Minimality::Minimal: return "Minimal";
    case Minimality::NotMinimal: return "NotMinimal";
    default: return "Undetermined";
  }
}

// Case analysis for fiber sums: a square -1 symplectic sphere in a complement
// kills minimality; a sphere-bundle summand with the sum surface a section
// delegates to the other summand; in all other cases the sum is minimal.
inline Minimality usher_minimality(const Manifold& m, const Hypotheses& h) {
  if (m.origin != "fiber_sum")
    throw precondition_error("usher_minimality applies to fiber sums only");
  h.check_provenance();
  bool case_i = h.holds("minus1_sphere_in_complement");
  bool case_ii = h.holds("sphere_bundle_with_sum_surface_section");
  if (case_i && case_ii)
    throw precondition_error("usher_minimality: contradictory hypothesis flags");
  if (case_i) return Minimality::NotMinimal;
  if (case_ii)
    return h.holds("other_summand_minimal") ? Minimality::Minimal : Minimality::NotMinimal;
  return Minimality::Minimal;
}

// --- irreducibility -----------------------------------------------------------

enum class Irreducibility { Irreducible, Undetermined };

inline std::string to_string(Irreducibility i) {
  return i == Irreducibility::Irreducible ? "Irreducible" : "Undetermined";
}

// Minimal + symplectic + residually finite fundamental group.  A certified
// trivial group counts as residually finite.
inline Irreducibility hk_irreducible(const Manifold& m) {
  bool rf = m.has_flag(ManifoldFlag::residually_finite_pi1) ||
            m.has_flag(ManifoldFlag::simply_connected);
  if (m.has_flag(ManifoldFlag::minimal) && m.has_flag(ManifoldFlag::symplectic) && rf)
    return Irreducibility::Irreducible;
  return Irreducibility::Undetermined;
}

// --- scheme conditions --------------------------------------------------------

struct SchemeCheck {
  bool characteristic_numbers_match = false;  // condition I
  bool lagrangian_rank_sufficient = false;    // condition II
  long long s = 0;                            // 2*b1 of the intermediate manifold
  long long b2_gap = 0;                       // b2(X') - b2(target)
  bool gap_consistent = false;                // s == b2_gap

  bool all_pass() const {
    return characteristic_numbers_match && lagrangian_rank_sufficient && gap_consistent;
  }
};

// Condition I: the intermediate manifold already has the target's Euler
// characteristic and signature.  Condition II: it carries at least s = 2*b1
// homologically essential Lagrangian tori, the rank that the Luttinger
// surgeries must consume.
inline SchemeCheck reverse_engineering_check(const Manifold& xp, long long target_e,
                                             long long target_sigma, long long lagrangian_rank) {
  SchemeCheck out;
  out.characteristic_numbers_match = xp.e == target_e && xp.sigma == target_sigma;
  out.s = 2 * xp.b1;
  long long b2_xp = xp.e - 2 + 2 * xp.b1;
  long long b2_target = target_e - 2;  // the target is simply connected
  out.b2_gap = b2_xp - b2_target;
  out.gap_consistent = out.s == out.b2_gap;
  out.lagrangian_rank_sufficient = lagrangian_rank >= out.s;
  return out;
}

// --- certification helper -----------------------------------------------------

// Runs the triviality prover and, on success, marks the snapshot simply
// connected (hence residually finite).  Fails loudly otherwise.
inline Manifold certify_simply_connected(const Manifold& m, const Effort& effort = {}) {
  ProofVerdict v = prove_trivial(m.pi1, effort);
  if (!v.proven())
    throw validation_error("certify_simply_connected('" + m.name + "'): " + to_string(v.status) +
                           " (" + v.witness + ")");
  Manifold out = m;
  out.b1 = 0;
  out.set_flag(ManifoldFlag::simply_connected);
  out.set_flag(ManifoldFlag::residually_finite_pi1);
  return out;
}

}  // namespace fourfold
