#pragma once

// Abelianization of a finitely presented group, computed from the Smith
// normal form of the relator exponent-sum matrix.

#include <string>
#include <vector>

#include "fourfold/presentation.hpp"
#include "fourfold/smith.hpp"

namespace fourfold {

struct AbelianInvariants {
  long long free_rank = 0;
  std::vector<long long> torsion;  // each >= 2, each dividing the next

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

inline AbelianInvariants abelianization(const Presentation& p) {
  AbelianInvariants inv;
  if (p.generators.empty()) return inv;
  SmithForm s = smith_normal_form(relator_matrix(p));
  inv.free_rank = static_cast<long long>(p.generators.size()) - static_cast<long long>(s.rank);
  for (long long d : s.divisors)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

inline std::string to_string(const AbelianInvariants& inv) {
  if (inv.trivial()) return "0";
  std::string s;
  if (inv.free_rank == 1) s = "Z";
  else if (inv.free_rank > 1) s = "Z^" + std::to_string(inv.free_rank);
  for (long long d : inv.torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(d);
  }
  return s;
}

// Accepts "0", "1", "Z", "Z^k" (free abelian shorthands used in scripts).
inline bool matches_abelian(const AbelianInvariants& inv, const std::string& desc) {
  if (desc == "0" || desc == "1" || desc == "trivial") return inv.trivial();
  if (desc == "Z") return inv.free_rank == 1 && inv.torsion.empty();
  if (desc.rfind("Z^", 0) == 0)
    return inv.torsion.empty() && inv.free_rank == std::stoll(desc.substr(2));
  return to_string(inv) == desc;
}

}  // namespace fourfold
