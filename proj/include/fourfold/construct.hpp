#pragma once

// The construction calculus: blow-ups with proper transforms, symplectic
// resolution of surface unions, fiber sums with Seifert-Van Kampen group
// assembly, torus surgery on declared complements, the twist-knot surgery
// template, and internal connected sums of transverse surfaces.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fourfold/blocks.hpp"
#include "fourfold/manifold.hpp"
#include "fourfold/prover.hpp"

namespace fourfold {

// ---------------------------------------------------------------------------

// Declared homology data installed on a constructed manifold.  Lattices are
// declared and validated, not derived: the engine checks rank, signature and
// surface squares against the characteristic numbers.
struct DeclaredTopology {
  std::optional<IntersectionLattice> lattice;
  bool lattice_complete = false;
  std::vector<SurfaceClass> surfaces;
  bool has_data() const { return lattice.has_value() || !surfaces.empty(); }
};

inline void require_consistent(Manifold& m) {
  std::vector<Finding> findings = validate(m);
  if (!findings.empty()) {
    std::string msg = "inconsistent manifold '" + m.name + "':";
    for (const auto& f : findings) msg += " [" + f.code + "] " + f.message + ";";
    throw validation_error(msg);
  }
}

inline Manifold attach_surface(const Manifold& m, SurfaceClass s) {
  if (m.find_surface(s.label))
    throw precondition_error("surface label '" + s.label + "' already in use");
  Manifold out = m;
  out.surfaces.push_back(std::move(s));
  require_consistent(out);
  return out;
}

// ---------------------------------------------------------------------------

// Blow up once; every surface named in `meets` passes through the blown-up
// point and is replaced by its proper transform (square drops by one).
inline Manifold blow_up(const Manifold& m, const std::vector<std::string>& meets) {
  Manifold out = m;
  out.origin = "blow_up";
  for (const auto& label : meets) {
    const SurfaceClass* s = m.find_surface(label);
    if (!s) throw precondition_error("blow_up: unknown surface '" + label + "'");
    if (!s->coords)
      throw precondition_error("blow_up: surface '" + label + "' has no coordinates");
  }

  int count = 1;
  std::string elabel;
  do {
    elabel = "E" + std::to_string(count++);
  } while (out.lattice.index_of(elabel) || out.find_surface(elabel));

  out.e = m.e + 1;
  out.sigma = m.sigma - 1;
  size_t rank = out.lattice.rank();
  out.lattice.basis.push_back(elabel);
  for (auto& row : out.lattice.gram) row.push_back(0);
  out.lattice.gram.push_back(IntRow(rank + 1, 0));
  out.lattice.gram[rank][rank] = -1;

  for (auto& s : out.surfaces) {
    if (!s.coords) continue;
    s.coords->push_back(0);
    for (const auto& label : meets)
      if (s.label == label) {
        (*s.coords)[rank] = -1;
        s.square -= 1;
      }
  }
  SurfaceClass e;
  e.label = elabel;
  e.genus = 0;
  e.coords = IntRow(rank + 1, 0);
  (*e.coords)[rank] = 1;
  e.square = -1;
  e.flags = {SurfaceFlag::exceptional_sphere, SurfaceFlag::symplectic};
  out.surfaces.push_back(std::move(e));

  if (out.sw) {
    SWFunction lifted;
    for (const auto& [k, v] : out.sw->entries) {
      IntRow up = k;
      up.push_back(1);
      lifted.entries[up] = v;
      up[rank] = -1;
      lifted.entries[up] = v;
    }
    out.sw = std::move(lifted);
  }

  out.clear_flag(ManifoldFlag::minimal);
  require_consistent(out);
  return out;
}

inline Manifold blow_up(const Manifold& m, const std::vector<std::string>& meets, int times) {
  Manifold out = m;
  for (int i = 0; i < times; ++i) out = blow_up(out, meets);
  return out;
}

// ---------------------------------------------------------------------------

struct ResolutionPlan {
  std::vector<std::string> components;  // repeated labels mean parallel copies
  long long double_points = 0;
};

// Resolve the double points of a union of symplectic surfaces into a single
// embedded symplectic surface.  Loop images concatenate in component order
// unless an explicit list is declared.
inline SurfaceClass resolve_union(const Manifold& m, const ResolutionPlan& plan,
                                  const std::string& label,
                                  std::optional<std::vector<Word>> declared_images = std::nullopt) {
  if (plan.components.empty()) throw precondition_error("resolve_union: empty component list");
  long long ncomp = static_cast<long long>(plan.components.size());
  if (plan.double_points < ncomp - 1)
    throw precondition_error("resolve_union: " + std::to_string(plan.double_points) +
                             " double points cannot connect " + std::to_string(ncomp) +
                             " components");

  std::vector<const SurfaceClass*> comps;
  for (const auto& l : plan.components) {
    const SurfaceClass* s = m.find_surface(l);
    if (!s) throw precondition_error("resolve_union: unknown surface '" + l + "'");
    if (!s->has_flag(SurfaceFlag::symplectic))
      throw precondition_error("resolve_union: component '" + l + "' is not symplectic");
    if (!s->coords) throw precondition_error("resolve_union: component '" + l + "' has no coordinates");
    comps.push_back(s);
  }

  long long crossings = 0;
  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = i + 1; j < comps.size(); ++j)
      crossings += m.lattice.pairing(*comps[i]->coords, *comps[j]->coords);
  if (crossings != plan.double_points)
    throw precondition_error("resolve_union: pairwise intersections sum to " +
                             std::to_string(crossings) + ", not " +
                             std::to_string(plan.double_points));

  SurfaceClass out;
  out.label = label;
  out.genus = plan.double_points - ncomp + 1;
  for (const auto* c : comps) out.genus += c->genus;
  IntRow coords(m.lattice.rank(), 0);
  for (const auto* c : comps)
    for (size_t i = 0; i < coords.size(); ++i) coords[i] += (*c->coords)[i];
  out.square = m.lattice.square(coords);
  out.coords = std::move(coords);
  out.flags = {SurfaceFlag::symplectic};
  if (declared_images) {
    out.pi1_images = std::move(declared_images);
  } else {
    std::vector<Word> images;
    bool all = true;
    for (const auto* c : comps) {
      if (!c->pi1_images) {
        all = false;
        break;
      }
      images.insert(images.end(), c->pi1_images->begin(), c->pi1_images->end());
    }
    if (all) out.pi1_images = std::move(images);
  }
  if (out.pi1_images && static_cast<long long>(out.pi1_images->size()) != 2 * out.genus)
    throw validation_error("resolve_union: expected " + std::to_string(2 * out.genus) +
                           " loop images for '" + label + "'");
  return out;
}

// ---------------------------------------------------------------------------

struct GluingMap {
  // one word per surface loop, written in the second complement's generators
  std::vector<Word> assignments;
};

struct FiberSumSide {
  std::string surface;
  bool meridian_killed = false;
  std::string justification;  // geometric reason when the meridian dies
  std::optional<Presentation> complement;  // declared; defaults to pi1 of the piece
  std::optional<Word> meridian;            // in the complement's generators
};

namespace detail {

inline Presentation rename_presentation(const Presentation& p,
                                        const std::map<std::string, std::string>& map) {
  Presentation out;
  for (const auto& g : p.generators) {
    auto it = map.find(g);
    out.generators.push_back(it == map.end() ? g : it->second);
  }
  for (const auto& r : p.relators) {
    std::vector<Letter> ls;
    for (const auto& l : r.letters) {
      auto it = map.find(l.gen);
      ls.push_back({it == map.end() ? l.gen : it->second, l.exp});
    }
    out.relators.push_back(free_reduce(std::move(ls)));
  }
  return out;
}

inline Word rename_word(const Word& w, const std::map<std::string, std::string>& map) {
  std::vector<Letter> ls;
  for (const auto& l : w.letters) {
    auto it = map.find(l.gen);
    ls.push_back({it == map.end() ? l.gen : it->second, l.exp});
  }
  return free_reduce(std::move(ls));
}

}  // namespace detail

// Symplectic fiber sum of y and yp along genus-g square-zero surfaces.  The
// group is assembled by Seifert-Van Kampen from the declared complement
// presentations: surface loops are identified through phi, and meridians are
// either dead on one side or identified through a declared relator.
inline Manifold fiber_sum(const Manifold& y, const Manifold& yp, const FiberSumSide& side_y,
                          const FiberSumSide& side_yp, const GluingMap& phi,
                          const DeclaredTopology& declared, const std::string& name = "",
                          std::map<std::string, std::string> rename_yp = {}) {
  const SurfaceClass* sigma = y.find_surface(side_y.surface);
  const SurfaceClass* sigmap = yp.find_surface(side_yp.surface);
  if (!sigma) throw precondition_error("fiber_sum: unknown surface '" + side_y.surface + "'");
  if (!sigmap) throw precondition_error("fiber_sum: unknown surface '" + side_yp.surface + "'");
  if (sigma->genus != sigmap->genus)
    throw precondition_error("fiber_sum: genus mismatch (" + std::to_string(sigma->genus) +
                             " vs " + std::to_string(sigmap->genus) + ")");
  long long g = sigma->genus;
  if (g < 1) throw precondition_error("fiber_sum: the sum surface must have positive genus");
  if (sigma->square != 0 || sigmap->square != 0)
    throw precondition_error("fiber_sum: both surfaces must have square zero");
  if (static_cast<long long>(phi.assignments.size()) != 2 * g)
    throw precondition_error("fiber_sum: expected " + std::to_string(2 * g) +
                             " gluing assignments");
  if (!side_y.meridian_killed && !side_yp.meridian_killed &&
      !(side_y.meridian && side_yp.meridian))
    throw precondition_error(
        "fiber_sum: no side kills its meridian and no meridian relator was declared");

  Presentation py = side_y.complement.value_or(y.pi1);
  Presentation pyp = side_yp.complement.value_or(yp.pi1);
  check_presentation(py);
  check_presentation(pyp);

  // second-side generators colliding with the first side get primes
  for (const auto& gname : pyp.generators) {
    if (rename_yp.count(gname)) continue;
    std::string candidate = gname;
    auto taken = [&](const std::string& s) {
      if (py.has_generator(s)) return true;
      for (const auto& [_, v] : rename_yp)
        if (v == s) return true;
      return false;
    };
    while (taken(candidate)) candidate += "'";
    if (candidate != gname) rename_yp[gname] = candidate;
  }
  Presentation pyp_renamed = detail::rename_presentation(pyp, rename_yp);

  if (!sigma->pi1_images || static_cast<long long>(sigma->pi1_images->size()) != 2 * g)
    throw precondition_error("fiber_sum: surface '" + sigma->label +
                             "' does not carry its 2g loop images");
  for (const auto& w : *sigma->pi1_images)
    for (const auto& l : w.letters)
      if (!py.has_generator(l.gen))
        throw precondition_error("fiber_sum: loop image of '" + sigma->label +
                                 "' leaves the declared complement");
  for (const auto& w : phi.assignments)
    for (const auto& l : w.letters)
      if (!pyp_renamed.has_generator(l.gen))
        throw precondition_error("fiber_sum: gluing word '" + to_string(w) +
                                 "' uses generators outside the second complement");

  Manifold out;
  out.origin = "fiber_sum";
  out.name = name.empty() ? y.name + "#" + yp.name : name;
  out.e = y.e + yp.e + 4 * g - 4;
  out.sigma = y.sigma + yp.sigma;

  out.pi1.generators = py.generators;
  out.pi1.generators.insert(out.pi1.generators.end(), pyp_renamed.generators.begin(),
                            pyp_renamed.generators.end());
  check_presentation(Presentation{out.pi1.generators, {}});
  out.pi1.relators = py.relators;
  out.pi1.relators.insert(out.pi1.relators.end(), pyp_renamed.relators.begin(),
                          pyp_renamed.relators.end());
  for (long long i = 0; i < 2 * g; ++i) {
    Word rel = concat((*sigma->pi1_images)[i], inverse(phi.assignments[i]));
    if (!rel.empty()) out.pi1.relators.push_back(std::move(rel));
  }
  // meridian identification: the boundary circle reverses orientation
  std::optional<Word> mu_y = side_y.meridian;
  std::optional<Word> mu_yp;
  if (side_yp.meridian) mu_yp = detail::rename_word(*side_yp.meridian, rename_yp);
  if (!side_y.meridian_killed && !side_yp.meridian_killed) {
    Word rel = concat(*mu_y, *mu_yp);
    if (!rel.empty()) out.pi1.relators.push_back(std::move(rel));
  } else {
    if (side_y.meridian_killed && mu_yp && !mu_yp->empty()) out.pi1.relators.push_back(*mu_yp);
    if (side_yp.meridian_killed && mu_y && !mu_y->empty()) out.pi1.relators.push_back(*mu_y);
  }

  out.b1 = abelianization(out.pi1).free_rank;
  if (declared.lattice) out.lattice = *declared.lattice;
  out.lattice_complete = declared.lattice_complete;
  out.surfaces = declared.surfaces;
  if (y.has_flag(ManifoldFlag::symplectic) && yp.has_flag(ManifoldFlag::symplectic))
    out.set_flag(ManifoldFlag::symplectic);
  update_residual_finiteness(out);
  require_consistent(out);
  return out;
}

// ---------------------------------------------------------------------------

enum class Framing { lagrangian, zero_framing };

struct SurgerySpec {
  std::string torus_label;
  Word lambda_pushoff;  // S^1_lambda in the complement presentation
  Word meridian;        // mu in the complement presentation
  long long p = 0;
  long long q = 0;
  Framing framing = Framing::lagrangian;
  bool torus_is_lagrangian = false;  // declared when no record carries the flag
  Presentation complement;           // declared complement presentation
  std::string core_label;            // record the nullhomologous core torus under this label
};

// p/q surgery on a square-zero torus: the characteristic numbers are
// untouched and the group gains the relator mu^p * lambda^q.  The Luttinger
// case (|p| = 1, Lagrangian framing, Lagrangian torus) preserves the
// symplectic flag; everything else clears it.
inline Manifold torus_surgery(const Manifold& m, const SurgerySpec& spec,
                              const DeclaredTopology& declared = {}) {
  if (spec.p == 0 && spec.q == 0)
    throw precondition_error("torus_surgery: p and q cannot both be zero");
  check_presentation(spec.complement);
  for (const Word* w : {&spec.lambda_pushoff, &spec.meridian})
    for (const auto& l : w->letters)
      if (!spec.complement.has_generator(l.gen))
        throw precondition_error("torus_surgery: surgery word uses generator '" + l.gen +
                                 "' outside the complement presentation");

  bool lagrangian_torus = spec.torus_is_lagrangian;
  if (const SurfaceClass* t = m.find_surface(spec.torus_label)) {
    if (t->genus != 1)
      throw precondition_error("torus_surgery: '" + spec.torus_label + "' is not a torus");
    lagrangian_torus = lagrangian_torus || t->has_flag(SurfaceFlag::lagrangian);
  }
  bool luttinger = spec.framing == Framing::lagrangian && (spec.p == 1 || spec.p == -1);
  if (luttinger && !lagrangian_torus)
    throw precondition_error("torus_surgery: Luttinger surgery requires a Lagrangian torus");

  Manifold out;
  out.origin = "torus_surgery";
  out.name = m.name + "_surg(" + spec.torus_label + "," + std::to_string(spec.p) + "/" +
             std::to_string(spec.q) + ")";
  out.e = m.e;
  out.sigma = m.sigma;
  out.pi1 = spec.complement;
  Word rel = concat(power(spec.meridian, spec.p), power(spec.lambda_pushoff, spec.q));
  if (!rel.empty()) out.pi1.relators.push_back(std::move(rel));
  out.b1 = abelianization(out.pi1).free_rank;

  if (declared.has_data()) {
    if (declared.lattice) out.lattice = *declared.lattice;
    out.lattice_complete = declared.lattice_complete;
    out.surfaces = declared.surfaces;
  } else {
    out.lattice = m.lattice;
    out.lattice_complete = false;  // surgery can change H_2; rank is no longer certified
    for (const auto& s : m.surfaces)
      if (s.label != spec.torus_label) out.surfaces.push_back(s);
    if (!spec.core_label.empty()) {
      SurfaceClass core;
      core.label = spec.core_label;
      core.genus = 1;
      core.coords = IntRow(out.lattice.rank(), 0);
      core.square = 0;
      core.flags = {SurfaceFlag::core_torus, SurfaceFlag::nullhomologous};
      out.surfaces.push_back(std::move(core));
    }
  }

  if (m.has_flag(ManifoldFlag::symplectic) && luttinger && lagrangian_torus)
    out.set_flag(ManifoldFlag::symplectic);
  update_residual_finiteness(out);
  require_consistent(out);
  return out;
}

// ---------------------------------------------------------------------------

// The two-surgery template on the four-torus: a (1,-1) Luttinger surgery on
// the a-direction Lagrangian torus followed by a (-n,1) surgery on the
// b-direction one.  The result is the circle-times-(0-surgery on the n-twist
// knot) bundle piece used throughout the constructions.
inline Manifold t4_twist_template(long long n) {
  if (n < 1) throw precondition_error("t4_twist_template: n must be at least 1");
  Manifold t4 = product_block(1, 1);

  Presentation double_complement = make_presentation(
      {"a", "b", "c", "d"}, {"[a,b]", "[c,a]", "[c,b]", "[c,d]"});

  SurgerySpec s1;
  s1.torus_label = "axc";
  s1.lambda_pushoff = parse_word("d*a*d^-1");
  s1.meridian = parse_word("[d,b^-1]");
  s1.p = 1;
  s1.q = -1;
  s1.framing = Framing::lagrangian;
  s1.complement = double_complement;
  Manifold step1 = torus_surgery(t4, s1);

  SurgerySpec s2;
  s2.torus_label = "bxc";
  s2.lambda_pushoff = parse_word("b");
  s2.meridian = parse_word("[a^-1,d]");
  s2.p = -n;
  s2.q = 1;
  s2.framing = Framing::lagrangian;
  s2.complement = step1.pi1;

  DeclaredTopology declared;
  IntersectionLattice fs;
  fs.basis = {"F", "S"};
  fs.gram = {{0, 1}, {1, 0}};
  declared.lattice = fs;
  declared.lattice_complete = true;
  std::vector<SurfaceFlag> torus_flags =
      n == 1 ? std::vector<SurfaceFlag>{SurfaceFlag::symplectic} : std::vector<SurfaceFlag>{};
  SurfaceClass fiber{"F", 1, IntRow{1, 0}, 0, torus_flags,
                     std::vector<Word>{parse_word("a"), parse_word("b")}, ""};
  SurfaceClass section{"S", 1, IntRow{0, 1}, 0, torus_flags,
                       std::vector<Word>{parse_word("c"), parse_word("d")}, ""};
  declared.surfaces = {fiber, section};

  Manifold out = torus_surgery(step1, s2, declared);
  out.origin = "t4_twist_template";
  out.name = "S1xMK" + std::to_string(n);
  return out;
}

// ---------------------------------------------------------------------------

// Internal connected sum of a Y-side surface and a Y'-side surface inside a
// fiber sum, each meeting the sum surface once.  Genus and square add; the
// declared class must pair once with the sum surface.
inline SurfaceClass internal_sum(const Manifold& m, const std::string& a_label,
                                 const std::string& b_label, const std::string& sum_label,
                                 const std::string& out_label, IntRow coords) {
  const SurfaceClass* a = m.find_surface(a_label);
  const SurfaceClass* b = m.find_surface(b_label);
  const SurfaceClass* sum = m.find_surface(sum_label);
  if (!a || !b || !sum) throw precondition_error("internal_sum: unknown surface label");
  if (a->side != "Y" || b->side != "Y'")
    throw precondition_error("internal_sum: pieces must come from opposite sides of the sum");
  if (!sum->coords) throw precondition_error("internal_sum: sum surface has no coordinates");
  if (coords.size() != m.lattice.rank())
    throw precondition_error("internal_sum: coordinate length mismatch");

  SurfaceClass out;
  out.label = out_label;
  out.genus = a->genus + b->genus;
  out.square = a->square + b->square;
  out.coords = std::move(coords);
  if (a->has_flag(SurfaceFlag::symplectic) && b->has_flag(SurfaceFlag::symplectic))
    out.flags.push_back(SurfaceFlag::symplectic);
  if (m.lattice.square(*out.coords) != out.square)
    throw validation_error("internal_sum: declared coordinates give square " +
                           std::to_string(m.lattice.square(*out.coords)) + ", expected " +
                           std::to_string(out.square));
  if (m.lattice.pairing(*out.coords, *sum->coords) != 1)
    throw validation_error("internal_sum: the sum must meet '" + sum_label + "' exactly once");
  return out;
}

}  // namespace fourfold
