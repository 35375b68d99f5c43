#pragma once

// Building blocks: products of two Riemann surfaces with their product
// symplectic structure, standard fundamental group presentation, and the
// standard lattice of factor classes plus mixed torus classes.

#include <string>
#include <vector>

#include "fourfold/manifold.hpp"

namespace fourfold {

namespace detail {

inline std::vector<std::string> factor_generators(char first, char second, long long genus,
                                                  const std::string& suffix) {
  std::vector<std::string> out;
  if (genus == 1) {
    out.push_back(std::string(1, first) + suffix);
    out.push_back(std::string(1, second) + suffix);
  } else {
    for (long long i = 1; i <= genus; ++i) {
      out.push_back(std::string(1, first) + std::to_string(i) + suffix);
      out.push_back(std::string(1, second) + std::to_string(i) + suffix);
    }
  }
  return out;
}

// product of [a_i, b_i] over the factor's generator pairs
inline Word surface_relator(const std::vector<std::string>& gens) {
  Word w;
  for (size_t i = 0; i + 1 < gens.size(); i += 2)
    w = concat(w, commutator(Word{{{gens[i], 1}}}, Word{{{gens[i + 1], 1}}}));
  return w;
}

// True when every pair of generators has a commutator relator, which makes
// the group visibly abelian.
inline bool visibly_abelian(const Presentation& p) {
  for (size_t i = 0; i < p.generators.size(); ++i)
    for (size_t j = i + 1; j < p.generators.size(); ++j) {
      Word c = commutator(Word{{{p.generators[i], 1}}}, Word{{{p.generators[j], 1}}});
      bool found = false;
      for (const auto& r : p.relators)
        if (same_relator(r, c)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

}  // namespace detail

// Residual finiteness is set automatically only for certified-trivial or
// visibly abelian fundamental groups; anything else needs a declaration.
inline void update_residual_finiteness(Manifold& m) {
  if (m.has_flag(ManifoldFlag::simply_connected) || detail::visibly_abelian(m.pi1))
    m.set_flag(ManifoldFlag::residually_finite_pi1);
}

// Sigma_g x Sigma_h with its product symplectic form.  The two factor
// classes are recorded as surfaces; for positive-genus factors the 4gh
// mixed torus classes come in hyperbolic pairs and are Lagrangian.
inline Manifold product_block(long long g, long long h, const std::string& suffix = "") {
  if (g < 0 || h < 0) throw precondition_error("product_block: genus must be nonnegative");
  if (g == 0 && h == 0)
    throw precondition_error("product_block: the sphere-times-sphere block is not used");

  Manifold m;
  m.origin = "product_block";
  auto factor_name = [](long long genus) {
    if (genus == 0) return std::string("S2");
    if (genus == 1) return std::string("T2");
    return "Sigma" + std::to_string(genus);
  };
  m.name = (g == 1 && h == 1) ? "T4" + suffix : factor_name(g) + "x" + factor_name(h) + suffix;
  m.e = (2 - 2 * g) * (2 - 2 * h);
  m.sigma = 0;
  m.b1 = 2 * g + 2 * h;

  std::vector<std::string> gens1, gens2;
  if (g > 0 && h > 0) {
    gens1 = detail::factor_generators('a', 'b', g, suffix);
    gens2 = detail::factor_generators('c', 'd', h, suffix);
  } else if (g > 0) {
    gens1 = g == 1 ? detail::factor_generators('x', 'y', 1, suffix)
                   : detail::factor_generators('a', 'b', g, suffix);
  } else {
    gens2 = h == 1 ? detail::factor_generators('x', 'y', 1, suffix)
                   : detail::factor_generators('a', 'b', h, suffix);
  }

  m.pi1.generators = gens1;
  m.pi1.generators.insert(m.pi1.generators.end(), gens2.begin(), gens2.end());
  Word r1 = detail::surface_relator(gens1);
  Word r2 = detail::surface_relator(gens2);
  if (!r1.empty()) m.pi1.relators.push_back(r1);
  if (!r2.empty()) m.pi1.relators.push_back(r2);
  for (const auto& u : gens1)
    for (const auto& v : gens2)
      m.pi1.relators.push_back(commutator(Word{{{u, 1}}}, Word{{{v, 1}}}));

  // lattice: the two factor classes form one hyperbolic pair; every mixed
  // torus a_i x c_j pairs with b_i x d_j, and a_i x d_j with b_i x c_j
  bool t4 = (g == 1 && h == 1);
  std::string f1_label = t4 ? gens1[0] + "x" + gens1[1] : "F1" + suffix;
  std::string f2_label = t4 ? gens2[0] + "x" + gens2[1] : "F2" + suffix;
  m.lattice.basis = {f1_label, f2_label};
  struct MixedTorus {
    std::string label;
    std::string loop1, loop2;
  };
  std::vector<MixedTorus> mixed;
  if (g > 0 && h > 0) {
    for (long long i = 0; i < g; ++i)
      for (long long j = 0; j < h; ++j) {
        std::string ai = gens1[2 * i], bi = gens1[2 * i + 1];
        std::string cj = gens2[2 * j], dj = gens2[2 * j + 1];
        mixed.push_back({ai + "x" + cj, ai, cj});
        mixed.push_back({bi + "x" + dj, bi, dj});
        mixed.push_back({ai + "x" + dj, ai, dj});
        mixed.push_back({bi + "x" + cj, bi, cj});
      }
  }
  for (const auto& t : mixed) m.lattice.basis.push_back(t.label);
  size_t rank = m.lattice.basis.size();
  m.lattice.gram.assign(rank, IntRow(rank, 0));
  m.lattice.gram[0][1] = m.lattice.gram[1][0] = 1;
  for (size_t k = 0; k + 1 < mixed.size(); k += 2) {
    m.lattice.gram[2 + k][2 + k + 1] = 1;
    m.lattice.gram[2 + k + 1][2 + k] = 1;
  }
  m.lattice_complete = true;

  auto basis_vector = [&](size_t i) {
    IntRow v(rank, 0);
    v[i] = 1;
    return v;
  };
  auto loop_images = [&](const std::vector<std::string>& gens) {
    std::vector<Word> out;
    for (const auto& gname : gens) out.push_back(Word{{{gname, 1}}});
    return out;
  };
  SurfaceClass f1{f1_label, g, basis_vector(0), 0, {SurfaceFlag::symplectic}, loop_images(gens1), ""};
  SurfaceClass f2{f2_label, h, basis_vector(1), 0, {SurfaceFlag::symplectic}, loop_images(gens2), ""};
  m.surfaces = {f1, f2};
  for (size_t k = 0; k < mixed.size(); ++k) {
    SurfaceClass t{mixed[k].label, 1, basis_vector(2 + k), 0, {SurfaceFlag::lagrangian},
                   loop_images({mixed[k].loop1, mixed[k].loop2}), ""};
    m.surfaces.push_back(std::move(t));
  }

  m.set_flag(ManifoldFlag::symplectic);
  m.set_flag(ManifoldFlag::minimal);
  if (g == 0 || h == 0) m.set_flag(ManifoldFlag::sphere_bundle_over_surface);
  update_residual_finiteness(m);
  return m;
}

}  // namespace fourfold
