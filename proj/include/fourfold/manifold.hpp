#pragma once

// The manifold snapshot: characteristic numbers, fundamental group data,
// intersection lattice, embedded surface records, hypothesis flags, and an
// optional Seiberg-Witten function.  One snapshot per construction step.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourfold/abelian.hpp"
#include "fourfold/common.hpp"
#include "fourfold/lattice.hpp"
#include "fourfold/presentation.hpp"
#include "fourfold/surface.hpp"
#include "fourfold/swfun.hpp"

namespace fourfold {

enum class ManifoldFlag {
  symplectic,
  minimal,
  simply_connected,
  residually_finite_pi1,
  sphere_bundle_over_surface,
};

inline std::string to_string(ManifoldFlag f) {
  switch (f) {
    case ManifoldFlag::symplectic: return "symplectic";
    case ManifoldFlag::minimal: return "minimal";
    case ManifoldFlag::simply_connected: return "simply_connected";
    case ManifoldFlag::residually_finite_pi1: return "residually_finite_pi1";
    case ManifoldFlag::sphere_bundle_over_surface: return "sphere_bundle_over_surface";
  }
  return "?";
}

inline ManifoldFlag manifold_flag_from_string(const std::string& s) {
  if (s == "symplectic") return ManifoldFlag::symplectic;
  if (s == "minimal") return ManifoldFlag::minimal;
  if (s == "simply_connected") return ManifoldFlag::simply_connected;
  if (s == "residually_finite_pi1") return ManifoldFlag::residually_finite_pi1;
  if (s == "sphere_bundle_over_surface") return ManifoldFlag::sphere_bundle_over_surface;
  throw parse_error("unknown manifold flag '" + s + "'");
}

struct Manifold {
  std::string name;
  long long e = 0;      // Euler characteristic
  long long sigma = 0;  // signature
  long long b1 = 0;
  Presentation pi1;
  IntersectionLattice lattice;
  bool lattice_complete = false;  // does the lattice span all of H_2?
  std::vector<SurfaceClass> surfaces;
  std::vector<ManifoldFlag> flags;
  std::optional<SWFunction> sw;
  std::string origin;  // operation that produced this snapshot

  bool has_flag(ManifoldFlag f) const {
    for (auto g : flags)
      if (g == f) return true;
    return false;
  }

  void set_flag(ManifoldFlag f) {
    if (!has_flag(f)) flags.push_back(f);
  }

  void clear_flag(ManifoldFlag f) {
    std::erase(flags, f);
  }

  const SurfaceClass* find_surface(const std::string& label) const {
    for (const auto& s : surfaces)
      if (s.label == label) return &s;
    return nullptr;
  }

  SurfaceClass* find_surface(const std::string& label) {
    for (auto& s : surfaces)
      if (s.label == label) return &s;
    return nullptr;
  }
};

struct BettiNumbers {
  long long b1 = 0;
  long long b2 = 0;
  long long b2plus = 0;
  long long b2minus = 0;

  friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

inline BettiNumbers betti(long long e, long long sigma, long long b1) {
  long long b2 = e - 2 + 2 * b1;
  if ((b2 + sigma) % 2 != 0 || (b2 - sigma) % 2 != 0)
    throw validation_error("inconsistent manifold: b2 and sigma have different parity");
  BettiNumbers out{b1, b2, (b2 + sigma) / 2, (b2 - sigma) / 2};
  if (out.b2plus < 0 || out.b2minus < 0)
    throw validation_error("inconsistent manifold: negative b2+ or b2-");
  return out;
}

inline BettiNumbers betti(const Manifold& m) { return betti(m.e, m.sigma, m.b1); }

// Consistency findings are data, not errors; an empty list means consistent.
struct Finding {
  std::string code;
  std::string message;
  friend bool operator==(const Finding&, const Finding&) = default;
};

inline std::vector<Finding> validate(const Manifold& m) {
  std::vector<Finding> out;
  auto add = [&](std::string code, std::string msg) {
    out.push_back({std::move(code), std::move(msg)});
  };

  long long b2 = m.e - 2 + 2 * m.b1;
  if ((b2 + m.sigma) % 2 != 0)
    add("betti-parity", "b2 and sigma have different parity");
  else if ((b2 + m.sigma) / 2 < 0 || (b2 - m.sigma) / 2 < 0)
    add("betti-negative", "negative b2+ or b2-");

  try {
    check_presentation(m.pi1);
  } catch (const error& err) {
    add("pi1-malformed", err.what());
  }

  if (!m.lattice.symmetric()) {
    add("gram-asymmetric", "gram matrix is not symmetric");
    return out;
  }

  if (m.lattice_complete) {
    if (static_cast<long long>(m.lattice.rank()) != b2)
      add("rank-mismatch", "lattice rank " + std::to_string(m.lattice.rank()) +
                               " does not equal b2 = " + std::to_string(b2));
    SignatureCounts sc = signature_counts(m.lattice);
    if (sc.signature() != m.sigma)
      add("signature-mismatch", "lattice signature " + std::to_string(sc.signature()) +
                                    " does not equal sigma = " + std::to_string(m.sigma));
    if (sc.zero != 0) add("degenerate-lattice", "gram matrix is degenerate");
  }

  for (const auto& s : m.surfaces) {
    if (s.genus < 0) add("negative-genus", s.label + ": negative genus");
    if (s.coords) {
      if (s.coords->size() != m.lattice.rank()) {
        add("coords-size", s.label + ": coordinate length does not match lattice rank");
        continue;
      }
      long long q = m.lattice.square(*s.coords);
      if (q != s.square)
        add("square-mismatch", s.label + ": declared square " + std::to_string(s.square) +
                                   " but coords give " + std::to_string(q));
    }
    if (s.has_flag(SurfaceFlag::exceptional_sphere) && (s.genus != 0 || s.square != -1))
      add("exceptional-sphere", s.label + ": exceptional spheres have genus 0 and square -1");
    if (s.has_flag(SurfaceFlag::nullhomologous) && s.coords) {
      for (long long c : *s.coords)
        if (c != 0) {
          add("nullhomologous", s.label + ": nullhomologous surface with nonzero coords");
          break;
        }
    }
    if (s.pi1_images) {
      if (static_cast<long long>(s.pi1_images->size()) != 2 * s.genus)
        add("loop-count", s.label + ": expected " + std::to_string(2 * s.genus) + " loop images");
      for (const auto& w : *s.pi1_images)
        for (const auto& l : w.letters)
          if (!m.pi1.has_generator(l.gen))
            add("loop-generators", s.label + ": loop image uses undeclared generator '" + l.gen + "'");
    }
  }

  if (m.has_flag(ManifoldFlag::simply_connected)) {
    if (m.b1 != 0) add("simply-connected-b1", "simply connected but b1 != 0");
    if (!abelianization(m.pi1).trivial())
      add("simply-connected-h1", "simply connected but the abelianization is nontrivial");
  }

  if (m.sw) {
    for (const auto& [k, v] : m.sw->entries) {
      if (!is_characteristic(m.lattice, k))
        add("sw-characteristic", "key " + format_class(m.lattice, k) + " is not characteristic");
      if ((m.e + m.sigma) % 4 == 0) {
        int sign = conjugation_sign(m.e, m.sigma);
        if (m.sw->value(negated(k)) != sign * v)
          add("sw-conjugation", "conjugation symmetry fails at " + format_class(m.lattice, k));
      }
    }
  }

  return out;
}

inline void to_json(nlohmann::json& j, const Manifold& m) {
  j = nlohmann::json::object();
  j["name"] = m.name;
  j["e"] = m.e;
  j["sigma"] = m.sigma;
  j["b1"] = m.b1;
  j["pi1"] = m.pi1;
  j["lattice"] = m.lattice;
  j["lattice_complete"] = m.lattice_complete;
  j["surfaces"] = m.surfaces;
  auto fl = nlohmann::json::array();
  for (auto f : m.flags) fl.push_back(to_string(f));
  j["flags"] = fl;
  if (m.sw) j["sw"] = *m.sw;
  if (!m.origin.empty()) j["origin"] = m.origin;
}

inline void from_json(const nlohmann::json& j, Manifold& m) {
  m = {};
  m.name = j.value("name", std::string{});
  m.e = j.at("e").get<long long>();
  m.sigma = j.at("sigma").get<long long>();
  m.b1 = j.value("b1", 0LL);
  if (j.contains("pi1")) m.pi1 = j.at("pi1").get<Presentation>();
  if (j.contains("lattice")) m.lattice = j.at("lattice").get<IntersectionLattice>();
  m.lattice_complete = j.value("lattice_complete", false);
  if (j.contains("surfaces"))
    m.surfaces = j.at("surfaces").get<std::vector<SurfaceClass>>();
  if (j.contains("flags"))
    for (const auto& f : j.at("flags")) m.flags.push_back(manifold_flag_from_string(f.get<std::string>()));
  if (j.contains("sw")) m.sw = j.at("sw").get<SWFunction>();
  m.origin = j.value("origin", std::string{});
}

}  // namespace fourfold
