#pragma once

// Embedded surface records: genus, homology coordinates, self-intersection,
// geometric flags, and the images of the surface's loops in the ambient
// fundamental group.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourfold/common.hpp"
#include "fourfold/smith.hpp"
#include "fourfold/word.hpp"

namespace fourfold {

enum class SurfaceFlag {
  symplectic,
  lagrangian,
  exceptional_sphere,
  core_torus,
  nullhomologous,
};

inline std::string to_string(SurfaceFlag f) {
  switch (f) {
    case SurfaceFlag::symplectic: return "symplectic";
    case SurfaceFlag::lagrangian: return "lagrangian";
    case SurfaceFlag::exceptional_sphere: return "exceptional_sphere";
    case SurfaceFlag::core_torus: return "core_torus";
    case SurfaceFlag::nullhomologous: return "nullhomologous";
  }
  return "?";
}

inline SurfaceFlag surface_flag_from_string(const std::string& s) {
  if (s == "symplectic") return SurfaceFlag::symplectic;
  if (s == "lagrangian") return SurfaceFlag::lagrangian;
  if (s == "exceptional_sphere") return SurfaceFlag::exceptional_sphere;
  if (s == "core_torus") return SurfaceFlag::core_torus;
  if (s == "nullhomologous") return SurfaceFlag::nullhomologous;
  throw parse_error("unknown surface flag '" + s + "'");
}

struct SurfaceClass {
  std::string label;
  long long genus = 0;
  std::optional<IntRow> coords;  // in the ambient lattice basis, when known
  long long square = 0;
  std::vector<SurfaceFlag> flags;
  std::optional<std::vector<Word>> pi1_images;  // 2*genus loop images
  std::string side;  // which summand a leftover piece came from ("Y", "Y'")

  bool has_flag(SurfaceFlag f) const {
    for (auto g : flags)
      if (g == f) return true;
    return false;
  }

  friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

inline void to_json(nlohmann::json& j, const SurfaceClass& s) {
  j = nlohmann::json::object();
  j["label"] = s.label;
  j["genus"] = s.genus;
  if (s.coords) j["coords"] = *s.coords;
  j["square"] = s.square;
  auto fl = nlohmann::json::array();
  for (auto f : s.flags) fl.push_back(to_string(f));
  j["flags"] = fl;
  if (s.pi1_images) {
    auto im = nlohmann::json::array();
    for (const auto& w : *s.pi1_images) im.push_back(to_string(w));
    j["pi1_images"] = im;
  }
  if (!s.side.empty()) j["side"] = s.side;
}

inline void from_json(const nlohmann::json& j, SurfaceClass& s) {
  s = {};
  s.label = j.at("label").get<std::string>();
  s.genus = j.value("genus", 0LL);
  if (j.contains("coords")) s.coords = j.at("coords").get<IntRow>();
  s.square = j.value("square", 0LL);
  if (j.contains("flags"))
    for (const auto& f : j.at("flags")) s.flags.push_back(surface_flag_from_string(f.get<std::string>()));
  if (j.contains("pi1_images")) {
    std::vector<Word> im;
    for (const auto& w : j.at("pi1_images")) im.push_back(parse_word(w.get<std::string>()));
    s.pi1_images = std::move(im);
  }
  s.side = j.value("side", std::string{});
}

}  // namespace fourfold
