#pragma once

// JSON construction scripts: an ordered list of steps, each invoking one
// engine operation, binding its result, and optionally asserting an expect
// block against the step summary.  Reports are deterministic: identical
// inputs and effort settings produce identical JSON.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fourfold/construct.hpp"
#include "fourfold/swengine.hpp"
#include "fourfold/verdict.hpp"

namespace fourfold {

struct ClassList {
  IntersectionLattice lattice;
  std::vector<IntRow> classes;
};

using Value = std::variant<Manifold, Presentation, BasicClassProblem, ClassList, SWFunction,
                           long long, ProofVerdict, AbelianInvariants, HomeoType, SchemeCheck,
                           MinimalityReport, FamilyVerdict, Minimality, Irreducibility,
                           CosetResult, BettiNumbers, std::vector<Finding>>;

struct ScriptOptions {
  Effort effort;
};

struct StepRecord {
  int index = 0;
  std::string op;
  std::string bind;
  std::string note;
  nlohmann::json summary;
  nlohmann::json snapshot;  // full manifold snapshot when the step yields one
  std::vector<std::string> expect_failures;
};

struct Report {
  std::string script;
  std::string source;
  std::vector<StepRecord> steps;

  bool all_expectations_met() const {
    for (const auto& s : steps)
      if (!s.expect_failures.empty()) return false;
    return true;
  }

  nlohmann::json to_json(const ScriptOptions& opts, bool with_snapshots = true) const {
    nlohmann::json j;
    j["script"] = script;
    j["source"] = source;
    j["effort"] = {{"max_cosets", opts.effort.cosets.max_cosets},
                   {"max_coset_steps", opts.effort.cosets.max_steps},
                   {"max_rewrite_steps", opts.effort.max_rewrite_steps}};
    auto arr = nlohmann::json::array();
    for (const auto& s : steps) {
      nlohmann::json js;
      js["index"] = s.index;
      js["op"] = s.op;
      if (!s.bind.empty()) js["bind"] = s.bind;
      if (!s.note.empty()) js["note"] = s.note;
      js["summary"] = s.summary;
      if (with_snapshots && !s.snapshot.is_null()) js["manifold"] = s.snapshot;
      js["expect_failures"] = s.expect_failures;
      arr.push_back(std::move(js));
    }
    j["steps"] = std::move(arr);
    j["status"] = all_expectations_met()
                      ? "AllExpectationsMet"
                      : "Failures(" + std::to_string([this] {
                          int n = 0;
                          for (const auto& s : steps) n += s.expect_failures.size();
                          return n;
                        }()) + ")";
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "script " << script;
    if (!source.empty()) os << "  [" << source << "]";
    os << "\n";
    for (const auto& s : steps) {
      os << "  [" << s.index << "] " << s.op;
      if (!s.bind.empty()) os << " -> " << s.bind;
      std::string keys;
      for (const auto& [k, v] : s.summary.items()) {
        if (v.is_object() || v.is_array()) continue;
        keys += "  " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
      }
      os << keys << "\n";
      if (s.summary.contains("classes"))
        for (const auto& c : s.summary["classes"]) os << "        class " << c.get<std::string>() << "\n";
      for (const auto& f : s.expect_failures) os << "      EXPECT FAILED: " << f << "\n";
    }
    os << "status: "
       << (all_expectations_met() ? "AllExpectationsMet" : "Failures") << "\n";
    return os.str();
  }
};

namespace script_detail {

using nlohmann::json;

inline const json& arg(const json& args, const std::string& key) {
  if (!args.contains(key)) throw parse_error("missing argument '" + key + "'");
  return args.at(key);
}

class Runner {
 public:
  Runner(const json& script, ScriptOptions opts) : script_(script), opts_(opts) {}

  Report run() {
    Report report;
    report.script = script_.value("name", std::string{"unnamed"});
    report.source = script_.value("source", std::string{});
    if (!script_.contains("steps") || !script_.at("steps").is_array())
      throw parse_error("script has no steps array");
    int index = 0;
    for (const auto& step : script_.at("steps")) {
      ++index;
      StepRecord rec;
      rec.index = index;
      rec.op = step.value("op", std::string{});
      rec.bind = step.value("bind", std::string{});
      rec.note = step.value("note", std::string{});
      if (rec.op.empty()) throw parse_error("step " + std::to_string(index) + " has no op");
      json args = step.value("args", json::object());
      Value result = eval(rec.op, args);
      rec.summary = summarize(result);
      if (const Manifold* m = std::get_if<Manifold>(&result)) rec.snapshot = *m;
      if (step.contains("expect"))
        check_expectations(step.at("expect"), result, rec);
      if (!rec.bind.empty()) env_.insert_or_assign(rec.bind, std::move(result));
      report.steps.push_back(std::move(rec));
    }
    return report;
  }

 private:
  const json& script_;
  ScriptOptions opts_;
  std::map<std::string, Value> env_;

  const Value& lookup(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) throw parse_error("unknown binding '" + name + "'");
    return it->second;
  }

  const Manifold& manifold(const json& args, const std::string& key = "m") const {
    const json& ref = arg(args, key);
    const Value& v = lookup(ref.get<std::string>());
    if (const Manifold* m = std::get_if<Manifold>(&v)) return *m;
    throw parse_error("binding '" + ref.get<std::string>() + "' is not a manifold");
  }

  Presentation presentation(const json& args) const {
    if (args.contains("presentation")) return args.at("presentation").get<Presentation>();
    if (args.contains("m")) {
      const Value& v = lookup(arg(args, "m").get<std::string>());
      if (const Manifold* m = std::get_if<Manifold>(&v)) return m->pi1;
      if (const Presentation* p = std::get_if<Presentation>(&v)) return *p;
      throw parse_error("binding does not carry a presentation");
    }
    throw parse_error("expected 'presentation' or 'm'");
  }

  static std::vector<Word> parse_words(const json& arr) {
    std::vector<Word> out;
    for (const auto& w : arr) out.push_back(parse_word(w.get<std::string>()));
    return out;
  }

  DeclaredTopology declared_topology(const json& args) const {
    DeclaredTopology d;
    if (!args.contains("declared")) return d;
    const json& j = args.at("declared");
    if (j.contains("lattice")) d.lattice = j.at("lattice").get<IntersectionLattice>();
    d.lattice_complete = j.value("lattice_complete", false);
    if (j.contains("surfaces"))
      d.surfaces = j.at("surfaces").get<std::vector<SurfaceClass>>();
    return d;
  }

  FiberSumSide side(const json& j) const {
    FiberSumSide s;
    s.surface = arg(j, "surface").get<std::string>();
    s.meridian_killed = j.value("meridian_killed", false);
    s.justification = j.value("justification", std::string{});
    if (j.contains("complement")) s.complement = j.at("complement").get<Presentation>();
    if (j.contains("meridian")) s.meridian = parse_word(j.at("meridian").get<std::string>());
    return s;
  }

  SurgerySpec surgery_spec(const json& j, const Manifold& m) const {
    SurgerySpec s;
    s.torus_label = j.value("torus", std::string{});
    s.lambda_pushoff = parse_word(arg(j, "lambda").get<std::string>());
    s.meridian = parse_word(arg(j, "meridian").get<std::string>());
    s.p = arg(j, "p").get<long long>();
    s.q = arg(j, "q").get<long long>();
    std::string framing = j.value("framing", std::string{"lagrangian"});
    if (framing == "lagrangian") s.framing = Framing::lagrangian;
    else if (framing == "zero") s.framing = Framing::zero_framing;
    else throw parse_error("unknown framing '" + framing + "'");
    s.torus_is_lagrangian = j.value("lagrangian", false);
    if (j.contains("complement")) s.complement = j.at("complement").get<Presentation>();
    else s.complement = m.pi1;
    s.core_label = j.value("core_label", std::string{});
    return s;
  }

  Hypotheses hypotheses(const json& j) const {
    Hypotheses h;
    for (const auto& [name, spec] : j.items()) {
      Hypothesis hy;
      if (spec.is_boolean()) {
        hy.value = spec.get<bool>();
      } else {
        hy.value = spec.value("value", false);
        hy.provenance = spec.value("why", std::string{});
      }
      h.items[name] = hy;
    }
    return h;
  }

  BasicClassProblem problem(const json& args) const {
    if (args.contains("problem")) {
      const Value& v = lookup(arg(args, "problem").get<std::string>());
      if (const BasicClassProblem* p = std::get_if<BasicClassProblem>(&v)) return *p;
      throw parse_error("binding is not a basic-class problem");
    }
    BasicClassProblem p;
    p.lattice = arg(args, "lattice").get<IntersectionLattice>();
    p.surfaces = arg(args, "surfaces").get<std::vector<SurfaceClass>>();
    p.e = arg(args, "e").get<long long>();
    p.sigma = arg(args, "sigma").get<long long>();
    p.simple_type = args.value("simple_type", true);
    return p;
  }

  Value eval(const std::string& op, const json& args) {
    if (op == "product_block")
      return product_block(arg(args, "g").get<long long>(), arg(args, "h").get<long long>(),
                           args.value("suffix", std::string{}));
    if (op == "t4_twist_template") return t4_twist_template(arg(args, "n").get<long long>());
    if (op == "resolve_union") {
      const Manifold& m = manifold(args);
      ResolutionPlan plan;
      for (const auto& c : arg(args, "components")) plan.components.push_back(c.get<std::string>());
      plan.double_points = arg(args, "double_points").get<long long>();
      std::optional<std::vector<Word>> images;
      if (args.contains("images")) images = parse_words(args.at("images"));
      SurfaceClass s =
          resolve_union(m, plan, arg(args, "label").get<std::string>(), std::move(images));
      return attach_surface(m, std::move(s));
    }
    if (op == "blow_up") {
      std::vector<std::string> meets;
      if (args.contains("meets"))
        for (const auto& l : args.at("meets")) meets.push_back(l.get<std::string>());
      return blow_up(manifold(args), meets, args.value("times", 1));
    }
    if (op == "fiber_sum") {
      const Manifold& y = manifold(args, "y");
      const Manifold& yp = manifold(args, "yp");
      GluingMap phi{parse_words(arg(args, "phi"))};
      std::map<std::string, std::string> rename;
      if (args.contains("rename_yp"))
        for (const auto& [k, v] : args.at("rename_yp").items()) rename[k] = v.get<std::string>();
      return fiber_sum(y, yp, side(arg(args, "side_y")), side(arg(args, "side_yp")), phi,
                       declared_topology(args), args.value("name", std::string{}), rename);
    }
    if (op == "torus_surgery") {
      const Manifold& m = manifold(args);
      return torus_surgery(m, surgery_spec(arg(args, "spec"), m), declared_topology(args));
    }
    if (op == "internal_sum") {
      const Manifold& m = manifold(args);
      SurfaceClass s = internal_sum(m, arg(args, "a").get<std::string>(),
                                    arg(args, "b").get<std::string>(),
                                    arg(args, "sum").get<std::string>(),
                                    arg(args, "label").get<std::string>(),
                                    arg(args, "coords").get<IntRow>());
      return attach_surface(m, std::move(s));
    }
    if (op == "declare_manifold") {
      Manifold m = arg(args, "manifold").get<Manifold>();
      if (m.origin.empty()) m.origin = "declare_manifold";
      require_consistent(m);
      return m;
    }
    if (op == "attach_sw") {
      Manifold m = manifold(args);
      SWFunction f;
      for (const auto& e : arg(args, "entries"))
        f.entries[e.at("k").get<IntRow>()] = e.at("value").get<long long>();
      m.sw = std::move(f);
      require_consistent(m);
      return m;
    }
    if (op == "set_flags") {
      if (!args.contains("provenance") || arg(args, "provenance").get<std::string>().empty())
        throw precondition_error("set_flags requires a provenance string");
      Manifold m = manifold(args);
      for (const auto& f : arg(args, "flags"))
        m.set_flag(manifold_flag_from_string(f.get<std::string>()));
      require_consistent(m);
      return m;
    }
    if (op == "certify_trivial") return certify_simply_connected(manifold(args), opts_.effort);
    if (op == "prove_trivial") return prove_trivial(presentation(args), opts_.effort);
    if (op == "abelianization") return abelianization(presentation(args));
    if (op == "coset_enumerate") return coset_enumerate(presentation(args), opts_.effort.cosets);
    if (op == "derive_relation")
      return derive_relation(presentation(args), parse_word(arg(args, "w").get<std::string>()),
                             opts_.effort);
    if (op == "eliminate_generators") {
      std::vector<std::pair<std::string, Word>> ids;
      for (const auto& pair : arg(args, "identifications"))
        ids.emplace_back(pair.at(0).get<std::string>(), parse_word(pair.at(1).get<std::string>()));
      return eliminate_generators(presentation(args), ids);
    }
    if (op == "betti") return betti(manifold(args));
    if (op == "validate") return validate(manifold(args));
    if (op == "declare_problem") return problem(args);
    if (op == "enumerate_basic_classes") {
      BasicClassProblem p = problem(args);
      return ClassList{p.lattice, enumerate_basic_classes(p)};
    }
    if (op == "conjugation_sign")
      return static_cast<long long>(
          conjugation_sign(arg(args, "e").get<long long>(), arg(args, "sigma").get<long long>()));
    if (op == "mms_value")
      return mms_value(arg(args, "sw_at_k").get<long long>(),
                       arg(args, "orbit").get<std::vector<long long>>(),
                       arg(args, "n").get<long long>());
    if (op == "canonical_sum_sw") {
      const json& h = arg(args, "hypotheses");
      CanonicalSumHypotheses ch{h.value("both_simple_type", false),
                                h.value("genus2_square_zero_sum_surface", false),
                                h.value("one_basic_class_per_side", false)};
      return canonical_sum_sw(arg(args, "va").get<long long>(), arg(args, "vb").get<long long>(),
                              ch);
    }
    if (op == "minimality_gap_check") {
      const Manifold& m = manifold(args);
      if (!m.sw) throw precondition_error("minimality_gap_check: no attached invariants");
      return minimality_gap_check(basic_classes(*m.sw), m.lattice);
    }
    if (op == "fps_family") {
      const Manifold& m = manifold(args);
      if (!m.sw) throw precondition_error("fps_family: no attached invariants");
      return fps_family(*m.sw);
    }
    if (op == "freedman_type") return freedman_type(manifold(args), opts_.effort);
    if (op == "usher_minimality")
      return usher_minimality(manifold(args), hypotheses(args.value("hypotheses", json::object())));
    if (op == "hk_irreducible") return hk_irreducible(manifold(args));
    if (op == "reverse_engineering_check")
      return reverse_engineering_check(manifold(args), arg(args, "target_e").get<long long>(),
                                       arg(args, "target_sigma").get<long long>(),
                                       arg(args, "r").get<long long>());
    throw parse_error("unknown op '" + op + "'");
  }

  nlohmann::json summarize(const Value& v) const {
    json s = json::object();
    if (const Manifold* m = std::get_if<Manifold>(&v)) {
      s["e"] = m->e;
      s["sigma"] = m->sigma;
      s["b1"] = m->b1;
      s["name"] = m->name;
      s["lattice_rank"] = m->lattice.rank();
      try {
        BettiNumbers b = betti(*m);
        s["b2"] = b.b2;
        s["b2plus"] = b.b2plus;
        s["b2minus"] = b.b2minus;
      } catch (const validation_error&) {
      }
      if (!m->surfaces.empty()) {
        const SurfaceClass& last = m->surfaces.back();
        s["genus"] = last.genus;
        s["square"] = last.square;
        s["surface"] = last.label;
        json squares = json::object();
        json genera = json::object();
        for (const auto& sf : m->surfaces) {
          squares[sf.label] = sf.square;
          genera[sf.label] = sf.genus;
        }
        s["squares"] = std::move(squares);
        s["genera"] = std::move(genera);
      }
      if (m->sw) {
        s["sw_count"] = m->sw->entries.size();
        auto values = json::array();
        for (const auto& [k, val] : m->sw->entries) {
          json e;
          e["class"] = format_class(m->lattice, k);
          e["value"] = val;
          values.push_back(e);
        }
        s["sw"] = values;
      }
      auto fl = json::array();
      for (auto f : m->flags) fl.push_back(to_string(f));
      s["flags"] = fl;
    } else if (const Presentation* p = std::get_if<Presentation>(&v)) {
      s["generators"] = p->generators.size();
      s["relators"] = p->relators.size();
      s["presentation"] = *p;
    } else if (const BasicClassProblem* p = std::get_if<BasicClassProblem>(&v)) {
      s["rank"] = p->lattice.rank();
      s["constraints"] = p->surfaces.size();
      s["simple_type_square"] = 2 * p->e + 3 * p->sigma;
    } else if (const ClassList* c = std::get_if<ClassList>(&v)) {
      auto arr = json::array();
      for (const auto& k : c->classes) arr.push_back(format_class(c->lattice, k));
      s["classes"] = arr;
      s["count"] = c->classes.size();
    } else if (const SWFunction* f = std::get_if<SWFunction>(&v)) {
      s["sw_count"] = f->entries.size();
    } else if (const long long* n = std::get_if<long long>(&v)) {
      s["value"] = *n;
    } else if (const ProofVerdict* pv = std::get_if<ProofVerdict>(&v)) {
      s["verdict"] = to_string(pv->status);
      s["witness"] = pv->witness;
    } else if (const AbelianInvariants* a = std::get_if<AbelianInvariants>(&v)) {
      s["abelian"] = to_string(*a);
      s["free_rank"] = a->free_rank;
      s["torsion"] = a->torsion;
    } else if (const HomeoType* h = std::get_if<HomeoType>(&v)) {
      s["homeo"] = json::array({h->b2plus, h->b2minus});
      s["b2plus"] = h->b2plus;
      s["b2minus"] = h->b2minus;
      s["parity"] = h->parity;
      s["descriptor"] = h->descriptor;
    } else if (const SchemeCheck* c = std::get_if<SchemeCheck>(&v)) {
      s["condition_I"] = c->characteristic_numbers_match;
      s["condition_II"] = c->lagrangian_rank_sufficient;
      s["s"] = c->s;
      s["b2_gap"] = c->b2_gap;
      s["gap_consistent"] = c->gap_consistent;
      s["pass"] = c->all_pass();
    } else if (const MinimalityReport* r = std::get_if<MinimalityReport>(&v)) {
      s["verdict"] = to_string(r->status);
      s["difference_squares"] = r->difference_squares;
    } else if (const FamilyVerdict* f2 = std::get_if<FamilyVerdict>(&v)) {
      s["verdict"] = to_string(f2->status);
      s["reason"] = f2->reason;
    } else if (const Minimality* mm = std::get_if<Minimality>(&v)) {
      s["verdict"] = to_string(*mm);
    } else if (const Irreducibility* ir = std::get_if<Irreducibility>(&v)) {
      s["verdict"] = to_string(*ir);
    } else if (const CosetResult* cr = std::get_if<CosetResult>(&v)) {
      s["completed"] = cr->completed;
      s["index"] = cr->completed ? cr->index : -1;
      s["result"] = cr->completed ? "Index(" + std::to_string(cr->index) + ")" : "Exhausted";
    } else if (const BettiNumbers* b = std::get_if<BettiNumbers>(&v)) {
      s["b1"] = b->b1;
      s["b2"] = b->b2;
      s["b2plus"] = b->b2plus;
      s["b2minus"] = b->b2minus;
    } else if (const std::vector<Finding>* fs = std::get_if<std::vector<Finding>>(&v)) {
      auto arr = json::array();
      for (const auto& f3 : *fs) arr.push_back({{"code", f3.code}, {"message", f3.message}});
      s["findings"] = arr;
      s["clean"] = fs->empty();
    }
    return s;
  }

  void check_expectations(const json& expect, const Value& result, StepRecord& rec) {
    for (const auto& [key, want] : expect.items()) {
      if (key == "note") continue;
      if (key == "pi1") {
        const Presentation* p = nullptr;
        Presentation local;
        if (const Manifold* m = std::get_if<Manifold>(&result)) local = m->pi1;
        else if (const Presentation* pp = std::get_if<Presentation>(&result)) local = *pp;
        else {
          rec.expect_failures.push_back("pi1 expectation on a step without a group");
          continue;
        }
        p = &local;
        std::string desc = want.get<std::string>();
        if (desc == "trivial") {
          ProofVerdict v = prove_trivial(*p, opts_.effort);
          if (!v.proven())
            rec.expect_failures.push_back("pi1 expected trivial, got " + to_string(v.status) +
                                          " (" + v.witness + ")");
        } else {
          AbelianInvariants ab = abelianization(*p);
          if (!matches_abelian(ab, desc))
            rec.expect_failures.push_back("pi1 expected " + desc + ", abelianization is " +
                                          to_string(ab));
        }
        continue;
      }
      if (!rec.summary.contains(key)) {
        rec.expect_failures.push_back("no summary field '" + key + "'");
        continue;
      }
      const json& got = rec.summary.at(key);
      if (want.is_object() && got.is_object()) {
        // partial match: only the listed subkeys are compared
        for (const auto& [k2, v2] : want.items()) {
          if (!got.contains(k2))
            rec.expect_failures.push_back(key + "." + k2 + ": missing");
          else if (got.at(k2) != v2)
            rec.expect_failures.push_back(key + "." + k2 + ": expected " + v2.dump() +
                                          ", got " + got.at(k2).dump());
        }
        continue;
      }
      if (got != want)
        rec.expect_failures.push_back(key + ": expected " + want.dump() + ", got " + got.dump());
    }
  }
};

}  // namespace script_detail

inline Report run_script(const nlohmann::json& script, const ScriptOptions& opts = {}) {
  return script_detail::Runner(script, opts).run();
}

inline Report run_script_file(const std::string& path, const ScriptOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open script '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("script '" + path + "' is not valid JSON: " + e.what());
  }
  return run_script(j, opts);
}

}  // namespace fourfold
