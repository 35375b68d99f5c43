// Acceptance suite: one line per criterion, exact integer checks throughout.
// Exercises the shipped scripts end to end plus the independent brute-force
// oracle for every enumeration problem.

#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourfold/script.hpp"
#include "oracle.hpp"
#include "patterns.hpp"

#ifndef FOURFOLD_SCRIPTS_DIR
#define FOURFOLD_SCRIPTS_DIR "scripts"
#endif

using namespace fourfold;

namespace {

struct Checker {
  int number;
  std::string label;
  bool ok = true;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      problems.push_back(what);
    }
  }

  int finish() const {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label << "\n";
    for (const auto& p : problems) std::cout << "       - " << p << "\n";
    return ok ? 0 : 1;
  }
};

std::map<std::string, Report> run_corpus(const ScriptOptions& opts) {
  std::map<std::string, Report> out;
  for (const char* name :
       {"cp2_9", "cp2_7", "cp2_5", "cp2_3", "lattice_jump", "three_cp2_5",
        "e1_torus_sums", "families", "twist_t4"}) {
    std::string path = std::string(FOURFOLD_SCRIPTS_DIR) + "/" + name + ".json";
    out.emplace(name, run_script_file(path, opts));
  }
  return out;
}

const StepRecord* find_step(const Report& r, const std::string& bind) {
  for (const auto& s : r.steps)
    if (s.bind == bind) return &s;
  return nullptr;
}

const StepRecord* find_op(const Report& r, const std::string& op, int occurrence = 1) {
  int seen = 0;
  for (const auto& s : r.steps)
    if (s.op == op && ++seen == occurrence) return &s;
  return nullptr;
}

long long summary_int(const StepRecord* s, const std::string& key) {
  if (!s || !s->summary.contains(key)) return -999999;
  return s->summary.at(key).get<long long>();
}

Presentation pi1_of_declared(const nlohmann::json& script, const std::string& bind) {
  for (const auto& step : script.at("steps"))
    if (step.value("bind", "") == bind && step.value("op", "") == "declare_manifold")
      return step.at("args").at("manifold").at("pi1").get<Presentation>();
  throw parse_error("no declared manifold bound to '" + bind + "'");
}

nlohmann::json load_script(const std::string& name) {
  std::ifstream in(std::string(FOURFOLD_SCRIPTS_DIR) + "/" + name + ".json");
  nlohmann::json j;
  in >> j;
  return j;
}

struct ProblemCase {
  std::string label;
  BasicClassProblem problem;
  IntRow expected;  // one representative; the set is {expected, -expected}
  long long simple_type_square;
};

std::vector<ProblemCase> the_five_problems() {
  std::vector<ProblemCase> out;
  auto add = [&](std::string label, BasicClassProblem p,
                 std::vector<std::pair<std::string, long long>> terms, long long sq) {
    IntRow k = patterns::class_vector(p.lattice, terms);
    out.push_back({std::move(label), std::move(p), std::move(k), sq});
  };
  add("1_3", patterns::cp_problem(2, 0, 6, -2), {{"Sigma", 2}, {"R1", 1}, {"R2", 1}}, 6);
  add("1_5", patterns::cp_problem(2, 2, 8, -4),
      {{"Sigma", 2}, {"G", -2}, {"R1", 1}, {"R2", 1}, {"S1", 1}, {"S2", 1}}, 4);
  add("1_7", patterns::cp_problem(2, 4, 10, -6),
      {{"Sigma", 2}, {"G", -4}, {"R1", 1}, {"R2", 1}, {"S1", 1}, {"S2", 1}, {"S3", 1}, {"S4", 1}},
      2);
  add("1_9", patterns::cp_problem(4, 4, 12, -8),
      {{"Sigma", 2}, {"G", -6}, {"R1", 1}, {"R2", 1}, {"R3", 1}, {"R4", 1},
       {"S1", 1}, {"S2", 1}, {"S3", 1}, {"S4", 1}},
      0);
  add("3_5", patterns::three_cp_problem(), {{"Sigma", 4}, {"R1", 1}, {"R2", 1}}, 14);
  return out;
}

}  // namespace

int main() {
  ScriptOptions opts;
  std::map<std::string, Report> reports;
  try {
    reports = run_corpus(opts);
  } catch (const std::exception& e) {
    std::cout << "[FAIL] corpus: script evaluation aborted: " << e.what() << "\n";
    return 1;
  }

  int failures = 0;

  // ------------------------------------------------------------------ 1
  {
    Checker c{1, "characteristic numbers of every construction"};
    struct Want {
      const char* script;
      const char* bind;
      long long e, sigma;
    };
    for (auto w : {Want{"cp2_9", "X", 12, -8}, Want{"cp2_9", "Xs2", 12, -8},
                   Want{"cp2_7", "X", 10, -6}, Want{"cp2_5", "X", 8, -4},
                   Want{"cp2_3", "X", 6, -2}, Want{"lattice_jump", "Zp", 12, -4},
                   Want{"lattice_jump", "Zpp", 14, -6}, Want{"three_cp2_5", "X", 10, -2}}) {
      const StepRecord* s = find_step(reports.at(w.script), w.bind);
      c.require(s && summary_int(s, "e") == w.e && summary_int(s, "sigma") == w.sigma,
                std::string(w.script) + "/" + w.bind + " expected (" + std::to_string(w.e) +
                    "," + std::to_string(w.sigma) + ")");
    }
    // the two jumps add (6,-2) and (8,-4) to the input (6,-2)
    c.require(summary_int(find_step(reports.at("lattice_jump"), "Zp"), "e") - 6 == 6 &&
                  summary_int(find_step(reports.at("lattice_jump"), "Zp"), "sigma") + 2 == -2,
              "first jump does not add (6,-2)");
    c.require(summary_int(find_step(reports.at("lattice_jump"), "Zpp"), "e") - 6 == 8 &&
                  summary_int(find_step(reports.at("lattice_jump"), "Zpp"), "sigma") + 2 == -4,
              "second jump does not add (8,-4)");
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 2
  {
    Checker c{2, "fundamental group certification and intermediate homology"};
    struct Final {
      const char* script;
      const char* bind;
    };
    for (auto f : {Final{"cp2_9", "X"}, Final{"cp2_9", "Xs2"}, Final{"cp2_7", "X"},
                   Final{"cp2_5", "X"}, Final{"cp2_3", "X"}}) {
      const StepRecord* s = find_step(reports.at(f.script), f.bind);
      if (!s || s->snapshot.is_null()) {
        c.require(false, std::string(f.script) + "/" + f.bind + " missing snapshot");
        continue;
      }
      Presentation p = s->snapshot.at("pi1").get<Presentation>();
      CosetResult cr = coset_enumerate(p, opts.effort.cosets);
      c.require(cr.completed && cr.index == 1,
                std::string(f.script) + "/" + f.bind + ": coset index is not 1");
      c.require(prove_trivial(p, opts.effort).proven(),
                std::string(f.script) + "/" + f.bind + ": not certified trivial");
    }
    nlohmann::json families = load_script("families");
    for (int n = 1; n <= 5; ++n) {
      Presentation p = pi1_of_declared(families, "Xn" + std::to_string(n));
      CosetResult cr = coset_enumerate(p, opts.effort.cosets);
      c.require(cr.completed && cr.index == 1,
                "family member n=" + std::to_string(n) + ": coset index is not 1");
    }
    struct Mid {
      const char* script;
      const char* bind;
      long long rank;
    };
    for (auto m : {Mid{"cp2_7", "Xp", 2}, Mid{"cp2_5", "Xp", 4}, Mid{"cp2_3", "Xp", 6}}) {
      const StepRecord* s = find_step(reports.at(m.script), m.bind);
      if (!s || s->snapshot.is_null()) {
        c.require(false, std::string(m.script) + "/Xp missing snapshot");
        continue;
      }
      AbelianInvariants ab = abelianization(s->snapshot.at("pi1").get<Presentation>());
      c.require(ab == AbelianInvariants{m.rank, {}},
                std::string(m.script) + "/Xp: abelianization is " + to_string(ab) +
                    ", expected Z^" + std::to_string(m.rank));
    }
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 3
  {
    Checker c{3, "basic-class enumeration with full-box oracle agreement"};
    for (const auto& pc : the_five_problems()) {
      std::vector<IntRow> expected = {pc.expected, negated(pc.expected)};
      std::sort(expected.begin(), expected.end());
      std::vector<IntRow> got = enumerate_basic_classes(pc.problem);
      c.require(got == expected, pc.label + ": enumerated set differs from the declared pair");
      c.require(oracle::brute_force_classes(pc.problem) == got,
                pc.label + ": oracle scan disagrees with the enumerator");
    }
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 4
  {
    Checker c{4, "simple-type squares 6, 4, 2, 0 and 14"};
    std::vector<long long> want = {6, 4, 2, 0, 14};
    auto problems = the_five_problems();
    for (size_t i = 0; i < problems.size(); ++i) {
      long long sq = 2 * problems[i].problem.e + 3 * problems[i].problem.sigma;
      c.require(sq == want[i] && problems[i].simple_type_square == want[i],
                problems[i].label + ": 2e+3sigma = " + std::to_string(sq));
      for (const auto& k : enumerate_basic_classes(problems[i].problem))
        c.require(problems[i].problem.lattice.square(k) == want[i],
                  problems[i].label + ": an enumerated class misses the square");
    }
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 5
  {
    Checker c{5, "family invariant values"};
    for (long long n = 1; n <= 5; ++n)
      c.require(mms_value(1, {1}, n - 1) == n, "product-formula chain value at n");
    // every zero-surgery function has exactly one class pair
    for (const auto& pc : the_five_problems()) {
      SWFunction f;
      int sign = conjugation_sign(pc.problem.e, pc.problem.sigma);
      f.entries[pc.expected] = 1;
      f.entries[negated(pc.expected)] = sign;
      c.require(fps_family(f).status == FamilyStatus::PairwiseDistinct,
                pc.label + ": family verdict is not PairwiseDistinct");
    }
    // minimality gap in the four-class lattice
    IntersectionLattice l13 = patterns::exotic_cp_lattice(2, 0);
    IntRow kx = patterns::class_vector(l13, {{"Sigma", 2}, {"R1", 1}, {"R2", 1}});
    MinimalityReport mr = minimality_gap_check({kx, negated(kx)}, l13);
    c.require(mr.status == MinimalityStatus::Minimal &&
                  mr.difference_squares == std::vector<long long>{24},
              "difference of the class pair is not 24");
    // blow-up formula on the seed
    const StepRecord* b = find_step(reports.at("families"), "T4b2");
    c.require(b && summary_int(b, "sw_count") == 4, "blown-up seed does not have 4 classes");
    if (b && b->summary.contains("sw"))
      for (const auto& entry : b->summary.at("sw"))
        c.require(entry.at("value").get<long long>() == 1, "a blown-up class value is not 1");
    // glued family values
    CanonicalSumHypotheses h{true, true, true};
    for (long long n = 1; n <= 5; ++n)
      c.require(canonical_sum_sw(n, 1, h) == n, "glued family value at n");
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 6
  {
    Checker c{6, "homeomorphism types and scheme conditions"};
    struct Want {
      const char* script;
      int occurrence;
      long long plus, minus;
    };
    for (auto w : {Want{"cp2_9", 1, 1, 9}, Want{"cp2_9", 2, 1, 9}, Want{"cp2_7", 1, 1, 7},
                   Want{"cp2_5", 1, 1, 5}, Want{"cp2_3", 1, 1, 3}, Want{"three_cp2_5", 1, 3, 5},
                   Want{"lattice_jump", 1, 3, 7}, Want{"lattice_jump", 2, 3, 9}}) {
      const StepRecord* s = find_op(reports.at(w.script), "freedman_type", w.occurrence);
      bool good = s && summary_int(s, "b2plus") == w.plus && summary_int(s, "b2minus") == w.minus;
      c.require(good, std::string(w.script) + ": freedman type is not (" +
                          std::to_string(w.plus) + "," + std::to_string(w.minus) + ")");
    }
    for (const char* script : {"cp2_9", "cp2_7", "cp2_5", "cp2_3", "three_cp2_5"}) {
      const StepRecord* s = find_op(reports.at(script), "reverse_engineering_check");
      c.require(s && s->summary.at("pass").get<bool>(),
                std::string(script) + ": scheme conditions fail on the intermediate manifold");
    }
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 7
  {
    Checker c{7, "surgery template fidelity and derived relations"};
    std::vector<Word> base = {parse_word("[a,b]"), parse_word("[c,a]"), parse_word("[c,b]"),
                              parse_word("[c,d]")};
    for (long long n = 1; n <= 5; ++n) {
      Manifold m = t4_twist_template(n);
      bool good = m.pi1.relators.size() == 6;
      for (size_t i = 0; i < 4 && good; ++i) good = same_relator(m.pi1.relators[i], base[i]);
      good = good && same_relator(m.pi1.relators[4], parse_word("d*a*d^-1*[d,b^-1]^-1"));
      good = good &&
             same_relator(m.pi1.relators[5], parse_word("b*[a^-1,d]^-" + std::to_string(n)));
      c.require(good, "template relators differ at n=" + std::to_string(n));
    }
    Manifold m1 = t4_twist_template(1);
    c.require(derive_relation(m1.pi1, parse_word("a*b*(d*a*d^-1)^-1"), opts.effort).proven(),
              "first monodromy relation not derived");
    c.require(derive_relation(m1.pi1, parse_word("a^-1*(d*b*d^-1)^-1"), opts.effort).proven(),
              "second monodromy relation not derived");
    // coefficient-convention round trip on both Lagrangian tori
    Presentation comp = make_presentation({"a", "b", "c", "d"},
                                          {"[a,b]", "[c,a]", "[c,b]", "[c,d]"});
    Manifold t4 = product_block(1, 1);
    SurgerySpec lutt{"axc", parse_word("d*a*d^-1"), parse_word("[d,b^-1]"),
                     1, -1, Framing::lagrangian, false, comp, ""};
    c.require(same_relator(torus_surgery(t4, lutt).pi1.relators.back(),
                           parse_word("d*a*d^-1*[d,b^-1]^-1")),
              "(1,-1) convention misses the declared relation");
    for (long long n = 1; n <= 5; ++n) {
      SurgerySpec neg{"bxc", parse_word("b"), parse_word("[a^-1,d]"),
                      -n, 1, Framing::lagrangian, false, comp, ""};
      c.require(same_relator(torus_surgery(t4, neg).pi1.relators.back(),
                             parse_word("b*[a^-1,d]^-" + std::to_string(n))),
                "(-n,1) convention misses the declared relation at n=" + std::to_string(n));
    }
    failures += c.finish();
  }

  // ------------------------------------------------------------------ 8
  {
    Checker c{8, "property suites"};
    // negation closure and exact re-verification of every enumerated set
    for (const auto& pc : the_five_problems()) {
      std::vector<IntRow> classes = enumerate_basic_classes(pc.problem);
      for (const auto& k : classes) {
        c.require(std::binary_search(classes.begin(), classes.end(), negated(k)),
                  pc.label + ": set not closed under negation");
        c.require(verify_basic_class(pc.problem, k), pc.label + ": re-verification failed");
      }
    }
    // conjugation symmetry on every attached function in the corpus
    int attached = 0;
    for (const auto& [name, report] : reports)
      for (const auto& s : report.steps) {
        if (s.snapshot.is_null() || !s.snapshot.contains("sw")) continue;
        Manifold m = s.snapshot.get<Manifold>();
        ++attached;
        for (const auto& f : validate(m))
          c.require(f.code != "sw-conjugation" && f.code != "sw-characteristic",
                    name + "/" + s.bind + ": " + f.message);
      }
    c.require(attached >= 7, "too few attached invariant functions exercised");
    // e and sigma invariance under 100 randomized surgeries
    std::mt19937 rng(20260808);
    for (int trial = 0; trial < 100; ++trial) {
      Manifold m = product_block(1, 1 + trial % 3);
      std::uniform_int_distribution<size_t> pick(0, m.pi1.generators.size() - 1);
      auto rand_word = [&]() {
        std::vector<Letter> ls;
        int len = 1 + trial % 4;
        for (int i = 0; i < len; ++i)
          ls.push_back({m.pi1.generators[pick(rng)],
                        std::uniform_int_distribution<int>(-2, 2)(rng)});
        return free_reduce(std::move(ls));
      };
      SurgerySpec spec{"L", rand_word(), rand_word(), 0, 0, Framing::zero_framing, true,
                       m.pi1, ""};
      while (spec.p == 0 && spec.q == 0) {
        spec.p = std::uniform_int_distribution<long long>(-4, 4)(rng);
        spec.q = std::uniform_int_distribution<long long>(-4, 4)(rng);
      }
      Manifold out = torus_surgery(m, spec);
      c.require(out.e == m.e && out.sigma == m.sigma, "surgery changed e or sigma");
    }
    // abelianization invariance under elimination across 100 random cases
    for (int trial = 0; trial < 100; ++trial) {
      int n = 2 + trial % 4;
      std::vector<std::string> gens;
      for (int i = 0; i < n; ++i) gens.emplace_back(1, static_cast<char>('a' + i));
      auto rand_word = [&](int avoid) {
        std::vector<Letter> ls;
        int len = 1 + trial % 5;
        for (int i = 0; i < len; ++i) {
          int g = std::uniform_int_distribution<int>(0, n - 1)(rng);
          if (g == avoid) continue;
          ls.push_back({gens[g], std::uniform_int_distribution<int>(-2, 2)(rng)});
        }
        return free_reduce(std::move(ls));
      };
      Presentation p;
      p.generators = gens;
      for (int i = 0; i < trial % 4; ++i) {
        Word w = rand_word(-1);
        if (!w.empty()) p.relators.push_back(w);
      }
      int g = std::uniform_int_distribution<int>(0, n - 1)(rng);
      Word def = rand_word(g);
      p.relators.push_back(concat(Word{{{gens[g], 1}}}, inverse(def)));
      Presentation q = eliminate_generators(p, {{gens[g], def}});
      c.require(abelianization(q) == abelianization(p),
                "elimination changed the abelianization");
    }
    // every script report met its expectations
    for (const auto& [name, report] : reports)
      c.require(report.all_expectations_met(), name + ": a script expectation failed");
    failures += c.finish();
  }

  if (failures == 0) std::cout << "acceptance: all criteria passed\n";
  else std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return failures == 0 ? 0 : 1;
}
