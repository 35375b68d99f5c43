// Command-line runner for construction scripts: evaluates steps, enforces
// expect blocks, and emits text or JSON reports.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fourfold/script.hpp"

namespace {

namespace fs = std::filesystem;

struct RunSettings {
  fourfold::ScriptOptions options;
  std::string format = "text";
  bool snapshots = true;
  bool timing = false;
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const fourfold::parse_error*>(&e)) return 2;
  if (dynamic_cast<const fourfold::validation_error*>(&e)) return 3;
  if (dynamic_cast<const fourfold::precondition_error*>(&e)) return 3;
  if (dynamic_cast<const fourfold::unbounded_error*>(&e)) return 3;
  return 2;
}

int run_one(const std::string& path, const RunSettings& settings, std::ostream& out) {
  auto start = std::chrono::steady_clock::now();
  fourfold::Report report;
  try {
    report = fourfold::run_script_file(path, settings.options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (settings.format == "json") {
    out << report.to_json(settings.options, settings.snapshots).dump(2) << "\n";
  } else {
    out << report.to_text();
    if (settings.timing) out << "elapsed: " << ms << " ms\n";
  }
  return report.all_expectations_met() ? 0 : 1;
}

fs::path scripts_directory(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FOURFOLD_SCRIPTS")) return env;
  return "scripts";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fourfold: a bookkeeping engine for small 4-manifold constructions"};
  app.require_subcommand(1);

  RunSettings settings;
  long long effort = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--effort", effort,
                    "coset enumeration budget (default 1000000 cosets)");
    cmd->add_option("--report", settings.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--timing", settings.timing, "print elapsed time in text reports");
    cmd->add_flag("!--no-snapshots", settings.snapshots,
                  "omit manifold snapshots from JSON reports");
  };

  std::string script_path;
  CLI::App* run = app.add_subcommand("run", "run one construction script");
  run->add_option("script", script_path, "path to a script JSON file")->required();
  add_common(run);
  std::string out_path;
  run->add_option("--out", out_path, "write the report to a file instead of stdout");

  std::string scripts_flag;
  int jobs = 1;
  CLI::App* verify = app.add_subcommand("verify-all", "run every shipped script");
  verify->add_option("--scripts", scripts_flag,
                     "scripts directory (or set FOURFOLD_SCRIPTS)");
  verify->add_option("--jobs", jobs, "run scripts in parallel")->check(CLI::PositiveNumber);
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  if (effort > 0) {
    settings.options.effort.cosets.max_cosets = effort;
    settings.options.effort.max_rewrite_steps = std::max<long long>(10'000, effort / 100);
  }

  if (run->parsed()) {
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 2;
      }
      return run_one(script_path, settings, out);
    }
    return run_one(script_path, settings, std::cout);
  }

  // verify-all
  fs::path dir = scripts_directory(scripts_flag);
  if (!fs::is_directory(dir)) {
    std::cerr << "error: scripts directory '" << dir.string() << "' not found\n";
    return 2;
  }
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    std::cerr << "error: no scripts in '" << dir.string() << "'\n";
    return 2;
  }

  struct Slot {
    std::string path;
    int code = 0;
    std::string output;
  };
  std::vector<Slot> slots(paths.size());
  for (size_t i = 0; i < paths.size(); ++i) slots[i].path = paths[i];

  std::mutex cursor_mutex;
  size_t cursor = 0;
  auto worker = [&]() {
    while (true) {
      size_t mine;
      {
        std::lock_guard<std::mutex> lock(cursor_mutex);
        if (cursor >= slots.size()) return;
        mine = cursor++;
      }
      std::ostringstream os;
      slots[mine].code = run_one(slots[mine].path, settings, os);
      slots[mine].output = os.str();
    }
  };
  int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(slots.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int worst = 0;
  for (const auto& slot : slots) {
    std::cout << slot.output;
    std::cout << "== " << fs::path(slot.path).filename().string() << ": "
              << (slot.code == 0 ? "ok" : "FAILED(" + std::to_string(slot.code) + ")") << "\n";
    worst = std::max(worst, slot.code);
  }
  return worst;
}
