#include "pathsel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pathsel/corpus.hpp"
#include "pathsel/engine.hpp"
#include "pathsel/report.hpp"

namespace pathsel {

namespace {

struct Flags {
  std::string mode = "knn";
  double budget_min = 0.0;
  int workers = 0;
  double pc_budget_s = 0.0;
  std::uint64_t seed = 0;
  std::size_t recache_threshold = 0;
  std::string bucket_probs;
  bool paper_scale = false;
  std::string clock = "virtual";
  double evals_per_second = 0.0;
  int seed_tests = 0;
  std::uint64_t step_limit = 0;
  std::uint64_t hash_seed = 0;

  std::vector<CLI::Option*> opts;
};

CLI::Option* find(const Flags& f, const std::string& name) {
  for (auto* o : f.opts) {
    if (o->get_name() == name) return o;
  }
  return nullptr;
}

bool given(const Flags& f, const std::string& name) {
  const CLI::Option* o = find(f, name);
  return o != nullptr && o->count() > 0;
}

void add_engine_flags(CLI::App* app, Flags& f) {
  const EngineConfig d;
  f.budget_min = d.time_budget_minutes;
  f.workers = d.workers;
  f.pc_budget_s = d.pc_budget_seconds;
  f.seed = d.master_seed;
  f.recache_threshold = d.recache_threshold;
  f.evals_per_second = d.evals_per_second;
  f.seed_tests = d.seed_tests;
  f.step_limit = d.step_limit;
  f.hash_seed = d.hash_seed;
  f.opts.push_back(app->add_option("--mode", f.mode, "knn or fifo")->check(CLI::IsMember({"knn", "fifo"}))->capture_default_str());
  f.opts.push_back(app->add_option("--budget-min", f.budget_min, "total time budget in minutes")->capture_default_str());
  f.opts.push_back(app->add_option("--workers", f.workers, "concurrent generation workers")->capture_default_str());
  f.opts.push_back(app->add_option("--pc-budget-s", f.pc_budget_s, "search budget per path condition, seconds")->capture_default_str());
  f.opts.push_back(app->add_option("--seed", f.seed, "master seed")->capture_default_str());
  f.opts.push_back(app->add_option("--recache-threshold", f.recache_threshold, "training additions between reclassifications")->capture_default_str());
  f.opts.push_back(app->add_option("--bucket-probs", f.bucket_probs, "p1,p2,p3,p4 for l1v3,l1v2,l0v2,l0v3"));
  f.opts.push_back(app->add_flag("--paper-scale", f.paper_scale, "30 min, 180 s per path condition, 5 workers"));
  f.opts.push_back(app->add_option("--clock", f.clock, "virtual or wall")->check(CLI::IsMember({"virtual", "wall"}))->capture_default_str());
  f.opts.push_back(app->add_option("--evals-per-second", f.evals_per_second, "virtual clock rate")->capture_default_str());
  f.opts.push_back(app->add_option("--seed-tests", f.seed_tests, "bootstrap tests, including all-zeros")->capture_default_str());
  f.opts.push_back(app->add_option("--step-limit", f.step_limit, "interpreter step limit per execution")->capture_default_str());
  f.opts.push_back(app->add_option("--hash-seed", f.hash_seed, "fingerprint hash seed")->capture_default_str());
}

std::optional<BucketProbabilities> parse_probs(const std::string& text) {
  BucketProbabilities p{};
  std::istringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i >= p.size()) return std::nullopt;
    try {
      std::size_t used = 0;
      p[i] = std::stod(item, &used);
      if (used != item.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    ++i;
  }
  if (i != p.size()) return std::nullopt;
  return p;
}

// Paper scale first, then any explicitly given flag on top.
std::optional<EngineConfig> build_config(const Flags& f, std::ostream& err) {
  EngineConfig c = f.paper_scale ? EngineConfig::paper_scale() : EngineConfig{};
  if (given(f, "--mode")) c.mode = f.mode == "fifo" ? Mode::kFifo : Mode::kKnn;
  if (given(f, "--budget-min")) c.time_budget_minutes = f.budget_min;
  if (given(f, "--workers")) c.workers = f.workers;
  if (given(f, "--pc-budget-s")) c.pc_budget_seconds = f.pc_budget_s;
  if (given(f, "--seed")) c.master_seed = f.seed;
  if (given(f, "--recache-threshold")) c.recache_threshold = f.recache_threshold;
  if (given(f, "--clock")) c.clock = f.clock == "wall" ? ClockKind::kWall : ClockKind::kVirtual;
  if (given(f, "--evals-per-second")) c.evals_per_second = f.evals_per_second;
  if (given(f, "--seed-tests")) c.seed_tests = f.seed_tests;
  if (given(f, "--step-limit")) {
    c.step_limit = f.step_limit;
    c.search.step_limit = f.step_limit;
  }
  if (given(f, "--hash-seed")) c.hash_seed = f.hash_seed;
  if (given(f, "--bucket-probs")) {
    auto p = parse_probs(f.bucket_probs);
    if (!p) {
      err << "error: --bucket-probs expects four comma-separated numbers\n";
      return std::nullopt;
    }
    c.bucket_probabilities = *p;
  }
  const auto problems = c.problems();
  if (!problems.empty()) {
    for (const auto& p : problems) err << "error: " << p << '\n';
    return std::nullopt;
  }
  return c;
}

std::optional<ir::UnitDef> load(const std::string& path, std::ostream& err) {
  try {
    return ir::load_unit_file(path);
  } catch (const ir::ParseError& e) {
    err << path << ": " << e.what() << '\n';
  } catch (const ir::SemanticError& e) {
    err << path << ": " << e.what() << '\n';
  }
  return std::nullopt;
}

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

std::string default_csv_path(const std::string& json_path) {
  const auto dot = json_path.rfind(".json");
  if (dot != std::string::npos && dot + 5 == json_path.size()) return json_path.substr(0, dot) + ".csv";
  return json_path + ".csv";
}

int cmd_run(const std::string& file, const Flags& f, const std::string& out_path, std::string csv_path,
            std::ostream& out, std::ostream& err) {
  const auto config = build_config(f, err);
  if (!config) return kExitConfig;
  const auto unit = load(file, err);
  if (!unit) return kExitParse;
  const RunReport report = run(*unit, *config);
  if (!write_text(out_path, report_json_text(report), err)) return kExitConfig;
  if (csv_path.empty()) csv_path = default_csv_path(out_path);
  std::ostringstream csv;
  write_csv(csv, report);
  if (!write_text(csv_path, csv.str(), err)) return kExitConfig;
  const Counters& k = report.counters;
  out << report.unit_name << " [" << to_string(config->mode) << ", seed " << config->master_seed << "]\n"
      << "  feasible analyzed:     " << k.feasible_analyzed << '\n'
      << "  infeasible analyzed:   " << k.infeasible_analyzed << '\n'
      << "  tests generated:       " << k.tests_generated << '\n'
      << "  alternatives:          " << k.alternatives_synthesized << " (" << k.duplicates_suppressed
      << " duplicates suppressed)\n"
      << "  branches covered:      " << report.branches_covered << '/' << report.branches_total << '\n'
      << "  elapsed:               " << report.elapsed_seconds << " s\n"
      << "  report:                " << out_path << ", " << csv_path << '\n';
  return kExitOk;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    std::size_t used = 0;
    if (dash != std::string::npos && dash > 0) {
      const auto lo = std::stoull(item.substr(0, dash));
      const auto hi = std::stoull(item.substr(dash + 1), &used);
      if (used != item.size() - dash - 1 || hi < lo) throw std::invalid_argument(item);
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    }
  }
  return seeds;
}

int cmd_compare(const std::string& file, const Flags& f, const std::string& seeds_text, const std::string& csv_path,
                std::ostream& out, std::ostream& err) {
  const auto config = build_config(f, err);
  if (!config) return kExitConfig;
  std::vector<std::uint64_t> seeds;
  try {
    seeds = parse_seeds(seeds_text);
  } catch (const std::exception&) {
    err << "error: --seeds expects a list like 1,2,3 or 1-5\n";
    return kExitConfig;
  }
  if (seeds.empty()) {
    err << "error: at least one seed is required\n";
    return kExitConfig;
  }
  const auto unit = load(file, err);
  if (!unit) return kExitParse;
  const ComparisonSummary summary = compare_modes(*unit, *config, seeds);
  print_comparison(out, summary);
  if (!csv_path.empty()) {
    std::ostringstream csv;
    write_comparison_csv(csv, summary);
    if (!write_text(csv_path, csv.str(), err)) return kExitConfig;
  }
  return kExitOk;
}

int cmd_solve_pc(const std::string& file, const std::string& pc_text, const Flags& f, std::ostream& out,
                 std::ostream& err) {
  const auto config = build_config(f, err);
  if (!config) return kExitConfig;
  const auto unit = load(file, err);
  if (!unit) return kExitParse;
  PathCondition pc;
  try {
    pc = parse_path_condition(pc_text, unit_resolver(*unit));
  } catch (const ClauseParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  if (pc.empty()) {
    err << "error: empty path condition\n";
    return kExitParse;
  }
  SearchBudget budget;
  if (config->clock == ClockKind::kVirtual) {
    budget.max_evaluations = static_cast<std::uint64_t>(config->pc_budget_seconds * config->evals_per_second + 0.5);
  } else {
    budget.wall = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(config->pc_budget_seconds));
  }
  SearchConfig search = config->search;
  search.step_limit = config->step_limit;
  Rng rng = make_rng(config->master_seed);
  const SolveResult result = solve(*unit, pc, search, budget, rng);
  const double seconds = config->clock == ClockKind::kVirtual
                             ? static_cast<double>(result.evaluations) / config->evals_per_second
                             : std::chrono::duration<double>(result.elapsed).count();
  out << "pc: " << canonical(pc) << '\n';
  if (!result.solved()) {
    out << "exhausted after " << result.evaluations << " evaluations (" << seconds << " s)\n";
    return kExitExhausted;
  }
  out << "solved after " << result.evaluations << " evaluations (" << seconds << " s)\nargs:";
  for (std::size_t i = 0; i < result.test->args.size(); ++i) {
    out << ' ' << unit->params[i] << '=' << result.test->args[i];
  }
  out << '\n';
  return kExitOk;
}

int cmd_corpus_list(const std::string& dir, std::ostream& out, std::ostream& err) {
  std::vector<std::string> files;
  try {
    files = unit_files(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  for (const auto& path : files) {
    const auto unit = load(path, err);
    if (!unit) return kExitParse;
    out << path << "  " << unit->name << "  params=" << unit->params.size() << "  fields=" << unit->fields.size()
        << "  branch-sites=" << unit->method_sites << '\n';
  }
  for (const auto& path : golden_files(dir)) out << path << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path selection for concolic test generation", "pathsel"};
  app.require_subcommand(1);

  Flags run_flags, compare_flags, solve_flags;
  std::string run_file, run_out = "report.json", run_csv;
  auto* run_cmd = app.add_subcommand("run", "run the generation loop on a unit and write JSON and CSV reports");
  run_cmd->add_option("file", run_file, "unit file (.tu)")->required();
  add_engine_flags(run_cmd, run_flags);
  run_cmd->add_option("--out", run_out, "JSON report path")->capture_default_str();
  run_cmd->add_option("--csv", run_csv, "CSV summary path (default: beside --out)");

  std::string cmp_file, cmp_seeds = "1-5", cmp_csv;
  auto* cmp_cmd = app.add_subcommand("compare", "run knn and fifo modes over several seeds");
  cmp_cmd->add_option("file", cmp_file, "unit file (.tu)")->required();
  add_engine_flags(cmp_cmd, compare_flags);
  cmp_cmd->add_option("--seeds", cmp_seeds, "seed list, e.g. 1,2,3 or 1-5")->capture_default_str();
  cmp_cmd->add_option("--csv", cmp_csv, "write the comparison table as CSV");

  std::string solve_file, solve_pc_text;
  auto* solve_cmd = app.add_subcommand("solve-pc", "search for constructor arguments satisfying a path condition");
  solve_cmd->add_option("file", solve_file, "unit file (.tu)")->required();
  solve_cmd->add_option("pc", solve_pc_text, "path condition, clauses joined by &&")->required();
  add_engine_flags(solve_cmd, solve_flags);

  std::string list_dir = corpus_dir();
  auto* list_cmd = app.add_subcommand("corpus-list", "list corpus units and golden files");
  list_cmd->add_option("--dir", list_dir, "corpus directory")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitConfig;
  }

  if (run_cmd->parsed()) return cmd_run(run_file, run_flags, run_out, run_csv, out, err);
  if (cmp_cmd->parsed()) return cmd_compare(cmp_file, compare_flags, cmp_seeds, cmp_csv, out, err);
  if (solve_cmd->parsed()) return cmd_solve_pc(solve_file, solve_pc_text, solve_flags, out, err);
  return cmd_corpus_list(list_dir, out, err);
}

}  // namespace pathsel
