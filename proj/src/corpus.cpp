#include "pathsel/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathsel/concolic.hpp"

namespace pathsel {

namespace fs = std::filesystem;

std::string corpus_dir() {
  if (const char* env = std::getenv("PATHSEL_CORPUS")) return env;
#ifdef PATHSEL_CORPUS_DIR
  return PATHSEL_CORPUS_DIR;
#else
  return "corpus";
#endif
}

namespace {

// Executes and returns (observed clauses, alternatives); empty when the
// constructor throws.
std::pair<std::vector<std::string>, std::vector<std::string>> observe(const ir::UnitDef& unit,
                                                                      const std::vector<std::int64_t>& args) {
  std::pair<std::vector<std::string>, std::vector<std::string>> out;
  const RunResult run = step_budgeted_run(unit, TestCase{args, {}});
  if (run.ctor_threw()) return out;
  for (const auto& c : run.outcome->observed_pc.clauses) out.first.push_back(canonical(c));
  for (const auto& alt : synthesize_alternatives(run.outcome->observed_pc)) out.second.push_back(canonical(alt));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GoldenFormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_mismatch(const char* what, const std::vector<std::string>& want,
                           const std::vector<std::string>& got) {
  const std::size_t n = std::min(want.size(), got.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (want[i] != got[i]) {
      return std::string(what) + " #" + std::to_string(i + 1) + ": expected `" + want[i] + "`, got `" + got[i] + "`";
    }
  }
  if (want.size() != got.size()) {
    return std::string(what) + ": expected " + std::to_string(want.size()) + " entries, got " +
           std::to_string(got.size());
  }
  return {};
}

std::vector<std::string> files_with_suffix(const std::string& dir, const std::string& suffix) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string render_golden(const ir::UnitDef& unit, const std::vector<std::int64_t>& args) {
  const auto [observed, alternatives] = observe(unit, args);
  std::ostringstream out;
  out << "unit: " << unit.name << "\nargs:";
  for (auto a : args) out << ' ' << a;
  out << "\nobserved:\n";
  for (const auto& c : observed) out << "  " << c << '\n';
  out << "alternatives:\n";
  for (const auto& a : alternatives) out << "  " << a << '\n';
  return out.str();
}

GoldenCase parse_golden(const std::string& text) {
  GoldenCase g;
  std::istringstream in(text);
  std::string line;
  enum { kNone, kObserved, kAlternatives } section = kNone;
  bool have_args = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("unit:", 0) == 0) continue;
    if (t.rfind("args:", 0) == 0) {
      std::istringstream as(t.substr(5));
      std::int64_t v;
      while (as >> v) g.args.push_back(v);
      if (!as.eof()) throw GoldenFormatError("malformed args line: " + t);
      have_args = true;
    } else if (t == "observed:") {
      section = kObserved;
    } else if (t == "alternatives:") {
      section = kAlternatives;
    } else if (section == kObserved) {
      g.observed.push_back(t);
    } else if (section == kAlternatives) {
      g.alternatives.push_back(t);
    } else {
      throw GoldenFormatError("unexpected line: " + t);
    }
  }
  if (!have_args) throw GoldenFormatError("missing args line");
  return g;
}

GoldenCase load_golden(const std::string& path) {
  GoldenCase g = parse_golden(read_file(path));
  g.path = path;
  // sample_class.zeros.golden -> sample_class.tu
  const fs::path p(path);
  std::string stem = p.filename().string();
  stem = stem.substr(0, stem.find('.'));
  g.unit_file = (p.parent_path() / (stem + ".tu")).string();
  return g;
}

GoldenVerdict verify_golden(const GoldenCase& golden) {
  GoldenVerdict v;
  const ir::UnitDef unit = ir::load_unit_file(golden.unit_file);
  const auto [observed, alternatives] = observe(unit, golden.args);
  v.diff = first_mismatch("observed clause", golden.observed, observed);
  if (v.diff.empty()) v.diff = first_mismatch("alternative", golden.alternatives, alternatives);
  v.pass = v.diff.empty();
  return v;
}

std::vector<std::string> golden_files(const std::string& dir) { return files_with_suffix(dir, ".golden"); }
std::vector<std::string> unit_files(const std::string& dir) { return files_with_suffix(dir, ".tu"); }

}  // namespace pathsel
