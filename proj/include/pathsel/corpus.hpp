#pragma once

// Golden expectations for the benchmark units. A golden file sits beside
// its unit (`<unit>.<case>.golden`) and records the seed arguments, the
// observed method-phase path condition and the synthesized alternatives,
// one canonical clause or conjunction per line.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathsel/ir.hpp"
#include "pathsel/symcore.hpp"

namespace pathsel {

std::string corpus_dir();  // compiled-in default, overridable by PATHSEL_CORPUS

struct GoldenCase {
  std::string path;       // the golden file
  std::string unit_file;  // the .tu it belongs to
  std::vector<std::int64_t> args;
  std::vector<std::string> observed;      // clause per entry
  std::vector<std::string> alternatives;  // canonical PC per entry
};

class GoldenFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Executes the unit on args and renders the golden text.
std::string render_golden(const ir::UnitDef& unit, const std::vector<std::int64_t>& args);

GoldenCase parse_golden(const std::string& text);
GoldenCase load_golden(const std::string& path);

struct GoldenVerdict {
  bool pass = false;
  std::string diff;  // first mismatch, empty on pass
};

GoldenVerdict verify_golden(const GoldenCase& golden);

// All golden files under dir, sorted by name.
std::vector<std::string> golden_files(const std::string& dir);
// All .tu files under dir, sorted by name.
std::vector<std::string> unit_files(const std::string& dir);

}  // namespace pathsel
