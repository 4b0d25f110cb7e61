#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathsel/corpus.hpp"
#include "support.hpp"

using namespace pathsel;

TEST(Corpus, AllUnitsParse) {
  const auto units = unit_files(corpus_dir());
  EXPECT_GE(units.size(), 4u);
  for (const auto& f : units) EXPECT_NO_THROW(ir::load_unit_file(f)) << f;
}

TEST(Corpus, GoldensVerify) {
  const auto files = golden_files(corpus_dir());
  EXPECT_GE(files.size(), 5u);
  for (const auto& f : files) {
    const auto verdict = verify_golden(load_golden(f));
    EXPECT_TRUE(verdict.pass) << f << ": " << verdict.diff;
  }
}

TEST(Corpus, GoldensRegenerateByteIdentically) {
  for (const auto& f : golden_files(corpus_dir())) {
    const auto g = load_golden(f);
    std::ifstream in(f);
    std::ostringstream text;
    text << in.rdbuf();
    EXPECT_EQ(render_golden(ir::load_unit_file(g.unit_file), g.args), text.str()) << f;
  }
}

TEST(Corpus, TamperedGoldenFails) {
  auto g = load_golden(pathsel::testing::corpus_path("sample_class.zeros.golden"));
  ASSERT_FALSE(g.alternatives.empty());
  g.alternatives.back() += " && a[3] > 0";
  const auto verdict = verify_golden(g);
  EXPECT_FALSE(verdict.pass);
  EXPECT_FALSE(verdict.diff.empty());
}

TEST(Corpus, MalformedGolden) {
  EXPECT_THROW(parse_golden("unit: X\nargs: 1 two\n"), GoldenFormatError);
  EXPECT_THROW(parse_golden("observed:\n  x > 0\n"), GoldenFormatError);
}
