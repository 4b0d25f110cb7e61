#include <gtest/gtest.h>

#include "pathsel/corpus.hpp"
#include "pathsel/ir.hpp"
#include "support.hpp"

using namespace pathsel;
using pathsel::testing::corpus_path;

namespace {

bool has_violation(const std::vector<ir::Violation>& vs, const std::string& message, const std::string& id = {}) {
  for (const auto& v : vs) {
    if (v.message == message && (id.empty() || v.identifier == id)) return true;
  }
  return false;
}

std::vector<ir::Violation> violations_of(const std::string& src) {
  try {
    ir::parse_unit(src);
  } catch (const ir::SemanticError& e) {
    return e.violations();
  }
  return {};
}

}  // namespace

TEST(IrParse, SampleClassShape) {
  const auto unit = ir::load_unit_file(corpus_path("sample_class.tu"));
  EXPECT_EQ(unit.name, "SampleClass");
  ASSERT_EQ(unit.params.size(), 15u);
  EXPECT_EQ(unit.params.front(), "a0");
  EXPECT_EQ(unit.params.back(), "b9");
  ASSERT_EQ(unit.fields.size(), 2u);
  EXPECT_EQ(unit.fields[0].name, "a");
  EXPECT_EQ(unit.fields[0].kind, ir::FieldKind::kIntArray);
  EXPECT_EQ(unit.fields[1].name, "b");
  EXPECT_EQ(unit.fields[1].kind, ir::FieldKind::kIntArray);
  EXPECT_TRUE(ir::validate(unit).empty());
}

TEST(IrParse, MinimalUnit) {
  const auto unit = ir::parse_unit("unit U() { ctor {} method { return 0 } }");
  EXPECT_EQ(unit.name, "U");
  EXPECT_TRUE(unit.params.empty());
  EXPECT_TRUE(unit.fields.empty());
  EXPECT_EQ(unit.method_sites, 0);
}

TEST(IrParse, UndeclaredIdentifierNamed) {
  const auto vs = violations_of("unit U() { ctor {} method { return x; } }");
  EXPECT_TRUE(has_violation(vs, "undeclared identifier", "x"));
}

TEST(IrParse, SyntaxErrorCarriesPosition) {
  try {
    ir::parse_unit("unit U() {\n  ctor { x = ; }\n  method { return 0; }\n}");
    FAIL() << "expected a parse error";
  } catch (const ir::ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(IrParse, UnreadableFile) {
  try {
    ir::load_unit_file(corpus_path("no_such_unit.tu"));
    FAIL();
  } catch (const ir::ParseError& e) {
    EXPECT_EQ(e.line(), 0);
  }
}

TEST(IrParse, CommentsAndOptionalSemicolons) {
  const auto unit = ir::parse_unit(
      "// leading comment\nunit U(p:int) { fields { x: int; } ctor { x = p; if (p < 0) { throw } } "
      "method { if (x) { return \"pos\" } return null } }");
  EXPECT_EQ(unit.method_sites, 1);
}

TEST(IrValidate, ParamsNotVisibleInMethod) {
  const auto vs = violations_of("unit U(p:int) { fields { x: int; } ctor { x = p; } method { return p; } }");
  EXPECT_TRUE(has_violation(vs, "params not visible in method", "p"));
}

TEST(IrValidate, LoopVariableNeverModified) {
  const auto vs = violations_of("unit U() { ctor {} method { while (true) {} return 0; } }");
  EXPECT_TRUE(has_violation(vs, "loop variable never modified"));
  const auto vs2 = violations_of("unit U() { ctor {} method { i = 0; while (i < 3) { j = 1; } return 0; } }");
  EXPECT_TRUE(has_violation(vs2, "loop variable never modified"));
}

TEST(IrValidate, NameClashes) {
  EXPECT_TRUE(has_violation(violations_of("unit U(p:int, p:int) { ctor {} method { return 0; } }"),
                            "duplicate parameter", "p"));
  EXPECT_TRUE(has_violation(
      violations_of("unit U() { fields { x: int; x: int; } ctor { x = 0; } method { return 0; } }"),
      "duplicate field", "x"));
  EXPECT_TRUE(has_violation(
      violations_of("unit U(x:int) { fields { x: int; } ctor { x = 0; } method { return 0; } }"),
      "field shadows parameter", "x"));
}

TEST(IrValidate, ArrayScalarMisuse) {
  EXPECT_TRUE(has_violation(
      violations_of("unit U() { fields { a: int[]; } ctor { a = [1]; } method { return a; } }"),
      "array field used as a scalar", "a"));
  EXPECT_TRUE(has_violation(
      violations_of("unit U() { fields { x: int; } ctor { x = 1; } method { return x[0]; } }"),
      "scalar field used as an array", "x"));
}

TEST(IrValidate, EveryCorpusUnitIsValid) {
  const auto files = unit_files(PATHSEL_CORPUS_DIR);
  ASSERT_GE(files.size(), 4u);
  for (const auto& f : files) {
    const auto unit = ir::load_unit_file(f);
    EXPECT_TRUE(ir::validate(unit).empty()) << f;
  }
}

TEST(IrRoundTrip, CorpusUnits) {
  for (const auto& f : unit_files(PATHSEL_CORPUS_DIR)) {
    const auto unit = ir::load_unit_file(f);
    const std::string printed = ir::pretty_print(unit);
    const auto reparsed = ir::parse_unit(printed);
    EXPECT_EQ(reparsed, unit) << f;
    EXPECT_EQ(ir::pretty_print(reparsed), printed) << f;
  }
}

TEST(IrRoundTrip, PrecedenceAndExtremes) {
  const char* src =
      "unit U(p:int) { fields { x: int; a: int[]; } ctor { x = -(p - 3) * (p + 1) - -9223372036854775807 - 1; "
      "a = [p, 2 * p]; } method { if (!(x >= a[1] - len(a))) { return 1; } return 0; } }";
  const auto unit = ir::parse_unit(src);
  EXPECT_EQ(ir::parse_unit(ir::pretty_print(unit)), unit);
}
