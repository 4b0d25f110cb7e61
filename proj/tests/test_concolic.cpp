#include <gtest/gtest.h>

#include "pathsel/concolic.hpp"
#include "support.hpp"

using namespace pathsel;
using pathsel::testing::corpus_path;

namespace {

const ir::UnitDef& sample() {
  static const ir::UnitDef unit = ir::load_unit_file(corpus_path("sample_class.tu"));
  return unit;
}

TestCase args15(std::int64_t a0 = 0, std::int64_t b0 = 0) {
  TestCase t;
  t.args.assign(15, 0);
  t.args[0] = a0;
  t.args[5] = b0;
  return t;
}

}  // namespace

TEST(ConcolicCtor, ZerosState) {
  const auto r = execute_constructor(sample(), args15());
  const auto* st = std::get_if<ConcreteFieldState>(&r);
  ASSERT_NE(st, nullptr);
  EXPECT_EQ(std::get<std::vector<std::int64_t>>(st->at("a")), std::vector<std::int64_t>(5, 0));
  EXPECT_EQ(std::get<std::vector<std::int64_t>>(st->at("b")), std::vector<std::int64_t>(10, 0));
}

TEST(ConcolicCtor, GuardThrows) {
  EXPECT_TRUE(std::holds_alternative<CtorThrew>(execute_constructor(sample(), args15(0, -1))));
  const auto run = step_budgeted_run(sample(), args15(0, -1));
  EXPECT_TRUE(run.ctor_threw());
  EXPECT_FALSE(run.outcome);
}

TEST(ConcolicCtor, EmptyCtor) {
  const auto unit = ir::parse_unit("unit U() { ctor {} method { return 0; } }");
  const auto r = execute_constructor(unit, TestCase{});
  ASSERT_TRUE(std::holds_alternative<ConcreteFieldState>(r));
  EXPECT_TRUE(std::get<ConcreteFieldState>(r).empty());
}

TEST(ConcolicMethod, ZerosPath) {
  // The assertion holds on all-zero input: k is set only when b[j] < -a[i].
  const auto run = step_budgeted_run(sample(), args15());
  ASSERT_TRUE(run.outcome);
  EXPECT_EQ(run.outcome->kind, OutcomeKind::kReturned);
  EXPECT_EQ(run.outcome->value, "null");
  EXPECT_EQ(canonical(run.outcome->observed_pc),
            "a.length > 0 && a[0] <= 0 && a.length > 1 && a[1] <= 1000 && a.length > 2 && a[2] <= 2000 && "
            "a.length > 3 && a[3] <= 3000 && a.length > 4 && a[4] <= 4000 && a.length <= 5");
}

TEST(ConcolicMethod, PositiveFirstCell) {
  const auto run = step_budgeted_run(sample(), args15(123));
  ASSERT_TRUE(run.outcome);
  const auto& pc = run.outcome->observed_pc;
  ASSERT_GE(pc.size(), 2u);
  EXPECT_EQ(canonical(pc.clauses[0]), "a.length > 0");
  EXPECT_EQ(canonical(pc.clauses[1]), "a[0] > 0");
  EXPECT_EQ(canonical(pc.clauses[3]), "b[0] >= 0 - a[0]");
}

TEST(ConcolicMethod, YesBranch) {
  TestCase t = args15();
  for (int i = 0; i < 5; ++i) t.args[static_cast<std::size_t>(i)] = i * 1000 + 1;
  const auto run = step_budgeted_run(sample(), t);
  ASSERT_TRUE(run.outcome);
  EXPECT_EQ(run.outcome->value, "\"Yes\"");
  EXPECT_EQ(run.outcome->covered.size(), 8u);
}

TEST(ConcolicMethod, TracedPathHoldsOnState) {
  Rng rng = make_rng(3);
  for (int n = 0; n < 200; ++n) {
    TestCase t;
    for (int i = 0; i < 15; ++i) t.args.push_back(uniform_int(rng, i < 5 ? -5000 : 0, 5000));
    const auto run = step_budgeted_run(sample(), t);
    ASSERT_TRUE(run.outcome);
    const auto ev = evaluate(run.outcome->observed_pc, *run.state);
    EXPECT_EQ(ev.satisfied_prefix, run.outcome->observed_pc.size());
    const auto again = step_budgeted_run(sample(), t);
    EXPECT_EQ(again.outcome->observed_pc, run.outcome->observed_pc);
  }
}

TEST(ConcolicMethod, StraightLineHasEmptyPath) {
  const auto unit = ir::load_unit_file(corpus_path("straight_line.tu"));
  const auto run = step_budgeted_run(unit, TestCase{{3, 4}, {}});
  ASSERT_TRUE(run.outcome);
  EXPECT_TRUE(run.outcome->observed_pc.empty());
}

TEST(ConcolicMethod, LocalOnlyConditionsRecordNothing) {
  const auto unit = ir::parse_unit(
      "unit U(p:int) { fields { x: int; } ctor { x = p; } "
      "method { i = 0; while (i < 3) { i = i + 1; } if (x > i) { return 1; } return 0; } }");
  const auto run = step_budgeted_run(unit, TestCase{{5}, {}});
  EXPECT_EQ(canonical(run.outcome->observed_pc), "x > 3");
}

TEST(ConcolicMethod, AssertionViolation) {
  const auto unit = ir::load_unit_file(corpus_path("nested_guard.tu"));
  const auto run = step_budgeted_run(unit, TestCase{{0, 10, -2000}, {}});
  ASSERT_TRUE(run.outcome);
  EXPECT_EQ(run.outcome->kind, OutcomeKind::kAssertionViolated);
  EXPECT_EQ(canonical(run.outcome->observed_pc), "mid < lo && mid <= lo - 1000");
}

TEST(ConcolicMethod, OutOfBoundsThrows) {
  const auto unit = ir::parse_unit(
      "unit U(p:int) { fields { a: int[]; } ctor { a = [p]; } method { if (a[1] > 0) { return 1; } return 0; } }");
  const auto run = step_budgeted_run(unit, TestCase{{1}, {}});
  ASSERT_TRUE(run.outcome);
  EXPECT_EQ(run.outcome->kind, OutcomeKind::kThrew);
  EXPECT_TRUE(run.outcome->observed_pc.empty());
}

TEST(ConcolicBudget, Divergence) {
  const auto unit = ir::parse_unit(
      "unit U(p:int) { fields { x: int; } ctor { x = p; } method { i = 0; while (i < x) { i = i + 1; } return i; } }");
  EXPECT_NO_THROW(step_budgeted_run(unit, TestCase{{5}, {}}));
  EXPECT_THROW(step_budgeted_run(unit, TestCase{{1000}, {}}, 10), DivergenceError);
}

TEST(ConcolicBudget, ArityMismatch) {
  EXPECT_THROW(step_budgeted_run(sample(), TestCase{{1, 2}, {}}), ExecutionError);
}
