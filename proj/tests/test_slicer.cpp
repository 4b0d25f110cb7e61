#include <gtest/gtest.h>

#include "pathsel/slicer.hpp"
#include "support.hpp"

using namespace pathsel;

namespace {

PathCondition alt(const std::string& text) {
  PathCondition pc = parse_path_condition(text);
  pc.suffix_index = pc.size() - 1;
  return pc;
}

}  // namespace

TEST(Slicer, TransitiveVariableDependency) {
  EXPECT_EQ(canonical(slice(alt("a > 0 && c > 0 && c + b > 0 && b < 5"))), "c > 0 && c + b > 0 && b < 5");
}

TEST(Slicer, ObjectDependency) {
  EXPECT_EQ(canonical(slice(alt("O2.c < 0 && O1.b > 0 && O1.a > 0"))), "O1.b > 0 && O1.a > 0");
}

TEST(Slicer, SingleClause) {
  const auto pc = alt("x > 0");
  EXPECT_EQ(slice(pc), pc);
}

TEST(Slicer, ConstantClausesDetach) {
  PathCondition pc = alt("x > 0 && y > 0");
  pc.clauses.insert(pc.clauses.begin(), make_clause(CmpOp::kGt, sym_const(5), sym_const(3)));
  pc.suffix_index = pc.size() - 1;
  EXPECT_EQ(canonical(slice(pc)), "y > 0");
}

TEST(Slicer, SuffixKeptLastAndMarked) {
  const auto s = slice(alt("a[0] > 0 && z == 1 && a.length <= 1"));
  EXPECT_EQ(canonical(s), "a[0] > 0 && a.length <= 1");
  EXPECT_EQ(s.suffix_index, s.size() - 1);
}

TEST(DependencyGraph, Edges) {
  const auto none = build_dependency_graph(parse_path_condition("x > 0 && y > 0"));
  EXPECT_TRUE(none.edges.empty());
  const auto arr = build_dependency_graph(parse_path_condition("A[0] > 0 && A.length <= 1"));
  ASSERT_EQ(arr.edges.size(), 1u);
  EXPECT_EQ(arr.edges[0].kind, EdgeKind::kObject);
  const auto path = build_dependency_graph(parse_path_condition("x > 0 && y > 0 && x + y > 0"));
  ASSERT_EQ(path.edges.size(), 2u);
  EXPECT_EQ(path.edges[0], (DependencyEdge{0, 2, EdgeKind::kBoth}));
  EXPECT_EQ(path.edges[1], (DependencyEdge{1, 2, EdgeKind::kBoth}));
  EXPECT_FALSE(path.connected(0, 1));
  EXPECT_TRUE(path.connected(2, 0));
  const auto both = build_dependency_graph(parse_path_condition("O.x > 0 && O.x < 9"));
  ASSERT_EQ(both.edges.size(), 1u);
  EXPECT_EQ(both.edges[0].kind, EdgeKind::kBoth);
}

TEST(SlicerProperty, MatchesBruteForceOracle) {
  Rng rng = make_rng(2024);
  for (int n = 0; n < 1000; ++n) {
    const auto pc = pathsel::testing::random_alternative(rng);
    ASSERT_EQ(slice(pc), pathsel::testing::brute_force_slice(pc)) << canonical(pc);
  }
}

TEST(SlicerProperty, IdempotentAndPartitioned) {
  Rng rng = make_rng(2025);
  for (int n = 0; n < 500; ++n) {
    const auto pc = pathsel::testing::random_alternative(rng);
    const auto s = slice(pc);
    EXPECT_EQ(slice(s), s);
    // Dropped clauses share nothing with kept ones.
    std::size_t k = 0;
    for (const auto& c : pc.clauses) {
      if (k < s.size() && s.clauses[k] == c) {
        ++k;
        continue;
      }
      for (const auto& kept : s.clauses) EXPECT_FALSE(pathsel::testing::clauses_share(c, kept));
    }
    EXPECT_EQ(k, s.size());
  }
}
