#include <gtest/gtest.h>

#include <array>

#include "pathsel/selector.hpp"
#include "support.hpp"

using namespace pathsel;

namespace {

PendingEntry entry(int label, int voting, double sim, std::uint64_t no) {
  PendingEntry e;
  e.classification = Classification{label, voting, sim, 0};
  e.enqueue_no = no;
  e.key = std::to_string(no);
  return e;
}

}  // namespace

TEST(Bucketize, Partition) {
  std::vector<PendingEntry> p{entry(1, 3, 0, 0), entry(1, 2, 0, 1), entry(0, 3, 0, 2)};
  const auto b = bucketize(p);
  EXPECT_EQ(b[Bucket::kLabel1Voting3].size(), 1u);
  EXPECT_EQ(b[Bucket::kLabel1Voting2].size(), 1u);
  EXPECT_EQ(b[Bucket::kLabel0Voting2].size(), 0u);
  EXPECT_EQ(b[Bucket::kLabel0Voting3].size(), 1u);
  std::vector<PendingEntry> same{entry(1, 3, 0, 0), entry(1, 3, 0, 1)};
  EXPECT_EQ(bucketize(same)[Bucket::kLabel1Voting3].size(), 2u);
  EXPECT_EQ(bucketize(std::vector<PendingEntry>{}).total(), 0u);
}

TEST(Cumulative, Intervals) {
  const std::array<double, 4> w{5, 7, 2, 4};
  EXPECT_EQ(select_by_cumulative(w, 13.0), 2u);
  EXPECT_EQ(select_by_cumulative(w, 0.0), 0u);
  EXPECT_EQ(select_by_cumulative(w, 4.999), 0u);
  EXPECT_EQ(select_by_cumulative(w, 5.0), 1u);
  EXPECT_EQ(select_by_cumulative(w, 12.0), 2u);
  EXPECT_EQ(select_by_cumulative(w, 17.9), 3u);
  const std::array<double, 3> zw{0, 3, 0};
  EXPECT_EQ(select_by_cumulative(zw, 0.0), 1u);
}

TEST(Fallback, CyclicOrder) {
  std::vector<PendingEntry> p{entry(1, 2, 0, 0)};
  const auto b = bucketize(p);
  EXPECT_EQ(fallback(b, Bucket::kLabel1Voting3), Bucket::kLabel1Voting2);
  EXPECT_EQ(fallback(b, Bucket::kLabel0Voting2), Bucket::kLabel1Voting2);
  EXPECT_FALSE(fallback(bucketize(std::vector<PendingEntry>{}), Bucket::kLabel1Voting3));
}

TEST(Pick, FallsBackToLabel1Voting2) {
  Rng rng = make_rng(1);
  for (int i = 0; i < 50; ++i) {
    std::vector<PendingEntry> p{entry(1, 2, 0.4, 0), entry(1, 2, 0.2, 1)};
    const auto got = pick(p, rng, BucketProbabilities{1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(got.classification->voting, 2);
    EXPECT_EQ(p.size(), 1u);
  }
}

TEST(Pick, SingleEntryAndEmpty) {
  Rng rng = make_rng(2);
  std::vector<PendingEntry> p{entry(0, 3, 0, 7)};
  EXPECT_EQ(pick(p, rng).enqueue_no, 7u);
  EXPECT_TRUE(p.empty());
  EXPECT_THROW(pick(p, rng), NoEntryError);
}

TEST(Pick, Deterministic) {
  std::vector<PendingEntry> base;
  for (std::uint64_t i = 0; i < 40; ++i) {
    base.push_back(entry(static_cast<int>(i % 2), 2 + static_cast<int>(i % 3 == 0), 0.1 * static_cast<double>(i % 7), i));
  }
  auto p1 = base, p2 = base;
  Rng r1 = make_rng(5), r2 = make_rng(5);
  while (!p1.empty()) EXPECT_EQ(pick(p1, r1).enqueue_no, pick(p2, r2).enqueue_no);
}

TEST(Probabilities, Validation) {
  EXPECT_TRUE(valid_probabilities(kDefaultBucketProbabilities));
  EXPECT_FALSE(valid_probabilities({0.5, 0.5, 0.5, -0.5}));
  EXPECT_FALSE(valid_probabilities({0.5, 0.3, 0.1, 0.05}));
}

TEST(SelectorProperty, BucketFrequencies) {
  Rng rng = make_rng(123);
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(draw_bucket(kDefaultBucketProbabilities, rng))];
  double chi2 = 0.0;
  for (std::size_t b = 0; b < 4; ++b) {
    const double expected = n * kDefaultBucketProbabilities[b];
    chi2 += (counts[b] - expected) * (counts[b] - expected) / expected;
  }
  EXPECT_LT(chi2, 11.345);  // chi-square, 3 degrees of freedom, alpha 0.01
}

TEST(SelectorProperty, WithinBucketWeights) {
  Rng rng = make_rng(321);
  const std::array<double, 4> w{5, 7, 2, 4};
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[draw_weighted(w, rng)];
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(counts[i] / double(n), w[i] / 18.0, 0.01);
  const std::array<double, 2> zero{0, 0};
  std::array<int, 2> zc{};
  for (int i = 0; i < 10000; ++i) ++zc[draw_weighted(zero, rng)];
  EXPECT_NEAR(zc[0] / 10000.0, 0.5, 0.03);
}
