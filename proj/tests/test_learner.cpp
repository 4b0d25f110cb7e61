#include <gtest/gtest.h>

#include <sstream>

#include "pathsel/learner.hpp"
#include "support.hpp"

using namespace pathsel;

namespace {

// A fingerprint with `on` of the first `of` flat bits set; jaccard against
// the full `of`-bit pattern is on / of.
Fingerprint prefix_bits(std::size_t on) {
  Fingerprint fp;
  for (std::size_t i = 0; i < on; ++i) fp.set_flat(i);
  return fp;
}

}  // namespace

TEST(Classify, MajorityAndMean) {
  const Fingerprint probe = prefix_bits(20);
  TrainingSet ts;
  ts.add(prefix_bits(18), 1);  // 0.9
  ts.add(prefix_bits(16), 1);  // 0.8
  ts.add(prefix_bits(19), 0);  // 0.95
  const auto c = classify(probe, ts);
  EXPECT_EQ(c.label, 1);
  EXPECT_EQ(c.voting, 2);
  EXPECT_DOUBLE_EQ(c.avg_similarity, (0.9 + 0.8 + 0.95) / 3);
  EXPECT_EQ(c.trained_on, 3u);
}

TEST(Classify, ExactMatchOutvoted) {
  Fingerprint probe;
  probe.set_flat(5);
  Fingerprint far;
  far.set_flat(900);
  TrainingSet ts;
  ts.add(probe, 0);
  ts.add(far, 1);
  ts.add(far, 1);
  const auto c = classify(probe, ts);
  EXPECT_EQ(c.label, 1);
  EXPECT_EQ(c.voting, 2);
  EXPECT_DOUBLE_EQ(c.avg_similarity, 1.0 / 3);
}

TEST(Classify, Bootstrap) {
  TrainingSet ts;
  EXPECT_EQ(classify(prefix_bits(3), ts), (Classification{1, 3, 0.0, 0}));
  ts.add(prefix_bits(3), 0);
  ts.add(prefix_bits(3), 0);
  EXPECT_EQ(classify(prefix_bits(3), ts), (Classification{1, 3, 0.0, 2}));
}

TEST(Classify, TiesFavourOlderExamples) {
  const Fingerprint fp = prefix_bits(4);
  TrainingSet ts;
  ts.add(fp, 0);
  ts.add(fp, 0);
  ts.add(fp, 1);
  ts.add(fp, 1);
  ts.add(fp, 1);
  const auto c = classify(fp, ts);
  EXPECT_EQ(c.label, 0);
  EXPECT_EQ(c.voting, 2);
}

TEST(TrainingSet, AddAndSequence) {
  TrainingSet ts;
  add_example(ts, prefix_bits(1), 1);
  add_example(ts, prefix_bits(2), 0);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts.examples()[0].label, 1);
  EXPECT_EQ(ts.examples()[1].label, 0);
  EXPECT_LT(ts.examples()[0].sequence_no, ts.examples()[1].sequence_no);
  std::ostringstream out;
  ts.dump(out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, 2), "1 ");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Recache, Threshold) {
  TrainingSet ts;
  for (int i = 0; i < 4; ++i) ts.add(prefix_bits(1), 1);
  EXPECT_FALSE(needs_recache(ts, 5));
  ts.add(prefix_bits(1), 1);
  EXPECT_TRUE(needs_recache(ts, 5));
  ts.mark_recached();
  EXPECT_FALSE(needs_recache(ts, 5));
}

TEST(ClassifyProperty, MatchesBruteForce) {
  Rng rng = make_rng(99);
  for (int n = 0; n < 300; ++n) {
    TrainingSet ts;
    const auto size = uniform_int(rng, 0, 200);
    const double density = uniform01(rng) * 0.05;
    for (std::int64_t i = 0; i < size; ++i) {
      // Some duplicates to exercise tie-breaking.
      if (i > 0 && uniform01(rng) < 0.2) {
        ts.add(ts.examples()[static_cast<std::size_t>(uniform_int(rng, 0, i - 1))].fp, static_cast<int>(uniform_int(rng, 0, 1)));
      } else {
        ts.add(pathsel::testing::random_fingerprint(rng, density), static_cast<int>(uniform_int(rng, 0, 1)));
      }
    }
    const auto fp = pathsel::testing::random_fingerprint(rng, density);
    const auto got = classify(fp, ts);
    ASSERT_EQ(got, pathsel::testing::brute_force_classify(fp, ts));
    if (ts.size() >= 3) {
      EXPECT_TRUE(got.voting == 2 || got.voting == 3);
    }
    EXPECT_GE(got.avg_similarity, 0.0);
    EXPECT_LE(got.avg_similarity, 1.0);
  }
}
