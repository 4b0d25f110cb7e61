#pragma once

// Two-stage random choice of the next pending path condition: first a
// (label, voting) bucket with fixed probabilities, then an entry of that
// bucket with probability proportional to its average neighbour similarity.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathsel/fingerprint.hpp"
#include "pathsel/learner.hpp"
#include "pathsel/random.hpp"
#include "pathsel/symcore.hpp"

namespace pathsel {

struct PendingEntry {
  PathCondition pc;      // the alternative as synthesized
  PathCondition sliced;  // cached slice(pc)
  Fingerprint fp;        // fingerprint_of(sliced)
  std::optional<Classification> classification;
  std::uint64_t enqueue_no = 0;
  std::string key;                        // dedup_key(pc)
  std::vector<std::int64_t> origin_args;  // test whose path produced it
};

enum class Bucket : int { kLabel1Voting3 = 0, kLabel1Voting2 = 1, kLabel0Voting2 = 2, kLabel0Voting3 = 3 };
inline constexpr std::size_t kBucketCount = 4;

std::string_view to_string(Bucket b);
Bucket bucket_of(const Classification& c, int k = kNeighbours);

using BucketProbabilities = std::array<double, kBucketCount>;
inline constexpr BucketProbabilities kDefaultBucketProbabilities{0.50, 0.30, 0.15, 0.05};

// Non-negative and summing to 1 within 1e-9.
bool valid_probabilities(const BucketProbabilities& p);

// Buckets hold positions into the pending list, in pending order.
struct BucketSet {
  std::array<std::vector<std::size_t>, kBucketCount> buckets;

  const std::vector<std::size_t>& operator[](Bucket b) const { return buckets[static_cast<std::size_t>(b)]; }
  std::size_t total() const;
};

class NoEntryError : public std::runtime_error {
 public:
  NoEntryError() : std::runtime_error("no pending path condition to pick") {}
};

// Requires every entry to be classified.
BucketSet bucketize(std::span<const PendingEntry> pending);

// Stage one without fallback: a bucket drawn with probabilities p.
Bucket draw_bucket(const BucketProbabilities& p, Rng& rng);

// First non-empty bucket at or cyclically after `drawn`.
std::optional<Bucket> fallback(const BucketSet& set, Bucket drawn);

// Index of the cumulative interval [c_{i-1}, c_i) holding `value`, where c
// is the running sum of weights.
std::size_t select_by_cumulative(std::span<const double> weights, double value);

// Stage two: index drawn proportionally to weights (uniform if all zero).
std::size_t draw_weighted(std::span<const double> weights, Rng& rng);

// Full two-stage draw. Removes the picked entry from `pending` and returns
// it. Throws NoEntryError when pending is empty.
PendingEntry pick(std::vector<PendingEntry>& pending, Rng& rng,
                  const BucketProbabilities& p = kDefaultBucketProbabilities);

}  // namespace pathsel
