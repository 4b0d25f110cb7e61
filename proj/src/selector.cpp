#include "pathsel/selector.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

namespace pathsel {

std::string_view to_string(Bucket b) {
  switch (b) {
    case Bucket::kLabel1Voting3: return "label1Voting3";
    case Bucket::kLabel1Voting2: return "label1Voting2";
    case Bucket::kLabel0Voting2: return "label0Voting2";
    case Bucket::kLabel0Voting3: return "label0Voting3";
  }
  return "?";
}

Bucket bucket_of(const Classification& c, int k) {
  const bool unanimous = c.voting >= k;
  if (c.label == 1) return unanimous ? Bucket::kLabel1Voting3 : Bucket::kLabel1Voting2;
  return unanimous ? Bucket::kLabel0Voting3 : Bucket::kLabel0Voting2;
}

bool valid_probabilities(const BucketProbabilities& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= 1e-9;
}

std::size_t BucketSet::total() const {
  std::size_t n = 0;
  for (const auto& b : buckets) n += b.size();
  return n;
}

BucketSet bucketize(std::span<const PendingEntry> pending) {
  BucketSet set;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    assert(pending[i].classification.has_value());
    set.buckets[static_cast<std::size_t>(bucket_of(*pending[i].classification))].push_back(i);
  }
  return set;
}

Bucket draw_bucket(const BucketProbabilities& p, Rng& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < kBucketCount; ++i) {
    cumulative += p[i];
    if (u < cumulative) return static_cast<Bucket>(i);
  }
  // Rounding left u above the last boundary: take the last bucket with mass.
  for (std::size_t i = kBucketCount; i-- > 0;) {
    if (p[i] > 0.0) return static_cast<Bucket>(i);
  }
  return Bucket::kLabel1Voting3;
}

std::optional<Bucket> fallback(const BucketSet& set, Bucket drawn) {
  const auto start = static_cast<std::size_t>(drawn);
  for (std::size_t step = 0; step < kBucketCount; ++step) {
    const std::size_t b = (start + step) % kBucketCount;
    if (!set.buckets[b].empty()) return static_cast<Bucket>(b);
  }
  return std::nullopt;
}

std::size_t select_by_cumulative(std::span<const double> weights, double value) {
  assert(!weights.empty());
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (value < cumulative) return i;
  }
  // value at the top boundary: last entry with positive width.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

std::size_t draw_weighted(std::span<const double> weights, Rng& rng) {
  assert(!weights.empty());
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) {
    return static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(weights.size()) - 1));
  }
  return select_by_cumulative(weights, uniform01(rng) * total);
}

PendingEntry pick(std::vector<PendingEntry>& pending, Rng& rng, const BucketProbabilities& p) {
  if (pending.empty()) throw NoEntryError();
  const BucketSet set = bucketize(pending);
  const Bucket drawn = draw_bucket(p, rng);
  const Bucket chosen = *fallback(set, drawn);
  const auto& members = set[chosen];

  std::vector<double> weights;
  weights.reserve(members.size());
  for (std::size_t idx : members) weights.push_back(pending[idx].classification->avg_similarity);
  const std::size_t at = members[draw_weighted(weights, rng)];

  PendingEntry picked = std::move(pending[at]);
  pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(at));
  return picked;
}

}  // namespace pathsel
