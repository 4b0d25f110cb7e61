#pragma once

// Incremental k-nearest-neighbour feasibility classifier over fingerprints.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pathsel/fingerprint.hpp"

namespace pathsel {

inline constexpr int kNeighbours = 3;

struct TrainingExample {
  Fingerprint fp;
  int label = 0;  // 1 feasible, 0 infeasible
  std::uint64_t sequence_no = 0;
};

struct Classification {
  int label = 1;
  int voting = 3;
  double avg_similarity = 0.0;
  std::size_t trained_on = 0;
  bool operator==(const Classification&) const = default;
};

// Append-only; sequence numbers increase with insertion order.
class TrainingSet {
 public:
  void add(Fingerprint fp, int label);
  const std::vector<TrainingExample>& examples() const { return examples_; }
  std::size_t size() const { return examples_.size(); }

  std::size_t last_recache_size() const { return last_recache_size_; }
  void mark_recached() { last_recache_size_ = examples_.size(); }

  // One line per example: `<label> <256 hex digits>`.
  void dump(std::ostream& out) const;

 private:
  std::vector<TrainingExample> examples_;
  std::size_t last_recache_size_ = 0;
};

// Majority vote of the k most similar examples (ties broken towards the
// older example). With fewer than k examples the verdict is optimistic:
// label 1, voting k, average similarity 0.
Classification classify(const Fingerprint& fp, const TrainingSet& ts, int k = kNeighbours);

void add_example(TrainingSet& ts, Fingerprint fp, int label);

bool needs_recache(const TrainingSet& ts, std::size_t threshold);

}  // namespace pathsel
