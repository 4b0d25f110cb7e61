#include "pathsel/learner.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace pathsel {

void TrainingSet::add(Fingerprint fp, int label) {
  assert(label == 0 || label == 1);
  const auto seq = static_cast<std::uint64_t>(examples_.size());
  examples_.push_back(TrainingExample{fp, label, seq});
}

void TrainingSet::dump(std::ostream& out) const {
  for (const auto& e : examples_) out << e.label << ' ' << e.fp.hex() << '\n';
}

void add_example(TrainingSet& ts, Fingerprint fp, int label) { ts.add(fp, label); }

bool needs_recache(const TrainingSet& ts, std::size_t threshold) {
  return ts.size() - ts.last_recache_size() >= threshold;
}

Classification classify(const Fingerprint& fp, const TrainingSet& ts, int k) {
  Classification out;
  out.trained_on = ts.size();
  const auto kk = static_cast<std::size_t>(k);
  if (ts.size() < kk) {
    out.label = 1;
    out.voting = k;
    out.avg_similarity = 0.0;
    return out;
  }

  struct Scored {
    double similarity;
    std::uint64_t seq;
    int label;
  };
  std::vector<Scored> scored;
  scored.reserve(ts.size());
  for (const auto& e : ts.examples()) scored.push_back({jaccard(fp, e.fp), e.sequence_no, e.label});
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(kk), scored.end(),
                    [](const Scored& a, const Scored& b) {
                      if (a.similarity != b.similarity) return a.similarity > b.similarity;
                      return a.seq < b.seq;
                    });

  int ones = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < kk; ++i) {
    ones += scored[i].label;
    total += scored[i].similarity;
  }
  const int zeros = k - ones;
  out.label = ones >= zeros ? 1 : 0;
  out.voting = std::max(ones, zeros);
  out.avg_similarity = total / static_cast<double>(k);
  return out;
}

}  // namespace pathsel
