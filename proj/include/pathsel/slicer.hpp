#pragma once

// Path-condition slicing: keep only the clauses that transitively share a
// variable or an owning object with the suffix clause.

#include <cstddef>
#include <utility>
#include <vector>

#include "pathsel/symcore.hpp"

namespace pathsel {

enum class EdgeKind { kVariable, kObject, kBoth };

struct DependencyEdge {
  std::size_t a;  // a < b
  std::size_t b;
  EdgeKind kind;
  bool operator==(const DependencyEdge&) const = default;
};

struct DependencyGraph {
  std::size_t node_count = 0;
  std::vector<DependencyEdge> edges;  // sorted by (a, b)

  bool connected(std::size_t a, std::size_t b) const;
};

DependencyGraph build_dependency_graph(const PathCondition& pc);

// Requires a suffix at the last position. Dropped clauses share no variable
// and no object with the kept ones; order is preserved and the suffix stays
// last.
PathCondition slice(const PathCondition& pc);

}  // namespace pathsel
