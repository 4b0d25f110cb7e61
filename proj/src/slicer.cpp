#include "pathsel/slicer.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <string>

namespace pathsel {

namespace {

bool intersects(const std::set<std::string>& x, const std::set<std::string>& y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

bool DependencyGraph::connected(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return std::any_of(edges.begin(), edges.end(), [&](const DependencyEdge& e) { return e.a == a && e.b == b; });
}

DependencyGraph build_dependency_graph(const PathCondition& pc) {
  const std::size_t n = pc.clauses.size();
  std::vector<std::set<std::string>> vars(n);
  std::vector<std::set<std::string>> objects(n);
  for (std::size_t i = 0; i < n; ++i) {
    vars[i] = vars_of(pc.clauses[i]);
    objects[i] = objects_of(pc.clauses[i]);
  }
  DependencyGraph g;
  g.node_count = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool by_var = intersects(vars[i], vars[j]);
      const bool by_obj = intersects(objects[i], objects[j]);
      if (by_var && by_obj) {
        g.edges.push_back({i, j, EdgeKind::kBoth});
      } else if (by_var) {
        g.edges.push_back({i, j, EdgeKind::kVariable});
      } else if (by_obj) {
        g.edges.push_back({i, j, EdgeKind::kObject});
      }
    }
  }
  return g;
}

PathCondition slice(const PathCondition& pc) {
  if (pc.clauses.empty()) return pc;
  const std::size_t n = pc.clauses.size();
  const std::size_t suffix = pc.suffix_index.value_or(n - 1);
  assert(suffix == n - 1);

  const DependencyGraph g = build_dependency_graph(pc);
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (const auto& e : g.edges) {
    adjacent[e.a].push_back(e.b);
    adjacent[e.b].push_back(e.a);
  }
  std::vector<bool> keep(n, false);
  std::vector<std::size_t> stack{suffix};
  keep[suffix] = true;
  while (!stack.empty()) {
    const std::size_t at = stack.back();
    stack.pop_back();
    for (std::size_t next : adjacent[at]) {
      if (!keep[next]) {
        keep[next] = true;
        stack.push_back(next);
      }
    }
  }

  PathCondition out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) out.clauses.push_back(pc.clauses[i]);
  }
  out.suffix_index = out.clauses.size() - 1;
  return out;
}

}  // namespace pathsel
