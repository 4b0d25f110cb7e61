#pragma once

// Helpers shared by the unit tests and the acceptance binary: random path
// conditions, random fingerprints and brute-force oracles.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pathsel/fingerprint.hpp"
#include "pathsel/learner.hpp"
#include "pathsel/random.hpp"
#include "pathsel/symcore.hpp"

namespace pathsel::testing {

inline std::string corpus_path(const std::string& name) { return std::string(PATHSEL_CORPUS_DIR) + "/" + name; }

// One symbol of a random path condition, together with the object it
// belongs to by construction.
struct RandomSymbol {
  SymBox expr;
  std::string object;
};

// Up to `max_symbols` symbols spread over up to `max_objects` objects. An
// object is either a qualified owner `Ok` (symbols `Ok.fj`) or an array
// `arrk` (symbols `arrk[i]` and `arrk.length`).
inline std::vector<RandomSymbol> random_symbols(Rng& rng, int max_symbols, int max_objects) {
  const int n_objects = static_cast<int>(uniform_int(rng, 1, max_objects));
  const int n_symbols = static_cast<int>(uniform_int(rng, 1, max_symbols));
  std::vector<bool> is_array(static_cast<std::size_t>(n_objects));
  for (auto&& a : is_array) a = uniform01(rng) < 0.5;
  std::set<std::string> seen;
  std::vector<RandomSymbol> out;
  for (int attempt = 0; attempt < 64 && static_cast<int>(out.size()) < n_symbols; ++attempt) {
    const int o = static_cast<int>(uniform_int(rng, 0, n_objects - 1));
    std::string object;
    SymBox expr = sym_const(0);
    if (is_array[static_cast<std::size_t>(o)]) {
      object = "arr" + std::to_string(o);
      const auto i = uniform_int(rng, -1, 3);
      expr = i < 0 ? sym_len(object) : sym_cell(object, i);
    } else {
      object = "O" + std::to_string(o);
      expr = sym_field(object + ".f" + std::to_string(uniform_int(rng, 0, 3)));
    }
    const std::string text = canonical(*expr);
    RandomSymbol s{std::move(expr), std::move(object)};
    if (seen.insert(text).second) out.push_back(std::move(s));
  }
  return out;
}

inline Clause random_clause(Rng& rng, const std::vector<RandomSymbol>& symbols) {
  static constexpr CmpOp kOps[] = {CmpOp::kLt, CmpOp::kLe, CmpOp::kGt, CmpOp::kGe, CmpOp::kEq, CmpOp::kNe};
  const auto pick = [&] { return symbols[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(symbols.size()) - 1))]; };
  const CmpOp op = kOps[uniform_int(rng, 0, 5)];
  const double shape = uniform01(rng);
  if (shape < 0.05) return make_clause(op, sym_const(uniform_int(rng, -5, 5)), sym_const(uniform_int(rng, -5, 5)));
  SymBox lhs = pick().expr;
  if (shape < 0.45) lhs = sym_bin(uniform01(rng) < 0.5 ? ArithOp::kAdd : ArithOp::kSub, lhs, pick().expr);
  SymBox rhs = uniform01(rng) < 0.2 ? pick().expr : sym_const(uniform_int(rng, -100, 100));
  return make_clause(op, lhs, rhs);
}

// A random alternative: 1..max_clauses clauses, suffix at the end.
inline PathCondition random_alternative(Rng& rng, int max_clauses = 8, int max_symbols = 6, int max_objects = 3) {
  const auto symbols = random_symbols(rng, max_symbols, max_objects);
  PathCondition pc;
  const auto n = uniform_int(rng, 1, max_clauses);
  for (std::int64_t i = 0; i < n; ++i) pc.clauses.push_back(random_clause(rng, symbols));
  pc.suffix_index = pc.clauses.size() - 1;
  return pc;
}

// Objects of a symbol name as written in canonical text, derived
// independently of the library: `O.x` -> O, `arr[i]` / `arr.length` -> arr,
// bare `x` -> x.
inline std::string object_of_symbol(const std::string& sym) {
  const auto bracket = sym.find('[');
  if (bracket != std::string::npos) return sym.substr(0, bracket);
  const auto dot = sym.find('.');
  if (dot != std::string::npos) return sym.substr(0, dot);
  return sym;
}

inline void collect(const SymExpr& e, std::set<std::string>& vars) {
  if (const auto* b = std::get_if<SymBin>(&e.node)) {
    collect(*b->lhs, vars);
    collect(*b->rhs, vars);
  } else if (!e.is_const()) {
    vars.insert(canonical(e));
  }
}

inline bool clauses_share(const Clause& x, const Clause& y) {
  std::set<std::string> vx, vy;
  collect(*x.lhs, vx);
  collect(*x.rhs, vx);
  collect(*y.lhs, vy);
  collect(*y.rhs, vy);
  for (const auto& v : vx) {
    if (vy.count(v) != 0) return true;
    for (const auto& w : vy) {
      if (object_of_symbol(v) == object_of_symbol(w)) return true;
    }
  }
  return false;
}

// The smallest clause subset that contains the suffix and shares nothing
// with its complement, found by enumerating all subsets.
inline PathCondition brute_force_slice(const PathCondition& pc) {
  const std::size_t n = pc.size();
  const std::size_t last = n - 1;
  std::uint32_t best = 0;
  int best_size = 1 << 30;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (((mask >> last) & 1U) == 0) continue;
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if (((mask >> i) & 1U) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (((mask >> j) & 1U) == 0 && clauses_share(pc.clauses[i], pc.clauses[j])) {
          closed = false;
          break;
        }
      }
    }
    const int size = __builtin_popcount(mask);
    if (closed && size < best_size) {
      best = mask;
      best_size = size;
    }
  }
  PathCondition out;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best >> i) & 1U) out.clauses.push_back(pc.clauses[i]);
  }
  out.suffix_index = out.clauses.size() - 1;
  return out;
}

inline Fingerprint random_fingerprint(Rng& rng, double density) {
  Fingerprint fp;
  for (std::size_t bit = 0; bit < Fingerprint::kBits; ++bit) {
    if (uniform01(rng) < density) fp.set_flat(bit);
  }
  return fp;
}

// Full sort of every example by (similarity desc, sequence asc).
inline Classification brute_force_classify(const Fingerprint& fp, const TrainingSet& ts, int k = kNeighbours) {
  if (static_cast<int>(ts.size()) < k) return Classification{1, k, 0.0, ts.size()};
  struct Scored {
    double sim;
    std::uint64_t seq;
    int label;
  };
  std::vector<Scored> all;
  for (const auto& e : ts.examples()) all.push_back({jaccard(fp, e.fp), e.sequence_no, e.label});
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return a.seq < b.seq;
  });
  int ones = 0;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    ones += all[static_cast<std::size_t>(i)].label;
    sum += all[static_cast<std::size_t>(i)].sim;
  }
  const int zeros = k - ones;
  Classification c;
  c.label = ones >= zeros ? 1 : 0;
  c.voting = std::max(ones, zeros);
  c.avg_similarity = sum / k;
  c.trained_on = ts.size();
  return c;
}

}  // namespace pathsel::testing
