#pragma once

// Path-condition data model: symbolic expressions over unit fields,
// comparison clauses in canonical form, negation, abstraction, alternative
// synthesis and concrete evaluation against a field state.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pathsel/box.hpp"
#include "pathsel/ir.hpp"

namespace pathsel {

using ir::ArithOp;
using ir::CmpOp;

// Concrete object state produced by a constructor run: scalar fields hold an
// int, array fields hold their cells (length fixed at construction).
using FieldValue = std::variant<std::int64_t, std::vector<std::int64_t>>;
using ConcreteFieldState = std::map<std::string, FieldValue>;

struct SymExpr;
using SymBox = Box<SymExpr>;

struct SymConst {
  std::int64_t value;
  bool operator==(const SymConst&) const = default;
};
struct SymField {
  std::string name;
  bool operator==(const SymField&) const = default;
};
struct SymArrayCell {
  std::string field;
  std::int64_t index;
  bool operator==(const SymArrayCell&) const = default;
};
struct SymArrayLen {
  std::string field;
  bool operator==(const SymArrayLen&) const = default;
};
struct SymBin {
  ArithOp op;
  SymBox lhs;
  SymBox rhs;
  bool operator==(const SymBin&) const = default;
};

struct SymExpr {
  std::variant<SymConst, SymField, SymArrayCell, SymArrayLen, SymBin> node;
  bool operator==(const SymExpr&) const = default;

  bool is_const() const { return std::holds_alternative<SymConst>(node); }
};

SymBox sym_const(std::int64_t value);
SymBox sym_field(std::string name);
SymBox sym_cell(std::string field, std::int64_t index);
SymBox sym_len(std::string field);
// Folds when both operands are constants (wrapping arithmetic).
SymBox sym_bin(ArithOp op, SymBox lhs, SymBox rhs);

// Wrapping 64-bit arithmetic shared by the interpreter and the evaluator.
std::int64_t wrap_arith(ArithOp op, std::int64_t lhs, std::int64_t rhs);
bool compare(CmpOp op, std::int64_t lhs, std::int64_t rhs);
CmpOp complement(CmpOp op);  // < <-> >=, <= <-> >, == <-> !=
CmpOp mirror(CmpOp op);      // operand swap: < <-> >, <= <-> >=

struct Clause {
  CmpOp op;
  SymBox lhs;
  SymBox rhs;
  bool operator==(const Clause&) const = default;
};

// Builds a clause in canonical form: a constant-only side, if any, is rhs.
Clause make_clause(CmpOp op, SymBox lhs, SymBox rhs);

std::string canonical(const SymExpr& expr);
std::string canonical(const Clause& clause);

struct AbstractClause {
  std::string text;
  bool operator==(const AbstractClause&) const = default;
  auto operator<=>(const AbstractClause&) const = default;
};

AbstractClause abstract_of(const Clause& clause);
// Replaces numeric literals in an already serialized clause by `.`;
// abstract_text(abstract_of(c).text) == abstract_of(c).text.
AbstractClause abstract_text(std::string_view serialized);

Clause negate(const Clause& clause);

struct PathCondition {
  std::vector<Clause> clauses;
  // Position of the negated clause for synthesized alternatives; observed
  // path conditions carry none.
  std::optional<std::size_t> suffix_index;

  bool empty() const { return clauses.empty(); }
  std::size_t size() const { return clauses.size(); }
  bool operator==(const PathCondition&) const = default;
};

std::vector<PathCondition> synthesize_alternatives(const PathCondition& pc);

// Joins canonical clauses with " && ".
std::string canonical(const PathCondition& pc);

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(std::string symbol);
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

std::int64_t evaluate(const SymExpr& expr, const ConcreteFieldState& state);
bool holds(const Clause& clause, const ConcreteFieldState& state);

// Korel-style distance to making the clause true; 0 iff it holds. Strict
// comparisons add 1 so a boundary miss is never distance 0.
double branch_distance(CmpOp op, std::int64_t lhs, std::int64_t rhs);

struct Violated {
  std::size_t clause_index;
  double distance;
};

struct Evaluation {
  std::size_t satisfied_prefix = 0;
  std::optional<Violated> first_violation;
};

// Throws EvalError naming the first symbol missing from the state.
Evaluation evaluate(const PathCondition& pc, const ConcreteFieldState& state);

// Symbol names as they appear in canonical text: `x`, `a[3]`, `a.length`.
std::set<std::string> vars_of(const Clause& clause);
// Owning objects: `O.x` belongs to `O`, an unqualified scalar `x` is its own
// object, array cells and lengths belong to the array.
std::set<std::string> objects_of(const Clause& clause);

class ClauseParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maps a symbol name written in clause text onto the field it denotes.
// `is_array` tells whether the name was used with `[i]` or `.length`.
using SymbolResolver = std::function<std::string(const std::string& name, bool is_array)>;

// Parses a conjunction of clauses written in canonical syntax. Accepts
// `&&`, `;` or `∧` between clauses and `≤ ≥ ≠` as operator spellings.
// The result has no suffix. Throws ClauseParseError.
PathCondition parse_path_condition(std::string_view text, const SymbolResolver& resolve = {});

// Resolver for a unit: exact field name first, otherwise the unique field
// whose name matches ignoring case (so `A[0]` denotes field `a`).
SymbolResolver unit_resolver(const ir::UnitDef& unit);

}  // namespace pathsel
