#pragma once

// Concrete execution of a unit with symbolic shadowing of the target method.
//
// The constructor runs purely concretely and yields the field state. The
// method then runs concretely while every field-derived value carries a
// symbolic expression; each condition whose symbolic form mentions a field
// contributes one clause (in the direction taken) to the observed path
// condition.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pathsel/ir.hpp"
#include "pathsel/symcore.hpp"

namespace pathsel {

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

struct TestCase {
  std::vector<std::int64_t> args;
  // Canonical text of the path condition this test was generated for;
  // empty for seed tests.
  std::string generated_for;

  bool is_seed() const { return generated_for.empty(); }
  bool operator==(const TestCase&) const = default;
};

enum class OutcomeKind { kReturned, kAssertionViolated, kThrew };

std::string_view to_string(OutcomeKind kind);

// (condition site, direction taken)
using BranchId = std::pair<int, bool>;

struct ExecutionOutcome {
  OutcomeKind kind = OutcomeKind::kReturned;
  std::string value;  // return token: integer text, `null`, `"text"` or `void`
  PathCondition observed_pc;
  std::uint64_t steps = 0;
  std::set<BranchId> covered;
};

class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(std::uint64_t limit)
      : std::runtime_error("step limit of " + std::to_string(limit) + " exceeded") {}
};

// Faults outside the language's throw semantics: reading an unassigned
// local, leaving a field unassigned, wrong argument count.
class ExecutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CtorThrew {
  bool operator==(const CtorThrew&) const = default;
};

using CtorResult = std::variant<ConcreteFieldState, CtorThrew>;

// Shared step budget so a constructor and method run can be metered as one.
class StepBudget {
 public:
  explicit StepBudget(std::uint64_t limit = kDefaultStepLimit) : limit_(limit) {}
  void charge() {
    if (++used_ > limit_) throw DivergenceError(limit_);
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

CtorResult execute_constructor(const ir::UnitDef& unit, const TestCase& test, StepBudget& budget);
CtorResult execute_constructor(const ir::UnitDef& unit, const TestCase& test,
                               std::uint64_t step_limit = kDefaultStepLimit);

ExecutionOutcome execute_method_concolic(const ir::UnitDef& unit, const ConcreteFieldState& state,
                                         StepBudget& budget);
ExecutionOutcome execute_method_concolic(const ir::UnitDef& unit, const ConcreteFieldState& state,
                                         std::uint64_t step_limit = kDefaultStepLimit);

struct RunResult {
  std::optional<ConcreteFieldState> state;  // absent when the ctor threw
  std::optional<ExecutionOutcome> outcome;  // absent when the ctor threw
  bool ctor_threw() const { return !state.has_value(); }
};

// Constructor then method under one step budget. Throws DivergenceError or
// ExecutionError.
RunResult step_budgeted_run(const ir::UnitDef& unit, const TestCase& test,
                            std::uint64_t step_limit = kDefaultStepLimit);

}  // namespace pathsel
