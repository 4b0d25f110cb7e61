#include "pathsel/concolic.hpp"

#include <unordered_map>

namespace pathsel {

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kReturned: return "returned";
    case OutcomeKind::kAssertionViolated: return "assertion-violated";
    case OutcomeKind::kThrew: return "threw";
  }
  return "?";
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// A concrete value with an optional symbolic shadow (present only when the
// value depends on a field of the initial method state).
struct Value {
  std::int64_t concrete = 0;
  std::optional<SymBox> sym;
};

SymBox symbolic_of(const Value& v) { return v.sym ? *v.sym : sym_const(v.concrete); }

struct ArrayValue {
  std::vector<Value> cells;
  std::optional<SymBox> length_sym;
};

enum class Flow { kNormal, kReturn, kThrow, kAssertFail };

struct CondResult {
  bool taken;
  std::optional<Clause> clause;  // clause that holds iff the condition is true
};

class Interpreter {
 public:
  Interpreter(const ir::UnitDef& unit, StepBudget& budget, bool tracing)
      : unit_(unit), budget_(budget), tracing_(tracing) {}

  CtorResult run_ctor(const TestCase& test) {
    if (test.args.size() != unit_.params.size()) {
      throw ExecutionError("constructor expects " + std::to_string(unit_.params.size()) + " arguments, got " +
                           std::to_string(test.args.size()));
    }
    for (std::size_t i = 0; i < unit_.params.size(); ++i) locals_[unit_.params[i]] = Value{test.args[i], {}};
    const Flow flow = block(unit_.ctor_body);
    if (flow == Flow::kThrow || flow == Flow::kAssertFail) return CtorThrew{};
    ConcreteFieldState state;
    for (const auto& f : unit_.fields) {
      if (f.kind == ir::FieldKind::kInt) {
        auto it = scalars_.find(f.name);
        if (it == scalars_.end()) throw ExecutionError("field never assigned: " + f.name);
        state.emplace(f.name, it->second.concrete);
      } else {
        auto it = arrays_.find(f.name);
        if (it == arrays_.end()) throw ExecutionError("field never assigned: " + f.name);
        std::vector<std::int64_t> cells;
        cells.reserve(it->second.cells.size());
        for (const auto& c : it->second.cells) cells.push_back(c.concrete);
        state.emplace(f.name, std::move(cells));
      }
    }
    return state;
  }

  ExecutionOutcome run_method(const ConcreteFieldState& state) {
    for (const auto& f : unit_.fields) {
      auto it = state.find(f.name);
      if (it == state.end()) throw ExecutionError("field state lacks field: " + f.name);
      if (f.kind == ir::FieldKind::kInt) {
        const auto* v = std::get_if<std::int64_t>(&it->second);
        if (v == nullptr) throw ExecutionError("field state holds an array for scalar field: " + f.name);
        scalars_[f.name] = Value{*v, tracing_ ? std::optional<SymBox>(sym_field(f.name)) : std::nullopt};
      } else {
        const auto* cells = std::get_if<std::vector<std::int64_t>>(&it->second);
        if (cells == nullptr) throw ExecutionError("field state holds a scalar for array field: " + f.name);
        ArrayValue arr;
        arr.cells.reserve(cells->size());
        for (std::size_t i = 0; i < cells->size(); ++i) {
          arr.cells.push_back(Value{(*cells)[i], tracing_ ? std::optional<SymBox>(sym_cell(
                                                                f.name, static_cast<std::int64_t>(i)))
                                                          : std::nullopt});
        }
        if (tracing_) arr.length_sym = sym_len(f.name);
        arrays_[f.name] = std::move(arr);
      }
    }
    const std::uint64_t before = budget_.used();
    const Flow flow = block(unit_.method_body);
    ExecutionOutcome out;
    switch (flow) {
      case Flow::kNormal:
        out.kind = OutcomeKind::kReturned;
        out.value = "void";
        break;
      case Flow::kReturn:
        out.kind = OutcomeKind::kReturned;
        out.value = return_value_;
        break;
      case Flow::kThrow: out.kind = OutcomeKind::kThrew; break;
      case Flow::kAssertFail: out.kind = OutcomeKind::kAssertionViolated; break;
    }
    out.observed_pc = std::move(pc_);
    out.steps = budget_.used() - before;
    out.covered = std::move(covered_);
    return out;
  }

 private:
  Flow block(const ir::Block& body) {
    for (const auto& s : body) {
      const Flow f = stmt(*s);
      if (f != Flow::kNormal) return f;
    }
    return Flow::kNormal;
  }

  Flow stmt(const ir::Stmt& s) {
    budget_.charge();
    return std::visit(
        Overloaded{
            [&](const ir::Assign& a) {
              std::optional<Value> v = expr(*a.value);
              if (!v) return Flow::kThrow;
              if (a.is_field) {
                scalars_[a.target] = std::move(*v);
              } else {
                locals_[a.target] = std::move(*v);
              }
              return Flow::kNormal;
            },
            [&](const ir::ArrayInit& a) {
              ArrayValue arr;
              arr.cells.reserve(a.elements.size());
              for (const auto& e : a.elements) {
                std::optional<Value> v = expr(*e);
                if (!v) return Flow::kThrow;
                arr.cells.push_back(std::move(*v));
              }
              arrays_[a.field] = std::move(arr);
              return Flow::kNormal;
            },
            [&](const ir::If& i) {
              std::optional<bool> taken = branch(*i.cond, i.site);
              if (!taken) return Flow::kThrow;
              return block(*taken ? i.then_block : i.else_block);
            },
            [&](const ir::While& w) {
              for (;;) {
                budget_.charge();
                std::optional<bool> taken = branch(*w.cond, w.site);
                if (!taken) return Flow::kThrow;
                if (!*taken) return Flow::kNormal;
                const Flow f = block(w.body);
                if (f != Flow::kNormal) return f;
              }
            },
            [&](const ir::Assert& a) {
              std::optional<bool> taken = branch(*a.cond, a.site);
              if (!taken) return Flow::kThrow;
              return *taken ? Flow::kNormal : Flow::kAssertFail;
            },
            [](const ir::Throw&) { return Flow::kThrow; },
            [&](const ir::Return& r) {
              return std::visit(Overloaded{
                                    [&](const ir::ExprBox& e) {
                                      std::optional<Value> v = expr(*e);
                                      if (!v) return Flow::kThrow;
                                      return_value_ = std::to_string(v->concrete);
                                      return Flow::kReturn;
                                    },
                                    [&](const ir::NullLiteral&) {
                                      return_value_ = "null";
                                      return Flow::kReturn;
                                    },
                                    [&](const ir::StringLiteral& lit) {
                                      return_value_ = "\"" + lit.text + "\"";
                                      return Flow::kReturn;
                                    },
                                },
                                r.value);
            },
        },
        s.node);
  }

  // Evaluates a condition, records coverage and the traced clause. Empty
  // when evaluation faulted (out-of-bounds read).
  std::optional<bool> branch(const ir::Cond& c, int site) {
    std::optional<CondResult> r = cond(c);
    if (!r) return std::nullopt;
    if (tracing_) {
      covered_.emplace(site, r->taken);
      if (r->clause) pc_.clauses.push_back(r->taken ? std::move(*r->clause) : negate(*r->clause));
    }
    return r->taken;
  }

  std::optional<CondResult> cond(const ir::Cond& c) {
    return std::visit(Overloaded{
                          [&](const ir::Cmp& cmp) -> std::optional<CondResult> {
                            std::optional<Value> l = expr(*cmp.lhs);
                            if (!l) return std::nullopt;
                            std::optional<Value> r = expr(*cmp.rhs);
                            if (!r) return std::nullopt;
                            CondResult out{compare(cmp.op, l->concrete, r->concrete), std::nullopt};
                            if (l->sym || r->sym) out.clause = make_clause(cmp.op, symbolic_of(*l), symbolic_of(*r));
                            return out;
                          },
                          [&](const ir::BoolVar& b) -> std::optional<CondResult> {
                            const Value& v = b.is_field ? scalar_field(b.name) : local(b.name);
                            CondResult out{v.concrete != 0, std::nullopt};
                            if (v.sym) out.clause = make_clause(CmpOp::kNe, *v.sym, sym_const(0));
                            return out;
                          },
                          [&](const ir::Not& n) -> std::optional<CondResult> {
                            std::optional<CondResult> inner = cond(*n.operand);
                            if (!inner) return std::nullopt;
                            inner->taken = !inner->taken;
                            if (inner->clause) inner->clause = negate(*inner->clause);
                            return inner;
                          },
                      },
                      c.node);
  }

  const Value& local(const std::string& name) {
    auto it = locals_.find(name);
    if (it == locals_.end()) throw ExecutionError("variable read before assignment: " + name);
    return it->second;
  }

  const Value& scalar_field(const std::string& name) {
    auto it = scalars_.find(name);
    if (it == scalars_.end()) throw ExecutionError("field read before assignment: " + name);
    return it->second;
  }

  const ArrayValue& array_field(const std::string& name) {
    auto it = arrays_.find(name);
    if (it == arrays_.end()) throw ExecutionError("array read before assignment: " + name);
    return it->second;
  }

  // Empty on an out-of-bounds array read, which the caller turns into a throw.
  std::optional<Value> expr(const ir::Expr& e) {
    return std::visit(Overloaded{
                          [](const ir::IntConst& c) -> std::optional<Value> { return Value{c.value, {}}; },
                          [&](const ir::Var& v) -> std::optional<Value> { return local(v.name); },
                          [&](const ir::FieldRead& f) -> std::optional<Value> { return scalar_field(f.name); },
                          [&](const ir::ArrayRead& a) -> std::optional<Value> {
                            std::optional<Value> idx = expr(*a.index);
                            if (!idx) return std::nullopt;
                            const ArrayValue& arr = array_field(a.field);
                            if (idx->concrete < 0 || static_cast<std::uint64_t>(idx->concrete) >= arr.cells.size()) {
                              return std::nullopt;
                            }
                            return arr.cells[static_cast<std::size_t>(idx->concrete)];
                          },
                          [&](const ir::ArrayLen& a) -> std::optional<Value> {
                            const ArrayValue& arr = array_field(a.field);
                            return Value{static_cast<std::int64_t>(arr.cells.size()), arr.length_sym};
                          },
                          [&](const ir::BinArith& b) -> std::optional<Value> {
                            std::optional<Value> l = expr(*b.lhs);
                            if (!l) return std::nullopt;
                            std::optional<Value> r = expr(*b.rhs);
                            if (!r) return std::nullopt;
                            Value out{wrap_arith(b.op, l->concrete, r->concrete), {}};
                            if (l->sym || r->sym) out.sym = sym_bin(b.op, symbolic_of(*l), symbolic_of(*r));
                            return out;
                          },
                          [&](const ir::Neg& n) -> std::optional<Value> {
                            std::optional<Value> x = expr(*n.operand);
                            if (!x) return std::nullopt;
                            Value out{wrap_arith(ArithOp::kSub, 0, x->concrete), {}};
                            if (x->sym) out.sym = sym_bin(ArithOp::kSub, sym_const(0), *x->sym);
                            return out;
                          },
                      },
                      e.node);
  }

  const ir::UnitDef& unit_;
  StepBudget& budget_;
  bool tracing_;
  std::unordered_map<std::string, Value> locals_;
  std::unordered_map<std::string, Value> scalars_;
  std::unordered_map<std::string, ArrayValue> arrays_;
  PathCondition pc_;
  std::set<BranchId> covered_;
  std::string return_value_;
};

}  // namespace

CtorResult execute_constructor(const ir::UnitDef& unit, const TestCase& test, StepBudget& budget) {
  return Interpreter(unit, budget, false).run_ctor(test);
}

CtorResult execute_constructor(const ir::UnitDef& unit, const TestCase& test, std::uint64_t step_limit) {
  StepBudget budget(step_limit);
  return execute_constructor(unit, test, budget);
}

ExecutionOutcome execute_method_concolic(const ir::UnitDef& unit, const ConcreteFieldState& state,
                                         StepBudget& budget) {
  return Interpreter(unit, budget, true).run_method(state);
}

ExecutionOutcome execute_method_concolic(const ir::UnitDef& unit, const ConcreteFieldState& state,
                                         std::uint64_t step_limit) {
  StepBudget budget(step_limit);
  return execute_method_concolic(unit, state, budget);
}

RunResult step_budgeted_run(const ir::UnitDef& unit, const TestCase& test, std::uint64_t step_limit) {
  StepBudget budget(step_limit);
  RunResult result;
  CtorResult ctor = execute_constructor(unit, test, budget);
  if (auto* state = std::get_if<ConcreteFieldState>(&ctor)) {
    result.outcome = execute_method_concolic(unit, *state, budget);
    result.state = std::move(*state);
  }
  return result;
}

}  // namespace pathsel
