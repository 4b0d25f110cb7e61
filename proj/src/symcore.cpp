#include "pathsel/symcore.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace pathsel {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

SymBox sym_const(std::int64_t value) { return SymExpr{SymConst{value}}; }
SymBox sym_field(std::string name) { return SymExpr{SymField{std::move(name)}}; }
SymBox sym_cell(std::string field, std::int64_t index) { return SymExpr{SymArrayCell{std::move(field), index}}; }
SymBox sym_len(std::string field) { return SymExpr{SymArrayLen{std::move(field)}}; }

SymBox sym_bin(ArithOp op, SymBox lhs, SymBox rhs) {
  const auto* l = std::get_if<SymConst>(&lhs->node);
  const auto* r = std::get_if<SymConst>(&rhs->node);
  if (l != nullptr && r != nullptr) return sym_const(wrap_arith(op, l->value, r->value));
  return SymExpr{SymBin{op, std::move(lhs), std::move(rhs)}};
}

std::int64_t wrap_arith(ArithOp op, std::int64_t lhs, std::int64_t rhs) {
  const auto a = static_cast<std::uint64_t>(lhs);
  const auto b = static_cast<std::uint64_t>(rhs);
  switch (op) {
    case ArithOp::kAdd: return static_cast<std::int64_t>(a + b);
    case ArithOp::kSub: return static_cast<std::int64_t>(a - b);
    case ArithOp::kMul: return static_cast<std::int64_t>(a * b);
  }
  return 0;
}

bool compare(CmpOp op, std::int64_t lhs, std::int64_t rhs) {
  switch (op) {
    case CmpOp::kLt: return lhs < rhs;
    case CmpOp::kLe: return lhs <= rhs;
    case CmpOp::kGt: return lhs > rhs;
    case CmpOp::kGe: return lhs >= rhs;
    case CmpOp::kEq: return lhs == rhs;
    case CmpOp::kNe: return lhs != rhs;
  }
  return false;
}

CmpOp complement(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return CmpOp::kGe;
    case CmpOp::kLe: return CmpOp::kGt;
    case CmpOp::kGt: return CmpOp::kLe;
    case CmpOp::kGe: return CmpOp::kLt;
    case CmpOp::kEq: return CmpOp::kNe;
    case CmpOp::kNe: return CmpOp::kEq;
  }
  return op;
}

CmpOp mirror(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return CmpOp::kGt;
    case CmpOp::kLe: return CmpOp::kGe;
    case CmpOp::kGt: return CmpOp::kLt;
    case CmpOp::kGe: return CmpOp::kLe;
    default: return op;
  }
}

Clause make_clause(CmpOp op, SymBox lhs, SymBox rhs) {
  if (lhs->is_const() && !rhs->is_const()) return Clause{mirror(op), std::move(rhs), std::move(lhs)};
  return Clause{op, std::move(lhs), std::move(rhs)};
}

Clause negate(const Clause& clause) { return Clause{complement(clause.op), clause.lhs, clause.rhs}; }

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_expr(const SymExpr& e, bool abstract, bool nested, std::string& out) {
  std::visit(Overloaded{
                 [&](const SymConst& c) { out += abstract ? "." : std::to_string(c.value); },
                 [&](const SymField& f) { out += f.name; },
                 [&](const SymArrayCell& c) {
                   out += c.field;
                   out += '[';
                   out += abstract ? "." : std::to_string(c.index);
                   out += ']';
                 },
                 [&](const SymArrayLen& l) {
                   out += l.field;
                   out += ".length";
                 },
                 [&](const SymBin& b) {
                   if (nested) out += '(';
                   write_expr(*b.lhs, abstract, true, out);
                   out += ' ';
                   out += ir::to_string(b.op);
                   out += ' ';
                   write_expr(*b.rhs, abstract, true, out);
                   if (nested) out += ')';
                 },
             },
             e.node);
}

std::string write_clause(const Clause& c, bool abstract) {
  std::string out;
  write_expr(*c.lhs, abstract, false, out);
  out += ' ';
  out += ir::to_string(c.op);
  out += ' ';
  write_expr(*c.rhs, abstract, false, out);
  return out;
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string canonical(const SymExpr& expr) {
  std::string out;
  write_expr(expr, false, false, out);
  return out;
}

std::string canonical(const Clause& clause) { return write_clause(clause, false); }

AbstractClause abstract_of(const Clause& clause) { return AbstractClause{write_clause(clause, true)}; }

AbstractClause abstract_text(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const bool prev_ident = i > 0 && (is_ident_char(s[i - 1]) || s[i - 1] == '.');
    const bool digit = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
    const bool neg_literal =
        s[i] == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])) != 0 && !prev_ident;
    if ((digit || neg_literal) && !prev_ident) {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])) != 0) ++i;
      out += '.';
    } else {
      out += s[i++];
    }
  }
  return AbstractClause{std::move(out)};
}

std::string canonical(const PathCondition& pc) {
  std::string out;
  for (const auto& c : pc.clauses) {
    if (!out.empty()) out += " && ";
    out += canonical(c);
  }
  return out;
}

std::vector<PathCondition> synthesize_alternatives(const PathCondition& pc) {
  std::vector<PathCondition> out;
  out.reserve(pc.clauses.size());
  for (std::size_t i = 0; i < pc.clauses.size(); ++i) {
    PathCondition alt;
    alt.clauses.assign(pc.clauses.begin(), pc.clauses.begin() + static_cast<std::ptrdiff_t>(i));
    alt.clauses.push_back(negate(pc.clauses[i]));
    alt.suffix_index = i;
    out.push_back(std::move(alt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

EvalError::EvalError(std::string symbol)
    : std::runtime_error("unknown symbol in path condition: " + symbol), symbol_(std::move(symbol)) {}

namespace {

const std::vector<std::int64_t>& array_of(const ConcreteFieldState& state, const std::string& field) {
  auto it = state.find(field);
  const auto* cells = it == state.end() ? nullptr : std::get_if<std::vector<std::int64_t>>(&it->second);
  if (cells == nullptr) throw EvalError(field + ".length");
  return *cells;
}

}  // namespace

std::int64_t evaluate(const SymExpr& expr, const ConcreteFieldState& state) {
  return std::visit(Overloaded{
                        [](const SymConst& c) { return c.value; },
                        [&](const SymField& f) {
                          auto it = state.find(f.name);
                          if (it == state.end()) throw EvalError(f.name);
                          const auto* v = std::get_if<std::int64_t>(&it->second);
                          if (v == nullptr) throw EvalError(f.name);
                          return *v;
                        },
                        [&](const SymArrayCell& c) {
                          auto it = state.find(c.field);
                          const auto* cells =
                              it == state.end() ? nullptr : std::get_if<std::vector<std::int64_t>>(&it->second);
                          if (cells == nullptr || c.index < 0 || static_cast<std::uint64_t>(c.index) >= cells->size()) {
                            throw EvalError(c.field + "[" + std::to_string(c.index) + "]");
                          }
                          return (*cells)[static_cast<std::size_t>(c.index)];
                        },
                        [&](const SymArrayLen& l) {
                          return static_cast<std::int64_t>(array_of(state, l.field).size());
                        },
                        [&](const SymBin& b) {
                          return wrap_arith(b.op, evaluate(*b.lhs, state), evaluate(*b.rhs, state));
                        },
                    },
                    expr.node);
}

bool holds(const Clause& clause, const ConcreteFieldState& state) {
  return compare(clause.op, evaluate(*clause.lhs, state), evaluate(*clause.rhs, state));
}

double branch_distance(CmpOp op, std::int64_t lhs, std::int64_t rhs) {
  const __int128 diff = static_cast<__int128>(lhs) - static_cast<__int128>(rhs);
  __int128 d = 0;
  switch (op) {
    case CmpOp::kLt: d = diff < 0 ? 0 : diff + 1; break;
    case CmpOp::kLe: d = diff <= 0 ? 0 : diff; break;
    case CmpOp::kGt: d = diff > 0 ? 0 : 1 - diff; break;
    case CmpOp::kGe: d = diff >= 0 ? 0 : -diff; break;
    case CmpOp::kEq: d = diff < 0 ? -diff : diff; break;
    case CmpOp::kNe: d = diff == 0 ? 1 : 0; break;
  }
  return static_cast<double>(d);
}

Evaluation evaluate(const PathCondition& pc, const ConcreteFieldState& state) {
  Evaluation result;
  for (std::size_t i = 0; i < pc.clauses.size(); ++i) {
    const Clause& c = pc.clauses[i];
    const std::int64_t lhs = evaluate(*c.lhs, state);
    const std::int64_t rhs = evaluate(*c.rhs, state);
    if (!compare(c.op, lhs, rhs)) {
      result.first_violation = Violated{i, branch_distance(c.op, lhs, rhs)};
      return result;
    }
    ++result.satisfied_prefix;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Symbols and objects

namespace {

void collect_symbols(const SymExpr& e, std::set<std::string>* vars, std::set<std::string>* objects) {
  std::visit(Overloaded{
                 [](const SymConst&) {},
                 [&](const SymField& f) {
                   if (vars) vars->insert(f.name);
                   if (objects) {
                     const auto dot = f.name.rfind('.');
                     objects->insert(dot == std::string::npos ? f.name : f.name.substr(0, dot));
                   }
                 },
                 [&](const SymArrayCell& c) {
                   if (vars) vars->insert(c.field + "[" + std::to_string(c.index) + "]");
                   if (objects) objects->insert(c.field);
                 },
                 [&](const SymArrayLen& l) {
                   if (vars) vars->insert(l.field + ".length");
                   if (objects) objects->insert(l.field);
                 },
                 [&](const SymBin& b) {
                   collect_symbols(*b.lhs, vars, objects);
                   collect_symbols(*b.rhs, vars, objects);
                 },
             },
             e.node);
}

}  // namespace

std::set<std::string> vars_of(const Clause& clause) {
  std::set<std::string> out;
  collect_symbols(*clause.lhs, &out, nullptr);
  collect_symbols(*clause.rhs, &out, nullptr);
  return out;
}

std::set<std::string> objects_of(const Clause& clause) {
  std::set<std::string> out;
  collect_symbols(*clause.lhs, nullptr, &out);
  collect_symbols(*clause.rhs, nullptr, &out);
  return out;
}

// ---------------------------------------------------------------------------
// Clause text parser

namespace {

class ClauseParser {
 public:
  ClauseParser(std::string_view text, const SymbolResolver& resolve) : s_(text), resolve_(resolve) {}

  PathCondition run() {
    PathCondition pc;
    skip();
    if (pos_ >= s_.size()) fail("empty path condition");
    pc.clauses.push_back(clause());
    for (;;) {
      skip();
      if (pos_ >= s_.size()) break;
      if (!(eat("&&") || eat(";") || eat("∧"))) fail("expected '&&' between clauses");
      pc.clauses.push_back(clause());
    }
    return pc;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ClauseParseError(why + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Clause clause() {
    SymBox lhs = sum();
    static const std::pair<std::string_view, CmpOp> kOps[] = {
        {"<=", CmpOp::kLe}, {">=", CmpOp::kGe}, {"==", CmpOp::kEq}, {"!=", CmpOp::kNe},
        {"≤", CmpOp::kLe}, {"≥", CmpOp::kGe}, {"≠", CmpOp::kNe},
        {"<", CmpOp::kLt}, {">", CmpOp::kGt},
    };
    for (auto [tok, op] : kOps) {
      if (eat(tok)) return make_clause(op, lhs, sum());
    }
    fail("expected comparison operator");
  }

  SymBox sum() {
    SymBox lhs = product();
    for (;;) {
      skip();
      if (eat("+")) {
        lhs = sym_bin(ArithOp::kAdd, lhs, product());
      } else if (eat("-")) {
        lhs = sym_bin(ArithOp::kSub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  SymBox product() {
    SymBox lhs = unary();
    while (eat("*")) lhs = sym_bin(ArithOp::kMul, lhs, unary());
    return lhs;
  }

  SymBox unary() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        return sym_const(wrap_arith(ArithOp::kSub, 0, number()));
      }
      return sym_bin(ArithOp::kSub, sym_const(0), unary());
    }
    return atom();
  }

  std::int64_t number() {
    std::uint64_t value = 0;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (value > (UINT64_MAX - digit) / 10) fail("integer literal out of range");
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected number");
    return static_cast<std::int64_t>(value);
  }

  std::string name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (is_ident_char(s_[pos_]) || s_[pos_] == '.')) {
      if (s_[pos_] == '.' && s_.substr(pos_, 7) == ".length" &&
          (pos_ + 7 >= s_.size() || !is_ident_char(s_[pos_ + 7]))) {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected symbol");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string resolved(const std::string& raw, bool is_array) const {
    return resolve_ ? resolve_(raw, is_array) : raw;
  }

  SymBox atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      SymBox inner = sum();
      if (!eat(")")) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return sym_const(number());
    if (!std::isalpha(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '_') fail("expected operand");
    const std::string raw = name();
    if (s_.substr(pos_, 7) == ".length") {
      pos_ += 7;
      return sym_len(resolved(raw, true));
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      skip();
      bool negative = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      std::int64_t index = number();
      if (negative) index = wrap_arith(ArithOp::kSub, 0, index);
      if (!eat("]")) fail("expected ']'");
      return sym_cell(resolved(raw, true), index);
    }
    return sym_field(resolved(raw, false));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const SymbolResolver& resolve_;
};

}  // namespace

PathCondition parse_path_condition(std::string_view text, const SymbolResolver& resolve) {
  return ClauseParser(text, resolve).run();
}

SymbolResolver unit_resolver(const ir::UnitDef& unit) {
  return [&unit](const std::string& name, bool is_array) -> std::string {
    const ir::FieldDecl* match = unit.find_field(name);
    if (match == nullptr) {
      auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
      };
      for (const auto& f : unit.fields) {
        if (lower(f.name) == lower(name)) {
          if (match != nullptr) throw ClauseParseError("ambiguous symbol: " + name);
          match = &f;
        }
      }
    }
    if (match == nullptr) throw ClauseParseError("unknown symbol: " + name);
    const bool array_field = match->kind == ir::FieldKind::kIntArray;
    if (array_field != is_array) {
      throw ClauseParseError("symbol " + name + (is_array ? " is not an array field" : " is an array field"));
    }
    return match->name;
  };
}

}  // namespace pathsel
