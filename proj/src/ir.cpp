#include "pathsel/ir.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pathsel::ir {

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return "+";
    case ArithOp::kSub: return "-";
    case ArithOp::kMul: return "*";
  }
  return "?";
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
    case CmpOp::kEq: return "==";
    case CmpOp::kNe: return "!=";
  }
  return "?";
}

const FieldDecl* UnitDef::find_field(std::string_view field_name) const {
  for (const auto& f : fields) {
    if (f.name == field_name) return &f;
  }
  return nullptr;
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
    if (!v.identifier.empty()) out += " '" + v.identifier + "'";
  }
  return out;
}

}  // namespace

SemanticError::SemanticError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  kIdent,
  kInt,
  kString,
  kPunct,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::kEnd, "", line_, col_});
        return out;
      }
      const int line = line_;
      const int col = col_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::kIdent, std::string(src_.substr(start, pos_ - start)), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back({Tok::kInt, std::string(src_.substr(start, pos_ - start)), line, col});
      } else if (c == '"') {
        advance();
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw ParseError("unterminated string literal", line, col);
        }
        std::string text(src_.substr(start, pos_ - start));
        advance();
        out.push_back({Tok::kString, std::move(text), line, col});
      } else {
        static constexpr std::string_view kTwo[] = {"==", "!=", "<=", ">="};
        std::string text(1, c);
        for (auto two : kTwo) {
          if (src_.substr(pos_, 2) == two) text = std::string(two);
        }
        if (text.size() == 1 && std::string_view("(){}[];,:=<>+-*!.").find(c) == std::string_view::npos) {
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        for (std::size_t i = 0; i < text.size(); ++i) advance();
        out.push_back({Tok::kPunct, std::move(text), line, col});
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

const std::unordered_set<std::string> kKeywords = {
    "unit", "fields", "ctor", "method", "int",  "if",   "else", "while",
    "assert", "throw", "return", "null", "len", "true", "false",
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  UnitDef unit() {
    UnitDef u;
    expect_keyword("unit");
    u.name = identifier();
    expect("(");
    if (!peek(")")) {
      do {
        u.params.push_back(identifier());
        expect(":");
        expect_keyword("int");
      } while (accept(","));
    }
    expect(")");
    expect("{");
    if (peek_keyword("fields")) {
      next();
      expect("{");
      while (!peek("}")) {
        FieldDecl f;
        f.name = identifier();
        expect(":");
        expect_keyword("int");
        if (accept("[")) {
          expect("]");
          f.kind = FieldKind::kIntArray;
        }
        expect(";");
        u.fields.push_back(std::move(f));
      }
      expect("}");
    }
    unit_ = &u;
    expect_keyword("ctor");
    site_ = 0;
    u.ctor_body = block();
    expect_keyword("method");
    site_ = 0;
    u.method_body = block();
    u.method_sites = site_;
    expect("}");
    if (cur().kind != Tok::kEnd) fail("trailing input after unit");
    unit_ = nullptr;
    return u;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, cur().line, cur().column);
  }

  bool peek(std::string_view punct) const {
    return cur().kind == Tok::kPunct && cur().text == punct;
  }
  bool peek_keyword(std::string_view kw) const {
    return cur().kind == Tok::kIdent && cur().text == kw;
  }
  bool accept(std::string_view punct) {
    if (!peek(punct)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) {
      fail("expected '" + std::string(punct) + "' but found '" + describe(cur()) + "'");
    }
  }
  void expect_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) {
      fail("expected '" + std::string(kw) + "' but found '" + describe(cur()) + "'");
    }
    ++pos_;
  }
  static std::string describe(const Token& t) { return t.kind == Tok::kEnd ? "end of input" : t.text; }

  std::string identifier() {
    if (cur().kind != Tok::kIdent || kKeywords.count(cur().text) != 0) {
      fail("expected identifier but found '" + describe(cur()) + "'");
    }
    return next().text;
  }

  bool is_field(const std::string& name) const { return unit_->find_field(name) != nullptr; }

  Block block() {
    expect("{");
    Block out;
    while (!peek("}")) {
      if (cur().kind == Tok::kEnd) fail("unterminated block");
      out.push_back(statement());
    }
    expect("}");
    return out;
  }

  StmtBox statement() {
    if (peek_keyword("if")) return if_statement();
    if (peek_keyword("while")) {
      next();
      const int site = site_++;
      expect("(");
      CondBox c = cond();
      expect(")");
      Block body = block();
      return Stmt{While{site, c, std::move(body)}};
    }
    if (peek_keyword("assert")) {
      next();
      const int site = site_++;
      expect("(");
      CondBox c = cond();
      expect(")");
      expect(";");
      return Stmt{Assert{site, c}};
    }
    if (peek_keyword("throw")) {
      next();
      accept(";");
      return Stmt{Throw{}};
    }
    if (peek_keyword("return")) {
      next();
      Return r{NullLiteral{}};
      if (peek_keyword("null")) {
        next();
      } else if (cur().kind == Tok::kString) {
        r.value = StringLiteral{next().text};
      } else {
        r.value = expr();
      }
      accept(";");
      return Stmt{std::move(r)};
    }
    std::string target = identifier();
    expect("=");
    if (accept("[")) {
      ArrayInit init;
      init.field = std::move(target);
      if (!peek("]")) {
        do {
          init.elements.push_back(expr());
        } while (accept(","));
      }
      expect("]");
      expect(";");
      return Stmt{std::move(init)};
    }
    const bool field = is_field(target);
    ExprBox value = expr();
    expect(";");
    return Stmt{Assign{std::move(target), field, value}};
  }

  StmtBox if_statement() {
    expect_keyword("if");
    const int site = site_++;
    expect("(");
    CondBox c = cond();
    expect(")");
    Block then_block = block();
    Block else_block;
    if (peek_keyword("else")) {
      next();
      if (peek_keyword("if")) {
        else_block.push_back(if_statement());
      } else {
        else_block = block();
      }
    }
    return Stmt{If{site, c, std::move(then_block), std::move(else_block)}};
  }

  CondBox cond() {
    if (accept("!")) {
      if (accept("(")) {
        CondBox inner = cond();
        expect(")");
        return Cond{Not{inner}};
      }
      return Cond{Not{cond()}};
    }
    ExprBox lhs = expr();
    static constexpr std::pair<std::string_view, CmpOp> kOps[] = {
        {"<", CmpOp::kLt}, {"<=", CmpOp::kLe}, {">", CmpOp::kGt},
        {">=", CmpOp::kGe}, {"==", CmpOp::kEq}, {"!=", CmpOp::kNe},
    };
    for (auto [text, op] : kOps) {
      if (accept(text)) return Cond{Cmp{op, lhs, expr()}};
    }
    if (const auto* v = std::get_if<Var>(&lhs->node)) return Cond{BoolVar{v->name, false}};
    if (const auto* f = std::get_if<FieldRead>(&lhs->node)) return Cond{BoolVar{f->name, true}};
    return Cond{Cmp{CmpOp::kNe, lhs, Expr{IntConst{0}}}};
  }

  ExprBox expr() {
    ExprBox lhs = term();
    for (;;) {
      if (accept("+")) {
        lhs = Expr{BinArith{ArithOp::kAdd, lhs, term()}};
      } else if (accept("-")) {
        lhs = Expr{BinArith{ArithOp::kSub, lhs, term()}};
      } else {
        return lhs;
      }
    }
  }

  ExprBox term() {
    ExprBox lhs = unary();
    while (accept("*")) lhs = Expr{BinArith{ArithOp::kMul, lhs, unary()}};
    return lhs;
  }

  ExprBox unary() {
    if (accept("-")) return Expr{Neg{unary()}};
    return primary();
  }

  ExprBox primary() {
    if (accept("(")) {
      ExprBox inner = expr();
      expect(")");
      return inner;
    }
    if (cur().kind == Tok::kInt) {
      const Token& t = next();
      // Literals up to 2^64-1 are accepted and wrap into the signed range.
      std::uint64_t value = 0;
      for (char c : t.text) {
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (value > (UINT64_MAX - digit) / 10) throw ParseError("integer literal out of range", t.line, t.column);
        value = value * 10 + digit;
      }
      return Expr{IntConst{static_cast<std::int64_t>(value)}};
    }
    if (peek_keyword("true")) {
      next();
      return Expr{IntConst{1}};
    }
    if (peek_keyword("false")) {
      next();
      return Expr{IntConst{0}};
    }
    if (peek_keyword("len")) {
      next();
      expect("(");
      std::string name = identifier();
      expect(")");
      return Expr{ArrayLen{std::move(name)}};
    }
    std::string name = identifier();
    if (accept("[")) {
      ExprBox index = expr();
      expect("]");
      return Expr{ArrayRead{std::move(name), index}};
    }
    if (is_field(name)) return Expr{FieldRead{std::move(name)}};
    return Expr{Var{std::move(name)}};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const UnitDef* unit_ = nullptr;
  int site_ = 0;
};

// ---------------------------------------------------------------------------
// Validation

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

enum class Scope { kCtor, kMethod };

class Validator {
 public:
  Validator(const UnitDef& unit, std::vector<Violation>& out) : unit_(unit), out_(out) {}

  void check_body(const Block& body, Scope scope) {
    scope_ = scope;
    locals_.clear();
    collect_assigned(body, locals_);
    for (const auto& name : unit_.params) locals_.erase(name);
    for (const auto& f : unit_.fields) locals_.erase(f.name);
    block(body);
  }

 private:
  void report(std::string message, std::string identifier) {
    Violation v{std::move(message), std::move(identifier)};
    for (const auto& existing : out_) {
      if (existing == v) return;
    }
    out_.push_back(std::move(v));
  }

  bool is_param(const std::string& name) const {
    for (const auto& p : unit_.params) {
      if (p == name) return true;
    }
    return false;
  }

  static void collect_assigned(const Block& body, std::set<std::string>& names) {
    for (const auto& s : body) {
      std::visit(Overloaded{
                     [&](const Assign& a) { names.insert(a.target); },
                     [&](const ArrayInit& a) { names.insert(a.field); },
                     [&](const If& i) {
                       collect_assigned(i.then_block, names);
                       collect_assigned(i.else_block, names);
                     },
                     [&](const While& w) { collect_assigned(w.body, names); },
                     [](const auto&) {},
                 },
                 s->node);
    }
  }

  static void collect_names(const Expr& e, std::set<std::string>& names) {
    std::visit(Overloaded{
                   [](const IntConst&) {},
                   [&](const Var& v) { names.insert(v.name); },
                   [&](const FieldRead& f) { names.insert(f.name); },
                   [&](const ArrayRead& a) {
                     names.insert(a.field);
                     collect_names(*a.index, names);
                   },
                   [&](const ArrayLen& a) { names.insert(a.field); },
                   [&](const BinArith& b) {
                     collect_names(*b.lhs, names);
                     collect_names(*b.rhs, names);
                   },
                   [&](const Neg& n) { collect_names(*n.operand, names); },
               },
               e.node);
  }

  static void collect_names(const Cond& c, std::set<std::string>& names) {
    std::visit(Overloaded{
                   [&](const Cmp& cmp) {
                     collect_names(*cmp.lhs, names);
                     collect_names(*cmp.rhs, names);
                   },
                   [&](const BoolVar& b) { names.insert(b.name); },
                   [&](const Not& n) { collect_names(*n.operand, names); },
               },
               c.node);
  }

  void scalar_name(const std::string& name) {
    if (const FieldDecl* f = unit_.find_field(name)) {
      if (f->kind == FieldKind::kIntArray) report("array field used as a scalar", name);
      return;
    }
    if (locals_.count(name) != 0) return;
    if (is_param(name)) {
      if (scope_ == Scope::kMethod) report("params not visible in method", name);
      return;
    }
    report("undeclared identifier", name);
  }

  void array_name(const std::string& name) {
    const FieldDecl* f = unit_.find_field(name);
    if (f == nullptr) {
      report("undeclared array field", name);
    } else if (f->kind != FieldKind::kIntArray) {
      report("scalar field used as an array", name);
    }
  }

  void expr(const Expr& e) {
    std::visit(Overloaded{
                   [](const IntConst&) {},
                   [&](const Var& v) { scalar_name(v.name); },
                   [&](const FieldRead& f) { scalar_name(f.name); },
                   [&](const ArrayRead& a) {
                     array_name(a.field);
                     expr(*a.index);
                   },
                   [&](const ArrayLen& a) { array_name(a.field); },
                   [&](const BinArith& b) {
                     expr(*b.lhs);
                     expr(*b.rhs);
                   },
                   [&](const Neg& n) { expr(*n.operand); },
               },
               e.node);
  }

  void cond(const Cond& c) {
    std::visit(Overloaded{
                   [&](const Cmp& cmp) {
                     expr(*cmp.lhs);
                     expr(*cmp.rhs);
                   },
                   [&](const BoolVar& b) { scalar_name(b.name); },
                   [&](const Not& n) { cond(*n.operand); },
               },
               c.node);
  }

  void block(const Block& body) {
    for (const auto& s : body) {
      std::visit(Overloaded{
                     [&](const Assign& a) {
                       if (const FieldDecl* f = unit_.find_field(a.target)) {
                         if (f->kind == FieldKind::kIntArray) report("scalar assignment to array field", a.target);
                       } else if (is_param(a.target) && scope_ == Scope::kMethod && locals_.count(a.target) == 0) {
                         report("params not visible in method", a.target);
                       }
                       expr(*a.value);
                     },
                     [&](const ArrayInit& a) {
                       const FieldDecl* f = unit_.find_field(a.field);
                       if (f == nullptr || f->kind != FieldKind::kIntArray) {
                         report("array initializer target is not an array field", a.field);
                       }
                       for (const auto& e : a.elements) expr(*e);
                     },
                     [&](const If& i) {
                       cond(*i.cond);
                       block(i.then_block);
                       block(i.else_block);
                     },
                     [&](const While& w) {
                       cond(*w.cond);
                       std::set<std::string> read;
                       collect_names(*w.cond, read);
                       std::set<std::string> written;
                       collect_assigned(w.body, written);
                       bool modified = false;
                       for (const auto& n : read) modified = modified || written.count(n) != 0;
                       if (!modified) report("loop variable never modified", "");
                       block(w.body);
                     },
                     [&](const Assert& a) { cond(*a.cond); },
                     [](const Throw&) {},
                     [&](const Return& r) {
                       if (const auto* e = std::get_if<ExprBox>(&r.value)) expr(**e);
                     },
                 },
                 s->node);
    }
  }

  const UnitDef& unit_;
  std::vector<Violation>& out_;
  Scope scope_ = Scope::kCtor;
  std::set<std::string> locals_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinArith>(&e.node)) return b->op == ArithOp::kMul ? 2 : 1;
  return 3;
}

void print_expr(const Expr& e, std::string& out) {
  std::visit(Overloaded{
                 [&](const IntConst& c) {
                   // INT64_MIN only arises from the literal 9223372036854775808.
                   if (c.value < 0) {
                     out += std::to_string(static_cast<std::uint64_t>(c.value));
                   } else {
                     out += std::to_string(c.value);
                   }
                 },
                 [&](const Var& v) { out += v.name; },
                 [&](const FieldRead& f) { out += f.name; },
                 [&](const ArrayRead& a) {
                   out += a.field + "[";
                   print_expr(*a.index, out);
                   out += "]";
                 },
                 [&](const ArrayLen& a) { out += "len(" + a.field + ")"; },
                 [&](const BinArith& b) {
                   const int mine = precedence(e);
                   const bool wrap_lhs = precedence(*b.lhs) < mine;
                   const bool wrap_rhs = precedence(*b.rhs) <= mine;
                   if (wrap_lhs) out += "(";
                   print_expr(*b.lhs, out);
                   if (wrap_lhs) out += ")";
                   out += " ";
                   out += to_string(b.op);
                   out += " ";
                   if (wrap_rhs) out += "(";
                   print_expr(*b.rhs, out);
                   if (wrap_rhs) out += ")";
                 },
                 [&](const Neg& n) {
                   const bool wrap = precedence(*n.operand) < 3;
                   out += "-";
                   if (wrap) out += "(";
                   print_expr(*n.operand, out);
                   if (wrap) out += ")";
                 },
             },
             e.node);
}

void print_cond(const Cond& c, std::string& out) {
  std::visit(Overloaded{
                 [&](const Cmp& cmp) {
                   print_expr(*cmp.lhs, out);
                   out += " ";
                   out += to_string(cmp.op);
                   out += " ";
                   print_expr(*cmp.rhs, out);
                 },
                 [&](const BoolVar& b) { out += b.name; },
                 [&](const Not& n) {
                   out += "!(";
                   print_cond(*n.operand, out);
                   out += ")";
                 },
             },
             c.node);
}

void print_block(const Block& body, int depth, std::string& out);

void print_stmt(const Stmt& s, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::visit(Overloaded{
                 [&](const Assign& a) {
                   out += pad + a.target + " = ";
                   print_expr(*a.value, out);
                   out += ";\n";
                 },
                 [&](const ArrayInit& a) {
                   out += pad + a.field + " = [";
                   for (std::size_t i = 0; i < a.elements.size(); ++i) {
                     if (i > 0) out += ", ";
                     print_expr(*a.elements[i], out);
                   }
                   out += "];\n";
                 },
                 [&](const If& i) {
                   out += pad + "if (";
                   print_cond(*i.cond, out);
                   out += ") {\n";
                   print_block(i.then_block, depth + 1, out);
                   out += pad + "}";
                   if (!i.else_block.empty()) {
                     out += " else {\n";
                     print_block(i.else_block, depth + 1, out);
                     out += pad + "}";
                   }
                   out += "\n";
                 },
                 [&](const While& w) {
                   out += pad + "while (";
                   print_cond(*w.cond, out);
                   out += ") {\n";
                   print_block(w.body, depth + 1, out);
                   out += pad + "}\n";
                 },
                 [&](const Assert& a) {
                   out += pad + "assert (";
                   print_cond(*a.cond, out);
                   out += ");\n";
                 },
                 [&](const Throw&) { out += pad + "throw;\n"; },
                 [&](const Return& r) {
                   out += pad + "return ";
                   std::visit(Overloaded{
                                  [&](const ExprBox& e) { print_expr(*e, out); },
                                  [&](const NullLiteral&) { out += "null"; },
                                  [&](const StringLiteral& lit) { out += "\"" + lit.text + "\""; },
                              },
                              r.value);
                   out += ";\n";
                 },
             },
             s.node);
}

void print_block(const Block& body, int depth, std::string& out) {
  for (const auto& s : body) print_stmt(*s, depth, out);
}

}  // namespace

UnitDef parse_unit(std::string_view source) {
  UnitDef unit = Parser(Lexer(source).run()).unit();
  auto violations = validate(unit);
  if (!violations.empty()) throw SemanticError(std::move(violations));
  return unit;
}

std::vector<Violation> validate(const UnitDef& unit) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const auto& p : unit.params) {
    if (!seen.insert(p).second) out.push_back({"duplicate parameter", p});
  }
  std::set<std::string> field_names;
  for (const auto& f : unit.fields) {
    if (!field_names.insert(f.name).second) out.push_back({"duplicate field", f.name});
    if (seen.count(f.name) != 0) out.push_back({"field shadows parameter", f.name});
  }
  Validator v(unit, out);
  v.check_body(unit.ctor_body, Scope::kCtor);
  v.check_body(unit.method_body, Scope::kMethod);
  return out;
}

std::string pretty_print(const Expr& expr) {
  std::string out;
  print_expr(expr, out);
  return out;
}

std::string pretty_print(const Cond& cond) {
  std::string out;
  print_cond(cond, out);
  return out;
}

std::string pretty_print(const UnitDef& unit) {
  std::string out = "unit " + unit.name + "(";
  for (std::size_t i = 0; i < unit.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += unit.params[i] + ":int";
  }
  out += ") {\n";
  if (!unit.fields.empty()) {
    out += "  fields {";
    for (const auto& f : unit.fields) {
      out += " " + f.name + (f.kind == FieldKind::kIntArray ? ": int[];" : ": int;");
    }
    out += " }\n";
  }
  out += "  ctor {\n";
  print_block(unit.ctor_body, 2, out);
  out += "  }\n  method {\n";
  print_block(unit.method_body, 2, out);
  out += "  }\n}\n";
  return out;
}

UnitDef load_unit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read unit file: " + path, 0, 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_unit(text.str());
}

}  // namespace pathsel::ir
