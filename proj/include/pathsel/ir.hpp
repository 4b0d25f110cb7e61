#pragma once

// The toy imperative language that units under test are written in.
//
// A unit is a class-like bundle: integer constructor parameters, a set of
// fields (scalars or int arrays), a constructor body that builds the field
// state from the parameters, and one target method that reads only fields
// and its own locals. The textual format is documented in docs/grammar.md.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pathsel/box.hpp"

namespace pathsel::ir {

enum class ArithOp { kAdd, kSub, kMul };
enum class CmpOp { kLt, kLe, kGt, kGe, kEq, kNe };

std::string_view to_string(ArithOp op);
std::string_view to_string(CmpOp op);

struct Expr;
using ExprBox = Box<Expr>;

struct IntConst {
  std::int64_t value;
  bool operator==(const IntConst&) const = default;
};
// Local variable or constructor parameter.
struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};
struct FieldRead {
  std::string name;
  bool operator==(const FieldRead&) const = default;
};
struct ArrayRead {
  std::string field;
  ExprBox index;
  bool operator==(const ArrayRead&) const = default;
};
struct ArrayLen {
  std::string field;
  bool operator==(const ArrayLen&) const = default;
};
struct BinArith {
  ArithOp op;
  ExprBox lhs;
  ExprBox rhs;
  bool operator==(const BinArith&) const = default;
};
struct Neg {
  ExprBox operand;
  bool operator==(const Neg&) const = default;
};

struct Expr {
  std::variant<IntConst, Var, FieldRead, ArrayRead, ArrayLen, BinArith, Neg> node;
  bool operator==(const Expr&) const = default;
};

struct Cond;
using CondBox = Box<Cond>;

struct Cmp {
  CmpOp op;
  ExprBox lhs;
  ExprBox rhs;
  bool operator==(const Cmp&) const = default;
};
// Integer used as a boolean: true iff non-zero.
struct BoolVar {
  std::string name;
  bool is_field = false;
  bool operator==(const BoolVar&) const = default;
};
struct Not {
  CondBox operand;
  bool operator==(const Not&) const = default;
};

struct Cond {
  std::variant<Cmp, BoolVar, Not> node;
  bool operator==(const Cond&) const = default;
};

struct Stmt;
using StmtBox = Box<Stmt>;
using Block = std::vector<StmtBox>;

struct Assign {
  std::string target;
  bool is_field = false;
  ExprBox value;
  bool operator==(const Assign&) const = default;
};
struct ArrayInit {
  std::string field;
  std::vector<ExprBox> elements;
  bool operator==(const ArrayInit&) const = default;
};
// `site` numbers every condition-bearing statement of a body in source
// order; branch coverage is reported per (site, direction).
struct If {
  int site = 0;
  CondBox cond;
  Block then_block;
  Block else_block;
  bool operator==(const If&) const = default;
};
struct While {
  int site = 0;
  CondBox cond;
  Block body;
  bool operator==(const While&) const = default;
};
struct Assert {
  int site = 0;
  CondBox cond;
  bool operator==(const Assert&) const = default;
};
struct Throw {
  bool operator==(const Throw&) const = default;
};

struct NullLiteral {
  bool operator==(const NullLiteral&) const = default;
};
struct StringLiteral {
  std::string text;
  bool operator==(const StringLiteral&) const = default;
};
struct Return {
  std::variant<ExprBox, NullLiteral, StringLiteral> value;
  bool operator==(const Return&) const = default;
};

struct Stmt {
  std::variant<Assign, ArrayInit, If, While, Assert, Throw, Return> node;
  bool operator==(const Stmt&) const = default;
};

enum class FieldKind { kInt, kIntArray };

struct FieldDecl {
  std::string name;
  FieldKind kind = FieldKind::kInt;
  bool operator==(const FieldDecl&) const = default;
};

struct UnitDef {
  std::string name;
  std::vector<std::string> params;  // all scalar ints
  std::vector<FieldDecl> fields;
  Block ctor_body;
  Block method_body;
  // Number of condition sites in the method body.
  int method_sites = 0;

  const FieldDecl* find_field(std::string_view field_name) const;
  bool operator==(const UnitDef&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Violation {
  std::string message;
  std::string identifier;  // empty when the violation is not about a name
  bool operator==(const Violation&) const = default;
};

class SemanticError : public std::runtime_error {
 public:
  explicit SemanticError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Parses and validates one unit. Throws ParseError on malformed text and
// SemanticError when the unit parses but breaks a scoping or loop rule.
UnitDef parse_unit(std::string_view source);

// Returns every rule violation; empty when the unit is well formed.
std::vector<Violation> validate(const UnitDef& unit);

// Renders a unit in the textual format; parse_unit(pretty_print(u)) == u.
std::string pretty_print(const UnitDef& unit);

std::string pretty_print(const Expr& expr);
std::string pretty_print(const Cond& cond);

// Reads a whole `.tu` file. Throws ParseError (line 0) when unreadable.
UnitDef load_unit_file(const std::string& path);

}  // namespace pathsel::ir
