#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qgmuse/errors.hpp"

namespace qgmuse {

// Boolean rule AST. And/Or are n-ary and kept flattened (an And child
// of an And is merged on construction); Xor stays binary. The variable
// list in first-occurrence order fixes the qubit assignment: variable i
// lives on qubit q_i.

struct BoolExpr;
using ExprPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
  enum class Kind { Var, Not, And, Or, Xor };

  Kind kind;
  std::string name;            // Var only
  std::vector<ExprPtr> kids;   // Not: 1, Xor: 2, And/Or: >= 2

  static ExprPtr var(std::string name);
  static ExprPtr lnot(ExprPtr child);
  static ExprPtr land(std::vector<ExprPtr> children);  // flattens nested And
  static ExprPtr lor(std::vector<ExprPtr> children);   // flattens nested Or
  static ExprPtr lxor(ExprPtr left, ExprPtr right);
};

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Concrete syntax, loosest to tightest: |  ^  &  !. Parentheses group;
// '#' comments to end of line.
//   rule    := expr EOF
//   expr    := xor ( "|" xor )*
//   xor     := and ( "^" and )*
//   and     := unary ( "&" unary )*
//   unary   := "!" unary | primary
//   primary := IDENT | "(" expr ")"
ExprPtr parse_rule(const std::string& text);

ExprPtr parse_rule_file(const std::string& path);

// Minimal-parentheses form; parse_rule(to_string(e)) is structurally
// equal to e.
std::string to_string(const ExprPtr& expr);

// Variables in first-occurrence order (the qubit order).
std::vector<std::string> variables(const ExprPtr& expr);

using Assignment = std::map<std::string, int>;

// Throws EvalError if a variable is missing from the assignment.
int evaluate(const ExprPtr& expr, const Assignment& assignment);

struct TruthTable {
  int num_vars = 0;
  std::vector<std::uint64_t> satisfying;  // sorted basis indices, bit i = variable i
};

// Exhaustive scan of all 2^n assignments. Capacity-limited to 20
// variables.
TruthTable enumerate_solutions(const ExprPtr& expr);

std::uint64_t solution_count(const ExprPtr& expr);

}  // namespace qgmuse
