#include "qgmuse/rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qgmuse {

ExprPtr BoolExpr::var(std::string name) {
  return std::make_shared<BoolExpr>(BoolExpr{Kind::Var, std::move(name), {}});
}

ExprPtr BoolExpr::lnot(ExprPtr child) {
  return std::make_shared<BoolExpr>(BoolExpr{Kind::Not, {}, {std::move(child)}});
}

static ExprPtr make_nary(BoolExpr::Kind kind, std::vector<ExprPtr> children) {
  std::vector<ExprPtr> flat;
  for (auto& c : children) {
    if (c->kind == kind)
      flat.insert(flat.end(), c->kids.begin(), c->kids.end());
    else
      flat.push_back(std::move(c));
  }
  if (flat.size() == 1) return flat.front();
  return std::make_shared<BoolExpr>(BoolExpr{kind, {}, std::move(flat)});
}

ExprPtr BoolExpr::land(std::vector<ExprPtr> children) {
  return make_nary(Kind::And, std::move(children));
}

ExprPtr BoolExpr::lor(std::vector<ExprPtr> children) {
  return make_nary(Kind::Or, std::move(children));
}

ExprPtr BoolExpr::lxor(ExprPtr left, ExprPtr right) {
  return std::make_shared<BoolExpr>(BoolExpr{Kind::Xor, {}, {std::move(left), std::move(right)}});
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  if (a->kind == BoolExpr::Kind::Var) return a->name == b->name;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {

struct Token {
  enum class Type { Ident, Bang, Amp, Caret, Pipe, LParen, RParen, End };
  Type type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    const int line = line_, col = column_;
    if (pos_ >= text_.size()) return {Token::Type::End, "", line, col};
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ident += take();
      return {Token::Type::Ident, std::move(ident), line, col};
    }
    take();
    switch (c) {
      case '!': return {Token::Type::Bang, "!", line, col};
      case '&': return {Token::Type::Amp, "&", line, col};
      case '^': return {Token::Type::Caret, "^", line, col};
      case '|': return {Token::Type::Pipe, "|", line, col};
      case '(': return {Token::Type::LParen, "(", line, col};
      case ')': return {Token::Type::RParen, ")", line, col};
      default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  ExprPtr parse() {
    if (current_.type == Token::Type::End) throw ParseError(current_.line, current_.column, "empty rule");
    ExprPtr e = parse_or();
    if (current_.type != Token::Type::End)
      throw ParseError(current_.line, current_.column, "unexpected '" + current_.text + "'");
    return e;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  ExprPtr parse_or() {
    std::vector<ExprPtr> terms{parse_xor()};
    while (current_.type == Token::Type::Pipe) {
      advance();
      terms.push_back(parse_xor());
    }
    return terms.size() == 1 ? terms.front() : BoolExpr::lor(std::move(terms));
  }

  ExprPtr parse_xor() {
    ExprPtr e = parse_and();
    while (current_.type == Token::Type::Caret) {
      advance();
      e = BoolExpr::lxor(std::move(e), parse_and());
    }
    return e;
  }

  ExprPtr parse_and() {
    std::vector<ExprPtr> terms{parse_unary()};
    while (current_.type == Token::Type::Amp) {
      advance();
      terms.push_back(parse_unary());
    }
    return terms.size() == 1 ? terms.front() : BoolExpr::land(std::move(terms));
  }

  ExprPtr parse_unary() {
    if (current_.type == Token::Type::Bang) {
      advance();
      return BoolExpr::lnot(parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (current_.type == Token::Type::Ident) {
      ExprPtr e = BoolExpr::var(current_.text);
      advance();
      return e;
    }
    if (current_.type == Token::Type::LParen) {
      advance();
      ExprPtr e = parse_or();
      if (current_.type != Token::Type::RParen)
        throw ParseError(current_.line, current_.column, "expected ')'");
      advance();
      return e;
    }
    throw ParseError(current_.line, current_.column,
                     current_.type == Token::Type::End
                         ? "unexpected end of input"
                         : "expected a variable, '!' or '(', got '" + current_.text + "'");
  }

  Lexer lexer_;
  Token current_;
};

}  // namespace

ExprPtr parse_rule(const std::string& text) { return Parser(text).parse(); }

ExprPtr parse_rule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rule file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rule(buf.str());
}

namespace {

// Precedence for printing: Or < Xor < And < Not/Var.
int level(BoolExpr::Kind kind) {
  switch (kind) {
    case BoolExpr::Kind::Or: return 0;
    case BoolExpr::Kind::Xor: return 1;
    case BoolExpr::Kind::And: return 2;
    default: return 3;
  }
}

void print(const ExprPtr& e, int parent_level, std::string& out) {
  const int self = level(e->kind);
  const bool parens = self < parent_level;
  if (parens) out += '(';
  switch (e->kind) {
    case BoolExpr::Kind::Var:
      out += e->name;
      break;
    case BoolExpr::Kind::Not:
      out += '!';
      print(e->kids[0], 4, out);  // operand must be unary-tight
      break;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
    case BoolExpr::Kind::Xor: {
      const char* sep = e->kind == BoolExpr::Kind::And ? " & "
                        : e->kind == BoolExpr::Kind::Or ? " | "
                                                        : " ^ ";
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += sep;
        // Same-level children need parens on the right of Xor chains to
        // keep left association; And/Or are flattened so self+1 is safe.
        print(e->kids[i], (e->kind == BoolExpr::Kind::Xor && i > 0) ? self + 1 : self, out);
      }
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const ExprPtr& expr) {
  std::string out;
  print(expr, 0, out);
  return out;
}

namespace {

void collect_vars(const ExprPtr& e, std::vector<std::string>& order) {
  if (e->kind == BoolExpr::Kind::Var) {
    if (std::find(order.begin(), order.end(), e->name) == order.end()) order.push_back(e->name);
    return;
  }
  for (const auto& k : e->kids) collect_vars(k, order);
}

}  // namespace

std::vector<std::string> variables(const ExprPtr& expr) {
  std::vector<std::string> order;
  collect_vars(expr, order);
  return order;
}

int evaluate(const ExprPtr& expr, const Assignment& assignment) {
  switch (expr->kind) {
    case BoolExpr::Kind::Var: {
      auto it = assignment.find(expr->name);
      if (it == assignment.end()) throw EvalError("no value for variable '" + expr->name + "'");
      return it->second ? 1 : 0;
    }
    case BoolExpr::Kind::Not:
      return 1 - evaluate(expr->kids[0], assignment);
    case BoolExpr::Kind::And:
      for (const auto& k : expr->kids)
        if (!evaluate(k, assignment)) return 0;
      return 1;
    case BoolExpr::Kind::Or:
      for (const auto& k : expr->kids)
        if (evaluate(k, assignment)) return 1;
      return 0;
    case BoolExpr::Kind::Xor:
      return evaluate(expr->kids[0], assignment) ^ evaluate(expr->kids[1], assignment);
  }
  throw EvalError("corrupt expression node");
}

namespace {

int eval_bits(const ExprPtr& e, const std::map<std::string, int>& var_index, std::uint64_t bits) {
  switch (e->kind) {
    case BoolExpr::Kind::Var:
      return static_cast<int>((bits >> var_index.at(e->name)) & 1);
    case BoolExpr::Kind::Not:
      return 1 - eval_bits(e->kids[0], var_index, bits);
    case BoolExpr::Kind::And:
      for (const auto& k : e->kids)
        if (!eval_bits(k, var_index, bits)) return 0;
      return 1;
    case BoolExpr::Kind::Or:
      for (const auto& k : e->kids)
        if (eval_bits(k, var_index, bits)) return 1;
      return 0;
    case BoolExpr::Kind::Xor:
      return eval_bits(e->kids[0], var_index, bits) ^ eval_bits(e->kids[1], var_index, bits);
  }
  return 0;
}

}  // namespace

TruthTable enumerate_solutions(const ExprPtr& expr) {
  const auto vars = variables(expr);
  if (vars.size() > 20)
    throw CapacityError("brute-force enumeration capped at 20 variables, got " +
                        std::to_string(vars.size()));
  std::map<std::string, int> var_index;
  for (std::size_t i = 0; i < vars.size(); ++i) var_index[vars[i]] = static_cast<int>(i);

  TruthTable table;
  table.num_vars = static_cast<int>(vars.size());
  const std::uint64_t rows = std::uint64_t(1) << vars.size();
  for (std::uint64_t bits = 0; bits < rows; ++bits)
    if (eval_bits(expr, var_index, bits)) table.satisfying.push_back(bits);
  return table;
}

std::uint64_t solution_count(const ExprPtr& expr) {
  return enumerate_solutions(expr).satisfying.size();
}

}  // namespace qgmuse
