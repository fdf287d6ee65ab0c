#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgmuse/rules.hpp"
#include "test_util.hpp"

using namespace qgmuse;

TEST_CASE("parser builds the expected AST shapes") {
  const ExprPtr e = parse_rule("!(a ^ d) & !a & !l");
  REQUIRE(e->kind == BoolExpr::Kind::And);
  REQUIRE(e->kids.size() == 3);
  CHECK(e->kids[0]->kind == BoolExpr::Kind::Not);
  CHECK(e->kids[0]->kids[0]->kind == BoolExpr::Kind::Xor);
  CHECK(e->kids[0]->kids[0]->kids[0]->name == "a");
  CHECK(e->kids[0]->kids[0]->kids[1]->name == "d");
  CHECK(e->kids[1]->kind == BoolExpr::Kind::Not);
  CHECK(e->kids[1]->kids[0]->name == "a");
  CHECK(e->kids[2]->kids[0]->name == "l");

  const ExprPtr v = parse_rule("a");
  CHECK(v->kind == BoolExpr::Kind::Var);
  CHECK(v->name == "a");
}

TEST_CASE("parser reports positions on malformed input") {
  try {
    parse_rule("a & & b");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line == 1);
    CHECK(err.column == 5);  // the second '&'
  }
  CHECK_THROWS_AS(parse_rule(""), ParseError);
  CHECK_THROWS_AS(parse_rule("   # only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_rule("(a"), ParseError);
  CHECK_THROWS_AS(parse_rule("a b"), ParseError);
  CHECK_THROWS_AS(parse_rule("a @ b"), ParseError);
}

TEST_CASE("comments and whitespace are insignificant") {
  const ExprPtr a = parse_rule("# header\n  a &\n\tb # trailing\n");
  const ExprPtr b = parse_rule("a&b");
  CHECK(structurally_equal(a, b));
}

TEST_CASE("precedence: ! > & > ^ > |") {
  // a | b ^ c & !d  ==  a | (b ^ (c & (!d)))
  const ExprPtr e = parse_rule("a | b ^ c & !d");
  REQUIRE(e->kind == BoolExpr::Kind::Or);
  REQUIRE(e->kids[1]->kind == BoolExpr::Kind::Xor);
  CHECK(e->kids[1]->kids[1]->kind == BoolExpr::Kind::And);
  CHECK(e->kids[1]->kids[1]->kids[1]->kind == BoolExpr::Kind::Not);
}

TEST_CASE("and/or chains flatten; xor stays binary left-associated") {
  const ExprPtr flat = parse_rule("a & b & c & d");
  CHECK(flat->kids.size() == 4);
  const ExprPtr grouped = parse_rule("a & (b & c) & d");
  CHECK(grouped->kids.size() == 4);
  CHECK(structurally_equal(flat, grouped));

  const ExprPtr x = parse_rule("a ^ b ^ c");
  REQUIRE(x->kind == BoolExpr::Kind::Xor);
  CHECK(x->kids[0]->kind == BoolExpr::Kind::Xor);
  CHECK(x->kids[1]->name == "c");
}

TEST_CASE("print and reparse round-trips 1000 random expressions") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const ExprPtr e = testutil::random_expr(rng, 1 + static_cast<int>(rng.next_below(6)), 8);
    const std::string text = to_string(e);
    const ExprPtr back = parse_rule(text);
    if (!structurally_equal(e, back)) {
      CAPTURE(text);
      FAIL_CHECK("round trip changed structure");
    }
  }
}

TEST_CASE("evaluate implements standard Boolean semantics") {
  const ExprPtr rule = parse_rule_file(testutil::data_path("eq25.rule"));
  CHECK(evaluate(rule, {{"li", 0}, {"dc", 0}, {"li_prev", 0}}) == 1);
  CHECK(evaluate(rule, {{"li", 0}, {"dc", 1}, {"li_prev", 0}}) == 0);
  CHECK(evaluate(rule, {{"li", 1}, {"dc", 0}, {"li_prev", 0}}) == 0);

  const ExprPtr agree = parse_rule("!(a ^ d)");
  CHECK(evaluate(agree, {{"a", 1}, {"d", 1}}) == 1);
  CHECK(evaluate(agree, {{"a", 0}, {"d", 1}}) == 0);

  CHECK_THROWS_AS(evaluate(agree, {{"a", 1}}), EvalError);
}

TEST_CASE("variable order is first occurrence") {
  CHECK(variables(parse_rule("!(a ^ d) & !a & !l")) == std::vector<std::string>{"a", "d", "l"});
  CHECK(variables(parse_rule_file(testutil::data_path("eq25.rule"))) ==
        std::vector<std::string>{"li", "dc", "li_prev"});
  // Rewrites that keep occurrence order keep the qubit order.
  CHECK(variables(parse_rule("(a | d) & (l ^ a)")) == std::vector<std::string>{"a", "d", "l"});
}

TEST_CASE("enumerate_solutions scans the full truth table") {
  const ExprPtr rule = parse_rule_file(testutil::data_path("eq25.rule"));
  const TruthTable t = enumerate_solutions(rule);
  CHECK(t.num_vars == 3);
  CHECK(t.satisfying == std::vector<std::uint64_t>{0});

  const TruthTable taut = enumerate_solutions(parse_rule("a | !a"));
  CHECK(taut.satisfying == std::vector<std::uint64_t>{0, 1});

  CHECK(solution_count(parse_rule_file(testutil::data_path("eq24.rule"))) == 1);
  CHECK(solution_count(parse_rule_file(testutil::data_path("eq23.rule"))) == 2);
}

TEST_CASE("the 11-variable fixture rule has 1960 solutions of 2048") {
  // Frozen from the brute-force enumerator before any search code used it.
  const ExprPtr rule = parse_rule_file(testutil::data_path("eq8.rule"));
  const auto vars = variables(rule);
  CHECK(vars.size() == 11);
  CHECK(std::find(vars.begin(), vars.end(), "sr7") == vars.end());
  CHECK(solution_count(rule) == 1960);
}

TEST_CASE("enumeration refuses more than 20 variables") {
  std::vector<ExprPtr> kids;
  for (int i = 0; i < 21; ++i) kids.push_back(BoolExpr::var("v" + std::to_string(i)));
  CHECK_THROWS_AS(enumerate_solutions(BoolExpr::lor(std::move(kids))), CapacityError);
}

TEST_CASE("evaluator and enumerator agree everywhere on a random corpus") {
  Rng rng(7);
  for (int i = 0; i < 150; ++i) {
    const ExprPtr e = testutil::random_expr(rng, 1 + static_cast<int>(rng.next_below(4)), 5);
    const auto vars = variables(e);
    const TruthTable table = enumerate_solutions(e);
    const std::uint64_t rows = std::uint64_t(1) << vars.size();
    for (std::uint64_t bits = 0; bits < rows; ++bits) {
      Assignment a;
      for (std::size_t v = 0; v < vars.size(); ++v)
        a[vars[v]] = static_cast<int>((bits >> v) & 1);
      const bool satisfied = evaluate(e, a) == 1;
      const bool listed =
          std::binary_search(table.satisfying.begin(), table.satisfying.end(), bits);
      CHECK(satisfied == listed);
    }
  }
}
