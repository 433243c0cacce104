#include <doctest.h>

#include "oblim/expr.hpp"
#include "oblim/lambda.hpp"

using namespace oblim;

TEST_CASE("group expressions realize the right groups") {
  CHECK(parse_context("Sym(4)").group->order() == 24);
  CHECK(parse_context("C(6)").group->order() == 6);
  CHECK(parse_context("prod(Sym(3),C(2))").group->order() == 12);
  CHECK(parse_context("wreath(Sym(3),2)").group->order() == 72);

  // Whitespace is insignificant.
  auto px = parse_context(" prod( Sym(3) , Sym(3) ) ");
  CHECK(px.group->order() == 36);
  CHECK(!px.semidirect);
  CHECK(!px.module);
}

TEST_CASE("module expressions pair off with the group shape") {
  auto nat = parse_context("Sym(3)", "natural(2)");
  REQUIRE(nat.module);
  CHECK(nat.module->p == 2);
  CHECK(nat.module->dim == 2);
  CHECK(nat.module_text == "natural(2)");
  CHECK(nat.module->owner == nat.gamma);

  auto triv = parse_context("C(4)", "trivial(3,5)");
  REQUIRE(triv.module);
  CHECK(triv.module->p == 3);
  CHECK(triv.module->dim == 5);

  auto ten = parse_context("prod(Sym(3),Sym(3))", "tensor(natural(2),natural(2))");
  REQUIRE(ten.module);
  CHECK(ten.module->dim == 4);
  CHECK(ten.module_text == "tensor(natural(2),natural(2))");

  auto pow = parse_context("wreath(Sym(3),2)", "power(natural(2),2)");
  REQUIRE(pow.module);
  CHECK(pow.module->dim == 4);
}

TEST_CASE("semidirect carries its module and splits off gamma") {
  auto px = parse_context("semidirect(natural(2),Sym(3))");
  CHECK(px.semidirect);
  REQUIRE(px.module);
  CHECK(px.gamma->order() == 6);
  CHECK(px.group->order() == 24);  // 4 * 6, isomorphic to Sym(4)
  CHECK(px.module_text == "natural(2)");

  // The parsed module drives the same lambda computation as a direct build.
  Budgets b;
  auto d = lambda_dims(px.gamma, 2, *px.module, 2, "poset", b);
  CHECK(d.dims == std::vector<int>{0, 1, 0});
}

TEST_CASE("malformed expressions are rejected with ParseError") {
  CHECK_THROWS_AS(parse_context(""), ParseError);
  CHECK_THROWS_AS(parse_context("Sym"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(4"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(4))"), ParseError);       // trailing input
  CHECK_THROWS_AS(parse_context("Sym(4) x"), ParseError);      // trailing input
  CHECK_THROWS_AS(parse_context("Sym()"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(a)"), ParseError);
  CHECK_THROWS_AS(parse_context("Frob(20)"), ParseError);      // unknown head
  CHECK_THROWS_AS(parse_context("prod(Sym(3))"), ParseError);  // one factor
  CHECK_THROWS_AS(parse_context("Sym(99999999999999999999)"), ParseError);
}

TEST_CASE("range guards hold") {
  CHECK_THROWS_AS(parse_context("Sym(0)"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(9)"), ParseError);
  CHECK_THROWS_AS(parse_context("C(0)"), ParseError);
  CHECK_THROWS_AS(parse_context("C(5000)"), ParseError);
  CHECK_THROWS_AS(parse_context("wreath(Sym(3),1)"), ParseError);
  CHECK_THROWS_AS(parse_context("wreath(Sym(3),6)"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(3)", "trivial(4,1)"), ParseError);   // 4 not prime
  CHECK_THROWS_AS(parse_context("Sym(3)", "trivial(2,65)"), ParseError);  // dim too big
  CHECK_THROWS_AS(parse_context("Sym(3)", "natural(4)"), ParseError);     // 4 not prime
}

TEST_CASE("shape mismatches between module and group are rejected") {
  // natural(p) needs Sym(p+1).
  CHECK_THROWS_AS(parse_context("Sym(4)", "natural(2)"), ParseError);
  CHECK_THROWS_AS(parse_context("C(6)", "natural(2)"), ParseError);
  // tensor needs a prod of matching arity.
  CHECK_THROWS_AS(parse_context("Sym(3)", "tensor(natural(2),natural(2))"), ParseError);
  CHECK_THROWS_AS(parse_context("prod(Sym(3),Sym(3),Sym(3))", "tensor(natural(2),natural(2))"),
                  ParseError);
  // power needs a wreath with the same copy count.
  CHECK_THROWS_AS(parse_context("wreath(Sym(3),2)", "power(natural(2),3)"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(3)", "power(natural(2),2)"), ParseError);
  // Constructors on the wrong side of the group/module split.
  CHECK_THROWS_AS(parse_context("natural(2)"), ParseError);
  CHECK_THROWS_AS(parse_context("Sym(3)", "Sym(3)"), ParseError);
}

TEST_CASE("semidirect placement rules") {
  // Only legal outermost.
  CHECK_THROWS_AS(parse_context("prod(semidirect(natural(2),Sym(3)),C(2))"), ParseError);
  CHECK_THROWS_AS(parse_context("wreath(semidirect(natural(2),Sym(3)),2)"), ParseError);
  // A semidirect group refuses a separate module expression.
  CHECK_THROWS_AS(parse_context("semidirect(natural(2),Sym(3))", "trivial(2,1)"), ParseError);
  // And as a module constructor it is nonsense.
  CHECK_THROWS_AS(parse_context("Sym(3)", "semidirect(natural(2),Sym(3))"), ParseError);
}

TEST_CASE("canonical module text strips whitespace") {
  auto px = parse_context("prod(Sym(3),Sym(3))", " tensor( natural(2) , natural(2) ) ");
  CHECK(px.module_text == "tensor(natural(2),natural(2))");
}
