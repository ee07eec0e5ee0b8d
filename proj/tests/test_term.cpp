#include "doctest.h"
#include "lazycost/term.hpp"

using namespace lazycost;

TEST_CASE("parsing the surface syntax") {
  TermPtr t = parse_term("(cons (lazy true) (lazy nil))");
  CHECK(t->kind == Term::Kind::Cons);
  CHECK(t->m1->kind == Term::Kind::Lazy);
  CHECK(t->m1->m1->kind == Term::Kind::True);
  CHECK(t->m2->m1->kind == Term::Kind::Nil);

  TermPtr l = parse_term("(let (x (lazy (tick true))) (force x))");
  CHECK(l->kind == Term::Kind::Let);
  CHECK(l->name == "x");
  CHECK(l->m1->kind == Term::Kind::Lazy);
  CHECK(l->m1->m1->kind == Term::Kind::Tick);
  CHECK(l->m2->kind == Term::Kind::Force);
  CHECK(l->m2->m1->name == "x");

  Program p = parse_program(
      "(params (xs (list (T bool)))) (body (foldr (fun x y (cons x y)) nil xs))");
  CHECK(p.body->kind == Term::Kind::Foldr);
  CHECK(p.params.size() == 1);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_term("(cons true");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS(parse_term("(widget 1 2)"), ParseError);
}

TEST_CASE("typing rules") {
  TypeInfo info;
  TyPtr ty = typecheck({}, parse_term("(lazy true)"), info);
  CHECK(ty->kind == Ty::Kind::Thunked);
  CHECK(ty->a->kind == Ty::Kind::Bool);

  TypeInfo info2;
  TyPtr ty2 = typecheck({}, parse_term("(cons (lazy true) (lazy nil))"), info2);
  REQUIRE(ty2->kind == Ty::Kind::List);
  CHECK(ty2->a->kind == Ty::Kind::Bool);

  TypeInfo info3;
  CHECK_THROWS_AS(typecheck({}, parse_term("(force true)"), info3), TypeError);

  TypeInfo info4;
  CHECK_THROWS_AS(typecheck({}, parse_term("oops"), info4), TypeError);

  // cons requires both fields thunked
  TypeInfo info5;
  CHECK_THROWS_AS(typecheck({}, parse_term("(cons true (lazy nil))"), info5),
                  TypeError);

  // if requires bool scrutinee and equal branches
  TypeInfo info6;
  CHECK_THROWS_AS(
      typecheck({}, parse_term("(if (lazy true) true false)"), info6),
      TypeError);
  TypeInfo info7;
  CHECK_THROWS_AS(typecheck({}, parse_term("(if true true nil)"), info7),
                  TypeError);
}

TEST_CASE("typechecking is deterministic") {
  std::string src =
      "(params (xs (T (list bool)))) "
      "(body (foldr (fun x y (cons x y)) nil (force xs)))";
  Program a = parse_program(src);
  Program b = parse_program(src);
  CHECK(print_ty(a.info.root) == print_ty(b.info.root));
  CHECK(print_program(a) == print_program(b));
}

TEST_CASE("terms round trip through pretty printing") {
  for (const char* src : {
           "(cons (lazy true) (lazy nil))",
           "(let (x (lazy (tick true))) (force x))",
           "(foldr (fun x y (cons x y)) nil xs)",
           "(if (fst (pair true 3)) (snd (pair true 3)) 7)",
       }) {
    TermPtr t = parse_term(src);
    CHECK(print_term(parse_term(print_term(t))) == print_term(t));
  }
}
