#include "doctest.h"
#include "lazycost/clairvoyant.hpp"
#include "lazycost/corpus.hpp"
#include "lazycost/demand.hpp"
#include "lazycost/enumerate.hpp"
#include "lazycost/eval.hpp"

using namespace lazycost;

namespace {

ApproxValue th(const ApproxValue& a) { return ApproxValue::thunk(a); }

TotalValue nat_list(std::initializer_list<std::uint64_t> xs) {
  TotalValue v = TotalValue::nil();
  std::vector<std::uint64_t> tmp(xs);
  for (auto it = tmp.rbegin(); it != tmp.rend(); ++it)
    v = TotalValue::cons(TotalValue::nat(*it), v);
  return v;
}

}  // namespace

TEST_CASE("lazy forks into skip and go") {
  Program p = parse_program("(params) (body (lazy (tick true)))");
  CvSet s = cv_enumerate(p, {});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == CvBranch{0, ApproxValue::bot()});
  CHECK(s[1] == CvBranch{1, th(ApproxValue::boolean(true))});
}

TEST_CASE("force prunes the stuck skip branch") {
  Program p = parse_program("(params) (body (force (lazy (tick true))))");
  CvSet s = cv_enumerate(p, {});
  REQUIRE(s.size() == 1);
  CHECK(s[0] == CvBranch{1, ApproxValue::boolean(true)});
}

TEST_CASE("append branch set matches hand enumeration") {
  Program p = parse_program(
      "(params (xs (T (list nat))) (ys (T (list nat))))"
      "(body (foldr (fun x y (cons x y)) (force ys) (force xs)))");
  DemandEnv env{{"xs", th(exact_approx(nat_list({1})))},
                {"ys", th(exact_approx(nat_list({})))}};
  CvSet s = cv_enumerate(p, env);
  // Either the tail fold is skipped or it forces the spine down to ys.
  CvSet expect = {
      {0, ApproxValue::cons(th(ApproxValue::nat(1)), ApproxValue::bot())},
      {0, ApproxValue::cons(th(ApproxValue::nat(1)), th(ApproxValue::nil()))},
  };
  CHECK(s == expect);
}

TEST_CASE("deterministic canonical output") {
  Program p = corpus_program("map_tick");
  DemandEnv env{{"xs", th(exact_approx(nat_list({0, 1})))}};
  CHECK(cv_enumerate(p, env) == cv_enumerate(p, env));
}

TEST_CASE("min matching at the least demand pays only mandatory ticks") {
  Program p = parse_program(
      "(params) (body (tick (cons (lazy true) (lazy nil))))");
  auto best = cv_min_matching(
      p, {}, ApproxValue::cons(ApproxValue::bot(), ApproxValue::bot()));
  REQUIRE(best.has_value());
  CHECK(best->first == 1);
}

TEST_CASE("min matching equals the demand cost on a ticking program") {
  Program p = corpus_program("map_tick");
  TotalEnv g{{"xs", TotalValue::cons(TotalValue::boolean(true),
                                     TotalValue::nil())}};
  TotalValue v = eval(g, p.body);
  ApproxValue full = exact_approx(v);
  auto r = demand(p, g, full);
  DemandEnv exact{{"xs", th(exact_approx(g.at("xs")))}};
  auto best = cv_min_matching(p, exact, full);
  REQUIRE(best.has_value());
  CHECK(best->first == r.cost);
}

TEST_CASE("no matching branch when the demand exceeds the program output") {
  Program p = parse_program(
      "(params (xs (T (list nat))))"
      "(body (foldr (fun x y (cons x y)) nil (force xs)))");
  DemandEnv env{{"xs", th(exact_approx(nat_list({1})))}};
  ApproxValue over = parse_demand_literal("(cons (thunk 1) (thunk (cons (thunk 2) _)))");
  CHECK_FALSE(cv_min_matching(p, env, over).has_value());
}

TEST_CASE("branch cap raises a resource error") {
  Program p = corpus_program("insertion_sort_bool");
  DemandEnv env{{"xs", th(exact_approx(TotalValue::cons(
                     TotalValue::boolean(true),
                     TotalValue::cons(TotalValue::boolean(false),
                                      TotalValue::nil()))))}};
  CvLimits tiny;
  tiny.max_branches = 2;
  CHECK_THROWS_AS(cv_enumerate(p, env, tiny), ResourceLimitError);
}
