#include <random>

#include "doctest.h"
#include "lazycost/demand.hpp"
#include "lazycost/enumerate.hpp"
#include "lazycost/value.hpp"

using namespace lazycost;

namespace {

ApproxValue th(const ApproxValue& a) { return ApproxValue::thunk(a); }
ApproxValue natA(std::uint64_t n) { return ApproxValue::nat(n); }

TotalValue nat_list(std::initializer_list<std::uint64_t> xs) {
  TotalValue v = TotalValue::nil();
  std::vector<std::uint64_t> tmp(xs);
  for (auto it = tmp.rbegin(); it != tmp.rend(); ++it)
    v = TotalValue::cons(TotalValue::nat(*it), v);
  return v;
}

}  // namespace

TEST_CASE("definedness order on partially evaluated lists") {
  // lA1 = ConsA (Thunk 0) Undefined, lA2 = ConsA (Thunk 0) (ConsA (Thunk 1) _)
  ApproxValue lA1 = ApproxValue::cons(th(natA(0)), ApproxValue::bot());
  ApproxValue lA2 = ApproxValue::cons(
      th(natA(0)), th(ApproxValue::cons(th(natA(1)), ApproxValue::bot())));
  CHECK(less_defined(lA1, lA2));
  CHECK_FALSE(less_defined(lA2, lA1));

  ApproxValue lA1_head1 = ApproxValue::cons(th(natA(1)), ApproxValue::bot());
  CHECK_FALSE(less_defined(lA1_head1, lA1));

  // Bot is below every enumerated approximation.
  for (const auto& a : approximations_of_data(nat_list({0, 1, 2})))
    CHECK(less_defined(ApproxValue::bot(), a));
}

TEST_CASE("approximation relation distinguishes compatible totals") {
  ApproxValue lA1 = ApproxValue::cons(th(natA(0)), ApproxValue::bot());
  ApproxValue lA2 = ApproxValue::cons(
      th(natA(0)), th(ApproxValue::cons(th(natA(1)), ApproxValue::bot())));
  CHECK(is_approx(lA1, nat_list({0, 1, 2})));
  CHECK(is_approx(lA2, nat_list({0, 1, 2})));
  CHECK(is_approx(lA1, nat_list({0, 2})));
  CHECK_FALSE(is_approx(lA2, nat_list({0, 2})));
  CHECK(is_approx(ApproxValue::nil(), TotalValue::nil()));
}

TEST_CASE("join table rows and pointwise join") {
  CHECK(join(ApproxValue::bot(), th(ApproxValue::nil())) ==
        th(ApproxValue::nil()));
  ApproxValue a = ApproxValue::cons(th(natA(0)), ApproxValue::bot());
  ApproxValue b = ApproxValue::cons(ApproxValue::bot(), th(ApproxValue::nil()));
  CHECK(join(a, b) == ApproxValue::cons(th(natA(0)), th(ApproxValue::nil())));
  CHECK_THROWS_AS(join(ApproxValue::nil(),
                       ApproxValue::cons(ApproxValue::bot(), ApproxValue::bot())),
                  JoinMismatchError);
}

TEST_CASE("lattice laws by exhaustive enumeration at depth <= 3") {
  EnumBounds b;
  b.max_list_len = 3;
  TyPtr ty = Ty::thunked(Ty::list(Ty::boolean()));
  for (const auto& v : enumerate_totals(ty, b)) {
    auto approxes = approximations_of(v, ty);
    // join is idempotent, commutative, and a least upper bound
    for (const auto& a1 : approxes) {
      CHECK(join(a1, a1) == a1);
      CHECK(less_defined(least_approx(v, ty), a1));  // bottom lemma
      for (const auto& a2 : approxes) {
        ApproxValue j = join(a1, a2);
        CHECK(j == join(a2, a1));
        CHECK(is_approx(j, v));          // supremum clause 1
        CHECK(less_defined(a1, j));      // supremum clause 2
        CHECK(less_defined(a2, j));
      }
    }
  }
}

TEST_CASE("transitivity composes <= and -<") {
  EnumBounds b;
  b.max_list_len = 2;
  TyPtr ty = Ty::list(Ty::boolean());
  for (const auto& v : enumerate_totals(ty, b)) {
    auto approxes = approximations_of(v, ty);
    for (const auto& a2 : approxes)
      for (const auto& a1 : approxes)
        if (less_defined(a1, a2)) CHECK(is_approx(a1, v));
  }
}

TEST_CASE("partial order laws on raw approximations") {
  EnumBounds b;
  b.max_list_len = 2;
  auto all = enumerate_raw_approx(Ty::thunked(Ty::list(Ty::boolean())), b);
  for (const auto& a : all) CHECK(less_defined(a, a));
  for (const auto& a : all)
    for (const auto& c : all) {
      if (less_defined(a, c) && less_defined(c, a)) CHECK(a == c);
    }
  // transitivity of <= on a sampled subset to keep the cube small
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (std::size_t j = 0; j < all.size(); j += 3)
      for (std::size_t k = 0; k < all.size(); k += 3)
        if (less_defined(all[i], all[j]) && less_defined(all[j], all[k]))
          CHECK(less_defined(all[i], all[k]));
}

TEST_CASE("lubplus sums costs and joins environments") {
  DemandEnv e1{{"x", ApproxValue::bot()}};
  DemandEnv e2{{"x", ApproxValue::bot()}};
  auto r = lubplus({0, e1}, {0, e2});
  CHECK(r.cost == 0);
  CHECK(r.value.at("x").is_bot());

  DemandEnv f1{{"x", th(ApproxValue::nil())}};
  DemandEnv f2{{"x", ApproxValue::bot()}};
  auto s = lubplus({2, f1}, {3, f2});
  CHECK(s.cost == 5);
  CHECK(s.value.at("x") == th(ApproxValue::nil()));
}

TEST_CASE("lubplus associativity on random well-formed triples") {
  std::mt19937_64 rng(7);
  EnumBounds b;
  b.max_list_len = 3;
  TyPtr ty = Ty::thunked(Ty::list(Ty::nat()));
  auto totals = enumerate_totals(ty, b);
  for (int iter = 0; iter < 200; ++iter) {
    const TotalValue& v = totals[rng() % totals.size()];
    auto approxes = approximations_of(v, ty);
    auto pick = [&] {
      return Tick<DemandEnv>{rng() % 5,
                             DemandEnv{{"x", approxes[rng() % approxes.size()]}}};
    };
    auto t1 = pick(), t2 = pick(), t3 = pick();
    auto left = lubplus(lubplus(t1, t2), t3);
    auto right = lubplus(t1, lubplus(t2, t3));
    CHECK(left.cost == right.cost);
    CHECK(left.value == right.value);
  }
}

TEST_CASE("least approximation rows") {
  TyPtr tlist = Ty::thunked(Ty::list(Ty::boolean()));
  CHECK(least_approx(nat_list({0, 1}), tlist).is_bot());
  TyPtr list = Ty::list(Ty::boolean());
  CHECK(least_approx(TotalValue::cons(TotalValue::nat(0), TotalValue::nil()),
                     list) ==
        ApproxValue::cons(ApproxValue::bot(), ApproxValue::bot()));
  CHECK(least_approx(TotalValue::nil(), list) == ApproxValue::nil());
}

TEST_CASE("demand literal grammar round trips") {
  ApproxValue d = parse_demand_literal("(cons (thunk 1) (thunk (cons (thunk 2) _)))");
  CHECK(d == ApproxValue::cons(th(natA(1)),
                               th(ApproxValue::cons(th(natA(2)),
                                                    ApproxValue::bot()))));
  CHECK(parse_demand_literal(d.to_string()) == d);

  CHECK(parse_total_literal("[1,2]") == nat_list({1, 2}));
  CHECK(parse_demand_literal("_").is_bot());
  CHECK(parse_demand_literal("(pair true nil)") ==
        ApproxValue::pair(ApproxValue::boolean(true), ApproxValue::nil()));
  CHECK_THROWS_AS(parse_total_literal("(cons _ _)"), LiteralParseError);

  TotalEnv env = parse_env_bindings("xs=[1,2,3] ys=[4]");
  CHECK(env.at("xs") == nat_list({1, 2, 3}));
  CHECK(env.at("ys") == nat_list({4}));
}

TEST_CASE("shaped_by checks type shapes") {
  TyPtr tl = Ty::thunked(Ty::list(Ty::boolean()));
  CHECK(shaped_by(ApproxValue::bot(), tl));
  CHECK(shaped_by(th(ApproxValue::nil()), tl));
  CHECK_FALSE(shaped_by(ApproxValue::nil(), tl));
  CHECK(shaped_by(
      ApproxValue::cons(th(ApproxValue::boolean(true)), ApproxValue::bot()),
      Ty::list(Ty::boolean())));
  CHECK_FALSE(shaped_by(ApproxValue::cons(ApproxValue::boolean(true),
                                          ApproxValue::bot()),
                        Ty::list(Ty::boolean())));
}
