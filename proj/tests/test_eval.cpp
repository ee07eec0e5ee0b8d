#include <random>

#include "doctest.h"
#include "lazycost/corpus.hpp"
#include "lazycost/enumerate.hpp"
#include "lazycost/eval.hpp"

using namespace lazycost;

namespace {

TotalValue nat_list(std::initializer_list<std::uint64_t> xs) {
  TotalValue v = TotalValue::nil();
  std::vector<std::uint64_t> tmp(xs);
  for (auto it = tmp.rbegin(); it != tmp.rend(); ++it)
    v = TotalValue::cons(TotalValue::nat(*it), v);
  return v;
}

Program append_nat() {
  Program p = parse_program(
      "(params (xs (T (list nat))) (ys (T (list nat))))"
      "(body (foldr (fun x y (cons x y)) (force ys) (force xs)))");
  p.name = "append_nat";
  return p;
}

}  // namespace

TEST_CASE("lazy and force are identities under eval") {
  TypeInfo info;
  TermPtr t = parse_term("(force (lazy true))");
  typecheck({}, t, info);
  CHECK(eval({}, t) == TotalValue::boolean(true));
}

TEST_CASE("append evaluates to the concatenation") {
  Program p = append_nat();
  TotalEnv g{{"xs", nat_list({1, 2, 3})}, {"ys", nat_list({4})}};
  CHECK(eval_program(p, g) == nat_list({1, 2, 3, 4}));
}

TEST_CASE("foldr over nil evaluates the base") {
  Program p = parse_program(
      "(params (xs (list bool)))"
      "(body (foldr (fun x y (cons x y)) nil xs))");
  CHECK(eval_program(p, {{"xs", TotalValue::nil()}}) == TotalValue::nil());

  // singleton with a cons step keeps the head
  TotalEnv g{{"xs", TotalValue::cons(TotalValue::boolean(true),
                                     TotalValue::nil())}};
  CHECK(eval_program(p, g) == g.at("xs"));
}

namespace {

// Independent right fold used as the oracle for foldr_eval: recurses over the
// list directly and evaluates the step term afresh at every cell.
TotalValue reference_rightfold(const TotalEnv& env, const Term& f,
                               const TotalValue& list) {
  std::vector<TotalValue> heads;
  TotalValue cur = list;
  while (cur.kind() == TotalValue::Kind::Cons) {
    heads.push_back(cur.first());
    cur = cur.second();
  }
  TotalValue acc = eval(env, f.m2);
  for (auto it = heads.rbegin(); it != heads.rend(); ++it) {
    TotalEnv ext = env;
    ext.insert_or_assign(f.name, *it);
    ext.insert_or_assign(f.y, acc);
    acc = eval(ext, f.m1);
  }
  return acc;
}

}  // namespace

TEST_CASE("foldr_eval agrees with an independent right fold on random lists") {
  std::mt19937_64 rng(42);
  Program p = append_nat();
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = rng() % 6, m = rng() % 4;
    TotalValue xs = TotalValue::nil(), ys = TotalValue::nil();
    for (std::size_t i = 0; i < n; ++i)
      xs = TotalValue::cons(TotalValue::nat(rng() % 10), xs);
    for (std::size_t i = 0; i < m; ++i)
      ys = TotalValue::cons(TotalValue::nat(rng() % 10), ys);
    TotalEnv g{{"xs", xs}, {"ys", ys}};
    TotalValue direct = reference_rightfold(g, *p.body, xs);
    CHECK(eval(g, p.body) == direct);
    CHECK(foldr_eval(g, p.body->name, p.body->y, p.body->m1, p.body->m2, xs) ==
          direct);
  }
}

TEST_CASE("type preservation: eval lands in the total-value set") {
  EnumBounds b;
  b.max_list_len = 2;
  for (const auto& p : corpus_programs()) {
    for (const auto& g : enumerate_envs(p.params, b)) {
      CHECK(inhabits(eval(g, p.body), p.info.root));
    }
  }
}
