#include "doctest.h"
#include "lazycost/corpus.hpp"
#include "lazycost/demand.hpp"
#include "lazycost/xcheck.hpp"

using namespace lazycost;

TEST_CASE("corpus programs parse, typecheck, and round trip") {
  auto programs = corpus_programs();
  CHECK(programs.size() >= 6);
  for (const auto& p : programs) {
    Program again = parse_program(print_program(p));
    CHECK(print_program(again) == print_program(p));
  }
}

TEST_CASE("correspondence suites pass on the corpus at reduced scale") {
  XcheckOptions opt;
  opt.bounds.max_list_len = 2;
  for (const auto& p : corpus_programs()) {
    XcheckReport r = xcheck_program(p, opt);
    INFO(p.name);
    for (const auto& v : r.violations) {
      INFO(v.property << ": " << v.detail);
    }
    CHECK(r.ok());
    CHECK(r.envs > 0);
    CHECK(r.demands > 0);
  }
}

TEST_CASE("serial and parallel sweeps agree") {
  Program p = corpus_program("map_tick");
  XcheckOptions serial;
  serial.bounds.max_list_len = 2;
  serial.parallel = false;
  XcheckOptions parallel = serial;
  parallel.parallel = true;
  XcheckReport a = xcheck_program(p, serial);
  XcheckReport b = xcheck_program(p, parallel);
  CHECK(a.envs == b.envs);
  CHECK(a.demands == b.demands);
  CHECK(a.branches == b.branches);
  CHECK(a.violations.size() == b.violations.size());
}

TEST_CASE("correspondence holds under binder shadowing") {
  for (const char* src : {
           "(params (x (T bool)))"
           "(body (let (x (lazy (tick (force x)))) (cons x (lazy nil))))",
           "(params (x (list bool)))"
           "(body (foldr (fun x y (cons x y)) nil x))",
       }) {
    Program p = parse_program(src);
    p.name = "shadowing";
    XcheckOptions opt;
    opt.bounds.max_list_len = 2;
    XcheckReport r = xcheck_program(p, opt);
    for (const auto& v : r.violations) {
      INFO(v.property << ": " << v.detail);
    }
    CHECK(r.ok());
  }
}

TEST_CASE("a deliberately non-minimal demand is caught") {
  // Cost minimality separates the demand semantics from the trivial
  // all-bottom semantics: at least one corpus program demands nonzero cost.
  Program p = corpus_program("map_tick");
  XcheckOptions opt;
  opt.bounds.max_list_len = 1;
  XcheckReport r = xcheck_program(p, opt);
  CHECK(r.ok());
  TotalEnv g{{"xs", TotalValue::cons(TotalValue::boolean(true),
                                     TotalValue::nil())}};
  auto full = exact_approx(eval_program(p, g));
  CHECK(demand(p, g, full).cost > 0);
}
