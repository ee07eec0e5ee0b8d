#include <random>

#include "doctest.h"
#include "lazycost/enumerate.hpp"
#include "lazycost/queues.hpp"

using namespace lazycost;

namespace {

ApproxValue th(const ApproxValue& a) { return ApproxValue::thunk(a); }
const ApproxValue kBot = ApproxValue::bot();

bool pop_result_refines(const BPopOutD& outD, const BPopResA& res) {
  if (outD.is_some != res.is_some) return false;
  if (!outD.is_some) return true;
  if (!less_defined(outD.xD, res.xD)) return false;
  if (!outD.qD) return true;
  return res.qD && less_defined(*outD.qD, *res.qD);
}

bool ipop_result_refines(const IPopOutD& outD, const IPopResA& res) {
  if (outD.is_some != res.is_some) return false;
  if (!outD.is_some || !outD.pair_forced) return true;
  if (!less_defined(outD.xD, res.xD)) return false;
  if (!outD.qD) return true;
  return res.qD && less_defined_i(outD.qD, res.qD);
}

}  // namespace

TEST_CASE("banker pure operations") {
  BQueue empty{0, {}, 0, {}};
  BQueue q1 = bpush(empty, 7);
  CHECK(q1 == BQueue{1, {7}, 0, {}});  // nf=0 < nb=1 rebalances immediately

  CHECK(mkQueue(1, {10}, 2, {12, 11}) == BQueue{3, {10, 11, 12}, 0, {}});

  auto p = bpop(BQueue{1, {7}, 0, {}});
  REQUIRE(p.has_value());
  CHECK(p->first == 7);
  CHECK(p->second == BQueue{0, {}, 0, {}});
  CHECK_FALSE(bpop(BQueue{0, {}, 0, {}}).has_value());
}

TEST_CASE("well_formed preserved by push and pop") {
  for (const auto& q : enumerate_wf_bqueues(6)) {
    CHECK(well_formed(q));
    CHECK(well_formed(bpush(q, 42)));
    auto p = bpop(q);
    if (p) CHECK(well_formed(p->second));
  }
}

TEST_CASE("pushD on the empty queue with the least demand") {
  BQueue empty{0, {}, 0, {}};
  BQueueA outD = least_bqueueA(bpush(empty, 5));
  auto r = bpushD(empty, 5, outD);
  CHECK(r.value.elemD == th(ApproxValue::nat(5)));
  CHECK(r.value.queueD.frontA.is_bot());
  CHECK(r.value.queueD.backA.is_bot());
  CHECK(r.cost == 2);  // pushD tick + mkQueueD tick
}

TEST_CASE("popD on an empty front demands the exact queue") {
  BQueue empty{0, {}, 0, {}};
  auto r = bpopD(empty, BPopOutD{false, kBot, std::nullopt});
  CHECK(r.cost == 1);
  CHECK(r.value == exact_bqueueA(empty));
}

TEST_CASE("banker potential") {
  // three demanded front cells against one back element
  BQueueA qA{3,
             th(ApproxValue::cons(
                 kBot, th(ApproxValue::cons(
                           kBot, th(ApproxValue::cons(kBot, kBot)))))),
             1, kBot};
  CHECK(potential_banker(qA) == 4);
  CHECK(potential_banker(BQueueA{3, kBot, 1, kBot}) == 0);
  BQueueA clamped{2, th(ApproxValue::cons(kBot, kBot)), 3, kBot};
  CHECK(potential_banker(clamped) == 0);
}

TEST_CASE("banker potential matches an independent recomputation") {
  // Eq: 2 * max(|f^D| - nb, 0) with the demand length counted by a loop.
  std::mt19937_64 rng(3);
  auto queues = enumerate_wf_bqueues(5);
  for (int iter = 0; iter < 100; ++iter) {
    const BQueue& q = queues[rng() % queues.size()];
    auto approxes = approximations_of_bqueue(q);
    const BQueueA& qA = approxes[rng() % approxes.size()];
    long long cells = 0;
    ApproxValue cur = qA.frontA;
    while (cur.is_thunk() && cur.inner().kind() == ApproxValue::Kind::Cons) {
      ++cells;
      cur = cur.inner().second();
    }
    long long expect = 2 * (cells - static_cast<long long>(qA.nbackA));
    if (expect < 0) expect = 0;
    CHECK(potential_banker(qA) == static_cast<std::uint64_t>(expect));
  }
}

TEST_CASE("banker cost inequalities hold exhaustively (small sizes)") {
  // Size <= 4 here; the acceptance suite runs <= 6.
  for (const auto& q : enumerate_wf_bqueues(4)) {
    BQueue pushed = bpush(q, 9);
    for (const auto& outD : approximations_of_bqueue(pushed)) {
      auto r = bpushD(q, 9, outD);
      CHECK(potential_banker(r.value.queueD) + r.cost <=
            potential_banker(outD) + kBankerConst);
      CHECK(is_approx(r.value.queueD, q));
    }
    auto p = bpop(q);
    if (!p) continue;
    for (const auto& qa : approximations_of_bqueue(p->second)) {
      BPopOutD outD{true, th(ApproxValue::nat(p->first)), qa};
      auto r = bpopD(q, outD);
      CHECK(potential_banker(r.value) + r.cost <=
            kBankerConst + potential_banker(qa));
      CHECK(is_approx(r.value, q));
    }
  }
}

TEST_CASE("banker demand functions agree with pushA/popA") {
  // For every demand there is a clairvoyant execution of the monadic
  // translation run on the demanded input whose output refines the demand at
  // no more than the demanded cost.
  for (const auto& q : enumerate_wf_bqueues(4)) {
    BQueue pushed = bpush(q, 9);
    for (const auto& outD : approximations_of_bqueue(pushed)) {
      auto r = bpushD(q, 9, outD);
      bool found = false;
      for (const auto& [c, rec] : bpushA(r.value.queueD, r.value.elemD)) {
        if (c <= r.cost && less_defined(outD, rec)) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
    auto p = bpop(q);
    std::vector<BPopOutD> pops;
    if (!p) {
      pops.push_back(BPopOutD{false, kBot, std::nullopt});
    } else {
      pops.push_back(BPopOutD{true, kBot, std::nullopt});
      for (const auto& qa : approximations_of_bqueue(p->second))
        pops.push_back(BPopOutD{true, th(ApproxValue::nat(p->first)), qa});
    }
    for (const auto& outD : pops) {
      auto r = bpopD(q, outD);
      bool found = false;
      for (const auto& [c, res] : bpopA(r.value)) {
        if (c <= r.cost && pop_result_refines(outD, res)) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("banker potential is monotone in definedness") {
  for (const auto& q : enumerate_wf_bqueues(4)) {
    auto approxes = approximations_of_bqueue(q);
    for (const auto& a : approxes)
      for (const auto& b : approxes)
        if (less_defined(a, b))
          CHECK(potential_banker(a) <= potential_banker(b));
  }
}

TEST_CASE("banker queue literals round trip") {
  BQueue q{2, {1, 2}, 1, {3}};
  CHECK(parse_bqueue(print_bqueue(q)) == q);
}

TEST_CASE("implicit queue pure operations") {
  IQueuePtr q1 = ipush(iempty(), TotalValue::nat(4));
  REQUIRE(!q1->nil);
  CHECK_FALSE(q1->f.two);
  CHECK(q1->f.x == TotalValue::nat(4));
  CHECK(q1->m->nil);
  CHECK_FALSE(q1->r.one);

  auto p = ipop(q1);
  REQUIRE(p.has_value());
  CHECK(p->first == TotalValue::nat(4));
  CHECK(p->second->nil);
  CHECK_FALSE(ipop(iempty()).has_value());
}

TEST_CASE("implicit queue nests pairs at depth 2^k") {
  IQueuePtr q = iempty();
  for (std::uint64_t i = 0; i < 8; ++i) q = ipush(q, TotalValue::nat(i));
  // after 2^3 pushes the middle of the middle holds 4-tuples
  REQUIRE(!q->nil);
  const IQueuePtr& m = q->m;
  REQUIRE(!m->nil);
  CHECK(m->f.x.kind() == TotalValue::Kind::Pair);
  const IQueuePtr& mm = m->m;
  REQUIRE(!mm->nil);
  CHECK(mm->f.x.kind() == TotalValue::Kind::Pair);
  CHECK(mm->f.x.first().kind() == TotalValue::Kind::Pair);
  // FIFO order is preserved
  IQueuePtr cur = q;
  for (std::uint64_t i = 0; i < 8; ++i) {
    auto popped = ipop(cur);
    REQUIRE(popped.has_value());
    CHECK(popped->first == TotalValue::nat(i));
    cur = popped->second;
  }
  CHECK(cur->nil);
}

TEST_CASE("implicit potential rows") {
  CHECK(potential_implicit(*inilA()) == 0);
  CHECK(potential_implicit(
            *ideepA(std::nullopt, nullptr, IRearA{false, kBot})) == 2);
  CHECK(potential_implicit(*ideepA(IFrontA{false, kBot, kBot}, nullptr,
                                   IRearA{true, kBot})) == 0);
}

TEST_CASE("ipushD on the empty queue") {
  IQueueAPtr outD = least_iqueueA(ipush(iempty(), TotalValue::nat(3)));
  auto r = ipushD(iempty(), TotalValue::nat(3), *outD);
  CHECK(r.cost == 1);
  REQUIRE(r.value.queueD);
  CHECK(r.value.queueD->nil);
}

TEST_CASE("implicit cost inequalities hold over reachable queues (small)") {
  for (const auto& q : enumerate_reachable_iqueues(4)) {
    TotalValue x = TotalValue::nat(9);
    for (const auto& outD : approximations_of_iqueue(ipush(q, x))) {
      auto r = ipushD(q, x, *outD);
      CHECK(potential_implicit_t(r.value.queueD) + r.cost <=
            kImplicitPushBound + potential_implicit(*outD));
      CHECK(is_approx(r.value.queueD, q));
    }
    auto p = ipop(q);
    std::vector<IPopOutD> pops;
    if (!p) {
      pops.push_back(IPopOutD{false, false, kBot, nullptr});
    } else {
      pops.push_back(IPopOutD{true, false, kBot, nullptr});
      for (const auto& qa : approximations_of_iqueue(p->second)) {
        pops.push_back(IPopOutD{true, true, kBot, qa});
        for (const auto& xa : approximations_of_data(p->first))
          pops.push_back(IPopOutD{true, true, th(xa), qa});
      }
    }
    for (const auto& outD : pops) {
      auto r = ipopD(q, outD);
      std::uint64_t d = outD.is_some && outD.pair_forced
                            ? potential_implicit_t(outD.qD)
                            : 0;
      CHECK(potential_implicit_t(r.value) + r.cost <= kImplicitPopBound + d);
      CHECK(is_approx(r.value, q));
    }
  }
}

TEST_CASE("implicit demand functions agree with pushA/popA") {
  for (const auto& q : enumerate_reachable_iqueues(4)) {
    TotalValue x = TotalValue::nat(9);
    for (const auto& outD : approximations_of_iqueue(ipush(q, x))) {
      auto r = ipushD(q, x, *outD);
      bool found = false;
      for (const auto& [c, rec] : ipushA(r.value.queueD, r.value.elemD)) {
        if (c <= r.cost && less_defined_i(outD, rec)) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
    auto p = ipop(q);
    std::vector<IPopOutD> pops;
    if (!p) {
      pops.push_back(IPopOutD{false, false, kBot, nullptr});
    } else {
      pops.push_back(IPopOutD{true, false, kBot, nullptr});
      for (const auto& qa : approximations_of_iqueue(p->second))
        pops.push_back(IPopOutD{true, true, kBot, qa});
    }
    for (const auto& outD : pops) {
      auto r = ipopD(q, outD);
      bool found = false;
      for (const auto& [c, res] : ipopA(r.value)) {
        if (c <= r.cost && ipop_result_refines(outD, res)) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("implicit potential: equal shapes have equal potential and the"
          " middle is monotone") {
  for (const auto& q : enumerate_reachable_iqueues(4)) {
    if (q->nil) continue;
    auto a = ideepA(IFrontA{q->f.two, kBot, kBot}, nullptr,
                    IRearA{q->r.one, kBot});
    auto b = ideepA(IFrontA{q->f.two, kBot, kBot}, least_iqueueA(q->m),
                    IRearA{q->r.one, kBot});
    CHECK(potential_implicit(*a) <= potential_implicit(*b));
  }
}

TEST_CASE("implicit queue literals round trip") {
  IQueuePtr q = ipush(ipush(ipush(iempty(), TotalValue::nat(1)),
                            TotalValue::nat(2)),
                      TotalValue::nat(3));
  CHECK(iqueue_equal(parse_iqueue(print_iqueue(q)), q));
  CHECK(parse_iqueue("nil")->nil);
}
