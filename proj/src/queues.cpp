#include "lazycost/queues.hpp"

#include <algorithm>

#include "lazycost/enumerate.hpp"
#include <cctype>
#include <map>
#include <sstream>

namespace lazycost {

namespace {

const ApproxValue kBot = ApproxValue::bot();

ApproxValue th(const ApproxValue& a) { return ApproxValue::thunk(a); }
ApproxValue thNat(std::uint64_t n) { return th(ApproxValue::nat(n)); }

std::uint64_t sat_sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Banker's queue: pure operations

bool well_formed(const BQueue& q) {
  return q.nback <= q.nfront && q.nfront == q.front.size() &&
         q.nback == q.back.size();
}

BQueue mkQueue(std::uint64_t nf, NatList f, std::uint64_t nb, NatList b) {
  if (nf < nb) {
    NatList nf2 = std::move(f);
    for (auto it = b.rbegin(); it != b.rend(); ++it) nf2.push_back(*it);
    return BQueue{nf + nb, std::move(nf2), 0, {}};
  }
  return BQueue{nf, std::move(f), nb, std::move(b)};
}

BQueue bpush(const BQueue& q, std::uint64_t x) {
  NatList b;
  b.reserve(q.back.size() + 1);
  b.push_back(x);
  b.insert(b.end(), q.back.begin(), q.back.end());
  return mkQueue(q.nfront, q.front, q.nback + 1, std::move(b));
}

std::optional<std::pair<std::uint64_t, BQueue>> bpop(const BQueue& q) {
  if (q.front.empty()) return std::nullopt;
  NatList f(q.front.begin() + 1, q.front.end());
  return std::make_pair(q.front.front(),
                        mkQueue(q.nfront - 1, std::move(f), q.nback, q.back));
}

// ---------------------------------------------------------------------------
// Banker's queue: approximations

std::string BQueueA::to_string() const {
  std::ostringstream out;
  out << "{" << nfrontA << ", " << frontA.to_string() << ", " << nbackA << ", "
      << backA.to_string() << "}";
  return out.str();
}

BQueueA exact_bqueueA(const BQueue& q) {
  return BQueueA{q.nfront, th(exact_list(q.front)), q.nback,
                 th(exact_list(q.back))};
}

BQueueA least_bqueueA(const BQueue& q) {
  return BQueueA{q.nfront, kBot, q.nback, kBot};
}

bool is_approx(const BQueueA& a, const BQueue& q) {
  return a.nfrontA == q.nfront && a.nbackA == q.nback &&
         is_approx(a.frontA, to_total(q.front)) &&
         is_approx(a.backA, to_total(q.back));
}

bool less_defined(const BQueueA& a, const BQueueA& b) {
  return a.nfrontA == b.nfrontA && a.nbackA == b.nbackA &&
         less_defined(a.frontA, b.frontA) && less_defined(a.backA, b.backA);
}

BQueueA join(const BQueueA& a, const BQueueA& b) {
  if (a.nfrontA != b.nfrontA || a.nbackA != b.nbackA)
    throw JoinMismatchError("join: queue length fields disagree");
  return BQueueA{a.nfrontA, join(a.frontA, b.frontA), a.nbackA,
                 join(a.backA, b.backA)};
}

std::uint64_t potential_banker(const BQueueA& qA) {
  return 2 * sat_sub(sizeX(0, qA.frontA), qA.nbackA);
}

// ---------------------------------------------------------------------------
// Banker's queue: demand functions

ApproxValue tailX(const ApproxValue& d) {
  if (d.is_bot()) return kBot;
  if (d.is_thunk() && d.inner().kind() == ApproxValue::Kind::Cons)
    return d.inner().second();
  throw QueuePreconditionError("tailX: not a cons demand: " + d.to_string());
}

Tick<std::pair<ApproxValue, ApproxValue>> appendD(const NatList& xs,
                                                  const ApproxValue& outD) {
  if (xs.empty()) return {1, {th(ApproxValue::nil()), th(outD)}};
  if (outD.kind() != ApproxValue::Kind::Cons)
    throw QueuePreconditionError("appendD: demand is not a cons: " +
                                 outD.to_string());
  NatList tail(xs.begin() + 1, xs.end());
  ApproxValue zsD = outD.second();
  if (zsD.is_bot())
    return {1, {th(ApproxValue::cons(outD.first(), kBot)), kBot}};
  if (!zsD.is_thunk())
    throw QueuePreconditionError("appendD: bad tail demand");
  auto rec = appendD(tail, zsD.inner());
  return {1 + rec.cost,
          {th(ApproxValue::cons(outD.first(), rec.value.first)),
           rec.value.second}};
}

Tick<ApproxValue> revD(const NatList& xs, const ApproxValue& outD) {
  // The reversal is monolithic: any demand forces every spine cell, exactly
  // |xs| of them (the terminal is never matched; rev counts down the known
  // length). Element demands map to mirrored positions.
  std::vector<ApproxValue> elem(xs.size(), kBot);
  ApproxValue cur = outD;
  std::size_t i = 0;
  while (cur.kind() == ApproxValue::Kind::Cons) {
    if (i < xs.size()) elem[xs.size() - 1 - i] = cur.first();
    ++i;
    ApproxValue t = cur.second();
    if (!t.is_thunk()) break;
    cur = t.inner();
  }
  if (xs.empty()) return {1, kBot};
  ApproxValue d = kBot;
  for (std::size_t j = xs.size(); j-- > 0;)
    d = th(ApproxValue::cons(elem[j], d));
  return {xs.size() + 1, d};
}

Tick<std::pair<ApproxValue, ApproxValue>> mkQueueD(std::uint64_t nf,
                                                   const NatList& f,
                                                   std::uint64_t nb,
                                                   const NatList& b,
                                                   const BQueueA& outD) {
  if (nb <= nf) return {1, {outD.frontA, outD.backA}};
  // Rebalance: front demand walks appendD; whatever crosses the boundary
  // lands on the reversed back.
  std::uint64_t cost = 1;
  ApproxValue fD = kBot, rbD = kBot, bD = kBot;
  if (outD.frontA.is_thunk()) {
    auto ap = appendD(f, outD.frontA.inner());
    cost += ap.cost;
    fD = ap.value.first;
    rbD = ap.value.second;
  } else if (!outD.frontA.is_bot()) {
    throw QueuePreconditionError("mkQueueD: bad front demand");
  }
  if (rbD.is_thunk()) {
    auto rv = revD(b, rbD.inner());
    cost += rv.cost;
    bD = rv.value;
  }
  return {cost, {fD, bD}};
}

Tick<BPushDemand> bpushD(const BQueue& q, std::uint64_t x, const BQueueA& outD) {
  NatList b;
  b.reserve(q.back.size() + 1);
  b.push_back(x);
  b.insert(b.end(), q.back.begin(), q.back.end());
  auto mk = mkQueueD(q.nfront, q.front, q.nback + 1, b, outD);
  BQueueA queueD{q.nfront, mk.value.first, q.nback, tailX(mk.value.second)};
  return {1 + mk.cost, {std::move(queueD), thNat(x)}};
}

Tick<BQueueA> bpopD(const BQueue& q, const BPopOutD& outD) {
  if (q.front.empty()) return {1, exact_bqueueA(q)};
  if (!outD.is_some)
    throw QueuePreconditionError(
        "popD: output demand is None but the queue is nonempty");
  NatList f(q.front.begin() + 1, q.front.end());
  std::uint64_t cost = 1;
  ApproxValue fD = kBot, bD = kBot;
  if (outD.qD.has_value()) {
    auto mk = mkQueueD(q.nfront - 1, f, q.nback, q.back, *outD.qD);
    cost += mk.cost;
    fD = mk.value.first;
    bD = mk.value.second;
  }
  return {cost,
          BQueueA{q.nfront, th(ApproxValue::cons(outD.xD, fD)), q.nback, bD}};
}

// ---------------------------------------------------------------------------
// Banker's queue: clairvoyant translations

namespace {

using ListBranches = std::vector<std::pair<std::uint64_t, ApproxValue>>;

ListBranches appendA(const ApproxValue& xsT, const ApproxValue& ysT) {
  ListBranches out;
  if (!xsT.is_thunk()) return out;  // stuck
  ApproxValue l = xsT.inner();
  if (l.kind() == ApproxValue::Kind::Nil) {
    if (!ysT.is_thunk()) return out;
    out.push_back({1, ysT.inner()});
    return out;
  }
  if (l.kind() != ApproxValue::Kind::Cons) return out;
  out.push_back({1, ApproxValue::cons(l.first(), kBot)});
  for (auto& [n, zl] : appendA(l.second(), ysT))
    out.push_back({1 + n, ApproxValue::cons(l.first(), th(zl))});
  return out;
}

// Length-indexed reversal: forces exactly k spine cells, never the terminal.
ListBranches revA(std::uint64_t k, const ApproxValue& xsT,
                  const ApproxValue& acc) {
  ListBranches out;
  if (k == 0) {
    out.push_back({1, acc});
    return out;
  }
  if (!xsT.is_thunk()) return out;
  ApproxValue l = xsT.inner();
  if (l.kind() != ApproxValue::Kind::Cons) return out;
  for (auto& [n, r] :
       revA(k - 1, l.second(), ApproxValue::cons(l.first(), th(acc))))
    out.push_back({1 + n, r});
  return out;
}

std::vector<BQueueBranch> mkQueueA(std::uint64_t nf, const ApproxValue& fT,
                                   std::uint64_t nb, const ApproxValue& bT) {
  std::vector<BQueueBranch> out;
  if (nf >= nb) {
    out.push_back({1, BQueueA{nf, fT, nb, bT}});
    return out;
  }
  // Rebalance: both the reversal and the append are lazy.
  std::vector<std::pair<std::uint64_t, ApproxValue>> rb_choices = {{0, kBot}};
  for (auto& [n, rl] : revA(nb, bT, ApproxValue::nil()))
    rb_choices.push_back({n, th(rl)});
  for (auto& [n, rbT] : rb_choices) {
    out.push_back({1 + n, BQueueA{nf + nb, kBot, 0, th(ApproxValue::nil())}});
    for (auto& [m, fl] : appendA(fT, rbT))
      out.push_back(
          {1 + n + m, BQueueA{nf + nb, th(fl), 0, th(ApproxValue::nil())}});
  }
  return out;
}

}  // namespace

std::vector<BQueueBranch> bpushA(const BQueueA& q, const ApproxValue& xT) {
  std::vector<BQueueBranch> out;
  for (auto& [n, rec] :
       mkQueueA(q.nfrontA, q.frontA, q.nbackA + 1,
                th(ApproxValue::cons(xT, q.backA))))
    out.push_back({1 + n, rec});
  return out;
}

std::vector<std::pair<std::uint64_t, BPopResA>> bpopA(const BQueueA& q) {
  std::vector<std::pair<std::uint64_t, BPopResA>> out;
  if (!q.frontA.is_thunk()) return out;
  ApproxValue fl = q.frontA.inner();
  if (fl.kind() == ApproxValue::Kind::Nil) {
    out.push_back({1, BPopResA{false, kBot, std::nullopt}});
    return out;
  }
  if (fl.kind() != ApproxValue::Kind::Cons) return out;
  out.push_back({1, BPopResA{true, fl.first(), std::nullopt}});
  for (auto& [n, rec] :
       mkQueueA(q.nfrontA - 1, fl.second(), q.nbackA, q.backA))
    out.push_back({1 + n, BPopResA{true, fl.first(), rec}});
  return out;
}

// ---------------------------------------------------------------------------
// Banker's queue: enumeration and serialization

std::vector<BQueue> enumerate_wf_bqueues(std::uint64_t max_size) {
  std::vector<BQueue> out;
  for (std::uint64_t nf = 0; nf <= max_size; ++nf) {
    for (std::uint64_t nb = 0; nb <= nf && nf + nb <= max_size; ++nb) {
      NatList f, b;
      for (std::uint64_t i = 0; i < nf; ++i) f.push_back(i);
      for (std::uint64_t i = 0; i < nb; ++i) b.push_back(nf + i);
      out.push_back(BQueue{nf, std::move(f), nb, std::move(b)});
    }
  }
  return out;
}

std::vector<BQueueA> approximations_of_bqueue(const BQueue& q) {
  std::vector<ApproxValue> fronts = {kBot};
  for (const auto& a : approximations_of_data(to_total(q.front)))
    fronts.push_back(th(a));
  std::vector<ApproxValue> backs = {kBot};
  for (const auto& a : approximations_of_data(to_total(q.back)))
    backs.push_back(th(a));
  std::vector<BQueueA> out;
  out.reserve(fronts.size() * backs.size());
  for (const auto& f : fronts)
    for (const auto& b : backs) out.push_back(BQueueA{q.nfront, f, q.nback, b});
  return out;
}

namespace {

struct MiniReader {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  char peek() {
    skip();
    if (pos >= s.size())
      throw QueuePreconditionError("unexpected end of queue literal");
    return s[pos];
  }
  bool eof() {
    skip();
    return pos >= s.size();
  }
  void expect(char c) {
    if (peek() != c)
      throw QueuePreconditionError(std::string("expected '") + c +
                                   "' in queue literal");
    ++pos;
  }
  std::string word() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos) throw QueuePreconditionError("expected token");
    return s.substr(start, pos - start);
  }
  std::uint64_t nat() { return std::stoull(word()); }
};

TotalValue elem_of(MiniReader& r) {
  if (r.peek() == '(') {
    r.expect('(');
    std::string head = r.word();
    if (head != "pair")
      throw QueuePreconditionError("unknown element constructor: " + head);
    TotalValue a = elem_of(r);
    TotalValue b = elem_of(r);
    r.expect(')');
    return TotalValue::pair(a, b);
  }
  return TotalValue::nat(r.nat());
}

IQueuePtr iqueue_of(MiniReader& r);

}  // namespace

BQueue parse_bqueue(const std::string& text) {
  MiniReader r{text};
  r.expect('(');
  if (r.word() != "queue")
    throw QueuePreconditionError("banker queue literal must be (queue ...)");
  BQueue q;
  q.nfront = r.nat();
  r.expect('(');
  while (r.peek() != ')') q.front.push_back(r.nat());
  r.expect(')');
  q.nback = r.nat();
  r.expect('(');
  while (r.peek() != ')') q.back.push_back(r.nat());
  r.expect(')');
  r.expect(')');
  if (!r.eof()) throw QueuePreconditionError("trailing queue literal text");
  return q;
}

std::string print_bqueue(const BQueue& q) {
  std::ostringstream out;
  out << "(queue " << q.nfront << " (";
  for (std::size_t i = 0; i < q.front.size(); ++i)
    out << (i ? " " : "") << q.front[i];
  out << ") " << q.nback << " (";
  for (std::size_t i = 0; i < q.back.size(); ++i)
    out << (i ? " " : "") << q.back[i];
  out << "))";
  return out.str();
}

// ---------------------------------------------------------------------------
// Implicit queue: pure operations

IQueuePtr iempty() {
  static const IQueuePtr nil = std::make_shared<IQueue>();
  return nil;
}

IQueuePtr ideep(IFront f, IQueuePtr m, IRear r) {
  auto q = std::make_shared<IQueue>();
  q->nil = false;
  q->f = std::move(f);
  q->m = std::move(m);
  q->r = std::move(r);
  return q;
}

bool iqueue_equal(const IQueuePtr& a, const IQueuePtr& b) {
  if (a->nil || b->nil) return a->nil == b->nil;
  if (a->f.two != b->f.two || a->r.one != b->r.one) return false;
  if (a->f.x != b->f.x) return false;
  if (a->f.two && a->f.y != b->f.y) return false;
  if (a->r.one && a->r.y != b->r.y) return false;
  return iqueue_equal(a->m, b->m);
}

std::size_t iqueue_size(const IQueuePtr& q) {
  if (q->nil) return 0;
  return (q->f.two ? 2 : 1) + (q->r.one ? 1 : 0) + 2 * iqueue_size(q->m);
}

IQueuePtr ipush(const IQueuePtr& q, const TotalValue& x) {
  if (q->nil) return ideep(IFront{false, x, {}}, iempty(), IRear{false, {}});
  if (!q->r.one) return ideep(q->f, q->m, IRear{true, x});
  return ideep(q->f, ipush(q->m, TotalValue::pair(q->r.y, x)),
               IRear{false, {}});
}

std::optional<std::pair<TotalValue, IQueuePtr>> ipop(const IQueuePtr& q) {
  if (q->nil) return std::nullopt;
  if (q->f.two)
    return std::make_pair(q->f.x,
                          ideep(IFront{false, q->f.y, {}}, q->m, q->r));
  TotalValue x = q->f.x;
  auto p = ipop(q->m);
  IQueuePtr rest;
  if (p.has_value()) {
    const TotalValue& yz = p->first;
    rest = ideep(IFront{true, yz.first(), yz.second()}, p->second, q->r);
  } else if (q->r.one) {
    rest = ideep(IFront{false, q->r.y, {}}, iempty(), IRear{false, {}});
  } else {
    rest = iempty();
  }
  return std::make_pair(x, rest);
}

// ---------------------------------------------------------------------------
// Implicit queue: approximations

IQueueAPtr inilA() {
  static const IQueueAPtr nil = std::make_shared<IQueueA>();
  return nil;
}

IQueueAPtr ideepA(std::optional<IFrontA> f, IQueueAPtr m,
                  std::optional<IRearA> r) {
  auto q = std::make_shared<IQueueA>();
  q->nil = false;
  q->f = std::move(f);
  q->m = std::move(m);
  q->r = std::move(r);
  return q;
}

bool iqueueA_equal(const IQueueAPtr& a, const IQueueAPtr& b) {
  if (!a || !b) return static_cast<bool>(a) == static_cast<bool>(b);
  if (a->nil || b->nil) return a->nil == b->nil;
  if (a->f.has_value() != b->f.has_value()) return false;
  if (a->f) {
    if (a->f->two != b->f->two || a->f->x != b->f->x) return false;
    if (a->f->two && a->f->y != b->f->y) return false;
  }
  if (a->r.has_value() != b->r.has_value()) return false;
  if (a->r) {
    if (a->r->one != b->r->one) return false;
    if (a->r->one && a->r->y != b->r->y) return false;
  }
  return iqueueA_equal(a->m, b->m);
}

std::string print_iqueueA(const IQueueAPtr& a) {
  if (!a) return "_";
  if (a->nil) return "nilA";
  std::ostringstream out;
  out << "(deepA ";
  if (!a->f) {
    out << "_";
  } else if (a->f->two) {
    out << "(ftwoA " << a->f->x.to_string() << " " << a->f->y.to_string() << ")";
  } else {
    out << "(foneA " << a->f->x.to_string() << ")";
  }
  out << " " << print_iqueueA(a->m) << " ";
  if (!a->r)
    out << "_";
  else if (a->r->one)
    out << "(roneA " << a->r->y.to_string() << ")";
  else
    out << "rzeroA";
  out << ")";
  return out.str();
}

IQueueAPtr exact_iqueueA(const IQueuePtr& q) {
  if (q->nil) return inilA();
  IFrontA f{q->f.two, th(exact_approx(q->f.x)),
            q->f.two ? th(exact_approx(q->f.y)) : kBot};
  IRearA r{q->r.one, q->r.one ? th(exact_approx(q->r.y)) : kBot};
  return ideepA(f, exact_iqueueA(q->m), r);
}

IQueueAPtr least_iqueueA(const IQueuePtr& q) {
  if (q->nil) return inilA();
  return ideepA(std::nullopt, nullptr, std::nullopt);
}

bool is_approx(const IQueueAPtr& a, const IQueuePtr& q) {
  if (!a) return true;  // undemanded thunk
  if (a->nil != q->nil) return false;
  if (a->nil) return true;
  if (a->f) {
    if (a->f->two != q->f.two) return false;
    if (!is_approx(a->f->x, q->f.x)) return false;
    if (a->f->two && !is_approx(a->f->y, q->f.y)) return false;
  }
  if (a->r) {
    if (a->r->one != q->r.one) return false;
    if (a->r->one && !is_approx(a->r->y, q->r.y)) return false;
  }
  return is_approx(a->m, q->m);
}

bool less_defined_i(const IQueueAPtr& a, const IQueueAPtr& b) {
  if (!a) return true;
  if (!b) return false;
  if (a->nil != b->nil) return false;
  if (a->nil) return true;
  if (a->f) {
    if (!b->f || a->f->two != b->f->two) return false;
    if (!less_defined(a->f->x, b->f->x)) return false;
    if (a->f->two && !less_defined(a->f->y, b->f->y)) return false;
  }
  if (a->r) {
    if (!b->r || a->r->one != b->r->one) return false;
    if (a->r->one && !less_defined(a->r->y, b->r->y)) return false;
  }
  return less_defined_i(a->m, b->m);
}

IQueueAPtr join_i(const IQueueAPtr& a, const IQueueAPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a->nil != b->nil)
    throw JoinMismatchError("join: implicit queue constructors disagree");
  if (a->nil) return a;
  std::optional<IFrontA> f;
  if (a->f && b->f) {
    if (a->f->two != b->f->two)
      throw JoinMismatchError("join: front constructors disagree");
    f = IFrontA{a->f->two, join(a->f->x, b->f->x),
                a->f->two ? join(a->f->y, b->f->y) : kBot};
  } else {
    f = a->f ? a->f : b->f;
  }
  std::optional<IRearA> r;
  if (a->r && b->r) {
    if (a->r->one != b->r->one)
      throw JoinMismatchError("join: rear constructors disagree");
    r = IRearA{a->r->one, a->r->one ? join(a->r->y, b->r->y) : kBot};
  } else {
    r = a->r ? a->r : b->r;
  }
  return ideepA(std::move(f), join_i(a->m, b->m), std::move(r));
}

std::uint64_t potential_implicit(const IQueueA& qA) {
  if (qA.nil) return 0;
  std::uint64_t wf = qA.f ? (qA.f->two ? 2 : 1) : 2;
  std::uint64_t wr = qA.r ? (qA.r->one ? 1 : 0) : 0;
  return sat_sub(wf, wr) + potential_implicit_t(qA.m);
}

std::uint64_t potential_implicit_t(const IQueueAPtr& qA) {
  return qA ? potential_implicit(*qA) : 0;
}

// ---------------------------------------------------------------------------
// Implicit queue: demand functions

Tick<IPushDemand> ipushD(const IQueuePtr& q, const TotalValue& x,
                         const IQueueA& outD) {
  std::uint64_t cost = 1;
  IQueueAPtr qD;
  if (!outD.nil) {
    if (q->nil) {
      qD = inilA();
    } else if (!q->r.one) {
      qD = ideepA(outD.f, outD.m, IRearA{false, kBot});
    } else {
      ApproxValue yD = kBot;
      IQueueAPtr mD2;
      if (outD.m) {
        auto rec = ipushD(q->m, TotalValue::pair(q->r.y, x), *outD.m);
        cost += rec.cost;
        mD2 = rec.value.queueD;
        const ApproxValue& pD = rec.value.elemD;
        if (pD.is_thunk() && pD.inner().kind() == ApproxValue::Kind::Pair)
          yD = pD.inner().first();
      }
      qD = ideepA(outD.f, mD2, IRearA{true, yD});
    }
  }
  // else: absurd demand shape; bottom queue demand
  return {cost, {qD, th(exact_approx(x))}};
}

Tick<IQueueAPtr> ipopD(const IQueuePtr& q, const IPopOutD& outD) {
  std::uint64_t cost = 1;
  if (q->nil) return {cost, inilA()};
  ApproxValue xD = kBot;
  IQueueAPtr qD;
  if (outD.is_some && outD.pair_forced) {
    xD = outD.xD;
    qD = outD.qD;
  }
  if (q->f.two) {
    ApproxValue yD = kBot;
    IQueueAPtr mD;
    std::optional<IRearA> rD;
    if (qD && !qD->nil) {
      if (qD->f && !qD->f->two) yD = qD->f->x;
      mD = qD->m;
      rD = qD->r;
    }
    return {cost, ideepA(IFrontA{true, xD, yD}, mD, rD)};
  }
  // FOne: decide between the deep recursion and the rear promotion by
  // running pop forward on the middle.
  auto p = ipop(q->m);
  std::optional<IPopOutD> pD;  // demand on `pop m`; nullopt = unforced
  std::optional<IRearA> rD;
  if (p.has_value()) {
    if (qD && !qD->nil) {
      ApproxValue yzD;
      if (qD->f && qD->f->two)
        yzD = th(ApproxValue::pair(qD->f->x, qD->f->y));
      else
        yzD = th(ApproxValue::pair(kBot, kBot));
      pD = IPopOutD{true, true, yzD, qD->m};
      rD = qD->r;
    }
    // else bottom: neither the recursive pop nor the rear is demanded
  } else {
    ApproxValue yD = kBot;
    if (q->r.one) {
      if (qD && !qD->nil && qD->f && !qD->f->two) yD = qD->f->x;
      rD = IRearA{true, yD};
    } else {
      rD = IRearA{false, kBot};
    }
    pD = IPopOutD{false, false, kBot, nullptr};  // Thunk None
  }
  IQueueAPtr mD;
  if (pD.has_value()) {
    auto rec = ipopD(q->m, *pD);
    cost += rec.cost;
    mD = rec.value;
  }
  return {cost, ideepA(IFrontA{false, xD, kBot}, mD, rD)};
}

// ---------------------------------------------------------------------------
// Implicit queue: clairvoyant translations

std::vector<IQueueBranch> ipushA(const IQueueAPtr& q, const ApproxValue& xT) {
  std::vector<IQueueBranch> out;
  if (!q) return out;  // force of an undemanded queue: stuck
  if (q->nil) {
    out.push_back({1, ideepA(IFrontA{false, xT, kBot}, inilA(),
                             IRearA{false, kBot})});
    return out;
  }
  if (!q->r) return out;  // rear is matched: stuck when undemanded
  if (!q->r->one) {
    out.push_back({1, ideepA(q->f, q->m, IRearA{true, xT})});
    return out;
  }
  ApproxValue pairT = th(ApproxValue::pair(q->r->y, xT));
  out.push_back({1, ideepA(q->f, nullptr, IRearA{false, kBot})});
  for (auto& [n, mrec] : ipushA(q->m, pairT))
    out.push_back({1 + n, ideepA(q->f, mrec, IRearA{false, kBot})});
  return out;
}

std::vector<std::pair<std::uint64_t, IPopResA>> ipopA(const IQueueAPtr& q) {
  std::vector<std::pair<std::uint64_t, IPopResA>> out;
  if (!q) return out;
  if (q->nil) {
    out.push_back({1, IPopResA{false, kBot, nullptr}});
    return out;
  }
  if (!q->f) return out;  // front is matched: stuck when undemanded
  if (q->f->two) {
    out.push_back(
        {1, IPopResA{true, q->f->x,
                     ideepA(IFrontA{false, q->f->y, kBot}, q->m, q->r)}});
    return out;
  }
  const ApproxValue xT = q->f->x;
  out.push_back({1, IPopResA{true, xT, nullptr}});  // result queue skipped
  for (auto& [n, p] : ipopA(q->m)) {
    if (p.is_some) {
      // the pair of front elements is forced to build FTwo
      if (!(p.xD.is_thunk() &&
            p.xD.inner().kind() == ApproxValue::Kind::Pair))
        continue;  // stuck
      ApproxValue yz = p.xD.inner();
      out.push_back(
          {1 + n, IPopResA{true, xT,
                           ideepA(IFrontA{true, yz.first(), yz.second()},
                                  p.qD, q->r)}});
    } else {
      if (!q->r) continue;  // rear matched: stuck
      if (q->r->one)
        out.push_back(
            {1 + n, IPopResA{true, xT,
                             ideepA(IFrontA{false, q->r->y, kBot}, inilA(),
                                    IRearA{false, kBot})}});
      else
        out.push_back({1 + n, IPopResA{true, xT, inilA()}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Implicit queue: enumeration and serialization

std::vector<IQueuePtr> enumerate_reachable_iqueues(std::size_t ops) {
  std::vector<IQueuePtr> all = {iempty()};
  std::vector<IQueuePtr> frontier = all;
  std::uint64_t fresh = 0;
  auto seen = [&](const IQueuePtr& q) {
    for (const auto& o : all)
      if (iqueue_equal(o, q)) return true;
    return false;
  };
  for (std::size_t step = 0; step < ops; ++step) {
    std::vector<IQueuePtr> next;
    for (const auto& q : frontier) {
      IQueuePtr pushed = ipush(q, TotalValue::nat(fresh++));
      if (!seen(pushed)) {
        all.push_back(pushed);
        next.push_back(pushed);
      }
      auto p = ipop(q);
      if (p.has_value() && !seen(p->second)) {
        all.push_back(p->second);
        next.push_back(p->second);
      }
    }
    frontier = std::move(next);
  }
  return all;
}

namespace {

std::vector<ApproxValue> elem_demands(const TotalValue& v) {
  std::vector<ApproxValue> out = {kBot};
  for (const auto& a : approximations_of_data(v)) out.push_back(th(a));
  return out;
}

}  // namespace

std::vector<IQueueAPtr> approximations_of_iqueue(const IQueuePtr& q) {
  if (q->nil) return {inilA()};
  std::vector<std::optional<IFrontA>> fronts = {std::nullopt};
  for (const auto& x : elem_demands(q->f.x)) {
    if (q->f.two) {
      for (const auto& y : elem_demands(q->f.y))
        fronts.push_back(IFrontA{true, x, y});
    } else {
      fronts.push_back(IFrontA{false, x, kBot});
    }
  }
  std::vector<IQueueAPtr> mids = {nullptr};
  for (const auto& m : approximations_of_iqueue(q->m)) mids.push_back(m);
  std::vector<std::optional<IRearA>> rears = {std::nullopt};
  if (q->r.one) {
    for (const auto& y : elem_demands(q->r.y)) rears.push_back(IRearA{true, y});
  } else {
    rears.push_back(IRearA{false, kBot});
  }
  std::vector<IQueueAPtr> out;
  for (const auto& f : fronts)
    for (const auto& m : mids)
      for (const auto& r : rears) out.push_back(ideepA(f, m, r));
  return out;
}

namespace {

IQueuePtr iqueue_of(MiniReader& r) {
  if (r.peek() != '(') {
    std::string w = r.word();
    if (w == "nil") return iempty();
    throw QueuePreconditionError("unknown queue token: " + w);
  }
  r.expect('(');
  std::string head = r.word();
  if (head != "deep")
    throw QueuePreconditionError("unknown queue constructor: " + head);
  r.expect('(');
  std::string fw = r.word();
  IFront f;
  if (fw == "fone") {
    f = IFront{false, elem_of(r), {}};
  } else if (fw == "ftwo") {
    TotalValue a = elem_of(r);
    TotalValue b = elem_of(r);
    f = IFront{true, a, b};
  } else {
    throw QueuePreconditionError("unknown front constructor: " + fw);
  }
  r.expect(')');
  IQueuePtr m = iqueue_of(r);
  IRear rr;
  if (r.peek() == '(') {
    r.expect('(');
    std::string rw = r.word();
    if (rw != "rone")
      throw QueuePreconditionError("unknown rear constructor: " + rw);
    rr = IRear{true, elem_of(r)};
    r.expect(')');
  } else {
    std::string rw = r.word();
    if (rw != "rzero")
      throw QueuePreconditionError("unknown rear constructor: " + rw);
    rr = IRear{false, {}};
  }
  r.expect(')');
  return ideep(std::move(f), std::move(m), std::move(rr));
}

std::string print_elem(const TotalValue& v) {
  if (v.kind() == TotalValue::Kind::Pair)
    return "(pair " + print_elem(v.first()) + " " + print_elem(v.second()) + ")";
  return std::to_string(v.nat_value());
}

}  // namespace

IQueuePtr parse_iqueue(const std::string& text) {
  MiniReader r{text};
  IQueuePtr q = iqueue_of(r);
  if (!r.eof()) throw QueuePreconditionError("trailing queue literal text");
  return q;
}

std::string print_iqueue(const IQueuePtr& q) {
  if (q->nil) return "nil";
  std::string f = q->f.two ? "(ftwo " + print_elem(q->f.x) + " " +
                                 print_elem(q->f.y) + ")"
                           : "(fone " + print_elem(q->f.x) + ")";
  std::string r =
      q->r.one ? "(rone " + print_elem(q->r.y) + ")" : "rzero";
  return "(deep " + f + " " + print_iqueue(q->m) + " " + r + ")";
}

}  // namespace lazycost
