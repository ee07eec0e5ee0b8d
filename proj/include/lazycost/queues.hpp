#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lazycost/lazy_stdlib.hpp"
#include "lazycost/value.hpp"

namespace lazycost {

struct QueuePreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Banker's queue

struct BQueue {
  std::uint64_t nfront = 0;
  NatList front;
  std::uint64_t nback = 0;
  NatList back;

  bool operator==(const BQueue&) const = default;
};

// back no longer than front, length fields accurate.
bool well_formed(const BQueue& q);

BQueue mkQueue(std::uint64_t nf, NatList f, std::uint64_t nb, NatList b);
BQueue bpush(const BQueue& q, std::uint64_t x);
std::optional<std::pair<std::uint64_t, BQueue>> bpop(const BQueue& q);

// Approximation of a queue: length fields exact, list fields thunked.
struct BQueueA {
  std::uint64_t nfrontA = 0;
  ApproxValue frontA;  // T (listA nat)
  std::uint64_t nbackA = 0;
  ApproxValue backA;

  bool operator==(const BQueueA&) const = default;
  std::string to_string() const;
};

using TBQueueA = std::optional<BQueueA>;  // nullopt = undemanded thunk

BQueueA exact_bqueueA(const BQueue& q);
BQueueA least_bqueueA(const BQueue& q);
bool is_approx(const BQueueA& a, const BQueue& q);
bool less_defined(const BQueueA& a, const BQueueA& b);
BQueueA join(const BQueueA& a, const BQueueA& b);

// Demand on the result of pop: None, or Some with element/queue components.
struct BPopOutD {
  bool is_some = false;
  ApproxValue xD;  // T nat
  TBQueueA qD;     // T (QueueA)
};

// Demand functions. mkQueueD inverts the smart constructor: demands pass
// through unchanged without a rebalance; with one, the front demand routes
// through appendD into revD, which demands every back spine cell (reversal
// is monolithic once forced) at cost |back|+1.
Tick<std::pair<ApproxValue, ApproxValue>> mkQueueD(std::uint64_t nf,
                                                   const NatList& f,
                                                   std::uint64_t nb,
                                                   const NatList& b,
                                                   const BQueueA& outD);
Tick<std::pair<ApproxValue, ApproxValue>> appendD(const NatList& xs,
                                                  const ApproxValue& outD);
Tick<ApproxValue> revD(const NatList& xs, const ApproxValue& outD);
// Tail projection of a cons demand (Bot on Bot).
ApproxValue tailX(const ApproxValue& d);

struct BPushDemand {
  BQueueA queueD;
  ApproxValue elemD;
};
Tick<BPushDemand> bpushD(const BQueue& q, std::uint64_t x, const BQueueA& outD);
Tick<BQueueA> bpopD(const BQueue& q, const BPopOutD& outD);

// 2 * (sizeX 0 frontA - nbackA), saturating.
std::uint64_t potential_banker(const BQueueA& qA);
inline constexpr std::uint64_t kBankerConst = 7;

// Clairvoyant translations over approximations; used to cross-validate the
// demand functions and to execute traces. Inputs are already-forced records;
// forcing a Bot field prunes the branch.
using BQueueBranch = std::pair<std::uint64_t, BQueueA>;
std::vector<BQueueBranch> bpushA(const BQueueA& q, const ApproxValue& xT);
struct BPopResA {
  bool is_some = false;
  ApproxValue xD;
  TBQueueA qD;
};
std::vector<std::pair<std::uint64_t, BPopResA>> bpopA(const BQueueA& q);

std::vector<BQueue> enumerate_wf_bqueues(std::uint64_t max_size);
std::vector<BQueueA> approximations_of_bqueue(const BQueue& q);

BQueue parse_bqueue(const std::string& text);
std::string print_bqueue(const BQueue& q);

// ---------------------------------------------------------------------------
// Implicit queue

struct IQueue;
using IQueuePtr = std::shared_ptr<const IQueue>;

struct IFront {
  bool two = false;
  TotalValue x, y;
};
struct IRear {
  bool one = false;
  TotalValue y;
};

struct IQueue {
  bool nil = true;
  IFront f;
  IQueuePtr m;  // queue of pairs
  IRear r;
};

IQueuePtr iempty();
IQueuePtr ideep(IFront f, IQueuePtr m, IRear r);
bool iqueue_equal(const IQueuePtr& a, const IQueuePtr& b);
std::size_t iqueue_size(const IQueuePtr& q);

IQueuePtr ipush(const IQueuePtr& q, const TotalValue& x);
std::optional<std::pair<TotalValue, IQueuePtr>> ipop(const IQueuePtr& q);

struct IQueueA;
using IQueueAPtr = std::shared_ptr<const IQueueA>;

struct IFrontA {
  bool two = false;
  ApproxValue x, y;  // T element approximations
};
struct IRearA {
  bool one = false;
  ApproxValue y;
};

// DeepA fields are thunked: nullopt / null pointer mean undemanded.
struct IQueueA {
  bool nil = true;
  std::optional<IFrontA> f;
  IQueueAPtr m;
  std::optional<IRearA> r;
};

IQueueAPtr inilA();
IQueueAPtr ideepA(std::optional<IFrontA> f, IQueueAPtr m, std::optional<IRearA> r);
bool iqueueA_equal(const IQueueAPtr& a, const IQueueAPtr& b);
std::string print_iqueueA(const IQueueAPtr& a);

IQueueAPtr exact_iqueueA(const IQueuePtr& q);
IQueueAPtr least_iqueueA(const IQueuePtr& q);
bool is_approx(const IQueueAPtr& a, const IQueuePtr& q);
bool less_defined_i(const IQueueAPtr& a, const IQueueAPtr& b);
IQueueAPtr join_i(const IQueueAPtr& a, const IQueueAPtr& b);

// Demand on a pop result: option (T (prodA elem (QueueA elem))).
struct IPopOutD {
  bool is_some = false;
  bool pair_forced = false;  // whether the Some payload thunk is demanded
  ApproxValue xD;            // T element
  IQueueAPtr qD;             // T queue (null = undemanded)
};

struct IPushDemand {
  IQueueAPtr queueD;  // T queue, always demanded by pushD'
  ApproxValue elemD;
};
Tick<IPushDemand> ipushD(const IQueuePtr& q, const TotalValue& x,
                         const IQueueA& outD);
Tick<IQueueAPtr> ipopD(const IQueuePtr& q, const IPopOutD& outD);

// T_rect size_FrontA 2 fD - T_rect size_RearA 0 rD, plus the middle.
std::uint64_t potential_implicit(const IQueueA& qA);
std::uint64_t potential_implicit_t(const IQueueAPtr& qA);
inline constexpr std::uint64_t kImplicitPushBound = 2;
inline constexpr std::uint64_t kImplicitPopBound = 3;

using IQueueBranch = std::pair<std::uint64_t, IQueueAPtr>;
std::vector<IQueueBranch> ipushA(const IQueueAPtr& q, const ApproxValue& xT);
struct IPopResA {
  bool is_some = false;
  ApproxValue xD;
  IQueueAPtr qD;  // null = skipped thunk
};
std::vector<std::pair<std::uint64_t, IPopResA>> ipopA(const IQueueAPtr& q);

// Queues reachable from empty by at most `ops` push/pop operations.
std::vector<IQueuePtr> enumerate_reachable_iqueues(std::size_t ops);
std::vector<IQueueAPtr> approximations_of_iqueue(const IQueuePtr& q);

IQueuePtr parse_iqueue(const std::string& text);
std::string print_iqueue(const IQueuePtr& q);

}  // namespace lazycost
