#pragma once

#include <cstdint>
#include <vector>

#include "lazycost/value.hpp"

namespace lazycost {

// Demand functions of the lazy list library. Pure functions operate on plain
// nat vectors; approximations are ApproxValue restricted to list shape with
// nat leaves (ListA). A value of "type" T(ListA) is Bot or Thunk(list).
using NatList = std::vector<std::uint64_t>;

struct StdlibPreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Converts between nat vectors and total/approximation values.
TotalValue to_total(const NatList& xs);
ApproxValue exact_list(const NatList& xs);  // fully defined ListA

// Demand-list length: cons cells count 1 each, a terminal NilA counts
// nil_weight, a terminal Bot after a cons counts nothing.
std::uint64_t sizeX_prime(std::uint64_t nil_weight, const ApproxValue& list);
// Same on a thunked list; Bot is 0.
std::uint64_t sizeX(std::uint64_t nil_weight, const ApproxValue& tlist);
// max(1, |list|): the weight the cost theorems charge per demanded cell.
std::uint64_t sizeX1(const ApproxValue& list);

std::uint64_t leb_count(std::uint64_t x, const NatList& xs);

NatList take(std::uint64_t n, const NatList& xs);
NatList insert(std::uint64_t x, const NatList& xs);
NatList insertion_sort(const NatList& xs);
// (smallest, remainder) where x rides along as the current candidate.
std::pair<std::uint64_t, NatList> select(std::uint64_t x, const NatList& xs);
NatList selection_sort(const NatList& xs, std::uint64_t fuel);

// Demand functions: given the pure inputs and a demand on the output, return
// the cost and the minimal demand on the list argument (a T(ListA) value).
// Preconditions require outD to approximate the pure output.
Tick<ApproxValue> takeD(std::uint64_t n, const NatList& xs,
                        const ApproxValue& outD);
Tick<ApproxValue> insertD(std::uint64_t x, const NatList& xs,
                          const ApproxValue& outD);
Tick<ApproxValue> insertion_sortD(const NatList& xs, const ApproxValue& outD);
// outD is a PairA (T nat, T ListA) demand on (smallest, remainder).
Tick<ApproxValue> selectD(std::uint64_t x, const NatList& xs,
                          const ApproxValue& outD);
Tick<ApproxValue> selection_sortD(const NatList& xs, std::uint64_t fuel,
                                  const ApproxValue& outD);

// Compositions: sort forward, take backward, sort backward on take's demand.
Tick<ApproxValue> take_insertion_sortD(std::uint64_t n, const NatList& xs,
                                       const ApproxValue& outD);
Tick<ApproxValue> take_selection_sortD(std::uint64_t n, const NatList& xs,
                                       const ApproxValue& outD);

}  // namespace lazycost
