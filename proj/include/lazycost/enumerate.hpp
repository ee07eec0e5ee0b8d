#pragma once

#include <vector>

#include "lazycost/term.hpp"
#include "lazycost/value.hpp"

namespace lazycost {

struct EnumBounds {
  std::size_t max_list_len = 3;
  std::vector<std::uint64_t> nats = {0, 1};
};

// All total values of a type at desk scale.
std::vector<TotalValue> enumerate_totals(const TyPtr& ty, const EnumBounds& b);

// All approximations of a total value at a calculus type (pair fields bare,
// list fields thunked).
std::vector<ApproxValue> approximations_of(const TotalValue& v, const TyPtr& ty);

// All approximations of a plain data value under the approximation-datatype
// convention used by the stdlib and queues: both cons and pair fields are
// thunked positions.
std::vector<ApproxValue> approximations_of_data(const TotalValue& v);

// All approximation values shaped by a type, list spines up to the bound.
std::vector<ApproxValue> enumerate_raw_approx(const TyPtr& ty,
                                              const EnumBounds& b);

// Shape compatibility of an approximation with a type.
bool shaped_by(const ApproxValue& a, const TyPtr& ty);

std::vector<TotalEnv> enumerate_envs(const TyEnv& params, const EnumBounds& b);
std::vector<DemandEnv> approx_envs_of(const TotalEnv& g, const TyEnv& params);

}  // namespace lazycost
