#pragma once

#include <map>

#include "lazycost/eval.hpp"
#include "lazycost/term.hpp"
#include "lazycost/value.hpp"

namespace lazycost {

// Raised when the requested output demand is not an approximation of the
// forward value. This is the only failure mode of `demand`.
struct DemandMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using TyScope = std::map<std::string, TyPtr>;

// Least approximation of a total value at a type: Bot at thunked positions,
// otherwise the head constructor over least-approximated fields.
ApproxValue least_approx(const TotalValue& v, const TyPtr& ty);
DemandEnv least_env(const TotalEnv& g, const TyScope& scope);

TyScope scope_of_params(const TyEnv& params);

// Backward demand evaluation: given a total environment and an output demand
// that approximates eval(g, body), returns the cost of lazily satisfying the
// demand and the minimal input demand environment.
//
// With check=true the precondition out -< eval(g, body) is verified at the
// boundary; recursive positions trust the invariant.
Tick<DemandEnv> demand(const Program& p, const TotalEnv& g,
                       const ApproxValue& out, bool check = true);

struct FoldrDemResult {
  std::uint64_t cost = 0;
  DemandEnv env;
  ApproxValue list_demand;
};

// Demand interpretation of foldr. `foldr_term` must be a Foldr node of `p`
// whose free variables are the program parameters; `list` is the total list
// being folded and `out_thunk` the (thunk-wrapped or Bot) result demand.
FoldrDemResult foldr_dem(const Program& p, const TermPtr& foldr_term,
                         const TotalEnv& g, const TotalValue& list,
                         const ApproxValue& out_thunk);

}  // namespace lazycost
