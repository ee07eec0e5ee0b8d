#pragma once

#include "lazycost/term.hpp"
#include "lazycost/value.hpp"

namespace lazycost {

// Pure forward interpretation. lazy/force are identities on values, tick is
// the identity, let substitutes eagerly. Total on well-typed closed terms.
TotalValue eval(const TotalEnv& env, const TermPtr& term);

// Structural recursion over a total list: base on nil, step on cons with
// x bound to the head and y to the fold of the tail.
TotalValue foldr_eval(const TotalEnv& env, const std::string& x,
                      const std::string& y, const TermPtr& step,
                      const TermPtr& base, const TotalValue& list);

TotalValue eval_program(const Program& p, const TotalEnv& env);

// Checks env against the program's parameter types (shape agreement).
bool env_matches_params(const TyEnv& params, const TotalEnv& env);

// True when v inhabits the total-value set of ty.
bool inhabits(const TotalValue& v, const TyPtr& ty);

}  // namespace lazycost
