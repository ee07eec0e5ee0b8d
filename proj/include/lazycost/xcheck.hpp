#pragma once

#include <string>
#include <vector>

#include "lazycost/clairvoyant.hpp"
#include "lazycost/enumerate.hpp"
#include "lazycost/term.hpp"

namespace lazycost {

struct XcheckOptions {
  EnumBounds bounds;
  CvLimits cv;
  bool parallel = true;
  bool check_theorems = true;  // totality, correctness, existence, minimality
  bool check_lemmas = true;    // monotonicity and join-homomorphism of demand
};

struct XcheckViolation {
  std::string property;
  std::string detail;
};

struct XcheckReport {
  std::string program;
  std::size_t envs = 0;
  std::size_t demands = 0;
  std::size_t branches = 0;
  std::vector<XcheckViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Cross-validates the demand semantics of one program against the
// enumerative clairvoyant semantics: totality, functional correctness of the
// oracle, cost existence, cost minimality, and (optionally) the monotonicity
// and join-homomorphism lemmas. Quantifiers are instantiated exhaustively at
// the given bounds.
XcheckReport xcheck_program(const Program& p, const XcheckOptions& opt = {});

}  // namespace lazycost
