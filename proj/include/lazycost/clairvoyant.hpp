#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lazycost/term.hpp"
#include "lazycost/value.hpp"

namespace lazycost {

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CvLimits {
  std::size_t max_branches = std::size_t{1} << 20;
};

using CvBranch = std::pair<std::uint64_t, ApproxValue>;
using CvSet = std::vector<CvBranch>;

// Enumerative clairvoyant semantics: the full finite set of (cost, result)
// branches of running `p` on an approximation environment. Every `lazy`
// forks into a skip branch (Bot, cost 0) and a go branch; `force` on Bot is
// stuck and pruned. The result is deduplicated and canonically sorted.
CvSet cv_enumerate(const Program& p, const DemandEnv& envA,
                   const CvLimits& lim = {});

// Among branches whose result refines `out`, one of minimal cost.
std::optional<CvBranch> cv_min_matching(const Program& p, const DemandEnv& envA,
                                        const ApproxValue& out,
                                        const CvLimits& lim = {});

}  // namespace lazycost
