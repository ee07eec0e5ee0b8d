#include "lazycost/xcheck.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "lazycost/demand.hpp"
#include "lazycost/eval.hpp"
#include "lazycost/parallel.hpp"

namespace lazycost {

namespace {

std::string show_env(const DemandEnv& e) {
  std::ostringstream out;
  for (const auto& [n, v] : e) out << n << "=" << v.to_string() << " ";
  return out.str();
}

std::string show_total_env(const TotalEnv& e) {
  std::ostringstream out;
  for (const auto& [n, v] : e) out << n << "=" << v.to_string() << " ";
  return out.str();
}

struct EnvResult {
  std::size_t demands = 0;
  std::size_t branches = 0;
  std::vector<XcheckViolation> violations;
};

void check_one_env(const Program& p, const XcheckOptions& opt,
                   const TotalEnv& g, EnvResult& res) {
  auto fail = [&](const char* property, const std::string& detail) {
    res.violations.push_back(
        {property, detail + " [env: " + show_total_env(g) + "]"});
  };

  const TotalValue v = eval(g, p.body);
  const std::vector<ApproxValue> demands = approximations_of(v, p.info.root);
  res.demands += demands.size();

  std::vector<DemandEnv> approx_envs;
  std::vector<CvSet> cv_sets;
  if (opt.check_theorems) {
    approx_envs = approx_envs_of(g, p.params);
    cv_sets.reserve(approx_envs.size());
    for (const auto& ge : approx_envs) {
      cv_sets.push_back(cv_enumerate(p, ge, opt.cv));
      res.branches += cv_sets.back().size();
    }
  }

  // Functional correctness: every oracle output approximates the pure value.
  for (std::size_t i = 0; i < approx_envs.size(); ++i)
    for (const auto& [n2, a2] : cv_sets[i])
      if (!is_approx(a2, v))
        fail("functional-correctness",
             "branch result " + a2.to_string() + " does not approximate " +
                 v.to_string() + " from " + show_env(approx_envs[i]));

  std::vector<Tick<DemandEnv>> results;
  results.reserve(demands.size());
  for (const auto& a1 : demands) {
    // Totality: demand succeeds and its environment approximates g.
    Tick<DemandEnv> r;
    try {
      r = demand(p, g, a1, /*check=*/false);
    } catch (const std::exception& e) {
      fail("totality", std::string("demand threw: ") + e.what() +
                           " for demand " + a1.to_string());
      results.push_back({});
      continue;
    }
    for (const auto& [name, d] : r.value)
      if (!is_approx(d, g.at(name)))
        fail("totality", "input demand " + d.to_string() + " for " + name +
                             " does not approximate " + g.at(name).to_string());
    results.push_back(r);
    if (!opt.check_theorems) continue;

    // Cost existence: every environment at least as defined as the demand
    // admits a branch with exactly the demanded cost refining the demand.
    for (std::size_t i = 0; i < approx_envs.size(); ++i) {
      if (!less_defined(r.value, approx_envs[i])) continue;
      bool found = false;
      for (const auto& [n2, a2] : cv_sets[i])
        if (n2 == r.cost && less_defined(a1, a2)) {
          found = true;
          break;
        }
      if (!found)
        fail("cost-existence",
             "no branch of cost " + std::to_string(r.cost) + " refining " +
                 a1.to_string() + " in " + show_env(approx_envs[i]));
    }

    // Cost minimality: every refining branch anywhere costs at least as much
    // and runs on inputs at least as defined.
    for (std::size_t i = 0; i < approx_envs.size(); ++i) {
      for (const auto& [n2, a2] : cv_sets[i]) {
        if (!less_defined(a1, a2)) continue;
        if (n2 < r.cost)
          fail("cost-minimality",
               "branch cost " + std::to_string(n2) + " < demand cost " +
                   std::to_string(r.cost) + " for " + a1.to_string());
        if (!less_defined(r.value, approx_envs[i]))
          fail("cost-minimality",
               "branch env " + show_env(approx_envs[i]) +
                   " not above demanded env " + show_env(r.value) + " for " +
                   a1.to_string());
      }
    }
  }

  if (!opt.check_lemmas) return;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    for (std::size_t j = 0; j < demands.size(); ++j) {
      if (!less_defined(demands[i], demands[j])) continue;
      // Monotonicity.
      if (results[i].cost > results[j].cost ||
          !less_defined(results[i].value, results[j].value))
        fail("monotonicity", demands[i].to_string() +
                                 " <= " + demands[j].to_string() +
                                 " but demand results are not ordered");
    }
  }
  for (std::size_t i = 0; i < demands.size(); ++i) {
    for (std::size_t j = i; j < demands.size(); ++j) {
      // Join-homomorphism: env of the joined demand is the env join, cost is
      // at most the sum.
      ApproxValue joined = join(demands[i], demands[j]);
      Tick<DemandEnv> rj = demand(p, g, joined, /*check=*/false);
      if (rj.cost > results[i].cost + results[j].cost ||
          rj.value != join(results[i].value, results[j].value))
        fail("join-homomorphism",
             "for " + demands[i].to_string() + " and " + demands[j].to_string());
    }
  }
}

}  // namespace

namespace {

std::size_t total_weight(const TotalValue& v) {
  switch (v.kind()) {
    case TotalValue::Kind::Cons:
    case TotalValue::Kind::Pair:
      return 1 + total_weight(v.first()) + total_weight(v.second());
    default:
      return 1;
  }
}

}  // namespace

XcheckReport xcheck_program(const Program& p, const XcheckOptions& opt) {
  XcheckReport report;
  report.program = p.name;
  std::vector<TotalEnv> envs = enumerate_envs(p.params, opt.bounds);
  // Heavy environments first so the parallel schedule stays balanced.
  std::stable_sort(envs.begin(), envs.end(),
                   [](const TotalEnv& a, const TotalEnv& b) {
                     std::size_t wa = 0, wb = 0;
                     for (const auto& [n, v] : a) wa += total_weight(v);
                     for (const auto& [n, v] : b) wb += total_weight(v);
                     return wa > wb;
                   });
  report.envs = envs.size();

  std::vector<EnvResult> per_env(envs.size());
  std::atomic<bool> resource_error{false};
  std::string resource_msg;

  parallel_for(envs.size(), opt.parallel, [&](std::size_t i) {
    try {
      check_one_env(p, opt, envs[i], per_env[i]);
    } catch (const ResourceLimitError& e) {
      if (!resource_error.exchange(true)) resource_msg = e.what();
    }
  });
  if (resource_error) throw ResourceLimitError(resource_msg);

  for (auto& r : per_env) {
    report.demands += r.demands;
    report.branches += r.branches;
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

}  // namespace lazycost
