#include "lazycost/clairvoyant.hpp"

#include <algorithm>

namespace lazycost {

namespace {

void sort_dedup(CvSet& s) {
  std::sort(s.begin(), s.end(), [](const CvBranch& a, const CvBranch& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.compare(b.second) < 0;
  });
  s.erase(std::unique(s.begin(), s.end(),
                      [](const CvBranch& a, const CvBranch& b) {
                        return a.first == b.first && a.second == b.second;
                      }),
          s.end());
}

struct Cv {
  const CvLimits& lim;
  std::size_t produced = 0;

  void account(std::size_t n) {
    produced += n;
    if (produced > lim.max_branches)
      throw ResourceLimitError("clairvoyant branch cap exceeded (" +
                               std::to_string(lim.max_branches) + ")");
  }

  CvSet run(const DemandEnv& env, const TermPtr& term) {
    CvSet out = step(env, term);
    sort_dedup(out);
    account(out.size());
    return out;
  }

  CvSet step(const DemandEnv& env, const TermPtr& term) {
    using K = ApproxValue::Kind;
    const Term& t = *term;
    CvSet out;
    switch (t.kind) {
      case Term::Kind::Var:
        out.push_back({0, env.at(t.name)});
        return out;
      case Term::Kind::Tick: {
        out = run(env, t.m1);
        for (auto& b : out) b.first += 1;
        return out;
      }
      case Term::Kind::Lazy: {
        // skip or evaluate now
        out.push_back({0, ApproxValue::bot()});
        for (auto& [n, a] : run(env, t.m1))
          out.push_back({n, ApproxValue::thunk(std::move(a))});
        return out;
      }
      case Term::Kind::Force: {
        for (auto& [n, a] : run(env, t.m1))
          if (a.is_thunk()) out.push_back({n, a.inner()});
        return out;
      }
      case Term::Kind::Let: {
        for (auto& [n, a] : run(env, t.m1)) {
          DemandEnv ext = env;
          ext.insert_or_assign(t.name, a);
          for (auto& [m, b] : run(ext, t.m2)) out.push_back({n + m, b});
        }
        return out;
      }
      case Term::Kind::Cons: {
        for (auto& [n, a] : run(env, t.m1))
          for (auto& [m, b] : run(env, t.m2))
            out.push_back({n + m, ApproxValue::cons(a, b)});
        return out;
      }
      case Term::Kind::Pair: {
        for (auto& [n, a] : run(env, t.m1))
          for (auto& [m, b] : run(env, t.m2))
            out.push_back({n + m, ApproxValue::pair(a, b)});
        return out;
      }
      case Term::Kind::Fst: {
        for (auto& [n, a] : run(env, t.m1))
          if (a.kind() == K::Pair) out.push_back({n, a.first()});
        return out;
      }
      case Term::Kind::Snd: {
        for (auto& [n, a] : run(env, t.m1))
          if (a.kind() == K::Pair) out.push_back({n, a.second()});
        return out;
      }
      case Term::Kind::Nil:
        out.push_back({0, ApproxValue::nil()});
        return out;
      case Term::Kind::True:
        out.push_back({0, ApproxValue::boolean(true)});
        return out;
      case Term::Kind::False:
        out.push_back({0, ApproxValue::boolean(false)});
        return out;
      case Term::Kind::NatLit:
        out.push_back({0, ApproxValue::nat(t.nat)});
        return out;
      case Term::Kind::If: {
        for (auto& [n, c] : run(env, t.m1)) {
          if (c.kind() != K::Bool) continue;
          const TermPtr& branch = c.bool_value() ? t.m2 : t.m3;
          for (auto& [m, r] : run(env, branch)) out.push_back({n + m, r});
        }
        return out;
      }
      case Term::Kind::Foldr: {
        for (auto& [n, l] : run(env, t.m3))
          for (auto& [m, r] : foldr_cv(env, t, l)) out.push_back({n + m, r});
        return out;
      }
    }
    return out;
  }

  // foldr over a list approximation. The accumulator position is thunked, so
  // each cons cell forks: skip the tail fold (y = Bot) or force the spine and
  // compute it now.
  CvSet foldr_cv(const DemandEnv& env, const Term& t, const ApproxValue& list) {
    using K = ApproxValue::Kind;
    CvSet out;
    if (list.kind() == K::Nil) {
      out = run(env, t.m2);
      return out;
    }
    if (list.kind() != K::Cons) return out;  // stuck
    const ApproxValue& head = list.first();
    const ApproxValue& tail = list.second();
    {
      DemandEnv ext = env;
      ext.insert_or_assign(t.name, head);
      ext.insert_or_assign(t.y, ApproxValue::bot());
      for (auto& b : run(ext, t.m1)) out.push_back(std::move(b));
    }
    if (tail.is_thunk()) {
      for (auto& [n, yv] : foldr_cv(env, t, tail.inner())) {
        DemandEnv ext = env;
        ext.insert_or_assign(t.name, head);
        ext.insert_or_assign(t.y, ApproxValue::thunk(yv));
        for (auto& [m, r] : run(ext, t.m1)) out.push_back({n + m, r});
      }
    }
    sort_dedup(out);
    account(out.size());
    return out;
  }
};

}  // namespace

CvSet cv_enumerate(const Program& p, const DemandEnv& envA, const CvLimits& lim) {
  Cv cv{lim};
  return cv.run(envA, p.body);
}

std::optional<CvBranch> cv_min_matching(const Program& p, const DemandEnv& envA,
                                        const ApproxValue& out,
                                        const CvLimits& lim) {
  CvSet set = cv_enumerate(p, envA, lim);
  std::optional<CvBranch> best;
  for (const auto& b : set) {
    if (!less_defined(out, b.second)) continue;
    if (!best || b.first < best->first) best = b;
  }
  return best;
}

}  // namespace lazycost
