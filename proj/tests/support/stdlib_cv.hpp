#pragma once
// Clairvoyant translations of the stdlib, used as test oracles.
#include <vector>
#include "lazycost/lazy_stdlib.hpp"
namespace lazycost::testcv {

using Branches = std::vector<std::pair<std::uint64_t, ApproxValue>>;
inline ApproxValue th(const ApproxValue& a) { return ApproxValue::thunk(a); }
inline const ApproxValue kBot = ApproxValue::bot();
using K = ApproxValue::Kind;

// take k xs: matches k first, then forces the list.
inline Branches takeA(std::uint64_t k, const ApproxValue& xsT) {
  Branches out;
  if (k == 0) { out.push_back({1, ApproxValue::nil()}); return out; }
  if (!xsT.is_thunk()) return out;
  ApproxValue l = xsT.inner();
  if (l.kind() == K::Nil) { out.push_back({1, ApproxValue::nil()}); return out; }
  if (l.kind() != K::Cons) return out;
  out.push_back({1, ApproxValue::cons(l.first(), kBot)});
  for (auto& [n, zl] : takeA(k - 1, l.second()))
    out.push_back({1 + n, ApproxValue::cons(l.first(), th(zl))});
  return out;
}

inline Branches insertA(std::uint64_t x, const ApproxValue& xsT) {
  Branches out;
  if (!xsT.is_thunk()) return out;
  ApproxValue l = xsT.inner();
  if (l.kind() == K::Nil) {
    out.push_back({1, ApproxValue::cons(th(ApproxValue::nat(x)), th(ApproxValue::nil()))});
    return out;
  }
  if (l.kind() != K::Cons) return out;
  ApproxValue yT = l.first();
  if (!yT.is_thunk()) return out;  // the comparison forces the head
  std::uint64_t y = yT.inner().nat_value();
  if (y <= x) {
    out.push_back({1, ApproxValue::cons(yT, kBot)});
    for (auto& [n, zl] : insertA(x, l.second()))
      out.push_back({1 + n, ApproxValue::cons(yT, th(zl))});
  } else {
    out.push_back({1, ApproxValue::cons(th(ApproxValue::nat(x)), th(l))});
  }
  return out;
}

inline Branches insertion_sortA(const ApproxValue& xsT) {
  Branches out;
  if (!xsT.is_thunk()) return out;
  ApproxValue l = xsT.inner();
  if (l.kind() == K::Nil) { out.push_back({1, ApproxValue::nil()}); return out; }
  if (l.kind() != K::Cons) return out;
  ApproxValue yT = l.first();
  if (!yT.is_thunk()) return out;  // the head is passed to insert by value
  std::uint64_t y = yT.inner().nat_value();
  // let~ zs := insertion_sortA ys in insertA y zs  (insert forces zs)
  for (auto& [n, zl] : insertion_sortA(l.second()))
    for (auto& [m, r] : insertA(y, th(zl)))
      out.push_back({1 + n + m, r});
  // skipped zs is always stuck inside insertA; no branch from it
  return out;
}

// select: strict traversal; any demand on the pair runs it fully.
inline Branches selectA(std::uint64_t x, const ApproxValue& xsT) {
  Branches out;
  if (!xsT.is_thunk()) return out;
  ApproxValue l = xsT.inner();
  if (l.kind() == K::Nil) {
    out.push_back({1, ApproxValue::pair(th(ApproxValue::nat(x)), th(ApproxValue::nil()))});
    return out;
  }
  if (l.kind() != K::Cons) return out;
  ApproxValue yT = l.first();
  if (!yT.is_thunk()) return out;
  std::uint64_t y = yT.inner().nat_value();
  std::uint64_t lo = std::min(x, y), hi = std::max(x, y);
  for (auto& [n, p] : selectA(lo, l.second())) {
    // (j, hi :: ws)
    out.push_back({1 + n, ApproxValue::pair(
        p.first(), th(ApproxValue::cons(th(ApproxValue::nat(hi)), p.second())))});
  }
  return out;
}

inline Branches selection_sortA(const ApproxValue& xsT, std::uint64_t fuel) {
  Branches out;
  if (fuel == 0) { out.push_back({1, ApproxValue::nil()}); return out; }
  if (!xsT.is_thunk()) return out;
  ApproxValue l = xsT.inner();
  if (l.kind() == K::Nil) { out.push_back({1, ApproxValue::nil()}); return out; }
  if (l.kind() != K::Cons) return out;
  ApproxValue xT = l.first();
  if (!xT.is_thunk()) return out;
  std::uint64_t x = xT.inner().nat_value();
  for (auto& [n, p] : selectA(x, l.second())) {
    // y :: selsort ws (n-1): head strict from the pair, tail lazy
    out.push_back({1 + n, ApproxValue::cons(p.first(), kBot)});
    for (auto& [m, rl] : selection_sortA(p.second(), fuel - 1))
      out.push_back({1 + n + m, ApproxValue::cons(p.first(), th(rl))});
  }
  return out;
}

inline Branches take_insertion_sortA(std::uint64_t n, const ApproxValue& xsT) {
  Branches out;
  for (auto& [c, r] : takeA(n, kBot)) out.push_back({c, r});  // skip the sort
  for (auto& [c1, sl] : insertion_sortA(xsT))
    for (auto& [c2, r] : takeA(n, th(sl)))
      out.push_back({c1 + c2, r});
  return out;
}

inline Branches take_selection_sortA(std::uint64_t n, const ApproxValue& xsT, std::uint64_t fuel) {
  Branches out;
  for (auto& [c, r] : takeA(n, kBot)) out.push_back({c, r});
  for (auto& [c1, sl] : selection_sortA(xsT, fuel))
    for (auto& [c2, r] : takeA(n, th(sl)))
      out.push_back({c1 + c2, r});
  return out;
}

}  // namespace lazycost::testcv
