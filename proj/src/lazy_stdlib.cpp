#include "lazycost/lazy_stdlib.hpp"

#include <algorithm>

namespace lazycost {

namespace {

const ApproxValue kBot = ApproxValue::bot();

[[noreturn]] void absurd(const char* fn, const ApproxValue& outD) {
  throw StdlibPreconditionError(std::string(fn) +
                                ": output demand does not approximate the "
                                "result: " +
                                outD.to_string());
}

// Applies a demand function under a thunk: an undemanded thunk costs nothing
// and demands nothing.
template <typename F>
Tick<ApproxValue> thunkD(F&& f, const ApproxValue& d) {
  if (d.is_bot()) return {0, ApproxValue::bot()};
  if (!d.is_thunk()) throw StdlibPreconditionError("thunkD: not a thunk demand");
  return f(d.inner());
}

}  // namespace

TotalValue to_total(const NatList& xs) {
  TotalValue v = TotalValue::nil();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    v = TotalValue::cons(TotalValue::nat(*it), v);
  return v;
}

ApproxValue exact_list(const NatList& xs) {
  ApproxValue v = ApproxValue::nil();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    v = ApproxValue::cons(ApproxValue::thunk(ApproxValue::nat(*it)),
                          ApproxValue::thunk(v));
  return v;
}

std::uint64_t sizeX_prime(std::uint64_t nil_weight, const ApproxValue& list) {
  using K = ApproxValue::Kind;
  if (list.kind() == K::Nil) return nil_weight;
  if (list.kind() == K::Cons) {
    const ApproxValue tail = list.second();
    if (tail.is_bot()) return 1;
    return 1 + sizeX_prime(nil_weight, tail.inner());
  }
  throw StdlibPreconditionError("sizeX': not a list demand");
}

std::uint64_t sizeX(std::uint64_t nil_weight, const ApproxValue& tlist) {
  if (tlist.is_bot()) return 0;
  if (tlist.is_thunk()) return sizeX_prime(nil_weight, tlist.inner());
  throw StdlibPreconditionError("sizeX: not a thunked list demand");
}

std::uint64_t sizeX1(const ApproxValue& list) { return sizeX_prime(1, list); }

std::uint64_t leb_count(std::uint64_t x, const NatList& xs) {
  std::uint64_t c = 0;
  for (auto y : xs)
    if (y <= x) ++c;
  return c;
}

// ---------------------------------------------------------------------------
// Pure functions

NatList take(std::uint64_t n, const NatList& xs) {
  NatList out;
  for (std::size_t i = 0; i < xs.size() && i < n; ++i) out.push_back(xs[i]);
  return out;
}

NatList insert(std::uint64_t x, const NatList& xs) {
  NatList out;
  std::size_t i = 0;
  while (i < xs.size() && xs[i] <= x) out.push_back(xs[i++]);
  out.push_back(x);
  while (i < xs.size()) out.push_back(xs[i++]);
  return out;
}

NatList insertion_sort(const NatList& xs) {
  NatList out;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) out = insert(*it, out);
  return out;
}

std::pair<std::uint64_t, NatList> select(std::uint64_t x, const NatList& xs) {
  if (xs.empty()) return {x, {}};
  std::uint64_t y = xs.front();
  NatList ys(xs.begin() + 1, xs.end());
  if (x <= y) {
    auto [j, ws] = select(x, ys);
    NatList rest;
    rest.reserve(ws.size() + 1);
    rest.push_back(y);
    rest.insert(rest.end(), ws.begin(), ws.end());
    return {j, rest};
  }
  auto [j, ws] = select(y, ys);
  NatList rest;
  rest.reserve(ws.size() + 1);
  rest.push_back(x);
  rest.insert(rest.end(), ws.begin(), ws.end());
  return {j, rest};
}

NatList selection_sort(const NatList& xs, std::uint64_t fuel) {
  if (fuel == 0 || xs.empty()) return {};
  auto [y, r] = select(xs.front(), NatList(xs.begin() + 1, xs.end()));
  NatList rest = selection_sort(r, fuel - 1);
  NatList out;
  out.reserve(rest.size() + 1);
  out.push_back(y);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// ---------------------------------------------------------------------------
// Demand functions

Tick<ApproxValue> takeD(std::uint64_t n, const NatList& xs,
                        const ApproxValue& outD) {
  using K = ApproxValue::Kind;
  if (n == 0) return {1, ApproxValue::bot()};
  if (xs.empty()) return {1, ApproxValue::thunk(ApproxValue::nil())};
  if (outD.kind() != K::Cons) absurd("takeD", outD);
  NatList tail(xs.begin() + 1, xs.end());
  Tick<ApproxValue> ys = thunkD(
      [&](const ApproxValue& d) { return takeD(n - 1, tail, d); },
      outD.second());
  return {1 + ys.cost,
          ApproxValue::thunk(ApproxValue::cons(
              ApproxValue::thunk(ApproxValue::nat(xs.front())), ys.value))};
}

Tick<ApproxValue> insertD(std::uint64_t x, const NatList& xs,
                          const ApproxValue& outD) {
  using K = ApproxValue::Kind;
  if (outD.kind() != K::Cons) absurd("insertD", outD);
  if (xs.empty()) return {1, ApproxValue::thunk(ApproxValue::nil())};
  std::uint64_t y = xs.front();
  if (y <= x) {
    NatList ys(xs.begin() + 1, xs.end());
    Tick<ApproxValue> r = thunkD(
        [&](const ApproxValue& d) { return insertD(x, ys, d); }, outD.second());
    return {1 + r.cost,
            ApproxValue::thunk(ApproxValue::cons(
                ApproxValue::thunk(ApproxValue::nat(y)), r.value))};
  }
  // The output tail is the untouched input list; its demand passes through.
  return {1, outD.second()};
}

Tick<ApproxValue> insertion_sortD(const NatList& xs, const ApproxValue& outD) {
  if (xs.empty()) return {1, ApproxValue::thunk(ApproxValue::nil())};
  std::uint64_t y = xs.front();
  NatList ys(xs.begin() + 1, xs.end());
  NatList zs = insertion_sort(ys);
  Tick<ApproxValue> zsD = insertD(y, zs, outD);
  Tick<ApproxValue> ysD = thunkD(
      [&](const ApproxValue& d) { return insertion_sortD(ys, d); }, zsD.value);
  return {1 + zsD.cost + ysD.cost,
          ApproxValue::thunk(ApproxValue::cons(
              ApproxValue::thunk(ApproxValue::nat(y)), ysD.value))};
}

Tick<ApproxValue> selectD(std::uint64_t /*x*/, const NatList& xs,
                          const ApproxValue& outD) {
  if (outD.kind() != ApproxValue::Kind::Pair) absurd("selectD", outD);
  // Selecting the minimum compares every element, so any demand on the
  // result traverses the whole input.
  return {xs.size() + 1, ApproxValue::thunk(exact_list(xs))};
}

Tick<ApproxValue> selection_sortD(const NatList& xs, std::uint64_t fuel,
                                  const ApproxValue& outD) {
  using K = ApproxValue::Kind;
  if (fuel == 0) return {1, ApproxValue::bot()};  // the list is never matched
  if (xs.empty()) return {1, ApproxValue::thunk(ApproxValue::nil())};
  if (outD.kind() != K::Cons) absurd("selection_sortD", outD);
  std::uint64_t x = xs.front();
  NatList r(xs.begin() + 1, xs.end());
  auto [y, r1] = select(x, r);
  Tick<ApproxValue> rsD = thunkD(
      [&](const ApproxValue& d) { return selection_sortD(r1, fuel - 1, d); },
      outD.second());
  Tick<ApproxValue> rD =
      selectD(x, r, ApproxValue::pair(outD.first(), rsD.value));
  return {1 + rsD.cost + rD.cost,
          ApproxValue::thunk(ApproxValue::cons(
              ApproxValue::thunk(ApproxValue::nat(x)), rD.value))};
}

Tick<ApproxValue> take_insertion_sortD(std::uint64_t n, const NatList& xs,
                                       const ApproxValue& outD) {
  NatList sorted = insertion_sort(xs);
  Tick<ApproxValue> sD = takeD(n, sorted, outD);
  Tick<ApproxValue> xsD = thunkD(
      [&](const ApproxValue& d) { return insertion_sortD(xs, d); }, sD.value);
  return {sD.cost + xsD.cost, xsD.value};
}

Tick<ApproxValue> take_selection_sortD(std::uint64_t n, const NatList& xs,
                                       const ApproxValue& outD) {
  std::uint64_t fuel = xs.size();
  NatList sorted = selection_sort(xs, fuel);
  Tick<ApproxValue> sD = takeD(n, sorted, outD);
  Tick<ApproxValue> xsD = thunkD(
      [&](const ApproxValue& d) { return selection_sortD(xs, fuel, d); },
      sD.value);
  return {sD.cost + xsD.cost, xsD.value};
}

}  // namespace lazycost
