#include "lazycost/enumerate.hpp"

namespace lazycost {

namespace {

std::vector<ApproxValue> lift_thunked(const std::vector<ApproxValue>& inner) {
  std::vector<ApproxValue> out;
  out.reserve(inner.size() + 1);
  out.push_back(ApproxValue::bot());
  for (const auto& a : inner) out.push_back(ApproxValue::thunk(a));
  return out;
}

}  // namespace

std::vector<TotalValue> enumerate_totals(const TyPtr& ty, const EnumBounds& b) {
  std::vector<TotalValue> out;
  if (!ty) {
    out.push_back(TotalValue::nil());
    return out;
  }
  switch (ty->kind) {
    case Ty::Kind::Bool:
      out = {TotalValue::boolean(false), TotalValue::boolean(true)};
      break;
    case Ty::Kind::Nat:
      for (auto n : b.nats) out.push_back(TotalValue::nat(n));
      break;
    case Ty::Kind::Thunked:
      out = enumerate_totals(ty->a, b);
      break;
    case Ty::Kind::List: {
      std::vector<TotalValue> elems = enumerate_totals(ty->a, b);
      std::vector<TotalValue> level = {TotalValue::nil()};
      out = level;
      for (std::size_t len = 1; len <= b.max_list_len; ++len) {
        std::vector<TotalValue> next;
        for (const auto& e : elems)
          for (const auto& t : level) next.push_back(TotalValue::cons(e, t));
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
      }
      break;
    }
    case Ty::Kind::Prod: {
      for (const auto& x : enumerate_totals(ty->a, b))
        for (const auto& y : enumerate_totals(ty->b, b))
          out.push_back(TotalValue::pair(x, y));
      break;
    }
  }
  return out;
}

std::vector<ApproxValue> approximations_of(const TotalValue& v, const TyPtr& ty) {
  using TK = TotalValue::Kind;
  if (ty && ty->kind == Ty::Kind::Thunked)
    return lift_thunked(approximations_of(v, ty->a));
  switch (v.kind()) {
    case TK::Bool:
      return {ApproxValue::boolean(v.bool_value())};
    case TK::Nat:
      return {ApproxValue::nat(v.nat_value())};
    case TK::Nil:
      return {ApproxValue::nil()};
    case TK::Cons: {
      TyPtr elem = ty && ty->kind == Ty::Kind::List ? ty->a : nullptr;
      TyPtr self = ty;
      std::vector<ApproxValue> heads =
          lift_thunked(approximations_of(v.first(), elem));
      std::vector<ApproxValue> tails =
          lift_thunked(approximations_of(v.second(), self));
      std::vector<ApproxValue> out;
      out.reserve(heads.size() * tails.size());
      for (const auto& h : heads)
        for (const auto& t : tails) out.push_back(ApproxValue::cons(h, t));
      return out;
    }
    case TK::Pair: {
      TyPtr a = ty && ty->kind == Ty::Kind::Prod ? ty->a : nullptr;
      TyPtr b = ty && ty->kind == Ty::Kind::Prod ? ty->b : nullptr;
      std::vector<ApproxValue> out;
      for (const auto& x : approximations_of(v.first(), a))
        for (const auto& y : approximations_of(v.second(), b))
          out.push_back(ApproxValue::pair(x, y));
      return out;
    }
  }
  return {};
}

std::vector<ApproxValue> approximations_of_data(const TotalValue& v) {
  using TK = TotalValue::Kind;
  switch (v.kind()) {
    case TK::Bool:
      return {ApproxValue::boolean(v.bool_value())};
    case TK::Nat:
      return {ApproxValue::nat(v.nat_value())};
    case TK::Nil:
      return {ApproxValue::nil()};
    case TK::Cons:
    case TK::Pair: {
      std::vector<ApproxValue> firsts =
          lift_thunked(approximations_of_data(v.first()));
      std::vector<ApproxValue> seconds =
          lift_thunked(approximations_of_data(v.second()));
      std::vector<ApproxValue> out;
      out.reserve(firsts.size() * seconds.size());
      for (const auto& f : firsts)
        for (const auto& s : seconds)
          out.push_back(v.kind() == TK::Cons ? ApproxValue::cons(f, s)
                                             : ApproxValue::pair(f, s));
      return out;
    }
  }
  return {};
}

std::vector<ApproxValue> enumerate_raw_approx(const TyPtr& ty,
                                              const EnumBounds& b) {
  std::vector<ApproxValue> out;
  if (!ty) return {ApproxValue::nil()};
  switch (ty->kind) {
    case Ty::Kind::Bool:
      out = {ApproxValue::boolean(false), ApproxValue::boolean(true)};
      break;
    case Ty::Kind::Nat:
      for (auto n : b.nats) out.push_back(ApproxValue::nat(n));
      break;
    case Ty::Kind::Thunked:
      out = lift_thunked(enumerate_raw_approx(ty->a, b));
      break;
    case Ty::Kind::List: {
      std::vector<ApproxValue> elems =
          lift_thunked(enumerate_raw_approx(ty->a, b));
      // chains(L) = NilA | ConsA(e, Bot | Thunk(chains(L-1)))
      auto chains = [&](auto&& self, std::size_t len) -> std::vector<ApproxValue> {
        std::vector<ApproxValue> acc = {ApproxValue::nil()};
        if (len == 0) return acc;
        std::vector<ApproxValue> tails = lift_thunked(self(self, len - 1));
        for (const auto& e : elems)
          for (const auto& t : tails) acc.push_back(ApproxValue::cons(e, t));
        return acc;
      };
      out = chains(chains, b.max_list_len);
      break;
    }
    case Ty::Kind::Prod: {
      for (const auto& x : enumerate_raw_approx(ty->a, b))
        for (const auto& y : enumerate_raw_approx(ty->b, b))
          out.push_back(ApproxValue::pair(x, y));
      break;
    }
  }
  return out;
}

bool shaped_by(const ApproxValue& a, const TyPtr& ty) {
  using K = ApproxValue::Kind;
  if (!ty) return true;
  switch (a.kind()) {
    case K::Bot:
      return ty->kind == Ty::Kind::Thunked;
    case K::Thunk:
      return ty->kind == Ty::Kind::Thunked && shaped_by(a.inner(), ty->a);
    case K::Bool:
      return ty->kind == Ty::Kind::Bool;
    case K::Nat:
      return ty->kind == Ty::Kind::Nat;
    case K::Nil:
      return ty->kind == Ty::Kind::List;
    case K::Cons:
      return ty->kind == Ty::Kind::List &&
             shaped_by(a.first(), Ty::thunked(ty->a)) &&
             shaped_by(a.second(), Ty::thunked(std::make_shared<Ty>(*ty)));
    case K::Pair:
      return ty->kind == Ty::Kind::Prod && shaped_by(a.first(), ty->a) &&
             shaped_by(a.second(), ty->b);
  }
  return false;
}

std::vector<TotalEnv> enumerate_envs(const TyEnv& params, const EnumBounds& b) {
  std::vector<TotalEnv> out = {TotalEnv{}};
  for (const auto& [name, ty] : params) {
    std::vector<TotalEnv> next;
    for (const auto& v : enumerate_totals(ty, b))
      for (const auto& env : out) {
        TotalEnv e = env;
        e.emplace(name, v);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<DemandEnv> approx_envs_of(const TotalEnv& g, const TyEnv& params) {
  std::vector<DemandEnv> out = {DemandEnv{}};
  for (const auto& [name, ty] : params) {
    std::vector<DemandEnv> next;
    for (const auto& a : approximations_of(g.at(name), ty))
      for (const auto& env : out) {
        DemandEnv e = env;
        e.emplace(name, a);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace lazycost
