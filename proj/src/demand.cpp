#include "lazycost/demand.hpp"

namespace lazycost {

ApproxValue least_approx(const TotalValue& v, const TyPtr& ty) {
  using TK = TotalValue::Kind;
  if (ty && ty->kind == Ty::Kind::Thunked) return ApproxValue::bot();
  switch (v.kind()) {
    case TK::Bool:
      return ApproxValue::boolean(v.bool_value());
    case TK::Nat:
      return ApproxValue::nat(v.nat_value());
    case TK::Nil:
      return ApproxValue::nil();
    case TK::Cons:
      // List fields sit at thunked positions.
      return ApproxValue::cons(ApproxValue::bot(), ApproxValue::bot());
    case TK::Pair: {
      TyPtr a = ty && ty->kind == Ty::Kind::Prod ? ty->a : nullptr;
      TyPtr b = ty && ty->kind == Ty::Kind::Prod ? ty->b : nullptr;
      return ApproxValue::pair(least_approx(v.first(), a),
                               least_approx(v.second(), b));
    }
  }
  return ApproxValue::bot();
}

DemandEnv least_env(const TotalEnv& g, const TyScope& scope) {
  DemandEnv out;
  for (const auto& [name, v] : g) {
    auto it = scope.find(name);
    out.emplace(name, least_approx(v, it == scope.end() ? nullptr : it->second));
  }
  return out;
}

TyScope scope_of_params(const TyEnv& params) {
  TyScope s;
  for (const auto& [name, ty] : params) s.emplace(name, ty);
  return s;
}

namespace {

struct Ctx {
  const TypeInfo& info;
};

TyPtr node_type(const Ctx& cx, const TermPtr& t) {
  auto it = cx.info.types.find(t.get());
  return it == cx.info.types.end() ? nullptr : it->second;
}

Tick<DemandEnv> dem(const Ctx& cx, const TyScope& scope, const TotalEnv& g,
                    const TermPtr& term, const ApproxValue& out);

struct FoldrPieces {
  const std::string& x;
  const std::string& y;
  const TermPtr& step;
  const TermPtr& base;
  TyPtr elem_ty;
  TyPtr res_ty;
};

// Restores (or removes) a binder's slot in a demand environment computed
// under an extended scope, splitting off the binder's own demand.
ApproxValue split_binder(DemandEnv& env, const std::string& name,
                         const TyScope& outer_scope, const TotalEnv& outer_g) {
  ApproxValue b = env.at(name);
  auto git = outer_g.find(name);
  if (git == outer_g.end()) {
    env.erase(name);
  } else {
    auto sit = outer_scope.find(name);
    env[name] =
        least_approx(git->second, sit == outer_scope.end() ? nullptr : sit->second);
  }
  return b;
}

struct FoldrDemOut {
  std::uint64_t cost = 0;
  DemandEnv env;
  ApproxValue list_demand;
};

FoldrDemOut foldr_dem_rec(const Ctx& cx, const TyScope& scope, const TotalEnv& g,
                          const FoldrPieces& f, const TotalValue& list,
                          const ApproxValue& out_thunk) {
  if (out_thunk.is_bot())
    return {0, least_env(g, scope), ApproxValue::bot()};
  const ApproxValue& d = out_thunk.inner();
  if (list.kind() == TotalValue::Kind::Nil) {
    Tick<DemandEnv> r = dem(cx, scope, g, f.base, d);
    return {r.cost, std::move(r.value), ApproxValue::thunk(ApproxValue::nil())};
  }
  // cons a1 a2: run the step's demand with y bound to the fold of the tail,
  // split off the head demand and the tail-result demand, then recurse.
  const TotalValue& a1 = list.first();
  const TotalValue& a2 = list.second();
  TotalValue yv = foldr_eval(g, f.x, f.y, f.step, f.base, a2);
  TotalEnv g_ext = g;
  g_ext.insert_or_assign(f.x, a1);
  g_ext.insert_or_assign(f.y, yv);
  TyScope scope_ext = scope;
  scope_ext.insert_or_assign(f.x, Ty::thunked(f.elem_ty));
  scope_ext.insert_or_assign(f.y, Ty::thunked(f.res_ty));
  Tick<DemandEnv> r1 = dem(cx, scope_ext, g_ext, f.step, d);
  ApproxValue b2 = split_binder(r1.value, f.y, scope, g);
  ApproxValue a1d = split_binder(r1.value, f.x, scope, g);
  FoldrDemOut r2 = foldr_dem_rec(cx, scope, g, f, a2, b2);
  return {r1.cost + r2.cost, join(r1.value, r2.env),
          ApproxValue::thunk(ApproxValue::cons(a1d, r2.list_demand))};
}

[[noreturn]] void shape_fail(const TermPtr& term, const ApproxValue& out) {
  throw DemandMismatchError("demand shape mismatch at `" + print_term(term) +
                            "` for demand " + out.to_string());
}

Tick<DemandEnv> dem(const Ctx& cx, const TyScope& scope, const TotalEnv& g,
                    const TermPtr& term, const ApproxValue& out) {
  using K = ApproxValue::Kind;
  const Term& t = *term;
  switch (t.kind) {
    case Term::Kind::Var: {
      DemandEnv env = least_env(g, scope);
      env.insert_or_assign(t.name, out);
      return {0, std::move(env)};
    }
    case Term::Kind::Tick: {
      Tick<DemandEnv> r = dem(cx, scope, g, t.m1, out);
      r.cost += 1;
      return r;
    }
    case Term::Kind::Force:
      return dem(cx, scope, g, t.m1, ApproxValue::thunk(out));
    case Term::Kind::Lazy: {
      if (out.is_bot()) return {0, least_env(g, scope)};
      if (!out.is_thunk()) shape_fail(term, out);
      return dem(cx, scope, g, t.m1, out.inner());
    }
    case Term::Kind::Let: {
      TotalEnv g_ext = g;
      g_ext.insert_or_assign(t.name, eval(g, t.m1));
      TyScope scope_ext = scope;
      scope_ext.insert_or_assign(t.name, cx.info.let_bound.at(term.get()));
      Tick<DemandEnv> rn = dem(cx, scope_ext, g_ext, t.m2, out);
      ApproxValue b = split_binder(rn.value, t.name, scope, g);
      Tick<DemandEnv> rm = dem(cx, scope, g, t.m1, b);
      return {rn.cost + rm.cost, join(rn.value, rm.value)};
    }
    case Term::Kind::Cons: {
      if (out.kind() != K::Cons) shape_fail(term, out);
      return lubplus(dem(cx, scope, g, t.m1, out.first()),
                     dem(cx, scope, g, t.m2, out.second()));
    }
    case Term::Kind::Pair: {
      if (out.kind() != K::Pair) shape_fail(term, out);
      return lubplus(dem(cx, scope, g, t.m1, out.first()),
                     dem(cx, scope, g, t.m2, out.second()));
    }
    case Term::Kind::Fst: {
      TotalValue v = eval(g, t.m1);
      TyPtr pt = node_type(cx, t.m1);
      TyPtr sndTy = pt && pt->kind == Ty::Kind::Prod ? pt->b : nullptr;
      return dem(cx, scope, g, t.m1,
                 ApproxValue::pair(out, least_approx(v.second(), sndTy)));
    }
    case Term::Kind::Snd: {
      TotalValue v = eval(g, t.m1);
      TyPtr pt = node_type(cx, t.m1);
      TyPtr fstTy = pt && pt->kind == Ty::Kind::Prod ? pt->a : nullptr;
      return dem(cx, scope, g, t.m1,
                 ApproxValue::pair(least_approx(v.first(), fstTy), out));
    }
    case Term::Kind::Nil:
    case Term::Kind::True:
    case Term::Kind::False:
    case Term::Kind::NatLit:
      return {0, least_env(g, scope)};
    case Term::Kind::If: {
      bool b = eval(g, t.m1).bool_value();
      // The scrutinee is demanded at its full boolean value.
      Tick<DemandEnv> rc = dem(cx, scope, g, t.m1, ApproxValue::boolean(b));
      Tick<DemandEnv> rb = dem(cx, scope, g, b ? t.m2 : t.m3, out);
      return lubplus(rc, rb);
    }
    case Term::Kind::Foldr: {
      FoldrPieces f{t.name, t.y, t.m1, t.m2, cx.info.foldr_elem.at(term.get()),
                    cx.info.foldr_res.at(term.get())};
      TotalValue list = eval(g, t.m3);
      FoldrDemOut r = foldr_dem_rec(cx, scope, g, f, list,
                                    ApproxValue::thunk(out));
      // The seed is a thunk wrapper, so the list demand is always a thunk;
      // unwrap it for the list argument's own demand.
      Tick<DemandEnv> rl = dem(cx, scope, g, t.m3, r.list_demand.inner());
      return lubplus({r.cost, std::move(r.env)}, rl);
    }
  }
  throw DemandMismatchError("demand: bad term");
}

}  // namespace

Tick<DemandEnv> demand(const Program& p, const TotalEnv& g,
                       const ApproxValue& out, bool check) {
  if (check) {
    TotalValue v = eval(g, p.body);
    if (!is_approx(out, v))
      throw DemandMismatchError("output demand " + out.to_string() +
                                " does not approximate the forward value " +
                                v.to_string());
  }
  Ctx cx{p.info};
  return dem(cx, scope_of_params(p.params), g, p.body, out);
}

FoldrDemResult foldr_dem(const Program& p, const TermPtr& foldr_term,
                         const TotalEnv& g, const TotalValue& list,
                         const ApproxValue& out_thunk) {
  if (foldr_term->kind != Term::Kind::Foldr)
    throw std::invalid_argument("foldr_dem: not a foldr term");
  Ctx cx{p.info};
  const Term& t = *foldr_term;
  FoldrPieces f{t.name, t.y, t.m1, t.m2,
                p.info.foldr_elem.at(foldr_term.get()),
                p.info.foldr_res.at(foldr_term.get())};
  FoldrDemOut r = foldr_dem_rec(cx, scope_of_params(p.params), g, f, list,
                                out_thunk);
  return {r.cost, std::move(r.env), r.list_demand};
}

}  // namespace lazycost
