#include "lazycost/eval.hpp"

namespace lazycost {

TotalValue eval(const TotalEnv& env, const TermPtr& term) {
  const Term& t = *term;
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end())
        throw std::runtime_error("eval: unbound variable " + t.name);
      return it->second;
    }
    case Term::Kind::Let: {
      TotalEnv ext = env;
      ext.insert_or_assign(t.name, eval(env, t.m1));
      return eval(ext, t.m2);
    }
    case Term::Kind::Tick:
    case Term::Kind::Lazy:
    case Term::Kind::Force:
      return eval(env, t.m1);
    case Term::Kind::Cons:
      return TotalValue::cons(eval(env, t.m1), eval(env, t.m2));
    case Term::Kind::Nil:
      return TotalValue::nil();
    case Term::Kind::Foldr:
      return foldr_eval(env, t.name, t.y, t.m1, t.m2, eval(env, t.m3));
    case Term::Kind::Pair:
      return TotalValue::pair(eval(env, t.m1), eval(env, t.m2));
    case Term::Kind::Fst:
      return eval(env, t.m1).first();
    case Term::Kind::Snd:
      return eval(env, t.m1).second();
    case Term::Kind::True:
      return TotalValue::boolean(true);
    case Term::Kind::False:
      return TotalValue::boolean(false);
    case Term::Kind::If:
      return eval(env, t.m1).bool_value() ? eval(env, t.m2) : eval(env, t.m3);
    case Term::Kind::NatLit:
      return TotalValue::nat(t.nat);
  }
  throw std::runtime_error("eval: bad term");
}

TotalValue foldr_eval(const TotalEnv& env, const std::string& x,
                      const std::string& y, const TermPtr& step,
                      const TermPtr& base, const TotalValue& list) {
  if (list.kind() == TotalValue::Kind::Nil) return eval(env, base);
  TotalEnv ext = env;
  ext.insert_or_assign(x, list.first());
  ext.insert_or_assign(y, foldr_eval(env, x, y, step, base, list.second()));
  return eval(ext, step);
}

TotalValue eval_program(const Program& p, const TotalEnv& env) {
  if (!env_matches_params(p.params, env))
    throw std::runtime_error("eval: environment does not match parameters");
  return eval(env, p.body);
}

bool inhabits(const TotalValue& v, const TyPtr& ty) {
  using TK = TotalValue::Kind;
  if (!ty) return true;  // unknown element type
  switch (ty->kind) {
    case Ty::Kind::Bool:
      return v.kind() == TK::Bool;
    case Ty::Kind::Nat:
      return v.kind() == TK::Nat;
    case Ty::Kind::Thunked:
      return inhabits(v, ty->a);
    case Ty::Kind::List: {
      TotalValue cur = v;
      while (cur.kind() == TK::Cons) {
        if (!inhabits(cur.first(), ty->a)) return false;
        cur = cur.second();
      }
      return cur.kind() == TK::Nil;
    }
    case Ty::Kind::Prod:
      return v.kind() == TK::Pair && inhabits(v.first(), ty->a) &&
             inhabits(v.second(), ty->b);
  }
  return false;
}

bool env_matches_params(const TyEnv& params, const TotalEnv& env) {
  if (params.size() != env.size()) return false;
  for (const auto& [name, ty] : params) {
    auto it = env.find(name);
    if (it == env.end() || !inhabits(it->second, ty)) return false;
  }
  return true;
}

}  // namespace lazycost
