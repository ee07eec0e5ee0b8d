#include "lazycost/term.hpp"

#include <cctype>
#include <sstream>

namespace lazycost {

// ---------------------------------------------------------------------------
// Types

TyPtr Ty::boolean() {
  static const TyPtr t = std::make_shared<Ty>(Ty{Kind::Bool, nullptr, nullptr});
  return t;
}

TyPtr Ty::nat() {
  static const TyPtr t = std::make_shared<Ty>(Ty{Kind::Nat, nullptr, nullptr});
  return t;
}

TyPtr Ty::list(TyPtr elem) {
  return std::make_shared<Ty>(Ty{Kind::List, std::move(elem), nullptr});
}

TyPtr Ty::thunked(TyPtr inner) {
  return std::make_shared<Ty>(Ty{Kind::Thunked, std::move(inner), nullptr});
}

TyPtr Ty::prod(TyPtr left, TyPtr right) {
  return std::make_shared<Ty>(Ty{Kind::Prod, std::move(left), std::move(right)});
}

// `list` with a null element type is the type of a bare `nil`, compatible
// with any list; the checker refines it wherever a use site pins it down.
bool ty_equal(const TyPtr& x, const TyPtr& y) {
  if (x == y) return true;
  if (!x || !y) return true;  // unknown element type matches anything
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Ty::Kind::Bool:
    case Ty::Kind::Nat:
      return true;
    case Ty::Kind::List:
    case Ty::Kind::Thunked:
      return ty_equal(x->a, y->a);
    case Ty::Kind::Prod:
      return ty_equal(x->a, y->a) && ty_equal(x->b, y->b);
  }
  return false;
}

// Picks the more informative of two compatible types.
static TyPtr ty_merge(const TyPtr& x, const TyPtr& y) {
  if (!x) return y;
  if (!y) return x;
  switch (x->kind) {
    case Ty::Kind::Bool:
    case Ty::Kind::Nat:
      return x;
    case Ty::Kind::List:
      return Ty::list(ty_merge(x->a, y->a));
    case Ty::Kind::Thunked:
      return Ty::thunked(ty_merge(x->a, y->a));
    case Ty::Kind::Prod:
      return Ty::prod(ty_merge(x->a, y->a), ty_merge(x->b, y->b));
  }
  return x;
}

std::string Ty::to_string() const {
  switch (kind) {
    case Kind::Bool:
      return "bool";
    case Kind::Nat:
      return "nat";
    case Kind::List:
      return a ? "(list " + a->to_string() + ")" : "(list ?)";
    case Kind::Thunked:
      return a ? "(T " + a->to_string() + ")" : "(T ?)";
    case Kind::Prod:
      return "(prod " + (a ? a->to_string() : "?") + " " +
             (b ? b->to_string() : "?") + ")";
  }
  return "?";
}

std::string print_ty(const TyPtr& t) { return t->to_string(); }

// ---------------------------------------------------------------------------
// Term constructors

namespace {
TermPtr mk(Term t) { return std::make_shared<Term>(std::move(t)); }
}  // namespace

TermPtr Term::var(std::string n) {
  return mk({Kind::Var, std::move(n), "", 0, nullptr, nullptr, nullptr});
}
TermPtr Term::let(std::string x, TermPtr bound, TermPtr body) {
  return mk({Kind::Let, std::move(x), "", 0, std::move(bound), std::move(body),
             nullptr});
}
TermPtr Term::tick(TermPtr m) {
  return mk({Kind::Tick, "", "", 0, std::move(m), nullptr, nullptr});
}
TermPtr Term::lazy(TermPtr m) {
  return mk({Kind::Lazy, "", "", 0, std::move(m), nullptr, nullptr});
}
TermPtr Term::force(TermPtr m) {
  return mk({Kind::Force, "", "", 0, std::move(m), nullptr, nullptr});
}
TermPtr Term::cons(TermPtr h, TermPtr t) {
  return mk({Kind::Cons, "", "", 0, std::move(h), std::move(t), nullptr});
}
TermPtr Term::nil() {
  return mk({Kind::Nil, "", "", 0, nullptr, nullptr, nullptr});
}
TermPtr Term::foldr(std::string x, std::string y, TermPtr step, TermPtr base,
                    TermPtr list) {
  return mk({Kind::Foldr, std::move(x), std::move(y), 0, std::move(step),
             std::move(base), std::move(list)});
}
TermPtr Term::pair(TermPtr a, TermPtr b) {
  return mk({Kind::Pair, "", "", 0, std::move(a), std::move(b), nullptr});
}
TermPtr Term::fst(TermPtr m) {
  return mk({Kind::Fst, "", "", 0, std::move(m), nullptr, nullptr});
}
TermPtr Term::snd(TermPtr m) {
  return mk({Kind::Snd, "", "", 0, std::move(m), nullptr, nullptr});
}
TermPtr Term::truev() {
  return mk({Kind::True, "", "", 0, nullptr, nullptr, nullptr});
}
TermPtr Term::falsev() {
  return mk({Kind::False, "", "", 0, nullptr, nullptr, nullptr});
}
TermPtr Term::ifte(TermPtr c, TermPtr t, TermPtr e) {
  return mk({Kind::If, "", "", 0, std::move(c), std::move(t), std::move(e)});
}
TermPtr Term::natlit(std::uint64_t n) {
  return mk({Kind::NatLit, "", "", n, nullptr, nullptr, nullptr});
}

// ---------------------------------------------------------------------------
// Typechecking

namespace {

using Scope = std::vector<std::pair<std::string, TyPtr>>;

TyPtr lookup(const Scope& scope, const std::string& name) {
  for (auto it = scope.rbegin(); it != scope.rend(); ++it)
    if (it->first == name) return it->second;
  return nullptr;
}

[[noreturn]] void type_fail(const Term& t, const std::string& msg) {
  throw TypeError(msg + " in `" + print_term(std::make_shared<Term>(t)) + "`");
}

TyPtr check(Scope& scope, const TermPtr& term, TypeInfo& info) {
  const Term& t = *term;
  TyPtr ty;
  switch (t.kind) {
    case Term::Kind::Var: {
      ty = lookup(scope, t.name);
      if (!ty) throw TypeError("unbound variable `" + t.name + "`");
      break;
    }
    case Term::Kind::Let: {
      TyPtr bound = check(scope, t.m1, info);
      info.let_bound[term.get()] = bound;
      scope.emplace_back(t.name, bound);
      ty = check(scope, t.m2, info);
      scope.pop_back();
      break;
    }
    case Term::Kind::Tick:
      ty = check(scope, t.m1, info);
      break;
    case Term::Kind::Lazy:
      ty = Ty::thunked(check(scope, t.m1, info));
      break;
    case Term::Kind::Force: {
      // A null type is an unresolved `nil` element flowing through binders;
      // it matches any expectation and stays unresolved.
      TyPtr inner = check(scope, t.m1, info);
      if (inner && inner->kind != Ty::Kind::Thunked)
        type_fail(t, "force expects (T A), got " + inner->to_string());
      ty = inner ? inner->a : nullptr;
      break;
    }
    case Term::Kind::Cons: {
      TyPtr h = check(scope, t.m1, info);
      TyPtr tl = check(scope, t.m2, info);
      if (h && h->kind != Ty::Kind::Thunked)
        type_fail(t, "cons head expects (T A), got " + h->to_string());
      TyPtr helem = h ? h->a : nullptr;
      if (tl && (tl->kind != Ty::Kind::Thunked ||
                 (tl->a && tl->a->kind != Ty::Kind::List)))
        type_fail(t, "cons tail expects a thunked list, got " + tl->to_string());
      TyPtr tlelem = tl && tl->a ? tl->a->a : nullptr;
      if (!ty_equal(helem, tlelem))
        type_fail(t, "cons head and tail element types disagree");
      ty = Ty::list(ty_merge(helem, tlelem));
      break;
    }
    case Term::Kind::Nil:
      ty = Ty::list(nullptr);
      break;
    case Term::Kind::Foldr: {
      if (t.name == t.y) type_fail(t, "foldr binders must be distinct");
      TyPtr listTy = check(scope, t.m3, info);
      if (listTy && listTy->kind != Ty::Kind::List)
        type_fail(t, "foldr expects a list argument, got " + listTy->to_string());
      TyPtr elem = listTy ? listTy->a : nullptr;
      TyPtr base = check(scope, t.m2, info);
      scope.emplace_back(t.name, Ty::thunked(elem));
      scope.emplace_back(t.y, Ty::thunked(base));
      TyPtr step = check(scope, t.m1, info);
      scope.pop_back();
      scope.pop_back();
      if (!ty_equal(step, base))
        type_fail(t, "foldr step type " + step->to_string() +
                         " does not match base type " + base->to_string());
      TyPtr res = ty_merge(step, base);
      info.foldr_elem[term.get()] = elem;
      info.foldr_res[term.get()] = res;
      ty = res;
      break;
    }
    case Term::Kind::Pair: {
      TyPtr a = check(scope, t.m1, info);
      TyPtr b = check(scope, t.m2, info);
      ty = Ty::prod(a, b);
      break;
    }
    case Term::Kind::Fst: {
      TyPtr p = check(scope, t.m1, info);
      if (p && p->kind != Ty::Kind::Prod)
        type_fail(t, "fst expects (prod A B), got " + p->to_string());
      ty = p ? p->a : nullptr;
      break;
    }
    case Term::Kind::Snd: {
      TyPtr p = check(scope, t.m1, info);
      if (p && p->kind != Ty::Kind::Prod)
        type_fail(t, "snd expects (prod A B), got " + p->to_string());
      ty = p ? p->b : nullptr;
      break;
    }
    case Term::Kind::True:
    case Term::Kind::False:
      ty = Ty::boolean();
      break;
    case Term::Kind::If: {
      TyPtr c = check(scope, t.m1, info);
      if (c && c->kind != Ty::Kind::Bool)
        type_fail(t, "if scrutinee must be bool, got " + c->to_string());
      TyPtr a = check(scope, t.m2, info);
      TyPtr b = check(scope, t.m3, info);
      if (!ty_equal(a, b))
        type_fail(t, "if branches disagree: " + a->to_string() + " vs " +
                         b->to_string());
      ty = ty_merge(a, b);
      break;
    }
    case Term::Kind::NatLit:
      ty = Ty::nat();
      break;
  }
  info.types[term.get()] = ty;
  return ty;
}

}  // namespace

TyPtr typecheck(const TyEnv& env, const TermPtr& term, TypeInfo& info) {
  Scope scope(env.begin(), env.end());
  return check(scope, term, info);
}

// ---------------------------------------------------------------------------
// Parsing: a tiny s-expression reader with positions.

namespace {

struct Sexp {
  // Atom when children empty and text set; otherwise a list.
  std::string text;
  std::vector<Sexp> children;
  bool atom = false;
  int line = 1, col = 1;
};

struct SexpReader {
  const std::string& s;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (pos < s.size()) {
      if (s[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == ';') {  // comment to end of line
        while (pos < s.size() && s[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= s.size();
  }

  Sexp read() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of input", line, col);
    Sexp e;
    e.line = line;
    e.col = col;
    char c = s[pos];
    if (c == '(') {
      advance();
      while (true) {
        skip_ws();
        if (pos >= s.size())
          throw ParseError("missing `)`", e.line, e.col);
        if (s[pos] == ')') {
          advance();
          break;
        }
        e.children.push_back(read());
      }
      return e;
    }
    if (c == ')') throw ParseError("unexpected `)`", line, col);
    e.atom = true;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')' && s[pos] != ';') {
      e.text.push_back(s[pos]);
      advance();
    }
    return e;
  }
};

bool is_nat_atom(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_identifier(const std::string& t) {
  if (t.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_')
    return false;
  for (char c : t)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'')
      return false;
  return true;
}

[[noreturn]] void parse_fail(const Sexp& e, const std::string& msg) {
  throw ParseError(msg, e.line, e.col);
}

TyPtr ty_of_sexp(const Sexp& e) {
  if (e.atom) {
    if (e.text == "bool") return Ty::boolean();
    if (e.text == "nat") return Ty::nat();
    parse_fail(e, "unknown type `" + e.text + "`");
  }
  if (e.children.empty() || !e.children[0].atom)
    parse_fail(e, "malformed type");
  const std::string& head = e.children[0].text;
  if (head == "list" && e.children.size() == 2)
    return Ty::list(ty_of_sexp(e.children[1]));
  if (head == "T" && e.children.size() == 2)
    return Ty::thunked(ty_of_sexp(e.children[1]));
  if (head == "prod" && e.children.size() == 3)
    return Ty::prod(ty_of_sexp(e.children[1]), ty_of_sexp(e.children[2]));
  parse_fail(e, "unknown type constructor `" + head + "`");
}

TermPtr term_of_sexp(const Sexp& e) {
  if (e.atom) {
    if (e.text == "nil") return Term::nil();
    if (e.text == "true") return Term::truev();
    if (e.text == "false") return Term::falsev();
    if (is_nat_atom(e.text)) return Term::natlit(std::stoull(e.text));
    if (is_identifier(e.text)) return Term::var(e.text);
    parse_fail(e, "bad token `" + e.text + "`");
  }
  if (e.children.empty() || !e.children[0].atom)
    parse_fail(e, "malformed term");
  const std::string& head = e.children[0].text;
  auto arity = [&](std::size_t n, const char* form) {
    if (e.children.size() != n + 1)
      parse_fail(e, std::string("`") + form + "` takes " + std::to_string(n) +
                        " arguments");
  };
  if (head == "let") {
    arity(2, "let");
    const Sexp& binding = e.children[1];
    if (binding.atom || binding.children.size() != 2 ||
        !binding.children[0].atom || !is_identifier(binding.children[0].text))
      parse_fail(binding, "let binding must be (name term)");
    return Term::let(binding.children[0].text, term_of_sexp(binding.children[1]),
                     term_of_sexp(e.children[2]));
  }
  if (head == "tick") {
    arity(1, "tick");
    return Term::tick(term_of_sexp(e.children[1]));
  }
  if (head == "lazy") {
    arity(1, "lazy");
    return Term::lazy(term_of_sexp(e.children[1]));
  }
  if (head == "force") {
    arity(1, "force");
    return Term::force(term_of_sexp(e.children[1]));
  }
  if (head == "cons") {
    arity(2, "cons");
    return Term::cons(term_of_sexp(e.children[1]), term_of_sexp(e.children[2]));
  }
  if (head == "foldr") {
    arity(3, "foldr");
    const Sexp& fn = e.children[1];
    if (fn.atom || fn.children.size() != 4 || !fn.children[0].atom ||
        fn.children[0].text != "fun" || !fn.children[1].atom ||
        !fn.children[2].atom || !is_identifier(fn.children[1].text) ||
        !is_identifier(fn.children[2].text))
      parse_fail(fn, "foldr expects (fun x y step)");
    return Term::foldr(fn.children[1].text, fn.children[2].text,
                       term_of_sexp(fn.children[3]), term_of_sexp(e.children[2]),
                       term_of_sexp(e.children[3]));
  }
  if (head == "pair") {
    arity(2, "pair");
    return Term::pair(term_of_sexp(e.children[1]), term_of_sexp(e.children[2]));
  }
  if (head == "fst") {
    arity(1, "fst");
    return Term::fst(term_of_sexp(e.children[1]));
  }
  if (head == "snd") {
    arity(1, "snd");
    return Term::snd(term_of_sexp(e.children[1]));
  }
  if (head == "if") {
    arity(3, "if");
    return Term::ifte(term_of_sexp(e.children[1]), term_of_sexp(e.children[2]),
                      term_of_sexp(e.children[3]));
  }
  parse_fail(e.children[0], "unknown keyword `" + head + "`");
}

}  // namespace

TermPtr parse_term(const std::string& text) {
  SexpReader r{text};
  Sexp e = r.read();
  if (!r.eof()) throw ParseError("trailing input after term", r.line, r.col);
  return term_of_sexp(e);
}

Program parse_program(const std::string& text) {
  SexpReader r{text};
  Program p;
  bool saw_params = false, saw_body = false;
  while (!r.eof()) {
    Sexp e = r.read();
    if (e.atom || e.children.empty() || !e.children[0].atom)
      throw ParseError("expected (params ...) or (body ...)", e.line, e.col);
    const std::string& head = e.children[0].text;
    if (head == "params") {
      if (saw_params) parse_fail(e, "duplicate (params ...)");
      saw_params = true;
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        const Sexp& b = e.children[i];
        if (b.atom || b.children.size() != 2 || !b.children[0].atom ||
            !is_identifier(b.children[0].text))
          parse_fail(b, "parameter must be (name ty)");
        for (const auto& [n, ty] : p.params)
          if (n == b.children[0].text)
            parse_fail(b, "duplicate parameter `" + n + "`");
        p.params.emplace_back(b.children[0].text, ty_of_sexp(b.children[1]));
      }
    } else if (head == "body") {
      if (saw_body) parse_fail(e, "duplicate (body ...)");
      if (e.children.size() != 2) parse_fail(e, "(body term) takes one term");
      saw_body = true;
      p.body = term_of_sexp(e.children[1]);
    } else {
      parse_fail(e, "unknown section `" + head + "`");
    }
  }
  if (!saw_body) throw ParseError("program has no (body ...)", 1, 1);
  p.info.root = typecheck(p.params, p.body, p.info);
  return p;
}

// ---------------------------------------------------------------------------
// Printing

std::string print_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name;
    case Term::Kind::Let:
      return "(let (" + t->name + " " + print_term(t->m1) + ") " +
             print_term(t->m2) + ")";
    case Term::Kind::Tick:
      return "(tick " + print_term(t->m1) + ")";
    case Term::Kind::Lazy:
      return "(lazy " + print_term(t->m1) + ")";
    case Term::Kind::Force:
      return "(force " + print_term(t->m1) + ")";
    case Term::Kind::Cons:
      return "(cons " + print_term(t->m1) + " " + print_term(t->m2) + ")";
    case Term::Kind::Nil:
      return "nil";
    case Term::Kind::Foldr:
      return "(foldr (fun " + t->name + " " + t->y + " " + print_term(t->m1) +
             ") " + print_term(t->m2) + " " + print_term(t->m3) + ")";
    case Term::Kind::Pair:
      return "(pair " + print_term(t->m1) + " " + print_term(t->m2) + ")";
    case Term::Kind::Fst:
      return "(fst " + print_term(t->m1) + ")";
    case Term::Kind::Snd:
      return "(snd " + print_term(t->m1) + ")";
    case Term::Kind::True:
      return "true";
    case Term::Kind::False:
      return "false";
    case Term::Kind::If:
      return "(if " + print_term(t->m1) + " " + print_term(t->m2) + " " +
             print_term(t->m3) + ")";
    case Term::Kind::NatLit:
      return std::to_string(t->nat);
  }
  return "?";
}

std::string print_program(const Program& p) {
  std::ostringstream out;
  out << "(params";
  for (const auto& [n, ty] : p.params) out << " (" << n << " " << print_ty(ty) << ")";
  out << ")\n(body " << print_term(p.body) << ")\n";
  return out.str();
}

}  // namespace lazycost
