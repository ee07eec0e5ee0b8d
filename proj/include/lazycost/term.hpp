#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lazycost {

// Types of the first-order calculus with explicit thunks:
//   A, B ::= bool | nat | list A | T A | A x B
class Ty;
using TyPtr = std::shared_ptr<const Ty>;

class Ty {
 public:
  enum class Kind : std::uint8_t { Bool, Nat, List, Thunked, Prod };

  static TyPtr boolean();
  static TyPtr nat();
  static TyPtr list(TyPtr elem);
  static TyPtr thunked(TyPtr inner);
  static TyPtr prod(TyPtr left, TyPtr right);

  Kind kind;
  TyPtr a, b;  // List/Thunked use a; Prod uses a and b

  std::string to_string() const;
};

bool ty_equal(const TyPtr& x, const TyPtr& y);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind : std::uint8_t {
    Var, Let, Tick, Lazy, Force, Cons, Nil, Foldr,
    Pair, Fst, Snd, True, False, If, NatLit,
  };

  Kind kind;
  std::string name;          // Var; Let/Foldr binders use x (and y for Foldr)
  std::string y;             // Foldr second binder
  std::uint64_t nat = 0;     // NatLit
  TermPtr m1, m2, m3;        // subterms in source order

  static TermPtr var(std::string n);
  static TermPtr let(std::string x, TermPtr bound, TermPtr body);
  static TermPtr tick(TermPtr m);
  static TermPtr lazy(TermPtr m);
  static TermPtr force(TermPtr m);
  static TermPtr cons(TermPtr h, TermPtr t);
  static TermPtr nil();
  static TermPtr foldr(std::string x, std::string y, TermPtr step, TermPtr base,
                       TermPtr list);
  static TermPtr pair(TermPtr a, TermPtr b);
  static TermPtr fst(TermPtr m);
  static TermPtr snd(TermPtr m);
  static TermPtr truev();
  static TermPtr falsev();
  static TermPtr ifte(TermPtr c, TermPtr t, TermPtr e);
  static TermPtr natlit(std::uint64_t n);
};

// Ordered parameter environment; no duplicate names.
using TyEnv = std::vector<std::pair<std::string, TyPtr>>;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) +
                           ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-node types plus binder types, filled in by typecheck.
struct TypeInfo {
  TyPtr root;
  std::unordered_map<const Term*, TyPtr> types;        // type of every subterm
  std::unordered_map<const Term*, TyPtr> let_bound;    // type of Let's bound term
  std::unordered_map<const Term*, TyPtr> foldr_elem;   // A in foldr over list A
  std::unordered_map<const Term*, TyPtr> foldr_res;    // B, the foldr result
};

// A parsed and typechecked program: `(params (name ty)...) (body term)`.
struct Program {
  std::string name;
  TyEnv params;
  TermPtr body;
  TypeInfo info;
};

// Returns the unique type of `term` under `env` and records annotations.
TyPtr typecheck(const TyEnv& env, const TermPtr& term, TypeInfo& info);

// Parses the s-expression surface syntax; typechecks; round-trips through
// print_term.
Program parse_program(const std::string& text);

TermPtr parse_term(const std::string& text);
std::string print_term(const TermPtr& t);
std::string print_ty(const TyPtr& t);
std::string print_program(const Program& p);

}  // namespace lazycost
