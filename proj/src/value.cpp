#include "lazycost/value.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace lazycost {

// ---------------------------------------------------------------------------
// TotalValue

TotalValue TotalValue::boolean(bool b) {
  static const TotalValue t = [] {
    TotalValue v;
    v.node_ = std::make_shared<Node>(Node{Kind::Bool, 1, {}, {}});
    return v;
  }();
  static const TotalValue f = [] {
    TotalValue v;
    v.node_ = std::make_shared<Node>(Node{Kind::Bool, 0, {}, {}});
    return v;
  }();
  return b ? t : f;
}

TotalValue TotalValue::nat(std::uint64_t n) {
  TotalValue v;
  v.node_ = std::make_shared<Node>(Node{Kind::Nat, n, {}, {}});
  return v;
}

TotalValue TotalValue::nil() {
  static const TotalValue v = [] {
    TotalValue x;
    x.node_ = std::make_shared<Node>(Node{Kind::Nil, 0, {}, {}});
    return x;
  }();
  return v;
}

TotalValue TotalValue::cons(TotalValue head, TotalValue tail) {
  TotalValue v;
  v.node_ = std::make_shared<Node>(
      Node{Kind::Cons, 0, std::move(head.node_), std::move(tail.node_)});
  return v;
}

TotalValue TotalValue::pair(TotalValue first, TotalValue second) {
  TotalValue v;
  v.node_ = std::make_shared<Node>(
      Node{Kind::Pair, 0, std::move(first.node_), std::move(second.node_)});
  return v;
}

bool TotalValue::operator==(const TotalValue& o) const {
  return compare(o) == 0;
}

int TotalValue::compare(const TotalValue& o) const {
  if (node_ == o.node_) return 0;
  if (kind() != o.kind()) return kind() < o.kind() ? -1 : 1;
  switch (kind()) {
    case Kind::Bool:
    case Kind::Nat:
      return node_->num == o.node_->num ? 0 : (node_->num < o.node_->num ? -1 : 1);
    case Kind::Nil:
      return 0;
    case Kind::Cons:
    case Kind::Pair: {
      int c = first().compare(o.first());
      if (c != 0) return c;
      return second().compare(o.second());
    }
  }
  return 0;
}

std::string TotalValue::to_string() const {
  switch (kind()) {
    case Kind::Bool:
      return bool_value() ? "true" : "false";
    case Kind::Nat:
      return std::to_string(nat_value());
    case Kind::Nil:
      return "nil";
    case Kind::Cons:
      return "(cons " + first().to_string() + " " + second().to_string() + ")";
    case Kind::Pair:
      return "(pair " + first().to_string() + " " + second().to_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ApproxValue

ApproxValue ApproxValue::thunk(ApproxValue inner) {
  return ApproxValue(std::make_shared<Node>(
      Node{Kind::Thunk, 0, std::move(inner.node_), {}}));
}

ApproxValue ApproxValue::boolean(bool b) {
  static const ApproxValue t{
      std::make_shared<Node>(Node{Kind::Bool, 1, {}, {}})};
  static const ApproxValue f{
      std::make_shared<Node>(Node{Kind::Bool, 0, {}, {}})};
  return b ? t : f;
}

ApproxValue ApproxValue::nat(std::uint64_t n) {
  return ApproxValue(std::make_shared<Node>(Node{Kind::Nat, n, {}, {}}));
}

ApproxValue ApproxValue::nil() {
  static const ApproxValue v{std::make_shared<Node>(Node{Kind::Nil, 0, {}, {}})};
  return v;
}

ApproxValue ApproxValue::cons(ApproxValue head, ApproxValue tail) {
  return ApproxValue(std::make_shared<Node>(
      Node{Kind::Cons, 0, std::move(head.node_), std::move(tail.node_)}));
}

ApproxValue ApproxValue::pair(ApproxValue first, ApproxValue second) {
  return ApproxValue(std::make_shared<Node>(
      Node{Kind::Pair, 0, std::move(first.node_), std::move(second.node_)}));
}

bool ApproxValue::operator==(const ApproxValue& o) const {
  return compare(o) == 0;
}

int ApproxValue::compare(const ApproxValue& o) const {
  if (node_ == o.node_) return 0;
  if (kind() != o.kind()) return kind() < o.kind() ? -1 : 1;
  switch (kind()) {
    case Kind::Bot:
    case Kind::Nil:
      return 0;
    case Kind::Bool:
    case Kind::Nat:
      return node_->num == o.node_->num ? 0 : (node_->num < o.node_->num ? -1 : 1);
    case Kind::Thunk:
      return inner().compare(o.inner());
    case Kind::Cons:
    case Kind::Pair: {
      int c = first().compare(o.first());
      if (c != 0) return c;
      return second().compare(o.second());
    }
  }
  return 0;
}

std::string ApproxValue::to_string() const {
  switch (kind()) {
    case Kind::Bot:
      return "_";
    case Kind::Thunk:
      return "(thunk " + inner().to_string() + ")";
    case Kind::Bool:
      return bool_value() ? "true" : "false";
    case Kind::Nat:
      return std::to_string(nat_value());
    case Kind::Nil:
      return "nil";
    case Kind::Cons:
      return "(cons " + first().to_string() + " " + second().to_string() + ")";
    case Kind::Pair:
      return "(pair " + first().to_string() + " " + second().to_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lattice relations

bool less_defined(const ApproxValue& a, const ApproxValue& b) {
  using K = ApproxValue::Kind;
  if (a.kind() == K::Bot) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::Bot:
      return true;
    case K::Thunk:
      return less_defined(a.inner(), b.inner());
    case K::Bool:
    case K::Nat:
      return a == b;
    case K::Nil:
      return true;
    case K::Cons:
    case K::Pair:
      return less_defined(a.first(), b.first()) &&
             less_defined(a.second(), b.second());
  }
  return false;
}

bool less_defined(const DemandEnv& a, const DemandEnv& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!less_defined(ia->second, ib->second)) return false;
  }
  return true;
}

bool is_approx(const ApproxValue& a, const TotalValue& v) {
  using K = ApproxValue::Kind;
  using TK = TotalValue::Kind;
  switch (a.kind()) {
    case K::Bot:
      return true;
    case K::Thunk:
      return is_approx(a.inner(), v);
    case K::Bool:
      return v.kind() == TK::Bool && a.bool_value() == v.bool_value();
    case K::Nat:
      return v.kind() == TK::Nat && a.nat_value() == v.nat_value();
    case K::Nil:
      return v.kind() == TK::Nil;
    case K::Cons:
      return v.kind() == TK::Cons && is_approx(a.first(), v.first()) &&
             is_approx(a.second(), v.second());
    case K::Pair:
      return v.kind() == TK::Pair && is_approx(a.first(), v.first()) &&
             is_approx(a.second(), v.second());
  }
  return false;
}

ApproxValue join(const ApproxValue& a, const ApproxValue& b) {
  using K = ApproxValue::Kind;
  if (a.kind() == K::Bot) return b;
  if (b.kind() == K::Bot) return a;
  if (a.kind() != b.kind())
    throw JoinMismatchError("join: mismatched constructors: " + a.to_string() +
                            " vs " + b.to_string());
  switch (a.kind()) {
    case K::Thunk:
      return ApproxValue::thunk(join(a.inner(), b.inner()));
    case K::Bool:
    case K::Nat:
      if (a != b)
        throw JoinMismatchError("join: distinct atoms: " + a.to_string() +
                                " vs " + b.to_string());
      return a;
    case K::Nil:
      return a;
    case K::Cons:
      return ApproxValue::cons(join(a.first(), b.first()),
                               join(a.second(), b.second()));
    case K::Pair:
      return ApproxValue::pair(join(a.first(), b.first()),
                               join(a.second(), b.second()));
    default:
      return a;
  }
}

DemandEnv join(const DemandEnv& a, const DemandEnv& b) {
  if (a.size() != b.size())
    throw JoinMismatchError("join: environment domains differ");
  DemandEnv out;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first)
      throw JoinMismatchError("join: environment domains differ at " +
                              ia->first);
    out.emplace(ia->first, join(ia->second, ib->second));
  }
  return out;
}

ApproxValue exact_approx(const TotalValue& v) {
  using TK = TotalValue::Kind;
  switch (v.kind()) {
    case TK::Bool:
      return ApproxValue::boolean(v.bool_value());
    case TK::Nat:
      return ApproxValue::nat(v.nat_value());
    case TK::Nil:
      return ApproxValue::nil();
    case TK::Cons:
      return ApproxValue::cons(ApproxValue::thunk(exact_approx(v.first())),
                               ApproxValue::thunk(exact_approx(v.second())));
    case TK::Pair:
      return ApproxValue::pair(ApproxValue::thunk(exact_approx(v.first())),
                               ApproxValue::thunk(exact_approx(v.second())));
  }
  return ApproxValue::bot();
}

Tick<DemandEnv> lubplus(const Tick<DemandEnv>& a, const Tick<DemandEnv>& b) {
  return Tick<DemandEnv>{a.cost + b.cost, join(a.value, b.value)};
}

// ---------------------------------------------------------------------------
// Literal parsing

namespace {

struct LiteralReader {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == ','))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() {
    skip_ws();
    if (pos >= s.size()) throw LiteralParseError("unexpected end of literal");
    return s[pos];
  }

  void expect(char c) {
    if (peek() != c)
      throw LiteralParseError(std::string("expected '") + c + "' in literal");
    ++pos;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '_'))
      ++pos;
    if (start == pos) throw LiteralParseError("expected literal token");
    return s.substr(start, pos - start);
  }

  ApproxValue value() {
    char c = peek();
    if (c == '_') {
      ++pos;
      return ApproxValue::bot();
    }
    if (c == '[') {
      ++pos;
      std::vector<ApproxValue> elems;
      while (peek() != ']') elems.push_back(value());
      ++pos;  // ']'
      ApproxValue out = ApproxValue::thunk(ApproxValue::nil());
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
        ApproxValue head = it->is_bot() || it->is_thunk()
                               ? *it
                               : ApproxValue::thunk(*it);
        out = ApproxValue::thunk(ApproxValue::cons(head, out));
      }
      return out.inner();  // a list literal denotes the list itself
    }
    if (c == '(') {
      ++pos;
      std::string head = word();
      ApproxValue out;
      if (head == "thunk") {
        out = ApproxValue::thunk(value());
      } else if (head == "cons") {
        ApproxValue a = value();
        ApproxValue b = value();
        out = ApproxValue::cons(a, b);
      } else if (head == "pair") {
        ApproxValue a = value();
        ApproxValue b = value();
        out = ApproxValue::pair(a, b);
      } else {
        throw LiteralParseError("unknown literal constructor: " + head);
      }
      expect(')');
      return out;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string w = word();
      return ApproxValue::nat(std::stoull(w));
    }
    std::string w = word();
    if (w == "true") return ApproxValue::boolean(true);
    if (w == "false") return ApproxValue::boolean(false);
    if (w == "nil") return ApproxValue::nil();
    throw LiteralParseError("unknown literal token: " + w);
  }
};

TotalValue approx_to_total(const ApproxValue& a) {
  using K = ApproxValue::Kind;
  switch (a.kind()) {
    case K::Bot:
      throw LiteralParseError("total literal may not contain `_`");
    case K::Thunk:
      return approx_to_total(a.inner());
    case K::Bool:
      return TotalValue::boolean(a.bool_value());
    case K::Nat:
      return TotalValue::nat(a.nat_value());
    case K::Nil:
      return TotalValue::nil();
    case K::Cons:
      return TotalValue::cons(approx_to_total(a.first()),
                              approx_to_total(a.second()));
    case K::Pair:
      return TotalValue::pair(approx_to_total(a.first()),
                              approx_to_total(a.second()));
  }
  throw LiteralParseError("bad literal");
}

}  // namespace

ApproxValue parse_demand_literal(const std::string& text) {
  LiteralReader r{text};
  ApproxValue v = r.value();
  if (!r.eof()) throw LiteralParseError("trailing text after literal");
  return v;
}

TotalValue parse_total_literal(const std::string& text) {
  return approx_to_total(parse_demand_literal(text));
}

TotalEnv parse_env_bindings(const std::string& text) {
  TotalEnv env;
  for (const auto& [name, val] : parse_demand_bindings(text))
    env.emplace(name, approx_to_total(val));
  return env;
}

DemandEnv parse_demand_bindings(const std::string& text) {
  DemandEnv env;
  LiteralReader r{text};
  while (!r.eof()) {
    std::string name = r.word();
    r.expect('=');
    env[name] = r.value();
  }
  return env;
}

}  // namespace lazycost
