#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace lazycost {

// Total values: fully evaluated data. Thunked positions hold the plain value
// (evaluating a thunk type gives the same set as the unlifted type).
class TotalValue {
 public:
  enum class Kind : std::uint8_t { Bool, Nat, Nil, Cons, Pair };

  static TotalValue boolean(bool b);
  static TotalValue nat(std::uint64_t n);
  static TotalValue nil();
  static TotalValue cons(TotalValue head, TotalValue tail);
  static TotalValue pair(TotalValue first, TotalValue second);

  Kind kind() const { return node_->kind; }
  bool bool_value() const { return node_->num != 0; }
  std::uint64_t nat_value() const { return node_->num; }
  TotalValue first() const { return TotalValue(node_->a); }
  TotalValue second() const { return TotalValue(node_->b); }

  bool operator==(const TotalValue& o) const;
  bool operator!=(const TotalValue& o) const { return !(*this == o); }
  // Total order used for canonical sorting; not the definedness order.
  int compare(const TotalValue& o) const;
  bool operator<(const TotalValue& o) const { return compare(o) < 0; }

  std::string to_string() const;

  // An empty placeholder; only assign to it, never inspect it.
  TotalValue() = default;

 private:
  struct Node {
    Kind kind;
    std::uint64_t num = 0;
    std::shared_ptr<const Node> a, b;
  };
  explicit TotalValue(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Approximation values: partial values where an unneeded thunk is Bot.
// The same type doubles as a demand. Bot only inhabits thunked positions.
class ApproxValue {
 public:
  enum class Kind : std::uint8_t { Bot, Thunk, Bool, Nat, Nil, Cons, Pair };

  // Default-constructed ApproxValue is Bot.
  ApproxValue() = default;

  static ApproxValue bot() { return ApproxValue(); }
  static ApproxValue thunk(ApproxValue inner);
  static ApproxValue boolean(bool b);
  static ApproxValue nat(std::uint64_t n);
  static ApproxValue nil();
  static ApproxValue cons(ApproxValue head, ApproxValue tail);
  static ApproxValue pair(ApproxValue first, ApproxValue second);

  Kind kind() const { return node_ ? node_->kind : Kind::Bot; }
  bool is_bot() const { return kind() == Kind::Bot; }
  bool is_thunk() const { return kind() == Kind::Thunk; }
  bool bool_value() const { return node_->num != 0; }
  std::uint64_t nat_value() const { return node_->num; }
  // Thunk payload.
  ApproxValue inner() const { return ApproxValue(node_->a); }
  // Cons/Pair fields.
  ApproxValue first() const { return ApproxValue(node_->a); }
  ApproxValue second() const { return ApproxValue(node_->b); }

  bool operator==(const ApproxValue& o) const;
  bool operator!=(const ApproxValue& o) const { return !(*this == o); }
  int compare(const ApproxValue& o) const;
  bool operator<(const ApproxValue& o) const { return compare(o) < 0; }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::uint64_t num = 0;
    std::shared_ptr<const Node> a, b;
  };
  explicit ApproxValue(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using DemandEnv = std::map<std::string, ApproxValue>;
using TotalEnv = std::map<std::string, TotalValue>;

// Raised by join on inputs that do not approximate a common total value.
struct JoinMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Definedness order a <= b among approximations of one total value.
bool less_defined(const ApproxValue& a, const ApproxValue& b);
bool less_defined(const DemandEnv& a, const DemandEnv& b);

// Approximation relation a -< v against a total value.
bool is_approx(const ApproxValue& a, const TotalValue& v);

// Supremum of two approximations of a common total; throws JoinMismatchError
// on mismatched constructors.
ApproxValue join(const ApproxValue& a, const ApproxValue& b);
DemandEnv join(const DemandEnv& a, const DemandEnv& b);

// Fully defined approximation of a total value. Pair fields follow the
// approximation-datatype convention (T on both sides), which is what the
// stdlib and queue types use; the calculus never calls this on pairs.
ApproxValue exact_approx(const TotalValue& v);

// Cost/value accumulator of the demand semantics.
template <typename X>
struct Tick {
  std::uint64_t cost = 0;
  X value{};
};

// Componentwise (cost sum, environment join).
Tick<DemandEnv> lubplus(const Tick<DemandEnv>& a, const Tick<DemandEnv>& b);

// Demand literal text format: `_`, (thunk d), nil, (cons d d), (pair d d),
// true|false, naturals, plus [d, ...] sugar for lists with thunked elements.
struct LiteralParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
ApproxValue parse_demand_literal(const std::string& text);
// Total-value literals use the same grammar with no `_`.
TotalValue parse_total_literal(const std::string& text);
// `name=literal` bindings separated by whitespace.
TotalEnv parse_env_bindings(const std::string& text);
DemandEnv parse_demand_bindings(const std::string& text);

}  // namespace lazycost
