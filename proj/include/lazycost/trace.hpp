#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lazycost/queues.hpp"

namespace lazycost {

struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OpKind : std::uint8_t { Empty, Push, Pop };

// An event names an operation and refers to results of earlier events by
// index; a trace is a DAG of value reuse.
struct Event {
  OpKind op = OpKind::Empty;
  std::uint64_t value = 0;        // pushed element
  std::vector<std::size_t> args;  // referenced earlier events

  bool operator==(const Event&) const = default;
};
using Trace = std::vector<Event>;

// One event per line: `empty`, `push VALUE @INDEX`, `pop @INDEX`.
Trace parse_trace(const std::string& text);
std::string print_trace(const Trace& t);

// All well-indexed traces of length <= max_len over a push alphabet.
std::vector<Trace> enumerate_traces(std::size_t max_len,
                                    const std::vector<std::uint64_t>& alphabet);

struct QueueBudgets {
  std::uint64_t empty = 0;
  std::uint64_t push = 0;
  std::uint64_t pop = 0;
};
inline constexpr QueueBudgets kBankerBudgets{kBankerConst, kBankerConst,
                                             kBankerConst};
inline constexpr QueueBudgets kImplicitBudgets{0, kImplicitPushBound,
                                               kImplicitPopBound};

std::uint64_t budget_trace(const Trace& t, const QueueBudgets& b);

enum class QueueImpl : std::uint8_t { Banker, Implicit };

// ---------------------------------------------------------------------------
// Pure interpretation. An event whose reference does not resolve to a queue
// is skipped (value absent); strict mode makes that an error.

struct BankerTraceEval {
  std::vector<std::optional<BQueue>> values;
};
BankerTraceEval eval_trace_banker(const Trace& t, bool strict = false);

struct ImplicitTraceEval {
  std::vector<IQueuePtr> values;  // null = absent
};
ImplicitTraceEval eval_trace_implicit(const Trace& t, bool strict = false);

// ---------------------------------------------------------------------------
// Clairvoyant interpretation: minimal total cost over executions whose
// forcings all succeed; each op forces its result to outer shape.

std::uint64_t cost_of_exec(QueueImpl impl, const Trace& t);
// Deduplicated sorted cost projection of the full branch set (small traces).
std::vector<std::uint64_t> exec_trace_costs(QueueImpl impl, const Trace& t,
                                            std::size_t cap = 1u << 22);

// ---------------------------------------------------------------------------
// Backward demand interpretation: per-event demand costs plus the full
// q^D_{i@j} table. Row j holds the demands accumulated by operations >= j;
// row t is the end-of-trace least demand.

struct BankerDemandTable {
  std::uint64_t total_cost = 0;
  std::vector<std::uint64_t> event_costs;
  std::vector<std::vector<BQueueA>> rows;  // rows[j][i], j in 0..t, i < t
};
BankerDemandTable demand_trace_banker(const Trace& t);

struct ImplicitDemandTable {
  std::uint64_t total_cost = 0;
  std::vector<std::uint64_t> event_costs;
  std::vector<std::vector<IQueueAPtr>> rows;
};
ImplicitDemandTable demand_trace_implicit(const Trace& t);

// ---------------------------------------------------------------------------
// The reverse physicist's method checks.

// Single-operation inequality: potential(input demand) + cost
//   <= budget + potential(output demand).
bool physicist_push_banker(const BQueue& q, std::uint64_t x,
                           const BQueueA& outD, std::uint64_t budget,
                           std::string* detail = nullptr);
bool physicist_pop_banker(const BQueue& q, const BPopOutD& outD,
                          std::uint64_t budget, std::string* detail = nullptr);
bool physicist_push_implicit(const IQueuePtr& q, const TotalValue& x,
                             const IQueueA& outD, std::uint64_t budget,
                             std::string* detail = nullptr);
bool physicist_pop_implicit(const IQueuePtr& q, const IPopOutD& outD,
                            std::uint64_t budget, std::string* detail = nullptr);

// Exhaustive sweeps; return a counterexample description on failure.
std::optional<std::string> physicist_sweep_banker(std::uint64_t max_size,
                                                  std::uint64_t budget,
                                                  bool parallel = true);
std::optional<std::string> physicist_sweep_implicit(std::size_t reach_ops,
                                                    std::uint64_t push_budget,
                                                    std::uint64_t pop_budget,
                                                    bool parallel = true);

// ---------------------------------------------------------------------------
// Amortization and persistence over all traces up to a length.

struct AmortizedReport {
  std::size_t traces_checked = 0;
  std::size_t violations = 0;
  std::string counterexample;  // first violating trace and its reason
  // Minimal budget-minus-cost over all checked traces.
  std::uint64_t worst_slack = std::numeric_limits<std::uint64_t>::max();
  bool ok() const { return violations == 0; }
};

AmortizedReport check_amortized(QueueImpl impl, std::size_t max_len,
                                const QueueBudgets& budgets,
                                bool parallel = true,
                                bool check_intervals = true,
                                std::size_t max_traces = std::size_t{1} << 21);

// Single-trace check used by the CLI on trace files.
std::optional<std::string> check_trace(QueueImpl impl, const Trace& t,
                                       const QueueBudgets& budgets,
                                       bool check_intervals = true);

}  // namespace lazycost
