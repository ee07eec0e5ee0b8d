#include "lazycost/trace.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "lazycost/clairvoyant.hpp"
#include "lazycost/enumerate.hpp"
#include "lazycost/parallel.hpp"

namespace lazycost {

namespace {

const ApproxValue kBot = ApproxValue::bot();
ApproxValue th(const ApproxValue& a) { return ApproxValue::thunk(a); }

}  // namespace

// ---------------------------------------------------------------------------
// Trace parsing, printing, enumeration, budgets

Trace parse_trace(const std::string& text) {
  Trace t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;  // blank line
    if (word[0] == '#') continue;
    Event e;
    auto read_index = [&](Event& ev) {
      std::string at;
      if (!(ls >> at) || at.size() < 2 || at[0] != '@')
        throw TraceError("line " + std::to_string(lineno) +
                         ": expected @INDEX");
      ev.args.push_back(std::stoull(at.substr(1)));
    };
    if (word == "empty") {
      e.op = OpKind::Empty;
    } else if (word == "push") {
      e.op = OpKind::Push;
      if (!(ls >> e.value))
        throw TraceError("line " + std::to_string(lineno) +
                         ": push needs a value");
      read_index(e);
    } else if (word == "pop") {
      e.op = OpKind::Pop;
      read_index(e);
    } else {
      throw TraceError("line " + std::to_string(lineno) + ": unknown op `" +
                       word + "`");
    }
    t.push_back(std::move(e));
  }
  return t;
}

std::string print_trace(const Trace& t) {
  std::ostringstream out;
  for (const auto& e : t) {
    switch (e.op) {
      case OpKind::Empty:
        out << "empty\n";
        break;
      case OpKind::Push:
        out << "push " << e.value << " @" << e.args.at(0) << "\n";
        break;
      case OpKind::Pop:
        out << "pop @" << e.args.at(0) << "\n";
        break;
    }
  }
  return out.str();
}

std::vector<Trace> enumerate_traces(std::size_t max_len,
                                    const std::vector<std::uint64_t>& alphabet) {
  // At each position k an event has 1 + (|alphabet|+1)*k well-indexed forms,
  // so the count grows factorially; callers cap via check_amortized.
  std::vector<Trace> out = {Trace{}};
  std::vector<Trace> level = {Trace{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Trace> next;
    for (const auto& t : level) {
      std::size_t k = t.size();
      auto extend = [&](Event e) {
        Trace t2 = t;
        t2.push_back(std::move(e));
        next.push_back(std::move(t2));
      };
      extend(Event{OpKind::Empty, 0, {}});
      for (std::size_t i = 0; i < k; ++i) {
        for (auto v : alphabet) extend(Event{OpKind::Push, v, {i}});
        extend(Event{OpKind::Pop, 0, {i}});
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::uint64_t budget_trace(const Trace& t, const QueueBudgets& b) {
  std::uint64_t sum = 0;
  for (const auto& e : t) {
    switch (e.op) {
      case OpKind::Empty:
        sum += b.empty;
        break;
      case OpKind::Push:
        sum += b.push;
        break;
      case OpKind::Pop:
        sum += b.pop;
        break;
    }
  }
  return sum;
}

static std::uint64_t op_budget(OpKind op, const QueueBudgets& b) {
  switch (op) {
    case OpKind::Empty:
      return b.empty;
    case OpKind::Push:
      return b.push;
    case OpKind::Pop:
      return b.pop;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Implementation traits

namespace {

struct BankerT {
  using Value = std::optional<BQueue>;
  using QA = BQueueA;
  using PopD = BPopOutD;
  using PopRes = BPopResA;

  static Value empty() { return BQueue{0, {}, 0, {}}; }
  static bool has(const Value& v) { return v.has_value(); }
  static Value push(const Value& v, std::uint64_t x) { return bpush(*v, x); }
  static Value pop(const Value& v) {
    auto p = bpop(*v);
    if (!p) return std::nullopt;
    return p->second;
  }
  static QA least_record(const Value& v) {
    return least_bqueueA(v ? *v : *empty());
  }
  static PopD least_popD(const Value& v) {
    if (bpop(*v)) return PopD{true, kBot, std::nullopt};
    return PopD{false, kBot, std::nullopt};
  }
  static QA emptyA() { return exact_bqueueA(*empty()); }
  static Tick<QA> push_demand(const Value& v, std::uint64_t x, const QA& outD) {
    auto r = bpushD(*v, x, outD);
    return {r.cost, r.value.queueD};
  }
  static Tick<QA> pop_demand(const Value& v, const PopD& outD) {
    return bpopD(*v, outD);
  }
  static void join_queue_into(QA& cell, const QA& qd) { cell = join(cell, qd); }
  static void join_queue_into_pop(PopD& cell, const QA& qd) {
    cell.qD = cell.qD ? join(*cell.qD, qd) : qd;
  }
  static std::optional<QA> pop_cell_queue(const PopD& cell) { return cell.qD; }
  static std::uint64_t pop_out_potential(const PopD& cell) {
    return cell.qD ? potential_banker(*cell.qD) : 0;
  }
  static std::uint64_t phi(const QA& a) { return potential_banker(a); }
  static std::vector<std::pair<std::uint64_t, QA>> pushA_(const QA& q,
                                                          std::uint64_t x) {
    return bpushA(q, th(ApproxValue::nat(x)));
  }
  static std::vector<std::pair<std::uint64_t, PopRes>> popA_(const QA& q) {
    return bpopA(q);
  }
  static std::optional<QA> popres_queue(const PopRes& p) { return p.qD; }
  static std::string show(const QA& a) { return a.to_string(); }
};

struct ImplicitT {
  using Value = IQueuePtr;  // null = absent
  using QA = IQueueAPtr;    // engaged record
  using PopD = IPopOutD;
  using PopRes = IPopResA;

  static Value empty() { return iempty(); }
  static bool has(const Value& v) { return v != nullptr; }
  static Value push(const Value& v, std::uint64_t x) {
    return ipush(v, TotalValue::nat(x));
  }
  static Value pop(const Value& v) {
    auto p = ipop(v);
    return p ? p->second : nullptr;
  }
  static QA least_record(const Value& v) {
    return least_iqueueA(v ? v : empty());
  }
  static PopD least_popD(const Value& v) {
    if (ipop(v)) return PopD{true, false, kBot, nullptr};
    return PopD{false, false, kBot, nullptr};
  }
  static QA emptyA() { return inilA(); }
  static Tick<QA> push_demand(const Value& v, std::uint64_t x, const QA& outD) {
    auto r = ipushD(v, TotalValue::nat(x), *outD);
    return {r.cost, r.value.queueD ? r.value.queueD : least_iqueueA(v)};
  }
  static Tick<QA> pop_demand(const Value& v, const PopD& outD) {
    auto r = ipopD(v, outD);
    return {r.cost, r.value};
  }
  static void join_queue_into(QA& cell, const QA& qd) {
    cell = join_i(cell, qd);
  }
  static void join_queue_into_pop(PopD& cell, const QA& qd) {
    cell.pair_forced = true;
    cell.qD = cell.qD ? join_i(cell.qD, qd) : qd;
  }
  static std::optional<QA> pop_cell_queue(const PopD& cell) {
    if (cell.qD) return cell.qD;
    return std::nullopt;
  }
  static std::uint64_t pop_out_potential(const PopD& cell) {
    return potential_implicit_t(cell.qD);
  }
  static std::uint64_t phi(const QA& a) { return potential_implicit_t(a); }
  static std::vector<std::pair<std::uint64_t, QA>> pushA_(const QA& q,
                                                          std::uint64_t x) {
    return ipushA(q, th(ApproxValue::nat(x)));
  }
  static std::vector<std::pair<std::uint64_t, PopRes>> popA_(const QA& q) {
    return ipopA(q);
  }
  static std::optional<QA> popres_queue(const PopRes& p) {
    if (p.qD) return p.qD;
    return std::nullopt;
  }
  static std::string show(const QA& a) { return print_iqueueA(a); }
};

// ---------------------------------------------------------------------------
// Pure interpretation

template <class T>
struct Eval {
  std::vector<typename T::Value> values;
  std::vector<bool> ran;
};

template <class T>
Eval<T> eval_trace_impl(const Trace& t, bool strict) {
  Eval<T> out;
  out.values.resize(t.size());
  out.ran.assign(t.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Event& e = t[i];
    if (e.op == OpKind::Empty) {
      out.values[i] = T::empty();
      out.ran[i] = true;
      continue;
    }
    std::size_t a = e.args.empty() ? t.size() : e.args[0];
    bool resolvable = a < i && T::has(out.values[a]);
    if (!resolvable) {
      if (strict)
        throw TraceError("event " + std::to_string(i) +
                         " refers to a version that does not exist");
      continue;  // skipped
    }
    out.ran[i] = true;
    out.values[i] = e.op == OpKind::Push ? T::push(out.values[a], e.value)
                                         : T::pop(out.values[a]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clairvoyant execution (minimal cost via branch and bound)

template <class T>
struct ExecResult {
  bool is_pop = false;
  bool present = false;
  typename T::QA q;
  typename T::PopRes pop;
};

template <class T>
class Exec {
 public:
  Exec(const Trace& t, const Eval<T>& ev) : t_(t), ev_(ev) {
    results_.resize(t.size());
  }

  std::uint64_t min_cost() {
    best_ = std::numeric_limits<std::uint64_t>::max();
    collect_all_ = false;
    dfs(0, 0);
    if (best_ == std::numeric_limits<std::uint64_t>::max())
      throw TraceError("no clairvoyant execution completes the trace");
    return best_;
  }

  std::vector<std::uint64_t> all_costs(std::size_t cap) {
    best_ = std::numeric_limits<std::uint64_t>::max();
    collect_all_ = true;
    cap_ = cap;
    costs_.clear();
    dfs(0, 0);
    std::sort(costs_.begin(), costs_.end());
    costs_.erase(std::unique(costs_.begin(), costs_.end()), costs_.end());
    return costs_;
  }

 private:
  void dfs(std::size_t i, std::uint64_t cost) {
    if (!collect_all_ && cost >= best_) return;
    if (i == t_.size()) {
      if (collect_all_) {
        costs_.push_back(cost);
        if (costs_.size() > cap_)
          throw ResourceLimitError("trace execution branch cap exceeded");
      }
      best_ = std::min(best_, cost);
      return;
    }
    const Event& e = t_[i];
    if (!ev_.ran[i]) {
      results_[i].present = false;
      dfs(i + 1, cost);
      return;
    }
    if (e.op == OpKind::Empty) {
      results_[i] = {false, true, T::emptyA(), {}};
      dfs(i + 1, cost);
      return;
    }
    // Resolve the referenced queue approximation; a skipped thunk is stuck.
    const ExecResult<T>& src = results_[e.args[0]];
    std::optional<typename T::QA> in;
    if (src.present)
      in = src.is_pop ? T::popres_queue(src.pop) : std::optional(src.q);
    if (!in) return;
    if (e.op == OpKind::Push) {
      auto branches = T::pushA_(*in, e.value);
      std::sort(branches.begin(), branches.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [c, rec] : branches) {
        results_[i] = {false, true, rec, {}};
        dfs(i + 1, cost + c);
      }
    } else {
      auto branches = T::popA_(*in);
      std::sort(branches.begin(), branches.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [c, pr] : branches) {
        results_[i] = {true, true, {}, pr};
        dfs(i + 1, cost + c);
      }
    }
  }

  const Trace& t_;
  const Eval<T>& ev_;
  std::vector<ExecResult<T>> results_;
  std::uint64_t best_ = 0;
  bool collect_all_ = false;
  std::size_t cap_ = 0;
  std::vector<std::uint64_t> costs_;
};

// ---------------------------------------------------------------------------
// Backward demand pass

template <class T>
struct Cell {
  bool is_pop = false;
  typename T::QA q;
  typename T::PopD pop;
};

template <class T>
struct DemandPass {
  std::uint64_t total_cost = 0;
  std::vector<std::uint64_t> event_costs;
  std::vector<std::vector<typename T::QA>> rows;
  // Per-event physicist inequality data: (input potential + cost, budget-free
  // right side potential), evaluated against a budget by the caller.
  std::vector<std::uint64_t> phi_in_plus_cost;
  std::vector<std::uint64_t> phi_out;
};

template <class T>
typename T::QA cell_queue_demand(const Cell<T>& c,
                                 const typename T::Value& value) {
  if (!c.is_pop) return c.q;
  auto q = T::pop_cell_queue(c.pop);
  if (q) return *q;
  return T::least_record(value);
}

template <class T>
DemandPass<T> demand_trace_impl(const Trace& t, const Eval<T>& ev) {
  DemandPass<T> out;
  std::size_t n = t.size();
  std::vector<Cell<T>> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!ev.ran[i]) {
      cells[i] = {false, T::least_record(T::empty()), {}};
      continue;
    }
    if (t[i].op == OpKind::Pop) {
      cells[i].is_pop = true;
      cells[i].pop = T::least_popD(ev.values[t[i].args[0]]);
    } else {
      cells[i].q = T::least_record(ev.values[i]);
    }
  }
  out.event_costs.assign(n, 0);
  out.phi_in_plus_cost.assign(n, 0);
  out.phi_out.assign(n, 0);
  out.rows.resize(n + 1);
  auto snapshot = [&] {
    std::vector<typename T::QA> row;
    row.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      row.push_back(cell_queue_demand<T>(cells[k], ev.values[k]));
    return row;
  };
  out.rows[n] = snapshot();
  for (std::size_t j = n; j-- > 0;) {
    const Event& e = t[j];
    if (ev.ran[j]) {
      if (e.op == OpKind::Empty) {
        out.phi_out[j] = T::phi(cells[j].q);
      } else {
        std::size_t a = e.args[0];
        Tick<typename T::QA> r;
        if (e.op == OpKind::Push) {
          r = T::push_demand(ev.values[a], e.value, cells[j].q);
          out.phi_out[j] = T::phi(cells[j].q);
        } else {
          r = T::pop_demand(ev.values[a], cells[j].pop);
          out.phi_out[j] = T::pop_out_potential(cells[j].pop);
        }
        out.event_costs[j] = r.cost;
        out.phi_in_plus_cost[j] = T::phi(r.value) + r.cost;
        if (cells[a].is_pop)
          T::join_queue_into_pop(cells[a].pop, r.value);
        else
          T::join_queue_into(cells[a].q, r.value);
      }
    }
    out.rows[j] = snapshot();
    out.total_cost += out.event_costs[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-trace check: budget, per-op physicist inequalities, interval inequality

template <class T>
std::optional<std::string> check_trace_impl(const Trace& t,
                                            const QueueBudgets& budgets,
                                            bool check_intervals,
                                            std::int64_t* slack_out) {
  Eval<T> ev = eval_trace_impl<T>(t, false);
  std::uint64_t cost = Exec<T>(t, ev).min_cost();
  std::uint64_t budget = budget_trace(t, budgets);
  if (slack_out)
    *slack_out = static_cast<std::int64_t>(budget) -
                 static_cast<std::int64_t>(cost);
  if (cost > budget)
    return "trace cost " + std::to_string(cost) + " exceeds budget " +
           std::to_string(budget) + ":\n" + print_trace(t);
  if (!check_intervals) return std::nullopt;

  DemandPass<T> dp = demand_trace_impl<T>(t, ev);
  std::size_t n = t.size();
  // Per-operation reverse physicist inequality.
  for (std::size_t j = 0; j < n; ++j) {
    if (!ev.ran[j] || t[j].op == OpKind::Empty) continue;
    std::uint64_t rhs = op_budget(t[j].op, budgets) + dp.phi_out[j];
    if (dp.phi_in_plus_cost[j] > rhs)
      return "operation " + std::to_string(j) +
             " violates the physicist inequality: " +
             std::to_string(dp.phi_in_plus_cost[j]) + " > " +
             std::to_string(rhs) + ":\n" + print_trace(t);
  }
  // Interval inequality over the demand table.
  std::vector<std::int64_t> row_phi(n + 1, 0);
  for (std::size_t j = 0; j <= n; ++j) {
    std::int64_t sum = 0;
    std::size_t upto = std::min(j, n == 0 ? 0 : n - 1);
    for (std::size_t k = 0; k <= upto && k < n; ++k)
      sum += static_cast<std::int64_t>(T::phi(dp.rows[j][k]));
    row_phi[j] = sum;
  }
  std::vector<std::int64_t> cost_prefix(n + 1, 0), budget_prefix(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    cost_prefix[k + 1] =
        cost_prefix[k] + static_cast<std::int64_t>(dp.event_costs[k]);
    budget_prefix[k + 1] =
        budget_prefix[k] + static_cast<std::int64_t>(op_budget(t[k].op, budgets));
  }
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      std::int64_t lhs = cost_prefix[j] - cost_prefix[i];
      std::int64_t rhs = row_phi[j] - row_phi[i] + budget_prefix[j] -
                         budget_prefix[i];
      if (lhs > rhs)
        return "interval [" + std::to_string(i) + "," + std::to_string(j) +
               ") violates the telescoped inequality: " + std::to_string(lhs) +
               " > " + std::to_string(rhs) + ":\n" + print_trace(t);
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public wrappers

BankerTraceEval eval_trace_banker(const Trace& t, bool strict) {
  auto ev = eval_trace_impl<BankerT>(t, strict);
  return BankerTraceEval{std::move(ev.values)};
}

ImplicitTraceEval eval_trace_implicit(const Trace& t, bool strict) {
  auto ev = eval_trace_impl<ImplicitT>(t, strict);
  return ImplicitTraceEval{std::move(ev.values)};
}

std::uint64_t cost_of_exec(QueueImpl impl, const Trace& t) {
  if (impl == QueueImpl::Banker) {
    auto ev = eval_trace_impl<BankerT>(t, false);
    return Exec<BankerT>(t, ev).min_cost();
  }
  auto ev = eval_trace_impl<ImplicitT>(t, false);
  return Exec<ImplicitT>(t, ev).min_cost();
}

std::vector<std::uint64_t> exec_trace_costs(QueueImpl impl, const Trace& t,
                                            std::size_t cap) {
  if (impl == QueueImpl::Banker) {
    auto ev = eval_trace_impl<BankerT>(t, false);
    return Exec<BankerT>(t, ev).all_costs(cap);
  }
  auto ev = eval_trace_impl<ImplicitT>(t, false);
  return Exec<ImplicitT>(t, ev).all_costs(cap);
}

BankerDemandTable demand_trace_banker(const Trace& t) {
  auto ev = eval_trace_impl<BankerT>(t, false);
  auto dp = demand_trace_impl<BankerT>(t, ev);
  return BankerDemandTable{dp.total_cost, std::move(dp.event_costs),
                           std::move(dp.rows)};
}

ImplicitDemandTable demand_trace_implicit(const Trace& t) {
  auto ev = eval_trace_impl<ImplicitT>(t, false);
  auto dp = demand_trace_impl<ImplicitT>(t, ev);
  return ImplicitDemandTable{dp.total_cost, std::move(dp.event_costs),
                             std::move(dp.rows)};
}

bool physicist_push_banker(const BQueue& q, std::uint64_t x,
                           const BQueueA& outD, std::uint64_t budget,
                           std::string* detail) {
  auto r = bpushD(q, x, outD);
  std::uint64_t lhs = potential_banker(r.value.queueD) + r.cost;
  std::uint64_t rhs = budget + potential_banker(outD);
  if (lhs <= rhs) return true;
  if (detail)
    *detail = "pushD on " + print_bqueue(q) + " x=" + std::to_string(x) +
              " outD=" + outD.to_string() + ": " + std::to_string(lhs) + " > " +
              std::to_string(rhs);
  return false;
}

bool physicist_pop_banker(const BQueue& q, const BPopOutD& outD,
                          std::uint64_t budget, std::string* detail) {
  auto r = bpopD(q, outD);
  std::uint64_t d = outD.qD ? potential_banker(*outD.qD) : 0;
  std::uint64_t lhs = potential_banker(r.value) + r.cost;
  std::uint64_t rhs = budget + d;
  if (lhs <= rhs) return true;
  if (detail)
    *detail = "popD on " + print_bqueue(q) + ": " + std::to_string(lhs) +
              " > " + std::to_string(rhs);
  return false;
}

bool physicist_push_implicit(const IQueuePtr& q, const TotalValue& x,
                             const IQueueA& outD, std::uint64_t budget,
                             std::string* detail) {
  auto r = ipushD(q, x, outD);
  std::uint64_t lhs = potential_implicit_t(r.value.queueD) + r.cost;
  std::uint64_t rhs = budget + potential_implicit(outD);
  if (lhs <= rhs) return true;
  if (detail)
    *detail = "pushD on " + print_iqueue(q) + ": " + std::to_string(lhs) +
              " > " + std::to_string(rhs);
  return false;
}

bool physicist_pop_implicit(const IQueuePtr& q, const IPopOutD& outD,
                            std::uint64_t budget, std::string* detail) {
  auto r = ipopD(q, outD);
  std::uint64_t d =
      outD.is_some && outD.pair_forced ? potential_implicit_t(outD.qD) : 0;
  std::uint64_t lhs = potential_implicit_t(r.value) + r.cost;
  std::uint64_t rhs = budget + d;
  if (lhs <= rhs) return true;
  if (detail)
    *detail = "popD on " + print_iqueue(q) + ": " + std::to_string(lhs) +
              " > " + std::to_string(rhs);
  return false;
}

std::optional<std::string> physicist_sweep_banker(std::uint64_t max_size,
                                                  std::uint64_t budget,
                                                  bool parallel) {
  auto queues = enumerate_wf_bqueues(max_size);
  std::vector<std::string> failures(queues.size());
  parallel_for(queues.size(), parallel, [&](std::size_t qi) {
    const BQueue& q = queues[qi];
    std::string detail;
    // push
    BQueue pushed = bpush(q, 99);
    for (const auto& outD : approximations_of_bqueue(pushed)) {
      if (!physicist_push_banker(q, 99, outD, budget, &detail)) {
        failures[qi] = detail;
        return;
      }
    }
    // pop
    auto p = bpop(q);
    if (!p) {
      BPopOutD noneD{false, kBot, std::nullopt};
      if (!physicist_pop_banker(q, noneD, budget, &detail)) {
        failures[qi] = detail;
        return;
      }
      return;
    }
    std::vector<ApproxValue> elems = {kBot, th(ApproxValue::nat(p->first))};
    std::vector<TBQueueA> qds = {std::nullopt};
    for (const auto& qa : approximations_of_bqueue(p->second)) qds.push_back(qa);
    for (const auto& x : elems) {
      for (const auto& qd : qds) {
        if (!physicist_pop_banker(q, BPopOutD{true, x, qd}, budget, &detail)) {
          failures[qi] = detail;
          return;
        }
      }
    }
  });
  for (auto& f : failures)
    if (!f.empty()) return f;
  return std::nullopt;
}

std::optional<std::string> physicist_sweep_implicit(std::size_t reach_ops,
                                                    std::uint64_t push_budget,
                                                    std::uint64_t pop_budget,
                                                    bool parallel) {
  auto queues = enumerate_reachable_iqueues(reach_ops);
  std::vector<std::string> failures(queues.size());
  parallel_for(queues.size(), parallel, [&](std::size_t qi) {
    const IQueuePtr& q = queues[qi];
    std::string detail;
    TotalValue x = TotalValue::nat(99);
    IQueuePtr pushed = ipush(q, x);
    for (const auto& outD : approximations_of_iqueue(pushed)) {
      if (!physicist_push_implicit(q, x, *outD, push_budget, &detail)) {
        failures[qi] = detail;
        return;
      }
    }
    auto p = ipop(q);
    if (!p) {
      if (!physicist_pop_implicit(q, IPopOutD{false, false, kBot, nullptr},
                                  pop_budget, &detail))
        failures[qi] = detail;
      return;
    }
    std::vector<ApproxValue> elems = {kBot};
    for (const auto& a : approximations_of_data(p->first))
      elems.push_back(th(a));
    std::vector<IQueueAPtr> qds = {nullptr};
    for (const auto& qa : approximations_of_iqueue(p->second)) qds.push_back(qa);
    // Some(Bot): the pair thunk itself undemanded.
    if (!physicist_pop_implicit(q, IPopOutD{true, false, kBot, nullptr},
                                pop_budget, &detail)) {
      failures[qi] = detail;
      return;
    }
    for (const auto& x2 : elems) {
      for (const auto& qd : qds) {
        if (!physicist_pop_implicit(q, IPopOutD{true, true, x2, qd}, pop_budget,
                                    &detail)) {
          failures[qi] = detail;
          return;
        }
      }
    }
  });
  for (auto& f : failures)
    if (!f.empty()) return f;
  return std::nullopt;
}

AmortizedReport check_amortized(QueueImpl impl, std::size_t max_len,
                                const QueueBudgets& budgets, bool parallel,
                                bool check_intervals, std::size_t max_traces) {
  std::size_t level = 1, total = 1;
  for (std::size_t k = 0; k < max_len; ++k) {
    level *= 1 + 3 * k;
    total += level;
    if (total > max_traces)
      throw ResourceLimitError("trace enumeration would exceed the cap of " +
                               std::to_string(max_traces) + " traces");
  }
  std::vector<Trace> traces = enumerate_traces(max_len, {0, 1});
  AmortizedReport report;
  report.traces_checked = traces.size();
  std::vector<std::string> failures(traces.size());
  std::vector<std::int64_t> slacks(traces.size(),
                                   std::numeric_limits<std::int64_t>::max());
  parallel_for(traces.size(), parallel, [&](std::size_t i) {
    std::optional<std::string> bad =
        impl == QueueImpl::Banker
            ? check_trace_impl<BankerT>(traces[i], budgets, check_intervals,
                                        &slacks[i])
            : check_trace_impl<ImplicitT>(traces[i], budgets, check_intervals,
                                          &slacks[i]);
    if (bad) failures[i] = *bad;
  });
  std::int64_t worst = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (!failures[i].empty()) {
      ++report.violations;
      if (report.counterexample.empty()) report.counterexample = failures[i];
    }
    worst = std::min(worst, slacks[i]);
  }
  report.worst_slack = worst < 0 ? 0 : static_cast<std::uint64_t>(worst);
  return report;
}

std::optional<std::string> check_trace(QueueImpl impl, const Trace& t,
                                       const QueueBudgets& budgets,
                                       bool check_intervals) {
  std::int64_t slack = 0;
  return impl == QueueImpl::Banker
             ? check_trace_impl<BankerT>(t, budgets, check_intervals, &slack)
             : check_trace_impl<ImplicitT>(t, budgets, check_intervals, &slack);
}

}  // namespace lazycost
