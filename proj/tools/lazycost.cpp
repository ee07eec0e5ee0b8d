// lazycost: demand-semantics cost analysis for a lazy first-order calculus,
// with clairvoyant cross-validation, a lazy list library, and amortized
// queue checks over persistent-usage traces.

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lazycost/clairvoyant.hpp"
#include "lazycost/corpus.hpp"
#include "lazycost/demand.hpp"
#include "lazycost/eval.hpp"
#include "lazycost/lazy_stdlib.hpp"
#include "lazycost/parallel.hpp"
#include "lazycost/queues.hpp"
#include "lazycost/term.hpp"
#include "lazycost/trace.hpp"
#include "lazycost/xcheck.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace lazycost;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

json report(const std::string& command) {
  json j;
  j["tool_version"] = kVersion;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

void emit(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // A compact human-readable rendering of the result object.
  std::cout << j["result"].dump(2) << "\n";
  if (j.contains("counterexample"))
    std::cout << "counterexample: " << j["counterexample"].dump(2) << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Program load_program(const std::string& path) {
  Program p = parse_program(slurp(path));
  p.name = path;
  return p;
}

// ---------------------------------------------------------------------------
// Queue demand literals (CLI-side serialization).
// banker queue demand:  (queue NF FRONTD NB BACKD)    with demand literals
// implicit queue demand: _ | nilA | (deep FD MD RD)
//   FD ::= _ | (fone D) | (ftwo D D)     RD ::= _ | rzero | (rone D)
// pop demands: none | (some D QD) | (some _)

struct QDReader {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eof() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    if (pos >= s.size()) throw std::runtime_error("bad queue demand literal");
    return s[pos];
  }
  void expect(char c) {
    if (peek() != c)
      throw std::runtime_error(std::string("expected '") + c +
                               "' in queue demand");
    ++pos;
  }
  std::string word() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
            s[pos] == '-'))
      ++pos;
    return s.substr(start, pos - start);
  }
  // Balanced chunk for an embedded demand literal.
  std::string chunk() {
    skip();
    std::size_t start = pos;
    if (s[pos] == '(' || s[pos] == '[') {
      int depth = 0;
      do {
        if (s[pos] == '(' || s[pos] == '[') ++depth;
        if (s[pos] == ')' || s[pos] == ']') --depth;
        ++pos;
      } while (pos < s.size() && depth > 0);
    } else {
      while (pos < s.size() &&
             !std::isspace(static_cast<unsigned char>(s[pos])) &&
             s[pos] != ')')
        ++pos;
    }
    return s.substr(start, pos - start);
  }
};

BQueueA parse_bqueue_demand(QDReader& r) {
  r.expect('(');
  if (r.word() != "queue")
    throw std::runtime_error("banker demand must be (queue NF FD NB BD)");
  BQueueA out;
  out.nfrontA = std::stoull(r.word());
  out.frontA = parse_demand_literal(r.chunk());
  out.nbackA = std::stoull(r.word());
  out.backA = parse_demand_literal(r.chunk());
  r.expect(')');
  return out;
}

IQueueAPtr parse_iqueue_demand(QDReader& r) {
  if (r.peek() == '_') {
    ++r.pos;
    return nullptr;
  }
  if (r.peek() != '(') {
    std::string w = r.word();
    if (w == "nilA" || w == "nil") return inilA();
    throw std::runtime_error("bad implicit queue demand token: " + w);
  }
  r.expect('(');
  if (r.word() != "deep")
    throw std::runtime_error("implicit demand must be (deep FD MD RD)");
  std::optional<IFrontA> f;
  if (r.peek() == '_') {
    ++r.pos;
  } else {
    r.expect('(');
    std::string fw = r.word();
    if (fw == "fone") {
      f = IFrontA{false, parse_demand_literal(r.chunk()), ApproxValue::bot()};
    } else if (fw == "ftwo") {
      ApproxValue a = parse_demand_literal(r.chunk());
      ApproxValue b = parse_demand_literal(r.chunk());
      f = IFrontA{true, a, b};
    } else {
      throw std::runtime_error("bad front demand: " + fw);
    }
    r.expect(')');
  }
  IQueueAPtr m = parse_iqueue_demand(r);
  std::optional<IRearA> rr;
  if (r.peek() == '_') {
    ++r.pos;
  } else if (r.peek() == '(') {
    r.expect('(');
    std::string rw = r.word();
    if (rw != "rone") throw std::runtime_error("bad rear demand: " + rw);
    rr = IRearA{true, parse_demand_literal(r.chunk())};
    r.expect(')');
  } else {
    std::string rw = r.word();
    if (rw != "rzero" && rw != "rzeroA")
      throw std::runtime_error("bad rear demand: " + rw);
    rr = IRearA{false, ApproxValue::bot()};
  }
  r.expect(')');
  return ideepA(std::move(f), std::move(m), std::move(rr));
}

std::string show_bqueue_demand(const BQueueA& a) {
  return "(queue " + std::to_string(a.nfrontA) + " " + a.frontA.to_string() +
         " " + std::to_string(a.nbackA) + " " + a.backA.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Subcommand bodies

int cmd_check(const std::string& file, bool as_json) {
  Program p = load_program(file);
  json j = report("check");
  json params = json::object();
  for (const auto& [n, ty] : p.params) params[n] = print_ty(ty);
  j["result"] = {{"type", print_ty(p.info.root)}, {"params", params}};
  emit(j, as_json);
  return kExitPass;
}

int cmd_eval(const std::string& file, const std::string& env_text,
             bool as_json) {
  Program p = load_program(file);
  TotalEnv env = parse_env_bindings(env_text);
  TotalValue v = eval_program(p, env);
  json j = report("eval");
  j["result"] = {{"value", v.to_string()}};
  emit(j, as_json);
  return kExitPass;
}

int cmd_demand(const std::string& file, const std::string& env_text,
               const std::string& out_text, bool as_json) {
  Program p = load_program(file);
  TotalEnv env = parse_env_bindings(env_text);
  ApproxValue out = parse_demand_literal(out_text);
  Tick<DemandEnv> r = demand(p, env, out);
  json j = report("demand");
  json demands = json::object();
  for (const auto& [n, d] : r.value) demands[n] = d.to_string();
  j["result"] = {{"cost", r.cost}, {"demands", demands}};
  emit(j, as_json);
  return kExitPass;
}

int cmd_clairvoyant(const std::string& file, const std::string& env_text,
                    const std::string& out_text, std::size_t max_branches,
                    bool as_json) {
  Program p = load_program(file);
  DemandEnv env = parse_demand_bindings(env_text);
  CvLimits lim;
  lim.max_branches = max_branches;
  json j = report("clairvoyant");
  if (out_text.empty()) {
    CvSet s = cv_enumerate(p, env, lim);
    json branches = json::array();
    for (const auto& [n, a] : s)
      branches.push_back({{"cost", n}, {"result", a.to_string()}});
    j["result"] = {{"branches", branches}};
  } else {
    ApproxValue out = parse_demand_literal(out_text);
    auto best = cv_min_matching(p, env, out, lim);
    if (best) {
      j["result"] = {{"cost", best->first},
                     {"result", best->second.to_string()}};
    } else {
      j["result"] = {{"match", nullptr}};
    }
  }
  emit(j, as_json);
  return kExitPass;
}

int cmd_xcheck(const std::string& file, std::size_t max_len, bool serial,
               bool as_json) {
  Program p = file.empty() ? Program{} : load_program(file);
  std::vector<Program> programs;
  if (file.empty())
    programs = corpus_programs();
  else
    programs.push_back(std::move(p));

  XcheckOptions opt;
  opt.bounds.max_list_len = max_len;
  opt.parallel = !serial;
  json j = report("xcheck");
  json results = json::array();
  bool ok = true;
  json counterexample;
  for (const auto& prog : programs) {
    XcheckReport r = xcheck_program(prog, opt);
    results.push_back({{"program", prog.name},
                       {"envs", r.envs},
                       {"demands", r.demands},
                       {"branches", r.branches},
                       {"violations", r.violations.size()}});
    if (!r.ok() && ok) {
      ok = false;
      counterexample = {{"program", prog.name},
                        {"property", r.violations.front().property},
                        {"detail", r.violations.front().detail}};
    }
  }
  j["result"] = {{"pass", ok}, {"programs", results}};
  if (!ok) j["counterexample"] = counterexample;
  emit(j, as_json);
  return ok ? kExitPass : kExitViolation;
}

int cmd_stdlib(const std::string& fn, const std::string& args_text,
               const std::string& out_text, bool as_json) {
  TotalEnv args = parse_env_bindings(args_text);
  auto nat_arg = [&](const char* name, std::uint64_t dflt,
                     bool required) -> std::uint64_t {
    auto it = args.find(name);
    if (it == args.end()) {
      if (required)
        throw std::runtime_error(std::string("missing argument ") + name);
      return dflt;
    }
    return it->second.nat_value();
  };
  auto list_arg = [&](const char* name) {
    auto it = args.find(name);
    if (it == args.end())
      throw std::runtime_error(std::string("missing argument ") + name);
    NatList out;
    TotalValue cur = it->second;
    while (cur.kind() == TotalValue::Kind::Cons) {
      out.push_back(cur.first().nat_value());
      cur = cur.second();
    }
    return out;
  };
  ApproxValue outD = parse_demand_literal(out_text);
  NatList xs = list_arg("xs");
  Tick<ApproxValue> r;
  if (fn == "take") {
    r = takeD(nat_arg("n", 0, true), xs, outD);
  } else if (fn == "insert") {
    r = insertD(nat_arg("x", 0, true), xs, outD);
  } else if (fn == "isort") {
    r = insertion_sortD(xs, outD);
  } else if (fn == "select") {
    r = selectD(nat_arg("x", 0, true), xs, outD);
  } else if (fn == "ssort") {
    r = selection_sortD(xs, nat_arg("fuel", xs.size(), false), outD);
  } else if (fn == "take-isort") {
    r = take_insertion_sortD(nat_arg("n", 0, true), xs, outD);
  } else if (fn == "take-ssort") {
    r = take_selection_sortD(nat_arg("n", 0, true), xs, outD);
  } else {
    throw CLI::ValidationError("--fn", "unknown function " + fn);
  }
  json j = report("stdlib-cost");
  j["result"] = {{"fn", fn},
                 {"cost", r.cost},
                 {"input_demand", r.value.to_string()}};
  emit(j, as_json);
  return kExitPass;
}

int cmd_queue(const std::string& impl, const std::string& op,
              std::uint64_t value, const std::string& state_file,
              const std::string& out_text, bool as_json) {
  json j = report("queue");
  std::string state = slurp(state_file);
  std::string op_name = op;
  std::uint64_t x = value;
  if (op.rfind("push", 0) == 0 && op.size() > 4) {
    op_name = "push";
    x = std::stoull(op.substr(4));
  }
  if (impl == "banker") {
    BQueue q = parse_bqueue(state);
    if (!well_formed(q)) throw std::runtime_error("queue state not well formed");
    if (op_name == "push") {
      QDReader r{out_text};
      BQueueA outD = parse_bqueue_demand(r);
      if (!is_approx(outD, bpush(q, x)))
        throw std::runtime_error("output demand does not approximate push");
      auto d = bpushD(q, x, outD);
      j["result"] = {{"cost", d.cost},
                     {"queue_demand", show_bqueue_demand(d.value.queueD)},
                     {"elem_demand", d.value.elemD.to_string()},
                     {"potential_in", potential_banker(d.value.queueD)},
                     {"potential_out", potential_banker(outD)}};
    } else if (op_name == "pop") {
      BPopOutD outD;
      QDReader r{out_text};
      if (r.peek() == 'n') {
        outD.is_some = false;
      } else {
        r.expect('(');
        if (r.word() != "some")
          throw std::runtime_error("pop demand must be none or (some XD QD)");
        outD.is_some = true;
        outD.xD = parse_demand_literal(r.chunk());
        if (r.peek() == '_') {
          ++r.pos;
        } else {
          outD.qD = parse_bqueue_demand(r);
        }
        r.expect(')');
      }
      auto p = bpop(q);
      if (outD.is_some != p.has_value() ||
          (p && (!is_approx(outD.xD, TotalValue::nat(p->first)) ||
                 (outD.qD && !is_approx(*outD.qD, p->second)))))
        throw std::runtime_error("output demand does not approximate pop");
      auto d = bpopD(q, outD);
      j["result"] = {{"cost", d.cost},
                     {"queue_demand", show_bqueue_demand(d.value)},
                     {"potential_in", potential_banker(d.value)},
                     {"potential_out",
                      outD.qD ? potential_banker(*outD.qD) : 0}};
    } else {
      throw CLI::ValidationError("--op", "must be push or pop");
    }
  } else if (impl == "implicit") {
    IQueuePtr q = parse_iqueue(state);
    if (op_name == "push") {
      QDReader r{out_text};
      IQueueAPtr outD = parse_iqueue_demand(r);
      if (!outD) throw std::runtime_error("push demand cannot be _");
      if (!is_approx(outD, ipush(q, TotalValue::nat(x))))
        throw std::runtime_error("output demand does not approximate push");
      auto d = ipushD(q, TotalValue::nat(x), *outD);
      j["result"] = {{"cost", d.cost},
                     {"queue_demand", print_iqueueA(d.value.queueD)},
                     {"elem_demand", d.value.elemD.to_string()},
                     {"potential_in", potential_implicit_t(d.value.queueD)},
                     {"potential_out", potential_implicit(*outD)}};
    } else if (op_name == "pop") {
      IPopOutD outD;
      QDReader r{out_text};
      if (r.peek() == 'n') {
        outD.is_some = false;
      } else {
        r.expect('(');
        if (r.word() != "some")
          throw std::runtime_error("pop demand must be none or (some ...)");
        outD.is_some = true;
        if (r.peek() == '_') {
          ++r.pos;  // Some(Bot): pair thunk undemanded
        } else {
          outD.pair_forced = true;
          outD.xD = parse_demand_literal(r.chunk());
          outD.qD = parse_iqueue_demand(r);
        }
        r.expect(')');
      }
      auto p = ipop(q);
      if (outD.is_some != p.has_value() ||
          (p && outD.pair_forced &&
           (!is_approx(outD.xD, p->first) || !is_approx(outD.qD, p->second))))
        throw std::runtime_error("output demand does not approximate pop");
      auto d = ipopD(q, outD);
      j["result"] = {{"cost", d.cost},
                     {"queue_demand", print_iqueueA(d.value)},
                     {"potential_in", potential_implicit_t(d.value)},
                     {"potential_out", potential_implicit_t(outD.qD)}};
    } else {
      throw CLI::ValidationError("--op", "must be push or pop");
    }
  } else {
    throw CLI::ValidationError("--impl", "must be banker or implicit");
  }
  emit(j, as_json);
  return kExitPass;
}

int cmd_trace(const std::string& impl_name, const std::string& file,
              std::size_t enumerate_len, bool strict, bool serial,
              bool no_intervals, std::int64_t budget_push,
              std::int64_t budget_pop, std::int64_t budget_empty,
              std::size_t max_traces, bool as_json) {
  QueueImpl impl =
      impl_name == "banker" ? QueueImpl::Banker : QueueImpl::Implicit;
  QueueBudgets budgets =
      impl == QueueImpl::Banker ? kBankerBudgets : kImplicitBudgets;
  if (budget_push >= 0) budgets.push = static_cast<std::uint64_t>(budget_push);
  if (budget_pop >= 0) budgets.pop = static_cast<std::uint64_t>(budget_pop);
  if (budget_empty >= 0)
    budgets.empty = static_cast<std::uint64_t>(budget_empty);

  json j = report("trace");
  if (!file.empty()) {
    Trace t = parse_trace(slurp(file));
    if (strict) {
      if (impl == QueueImpl::Banker)
        eval_trace_banker(t, true);
      else
        eval_trace_implicit(t, true);
    }
    std::uint64_t cost = cost_of_exec(impl, t);
    std::uint64_t budget = budget_trace(t, budgets);
    auto bad = check_trace(impl, t, budgets, !no_intervals);
    j["result"] = {{"pass", !bad.has_value()},
                   {"events", t.size()},
                   {"cost", cost},
                   {"budget", budget},
                   {"slack", budget >= cost ? budget - cost : 0}};
    if (bad) j["counterexample"] = *bad;
    emit(j, as_json);
    return bad ? kExitViolation : kExitPass;
  }
  AmortizedReport r = check_amortized(impl, enumerate_len, budgets, !serial,
                                      !no_intervals, max_traces);
  j["result"] = {{"pass", r.ok()},
                 {"traces", r.traces_checked},
                 {"violations", r.violations},
                 {"worst_slack", r.worst_slack}};
  if (!r.ok()) j["counterexample"] = r.counterexample;
  emit(j, as_json);
  return r.ok() ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lazycost: mechanical cost analysis of lazy programs via "
               "bidirectional demand semantics"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file, env_text, out_text, args_text, fn, impl, op, state_file;
  std::uint64_t value = 0;
  std::size_t max_branches = std::size_t{1} << 20;
  std::size_t max_traces_cap = std::size_t{1} << 21;
  std::size_t max_len = 3;
  std::size_t enumerate_len = 0;
  bool serial = false, strict = false, no_intervals = false;
  std::int64_t budget_push = -1, budget_pop = -1, budget_empty = -1;

  auto* check = app.add_subcommand("check", "typecheck a program file");
  check->add_option("file", file)->required();

  auto* ev = app.add_subcommand("eval", "evaluate a program forward");
  ev->add_option("file", file)->required();
  ev->add_option("--env", env_text, "total bindings, e.g. 'xs=[1,2] ys=[3]'")
      ->required();

  auto* dem = app.add_subcommand("demand", "backward demand evaluation");
  dem->add_option("file", file)->required();
  dem->add_option("--env", env_text)->required();
  dem->add_option("--out-demand", out_text, "output demand literal")->required();

  auto* cv = app.add_subcommand("clairvoyant",
                                "enumerate clairvoyant branches");
  cv->add_option("file", file)->required();
  cv->add_option("--env", env_text, "approximation bindings (may contain _)")
      ->required();
  cv->add_option("--out-demand", out_text);
  cv->add_option("--max-branches", max_branches);

  auto* xc = app.add_subcommand(
      "xcheck", "correspondence theorems: demand vs clairvoyant");
  xc->add_option("file", file, "program file (default: built-in corpus)");
  xc->add_option("--max-len", max_len, "list length bound (default 3)");
  xc->add_flag("--serial", serial, "disable the parallel sweep");

  auto* sl = app.add_subcommand("stdlib-cost",
                                "demand cost of a lazy list function");
  sl->add_option("--fn", fn,
                 "take|insert|isort|select|ssort|take-isort|take-ssort")
      ->required();
  sl->add_option("--args", args_text, "e.g. 'n=2 xs=[3,1,2]'")->required();
  sl->add_option("--out-demand", out_text)->required();

  auto* qc = app.add_subcommand("queue", "queue demand functions");
  qc->add_option("--impl", impl, "banker|implicit")->required();
  qc->add_option("--op", op, "push|pop")->required();
  qc->add_option("--value", value, "pushed element");
  qc->add_option("--state", state_file, "queue state file")->required();
  qc->add_option("--out-demand", out_text)->required();

  auto* tr = app.add_subcommand("trace", "amortized-cost checks over traces");
  auto* trc = tr->add_subcommand("check", "check one trace or enumerate all");
  trc->add_option("--impl", impl, "banker|implicit")->required();
  trc->add_option("--file", file, "trace file");
  trc->add_option("--enumerate", enumerate_len, "check all traces up to LEN");
  trc->add_flag("--strict", strict, "invalid references are errors");
  trc->add_flag("--serial", serial);
  trc->add_flag("--no-intervals", no_intervals,
                "skip the interval inequality checks");
  trc->add_option("--budget-push", budget_push);
  trc->add_option("--budget-pop", budget_pop);
  trc->add_option("--budget-empty", budget_empty);
  trc->add_option("--max-traces", max_traces_cap,
                  "resource cap on the enumeration");

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* inner : sub->get_subcommands({})) inner->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file, as_json);
    if (ev->parsed()) return cmd_eval(file, env_text, as_json);
    if (dem->parsed()) return cmd_demand(file, env_text, out_text, as_json);
    if (cv->parsed())
      return cmd_clairvoyant(file, env_text, out_text, max_branches, as_json);
    if (xc->parsed()) return cmd_xcheck(file, max_len, serial, as_json);
    if (sl->parsed()) return cmd_stdlib(fn, args_text, out_text, as_json);
    if (qc->parsed())
      return cmd_queue(impl, op, value, state_file, out_text, as_json);
    if (tr->parsed()) {
      if (!trc->parsed()) throw CLI::CallForHelp();
      if (file.empty() && enumerate_len == 0)
        throw CLI::ValidationError("trace check",
                                   "need --file or --enumerate");
      return cmd_trace(impl, file, enumerate_len, strict, serial, no_intervals,
                       budget_push, budget_pop, budget_empty, max_traces_cap,
                       as_json);
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
