#include "ordlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ordlab/json_io.hpp"

namespace ordlab::cli {

namespace {

struct Failure {
  std::string kind;
  std::string message;
  Json extra = Json::object();
};

Result failure(const Failure& f) {
  Json out = {{"error", f.kind}, {"message", f.message}};
  out.update(f.extra);
  return {1, out.dump()};
}

Result success(std::string text) { return {0, std::move(text)}; }

Result usage(const std::string& message) { return {2, "error: " + message}; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonFormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonFormatError(path + ": " + e.what());
  }
}

std::vector<std::uint64_t> parse_steps(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw CLI::ValidationError("--steps", "expected comma-separated naturals, got '" + text + "'");
    out.push_back(std::stoull(item));
  }
  return out;
}

std::string lines(const std::vector<Ordinal>& xs) {
  std::string out;
  for (const auto& x : xs) out += render(x) + "\n";
  if (!out.empty()) out.pop_back();
  return out;
}

Json verdict_json(const TraceVerdict& v) {
  Json out = {{"valid", std::holds_alternative<TraceValid>(v)}, {"verdict", verdict_name(v)}};
  if (const TreePath* p = verdict_path(v)) out["path"] = *p;
  return out;
}

// --- ord --------------------------------------------------------------------

struct OrdArgs {
  std::string op, a, b;
};

Result run_ord(const OrdArgs& args) {
  const Ordinal a = parse_cnf(args.a);
  const bool binary = args.op == "cmp" || args.op == "add" || args.op == "mul";
  if (binary == args.b.empty()) return usage("ord " + args.op + (binary ? " takes two ordinals" : " takes one ordinal"));
  if (args.op == "cmp") return success(ordering_name(compare(a, parse_cnf(args.b))));
  if (args.op == "add") return success(render(add(a, parse_cnf(args.b))));
  if (args.op == "mul") return success(render(mul(a, parse_cnf(args.b))));
  if (args.op == "render") return success(render(a));
  if (args.op == "pow") return success(render(omega_pow(a)));
  if (args.op == "norm") return success(norm(a).str());
  if (args.op == "pred") {
    if (kind(a) != OrdinalKind::Successor)
      return failure({"not_successor", render(a) + " has no predecessor"});
    return success(render(predecessor(a)));
  }
  switch (kind(a)) {
    case OrdinalKind::Zero: return success("zero");
    case OrdinalKind::Successor: return success("successor");
    default: return success("limit");
  }
}

// --- walk -------------------------------------------------------------------

struct WalkArgs {
  std::string start;
  std::string steps;
  std::optional<std::uint64_t> const_step;
  std::string bound;
  bool json = false;
};

Result run_walk(const WalkArgs& args) {
  const Ordinal start = parse_cnf(args.start);
  if (!args.steps.empty() && args.const_step) return usage("--steps and --const-step are exclusive");
  DescentTrace trace;
  try {
    if (args.const_step) {
      trace = canonical_walk_constant(start, *args.const_step);
    } else {
      const auto steps = parse_steps(args.steps);
      trace = canonical_walk(start, steps);
    }
  } catch (const StepsExhausted& e) {
    return failure({"steps_exhausted", e.what(), {{"trace", to_json(e.partial())}}});
  }
  if (!args.bound.empty()) trace = check_strict_descent(trace.entries, parse_cnf(args.bound));
  if (!trace.valid())
    return failure({"violation", "entry " + std::to_string(*trace.violation_at) + " breaks strict descent below " +
                                     render(trace.bound),
                    {{"violation_at", *trace.violation_at}, {"trace", to_json(trace)}}});
  return success(args.json ? to_json(trace).dump() : lines(trace.entries));
}

// --- ack --------------------------------------------------------------------

struct AckArgs {
  std::optional<std::uint64_t> m, n;
  bool trace = false;
  bool validate = false;
  AckermannCaps caps;
  std::string check;
};

Result run_ack(const AckArgs& args) {
  if (!args.check.empty()) {
    const Json verdict = verdict_json(validate_trace(call_tree_from_json(read_json_file(args.check))));
    if (verdict["valid"].get<bool>()) return success(verdict.dump());
    Json extra = verdict;
    return failure({"invalid_trace", "call tree fails validation: " + verdict["verdict"].get<std::string>(), extra});
  }
  if (!args.m || !args.n) return usage("ack requires M and N unless --check is given");
  if (!args.trace) {
    if (args.validate) return usage("--validate requires --trace");
    return success(std::to_string(ackermann(*args.m, *args.n, args.caps)));
  }
  const CallTree tree = ackermann_traced(*args.m, *args.n, args.caps);
  Json out = to_json(tree);
  if (args.validate) {
    const TraceVerdict v = validate_trace(tree);
    out.update(verdict_json(v));
    if (!std::holds_alternative<TraceValid>(v)) return failure({"invalid_trace", verdict_name(v), out});
  }
  return success(out.dump());
}

// --- hardy / fgh ------------------------------------------------------------

struct HierarchyArgs {
  std::string alpha;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  HierarchyCaps caps;
};

// --- dickson ----------------------------------------------------------------

struct DicksonArgs {
  std::string op;
  std::string list;
  std::size_t dim = 0;
  std::string with;
};

Result run_dickson(const DicksonArgs& args) {
  const auto seq = parse_monomial_list(args.list);
  std::size_t dim = args.dim;
  if (dim == 0) {
    if (seq.empty()) return usage("--dim is required for an empty list");
    dim = seq.front().dim();
  }
  if (args.op == "basis") {
    for (const auto& m : seq)
      if (m.dim() != dim) throw DimensionMismatch("monomial " + render_monomial(m) + " has the wrong dimension");
    Json out = Json::array();
    for (const auto& m : minimal_basis(seq)) out.push_back(render_monomial(m));
    return success(Json{{"dim", dim}, {"minimal", out}}.dump());
  }
  if (args.op == "residual") return success(render(residual_order_type(seq, dim)));
  if (args.op == "rank") {
    MonomialState state(dim);
    try {
      const auto ranks = rank_bad_sequence(seq, dim);
      state.sequence = seq;
      state.minimal = minimal_basis(seq);
      state.ranks = ranks;
    } catch (const NotBad& e) {
      return failure({"rejected", e.what(), {{"earlier", e.earlier()}, {"later", e.later()}}});
    }
    return success(to_json(state).dump());
  }
  // extend
  if (args.with.empty()) return usage("dickson extend requires --with");
  MonomialState state(dim);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto outcome = extend_bad(state, seq[i]);
    if (!outcome.accepted())
      return failure({"rejected", "the given list is not a bad sequence",
                      {{"earlier", *outcome.rejected_by}, {"later", i}}});
    state = std::move(outcome.state);
  }
  const auto outcome = extend_bad(state, parse_monomial(args.with));
  if (!outcome.accepted())
    return failure({"rejected", args.with + " is divisible by element " + std::to_string(*outcome.rejected_by),
                    {{"rejected_by", *outcome.rejected_by}, {"state", to_json(outcome.state)}}});
  return success(to_json(outcome.state).dump());
}

// --- uniformize / formula ---------------------------------------------------

struct UniformizeArgs {
  std::string theta;
  std::uint64_t X = 10;
  std::uint64_t N = 0;
  std::string phi;
  std::string var = "x";
  bool json = false;
};

Result run_uniformize(const UniformizeArgs& args) {
  if (args.theta.empty() == args.phi.empty()) return usage("uniformize takes exactly one of --theta and --phi");
  if (!args.phi.empty()) {
    const Formula phi = parse_formula(args.phi);
    const Formula bar = uniformize(phi, args.var);
    if (!args.json) return success(render_formula(bar));
    return success(Json{{"phi", render_formula(phi)},
                        {"phibar", render_formula(bar)},
                        {"level", render_level(classify(bar))}}
                       .dump());
  }
  if (args.N == 0) return usage("--N is required with --theta");
  const auto report = check_uniformization(parse_formula(args.theta), args.X, args.N);
  Json out = to_json(report);
  if (!report.all_hold()) return failure({"uniformization_failed", "a uniformization property fails", out});
  return success(out.dump());
}

struct FormulaArgs {
  std::string op;
  std::string text;
  std::uint64_t N = 0;
  std::vector<std::string> assign;
};

Result run_formula(const FormulaArgs& args) {
  const Formula f = parse_formula(args.text);
  if (args.op == "render") return success(render_formula(f));
  if (args.op == "classify") return success(render_level(classify(f)));
  if (args.N == 0) return usage("formula eval requires --N");
  Assignment env;
  for (const auto& a : args.assign) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) return usage("--assign expects name=value, got '" + a + "'");
    const std::string value = a.substr(eq + 1);
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return usage("--assign expects name=value, got '" + a + "'");
    env[a.substr(0, eq)] = std::stoull(value);
  }
  return success(eval_bounded(f, env, args.N) ? "true" : "false");
}

// --- check ------------------------------------------------------------------

struct CheckArgs {
  std::string kind;
  std::string path;
};

Result run_check(const CheckArgs& args) {
  const Json doc = read_json_file(args.path);
  if (args.kind == "trace") {
    if (!descent_trace_consistent(doc))
      return failure({"invalid_document", "recorded status does not match the entries"});
    return success(to_json(descent_trace_from_json(doc)).dump());
  }
  if (args.kind == "tree") {
    const Json verdict = verdict_json(validate_trace(call_tree_from_json(doc)));
    if (!verdict["valid"].get<bool>()) return failure({"invalid_trace", verdict["verdict"].get<std::string>(), verdict});
    return success(verdict.dump());
  }
  return success(to_json(monomial_state_from_json(doc)).dump());
}

// Maps library exceptions to exit codes. Syntax errors in arguments are
// usage errors; everything else raised by the library is a domain failure.
Result guarded(const std::function<Result()>& body) {
  try {
    return body();
  } catch (const CnfSyntaxError& e) {
    return usage(e.what());
  } catch (const CnfNormalizationError& e) {
    return usage(e.what());
  } catch (const FormulaSyntaxError& e) {
    return usage(e.what());
  } catch (const MonomialSyntaxError& e) {
    return usage(e.what());
  } catch (const CLI::ValidationError& e) {
    return usage(e.what());
  } catch (const UnboundVariable& e) {
    return failure({"unbound_variable", e.what(), {{"names", e.names()}}});
  } catch (const CapExceeded& e) {
    return failure({"cap_exceeded", e.what()});
  } catch (const InsufficientBound& e) {
    return failure({"insufficient_bound", e.what()});
  } catch (const NotSigma& e) {
    return failure({"not_sigma", e.what()});
  } catch (const VariableNotFree& e) {
    return failure({"variable_not_free", e.what()});
  } catch (const UnassignedVariable& e) {
    return failure({"unassigned_variable", e.what()});
  } catch (const EvaluationOverflow& e) {
    return failure({"overflow", e.what()});
  } catch (const NotBelowOmegaOmega& e) {
    return failure({"not_below_omega_omega", e.what()});
  } catch (const NotALimit& e) {
    return failure({"not_a_limit", e.what()});
  } catch (const NoWitness& e) {
    return failure({"no_witness", e.what()});
  } catch (const DimensionMismatch& e) {
    return failure({"dimension_mismatch", e.what()});
  } catch (const NotAntichain& e) {
    return failure({"not_antichain", e.what()});
  } catch (const JsonFormatError& e) {
    return failure({"invalid_document", e.what()});
  } catch (const Error& e) {
    return failure({"error", e.what()});
  } catch (const std::invalid_argument& e) {
    return failure({"invalid_argument", e.what()});
  } catch (const std::overflow_error& e) {
    return failure({"overflow", e.what()});
  }
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  CLI::App app{"Ordinal notations, descent, hierarchies, Dickson ranks and uniformization", "ordlab"};
  app.require_subcommand(1);

  OrdArgs ord;
  auto* ord_cmd = app.add_subcommand("ord", "Ordinal arithmetic on CNF strings");
  ord_cmd->add_option("op", ord.op, "cmp | add | mul | render | kind | pow | pred | norm")
      ->required()
      ->check(CLI::IsMember({"cmp", "add", "mul", "render", "kind", "pow", "pred", "norm"}));
  ord_cmd->add_option("a", ord.a, "ordinal in Cantor normal form, e.g. \"w^2*3 + w + 1\"")->required();
  ord_cmd->add_option("b", ord.b, "second ordinal for cmp, add, mul");

  WalkArgs walk;
  auto* walk_cmd = app.add_subcommand("walk", "Canonical descending walk to 0");
  walk_cmd->add_option("start", walk.start, "starting ordinal")->required();
  walk_cmd->add_option("--steps", walk.steps, "comma-separated step values consumed at limits");
  walk_cmd->add_option("--const-step", walk.const_step, "use this step at every limit");
  walk_cmd->add_option("--bound", walk.bound, "check the trace against this bound (default START+1)");
  walk_cmd->add_flag("--json", walk.json, "emit the trace as JSON");

  AckArgs ack;
  auto* ack_cmd = app.add_subcommand("ack", "Ackermann function with an ordinal termination witness");
  ack_cmd->add_option("m", ack.m);
  ack_cmd->add_option("n", ack.n);
  ack_cmd->add_flag("--trace", ack.trace, "emit the full call tree as JSON");
  ack_cmd->add_flag("--validate", ack.validate, "validate the emitted call tree");
  ack_cmd->add_option("--free-m", ack.caps.free_m, "any n is accepted up to this m")->capture_default_str();
  ack_cmd->add_option("--cap-m", ack.caps.max_m, "largest m accepted")->capture_default_str();
  ack_cmd->add_option("--cap-n", ack.caps.max_n, "largest n accepted above --free-m")->capture_default_str();
  ack_cmd->add_option("--check", ack.check, "validate a call tree JSON file instead");

  HierarchyArgs hardy;
  auto* hardy_cmd = app.add_subcommand("hardy", "Hardy hierarchy H_alpha(n) for alpha below w^w");
  hardy_cmd->add_option("alpha", hardy.alpha)->required();
  hardy_cmd->add_option("n", hardy.n)->required();
  hardy_cmd->add_option("--max-steps", hardy.caps.max_steps)->capture_default_str();

  HierarchyArgs fgh;
  auto* fgh_cmd = app.add_subcommand("fgh", "Fast-growing hierarchy F_k(n)");
  fgh_cmd->add_option("k", fgh.k)->required();
  fgh_cmd->add_option("n", fgh.n)->required();
  fgh_cmd->add_option("--max-k", fgh.caps.max_k)->capture_default_str();
  fgh_cmd->add_option("--max-n-above", fgh.caps.max_n_above, "largest n accepted at k = max-k + 1")
      ->capture_default_str();
  fgh_cmd->add_option("--max-steps", fgh.caps.max_steps)->capture_default_str();

  DicksonArgs dickson;
  auto* dickson_cmd = app.add_subcommand("dickson", "Bad sequences of monomials and their ordinal ranks");
  dickson_cmd->add_option("op", dickson.op, "rank | basis | extend | residual")
      ->required()
      ->check(CLI::IsMember({"rank", "basis", "extend", "residual"}));
  dickson_cmd->add_option("list", dickson.list, "monomials such as \"(1,1);(0,2);(3,0)\"")->required();
  dickson_cmd->add_option("--dim", dickson.dim, "number of variables (default: from the list)");
  dickson_cmd->add_option("--with", dickson.with, "candidate monomial for extend");

  UniformizeArgs uni;
  auto* uni_cmd = app.add_subcommand("uniformize", "Uniformization transform and bounded-model check");
  uni_cmd->add_option("--theta", uni.theta, "Delta_0 matrix theta(x, y) to check");
  uni_cmd->add_option("--X", uni.X, "check x below this value")->capture_default_str();
  uni_cmd->add_option("--N", uni.N, "size of the bounded model");
  uni_cmd->add_option("--phi", uni.phi, "Sigma formula to transform");
  uni_cmd->add_option("--var", uni.var, "variable to uniformize in")->capture_default_str();
  uni_cmd->add_flag("--json", uni.json);

  FormulaArgs formula;
  auto* formula_cmd = app.add_subcommand("formula", "Parse, classify or evaluate a formula");
  formula_cmd->add_option("op", formula.op, "render | classify | eval")
      ->required()
      ->check(CLI::IsMember({"render", "classify", "eval"}));
  formula_cmd->add_option("formula", formula.text)->required();
  formula_cmd->add_option("--N", formula.N, "model size for eval");
  formula_cmd->add_option("--assign", formula.assign, "name=value, repeatable");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Revalidate a JSON document emitted by this tool");
  check_cmd->add_option("kind", check.kind, "trace | tree | state")
      ->required()
      ->check(CLI::IsMember({"trace", "tree", "state"}));
  check_cmd->add_option("file", check.path)->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    std::string text = out.str() + err.str();
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return {code == 0 ? 0 : 2, text};
  }

  if (ord_cmd->parsed()) return guarded([&] { return run_ord(ord); });
  if (walk_cmd->parsed()) return guarded([&] { return run_walk(walk); });
  if (ack_cmd->parsed()) return guarded([&] { return run_ack(ack); });
  if (hardy_cmd->parsed())
    return guarded([&] { return success(std::to_string(ordlab::hardy(parse_cnf(hardy.alpha), hardy.n, hardy.caps))); });
  if (fgh_cmd->parsed()) return guarded([&] { return success(std::to_string(fast_growing(fgh.k, fgh.n, fgh.caps))); });
  if (dickson_cmd->parsed()) return guarded([&] { return run_dickson(dickson); });
  if (uni_cmd->parsed()) return guarded([&] { return run_uniformize(uni); });
  if (formula_cmd->parsed()) return guarded([&] { return run_formula(formula); });
  return guarded([&] { return run_check(check); });
}

}  // namespace ordlab::cli
