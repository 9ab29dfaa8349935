// Command-line front end: synth, check, bound, hull, simulate, convert.
//
// Exit codes: 0 found/valid, 1 not found/invalid, 2 usage or input error,
// 3 internal error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mlrf/bounds.hpp"
#include "mlrf/errors.hpp"
#include "mlrf/llrf.hpp"
#include "mlrf/report.hpp"
#include "mlrf/simulator.hpp"
#include "mlrf/synthesis.hpp"

using namespace mlrf;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Prefixes parse errors with the file they came from.
template <class F> auto parsing(const std::string &path, F f) {
  try {
    return f(read_file(path));
  } catch (const ParseError &e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Options {
  bool json = false;
  std::string loop_file;
  std::string tuple_file;
  std::string domain;
  std::size_t max_depth = 5;
  bool lrf_only = false;
  std::string kind = "mlrf";
  std::string x0;
  std::size_t max_steps = default_max_steps;
  std::string trace_out;
  std::string to = "mlrf";
};

SlcLoop load_loop(const Options &o) {
  SlcLoop loop = parsing(o.loop_file, [](const std::string &t) { return parse_loop(t); });
  if (o.domain == "int")
    loop.domain = Domain::Integer;
  else if (o.domain == "rat")
    loop.domain = Domain::Rational;
  return loop;
}

RankTuple load_tuple(const Options &o, const SlcLoop &loop) {
  if (o.tuple_file.empty())
    throw InputError("--tuple is required");
  return parsing(o.tuple_file, [&](const std::string &t) {
    return parse_tuple(t, loop.var_names);
  });
}

/// "x=3,y=5": every variable exactly once.
RatVec parse_state(const std::string &text, const SlcLoop &loop) {
  RatVec x = zeros(loop.dim());
  std::vector<bool> seen(loop.dim(), false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InputError("--x0 expects name=value pairs, got '" + item + "'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    std::string name = trim(item.substr(0, eq));
    std::size_t k = 0;
    while (k < loop.dim() && loop.var_names[k] != name)
      ++k;
    if (k == loop.dim())
      throw InputError("--x0: unknown variable '" + name + "'");
    if (seen[k])
      throw InputError("--x0: '" + name + "' given twice");
    try {
      x[Eigen::Index(k)] = parse_rational(trim(item.substr(eq + 1)));
    } catch (const std::invalid_argument &) {
      throw InputError("--x0: bad value for '" + name + "'");
    }
    seen[k] = true;
  }
  for (std::size_t k = 0; k < loop.dim(); ++k)
    if (!seen[k])
      throw InputError("--x0: missing value for '" + loop.var_names[k] + "'");
  return x;
}

nlohmann::ordered_json rationals_by_name(const RatVec &x,
                                        const std::vector<std::string> &names) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < names.size(); ++k)
    out[names[k]] = to_string(x[Eigen::Index(k)]);
  return out;
}

Polyhedron analysed(const SlcLoop &loop, Report &r) {
  Polyhedron q = analysis_polyhedron(loop);
  r.domain = loop.domain;
  if (loop.domain == Domain::Integer) {
    q = integer_hull(q);
    r.hull_applied = true;
  }
  return q;
}

int finish(const Options &o, const Report &r, int code) {
  std::cout << emit_report(r, o.json ? ReportFormat::Json : ReportFormat::Text);
  return code;
}

Report base_report(const SlcLoop &loop) {
  Report r;
  r.var_names = loop.var_names;
  r.domain = loop.domain;
  return r;
}

int cmd_synth(const Options &o) {
  SlcLoop loop = load_loop(o);
  Report r = base_report(loop);
  SynthesisResult s = o.lrf_only ? synth_lrf(loop).detail : synth_mlrf(loop, o.max_depth);
  r.hull_applied = s.hull_applied;
  if (s.hull_applied)
    r.notes.push_back("hull cuts: " + std::to_string(s.hull_info.cuts_added));
  if (!s.found) {
    r.status = "not-found";
    r.notes.push_back("no tuple of depth <= " + std::to_string(s.max_depth));
    return finish(o, r, kNegative);
  }
  r.status = "found";
  r.depth = s.depth;
  r.tuple = s.tuple;
  r.certificates = s.certs;
  if (s.vacuous)
    r.notes.push_back("the loop has no transitions");
  return finish(o, r, kOk);
}

int cmd_check(const Options &o) {
  SlcLoop loop = load_loop(o);
  RankTuple t = load_tuple(o, loop);
  Report r = base_report(loop);
  r.tuple = t;
  r.depth = t.depth();
  const bool integer = loop.domain == Domain::Integer;
  Polyhedron q = analysis_polyhedron(loop);
  bool valid = false;
  if (o.kind == "mlrf") {
    MlrfCheck c = integer ? check_mlrf_int(q, t) : check_mlrf(q, t);
    valid = c.valid;
    r.certificates = c.certs;
    if (!valid) {
      r.witness = c.witness;
      r.notes.push_back("component " + std::to_string(c.failed_index) + " fails");
    }
  } else if (o.kind == "nested") {
    if (integer)
      q = integer_hull(q);
    NestedCheck c = check_nested(q, t);
    valid = c.valid;
    r.certificates = c.certs;
    if (!valid)
      r.witness = c.witness;
  } else {
    const bool weak = o.kind == "weak-bms";
    LlrfCheck c = integer ? check_bmsllrf_int(q, t, weak) : check_bmsllrf(q, t, weak);
    valid = c.valid;
    if (!valid)
      r.witness = c.witness;
  }
  r.hull_applied = integer;
  r.status = valid ? "valid" : "invalid";
  return finish(o, r, valid ? kOk : kNegative);
}

int cmd_bound(const Options &o) {
  SlcLoop loop = load_loop(o);
  RankTuple t = load_tuple(o, loop);
  Report r = base_report(loop);
  Polyhedron q = analysed(loop, r);
  MlrfCheck c = check_mlrf(q, t);
  r.tuple = t;
  if (!c.valid) {
    r.status = "invalid";
    r.witness = c.witness;
    r.notes.push_back("not a multiphase ranking function; no bound");
    return finish(o, r, kNegative);
  }
  std::optional<RatVec> x0;
  if (!o.x0.empty())
    x0 = parse_state(o.x0, loop);
  BoundReport b = iteration_bound(q, t, x0);
  r.status = "valid";
  r.tuple = b.tuple;
  r.depth = b.tuple.depth();
  r.certificates = c.certs;
  r.bound = b;
  return finish(o, r, kOk);
}

std::string format_row(const Constraint &c, const std::vector<std::string> &names) {
  bool all_nonpos = true;
  for (Eigen::Index j = 0; j < c.coeffs.size(); ++j)
    all_nonpos = all_nonpos && c.coeffs[j] <= 0;
  const char *op = c.relation == Relation::Less ? "<" : "<=";
  if (all_nonpos)
    return format_affine({RatVec(-c.coeffs), Rational(0)}, names) +
           (c.relation == Relation::Less ? " > " : " >= ") + to_string(-c.rhs);
  return format_affine({c.coeffs, Rational(0)}, names) + " " + op + " " +
         to_string(c.rhs);
}

int cmd_hull(const Options &o) {
  SlcLoop loop = load_loop(o);
  loop.domain = Domain::Integer;
  Polyhedron q = analysis_polyhedron(loop);
  HullInfo info;
  Polyhedron h = remove_redundant(integer_hull(q, {}, &info));
  std::vector<Constraint> added = added_constraints(q, h);
  std::vector<std::string> names = loop.var_names;
  for (const auto &v : loop.var_names)
    names.push_back(v + "'");
  const bool empty = !is_feasible(h);
  if (o.json) {
    nlohmann::ordered_json j;
    j["status"] = empty ? "empty" : "found";
    j["domain"] = "int";
    j["hull_applied"] = true;
    j["cuts"] = info.cuts_added;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array(), extra = rows;
    for (const auto &c : h.rows())
      rows.push_back(format_row(c, names));
    for (const auto &c : added)
      extra.push_back(format_row(c, names));
    j["constraints"] = rows;
    j["added"] = extra;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "integer hull (" << info.cuts_added << " cuts)\n";
    for (const auto &c : h.rows())
      std::cout << "  " << format_row(c, names) << "\n";
    std::cout << "added:\n";
    for (const auto &c : added)
      std::cout << "  " << format_row(c, names) << "\n";
  }
  return kOk;
}

int cmd_simulate(const Options &o) {
  SlcLoop loop = load_loop(o);
  if (o.x0.empty())
    throw InputError("--x0 is required");
  RatVec x0 = parse_state(o.x0, loop);
  std::optional<RankTuple> t;
  if (!o.tuple_file.empty())
    t = load_tuple(o, loop);
  const bool record = t.has_value() || !o.trace_out.empty();
  Trace tr = run_loop(loop, x0, o.max_steps, record);
  if (!o.trace_out.empty()) {
    std::ofstream out(o.trace_out);
    if (!out)
      throw InputError("cannot write " + o.trace_out);
    write_trace_csv(out, tr, loop.var_names, t ? &*t : nullptr);
  }
  Report r = base_report(loop);
  r.status = tr.outcome == TraceOutcome::Terminated ? "terminated" : "max-steps-reached";
  r.notes.push_back("steps: " + std::to_string(tr.steps));
  std::string final_state;
  for (std::size_t k = 0; k < loop.dim(); ++k)
    final_state += (k ? ", " : "") + loop.var_names[k] + "=" +
                   to_string(tr.states.back()[Eigen::Index(k)]);
  r.notes.push_back("final state: " + final_state);
  int code = kOk;
  if (t) {
    r.tuple = *t;
    TraceRanking rk = check_tuple_on_trace(*t, tr);
    if (!rk.all_ranked) {
      r.status = "invalid";
      r.witness = tr.states[rk.unranked_at];
      r.notes.push_back("step " + std::to_string(rk.unranked_at) + " is not ranked");
      code = kNegative;
    }
  }
  if (o.json) {
    auto j = report_json(r);
    j["steps"] = tr.steps;
    j["final_state"] = rationals_by_name(tr.states.back(), loop.var_names);
    std::cout << j.dump(2) << "\n";
    return code;
  }
  return finish(o, r, code);
}

int cmd_convert(const Options &o) {
  SlcLoop loop = load_loop(o);
  RankTuple t = load_tuple(o, loop);
  Report r = base_report(loop);
  Polyhedron q = analysed(loop, r);
  if (o.to == "nested") {
    MlrfCheck c = check_mlrf(q, t);
    if (!c.valid) {
      r.status = "invalid";
      r.tuple = t;
      r.witness = c.witness;
      r.notes.push_back("input is not a multiphase ranking function");
      return finish(o, r, kNegative);
    }
    r.tuple = mlrf_to_nested(q, t);
  } else {
    const bool weak = o.kind == "weak-bms";
    LlrfCheck c = check_bmsllrf(q, t, weak);
    if (!c.valid) {
      r.status = "invalid";
      r.tuple = t;
      r.witness = c.witness;
      r.notes.push_back("input is not a lexicographic ranking function");
      return finish(o, r, kNegative);
    }
    r.tuple = llrf_to_mlrf(q, t, weak);
  }
  r.status = "valid";
  r.depth = r.tuple.depth();
  return finish(o, r, kOk);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Multiphase ranking functions for single-path linear-constraint loops"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "JSON report on standard output");
  app.fallthrough();

  auto add_loop = [&](CLI::App *cmd) {
    cmd->add_option("loop", o.loop_file, "loop file")->required();
  };
  auto add_domain = [&](CLI::App *cmd) {
    cmd->add_option("--domain", o.domain, "rat or int (default: from the loop file)")
        ->check(CLI::IsMember({"rat", "int"}));
  };

  auto *synth = app.add_subcommand("synth", "synthesize a multiphase ranking function");
  add_loop(synth);
  add_domain(synth);
  synth->add_option("--max-depth", o.max_depth, "largest depth tried")
      ->check(CLI::PositiveNumber);
  synth->add_flag("--lrf-only", o.lrf_only, "depth 1 only");

  auto *check = app.add_subcommand("check", "check a tuple");
  add_loop(check);
  add_domain(check);
  check->add_option("--tuple", o.tuple_file, "tuple file")->required();
  check->add_option("--kind", o.kind, "mlrf, nested, bms or weak-bms")
      ->check(CLI::IsMember({"mlrf", "nested", "bms", "weak-bms"}));

  auto *bound = app.add_subcommand("bound", "linear iteration bound of a tuple");
  add_loop(bound);
  add_domain(bound);
  bound->add_option("--tuple", o.tuple_file, "tuple file")->required();
  bound->add_option("--x0", o.x0, "initial state, e.g. \"x=3,y=5\"");

  auto *hull = app.add_subcommand("hull", "integer hull of the transition polyhedron");
  add_loop(hull);

  auto *simulate = app.add_subcommand("simulate", "run a deterministic loop");
  add_loop(simulate);
  simulate->add_option("--x0", o.x0, "initial state, e.g. \"x=3,y=5\"")->required();
  simulate->add_option("--max-steps", o.max_steps, "step limit");
  simulate->add_option("--tuple", o.tuple_file, "tuple checked along the run");
  simulate->add_option("--trace-out", o.trace_out, "CSV trace file");

  auto *convert = app.add_subcommand("convert", "convert between tuple kinds");
  add_loop(convert);
  add_domain(convert);
  convert->add_option("--tuple", o.tuple_file, "tuple file")->required();
  convert->add_option("--to", o.to, "mlrf (from lexicographic) or nested (from multiphase)")
      ->check(CLI::IsMember({"mlrf", "nested"}));
  convert->add_option("--kind", o.kind, "input kind when converting to mlrf: bms or weak-bms")
      ->check(CLI::IsMember({"mlrf", "bms", "weak-bms"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth)
      return cmd_synth(o);
    if (*check)
      return cmd_check(o);
    if (*bound)
      return cmd_bound(o);
    if (*hull)
      return cmd_hull(o);
    if (*simulate)
      return cmd_simulate(o);
    return cmd_convert(o);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const HullLimitError &e) {
    std::cerr << "integer hull gave up after " << e.cuts_added() << " cuts: " << e.what()
              << "\n";
    return kInternal;
  } catch (const DimensionError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
