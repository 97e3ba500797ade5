#include "hcont/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "hcont/parser.hpp"
#include "hcont/report.hpp"
#include "hcont/solve.hpp"

namespace hcont {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceArgs {
  std::string input;
  std::string family;
  int n = 0;
};

struct TrackArgs {
  std::string predictor = "heun";
  std::string criterion = "simplified_a_priori";
  std::string patch = "orthogonal";
  double tau = 1e-7;
  int corrector_iters = 3;
  std::optional<double> t_end;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

void add_source(CLI::App& cmd, SourceArgs& s) {
  auto* input = cmd.add_option("-i,--input", s.input, "system file");
  auto* family = cmd.add_option("--family", s.family, "generated benchmark family: cyclic or katsura");
  cmd.add_option("--n", s.n, "size of the generated system")->needs(family);
  input->excludes(family);
}

void add_tracking(CLI::App& cmd, TrackArgs& a) {
  cmd.add_option("--tau", a.tau, "corrector tolerance");
  cmd.add_option("--max-corrector-iters", a.corrector_iters, "corrector iterations per step, simplified step included");
  cmd.add_option("--criterion", a.criterion, "a_posteriori, a_priori or simplified_a_priori");
  cmd.add_option("--patch", a.patch, "orthogonal or fixed");
  cmd.add_option("--t-end", a.t_end, "stop tracking at this t");
  cmd.add_option("--seed", a.seed, "seed for gamma and the random patches");
  cmd.add_option("--threads", a.threads, "paths tracked at once; 0 uses every core");
  cmd.add_option("--out", a.out, "output file; .json or .csv selects the format");
}

PolynomialSystem load_system(const SourceArgs& s) {
  if (!s.input.empty()) {
    std::ifstream in(s.input);
    if (!in) throw UsageError("cannot read " + s.input);
    std::stringstream text;
    text << in.rdbuf();
    try {
      return parse_system(text.str());
    } catch (const ParseError& e) {
      throw UsageError(s.input + ": " + e.what());
    }
  }
  if (s.family.empty()) throw UsageError("give a system with --input or --family");
  try {
    return generate_benchmark(parse_family(s.family), s.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SolveOptions solve_options(const TrackArgs& a, double default_t_end) {
  SolveOptions o;
  o.threads = a.threads;
  try {
    o.tracker.predictor = parse_predictor(a.predictor);
    o.tracker.corrector.criterion = parse_criterion(a.criterion);
    o.tracker.patch = parse_patch(a.patch);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  // Paths run in projective space, so a chart is needed.
  if (o.tracker.patch == PatchKind::none) throw UsageError("--patch must be orthogonal or fixed");
  if (a.corrector_iters < 2) throw UsageError("--max-corrector-iters must be at least 2");
  o.tracker.corrector.max_newton_iters = a.corrector_iters - 1;
  o.tracker.corrector.tau = a.tau;
  o.tracker.t_end = a.t_end.value_or(default_t_end);
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return o;
}

bool wants_csv(const std::string& path, bool csv_default) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".csv")) return true;
  if (ends_with(".json")) return false;
  return csv_default;
}

template <typename Write>
void emit(const std::string& path, std::ostream& out, Write write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  write(file);
}

ControllerKind controller_kind(const std::string& name) {
  try {
    return parse_controller(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_solve(const SourceArgs& src, const TrackArgs& a, const std::string& controller, bool allow_failures,
              std::ostream& out, std::ostream& err) {
  const PolynomialSystem target = load_system(src);
  SolveOptions opts = solve_options(a, 0.0);
  opts.tracker.controller = controller_kind(controller);
  const SolveReport report = solve(target, opts, a.seed);
  emit(a.out, out, [&](std::ostream& os) {
    if (wants_csv(a.out, false)) write_csv(os, report);
    else os << to_json(report).dump(2) << '\n';
  });
  const Aggregates& agg = report.aggregates;
  err << report.solutions.size() << " solutions, " << agg.successes << '/' << agg.paths << " paths succeeded, "
      << agg.at_infinity << " at infinity\n";
  if (agg.failures > 0 && !allow_failures) {
    err << agg.failures << " paths failed; pass --allow-failures to accept\n";
    return exit_path_failure;
  }
  return exit_ok;
}

int cmd_benchmark(const SourceArgs& src, const TrackArgs& a, const std::string& controller, int runs,
                  std::ostream& out) {
  if (runs < 1) throw UsageError("--runs must be at least 1");
  const PolynomialSystem target = load_system(src);
  const SolveOptions base = solve_options(a, 0.1);
  std::vector<ControllerKind> kinds;
  if (controller == "both") {
    kinds = {ControllerKind::simple, ControllerKind::adaptive};
  } else {
    kinds = {controller_kind(controller)};
  }
  std::vector<SolveOptions> variants;
  for (ControllerKind k : kinds) {
    SolveOptions v = base;
    v.tracker.controller = k;
    variants.push_back(v);
  }
  const BenchmarkTable table = benchmark(target, variants, runs, a.seed);
  emit(a.out, out, [&](std::ostream& os) {
    if (wants_csv(a.out, true)) write_csv(os, table);
    else os << to_json(table).dump(2) << '\n';
  });
  return exit_ok;
}

int cmd_predictors(const SourceArgs& src, const TrackArgs& a, const std::vector<std::string>& names,
                   const std::string& controller, int runs, std::ostream& out) {
  if (runs < 1) throw UsageError("--runs must be at least 1");
  std::vector<PredictorKind> kinds;
  try {
    for (const auto& name : names) kinds.push_back(parse_predictor(name));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (kinds.empty()) kinds = {PredictorKind::euler, PredictorKind::heun, PredictorKind::rk4, PredictorKind::pade21};
  const PolynomialSystem target = load_system(src);
  SolveOptions opts = solve_options(a, 0.1);
  opts.tracker.controller = controller_kind(controller);
  const auto rows = compare_predictors(target, opts, kinds, runs, a.seed);
  emit(a.out, out, [&](std::ostream& os) {
    if (wants_csv(a.out, true)) write_csv(os, rows);
    else os << to_json(rows).dump(2) << '\n';
  });
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial homotopy continuation", "hcont"};
  app.require_subcommand(1);

  SourceArgs src;
  TrackArgs track;
  bool allow_failures = false;
  std::string controller = "adaptive";
  std::string compared = "both";
  int runs = 10;
  std::vector<std::string> predictors;

  auto* solve_cmd = app.add_subcommand("solve", "solve a square polynomial system");
  add_source(*solve_cmd, src);
  add_tracking(*solve_cmd, track);
  solve_cmd->add_option("--predictor", track.predictor, "euler, heun, rk4 or pade21");
  solve_cmd->add_option("--controller", controller, "adaptive (new) or simple (old)");
  solve_cmd->add_flag("--allow-failures", allow_failures, "exit 0 even when paths fail");

  auto* bench_cmd = app.add_subcommand("benchmark", "compare step size controllers");
  add_source(*bench_cmd, src);
  add_tracking(*bench_cmd, track);
  bench_cmd->add_option("--predictor", track.predictor, "euler, heun, rk4 or pade21");
  bench_cmd->add_option("--controller", compared, "old, new or both");
  bench_cmd->add_option("--runs", runs, "gamma draws to average over");

  auto* pred_cmd = app.add_subcommand("predictors", "compare predictors; runtimes are relative to euler");
  add_source(*pred_cmd, src);
  add_tracking(*pred_cmd, track);
  pred_cmd->add_option("--predictor", predictors, "predictors to compare (default: all)")->delimiter(',');
  pred_cmd->add_option("--controller", controller, "adaptive (new) or simple (old)");
  pred_cmd->add_option("--runs", runs, "repetitions");

  auto* gen_cmd = app.add_subcommand("generate", "print a benchmark system in the input format");
  gen_cmd->add_option("--family", src.family, "cyclic or katsura")->required();
  gen_cmd->add_option("--n", src.n, "system size")->required();
  gen_cmd->add_option("--out", track.out, "output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*solve_cmd) return cmd_solve(src, track, controller, allow_failures, out, err);
    if (*bench_cmd) return cmd_benchmark(src, track, compared, runs, out);
    if (*pred_cmd) return cmd_predictors(src, track, predictors, controller, runs, out);
    const PolynomialSystem system = load_system(src);
    emit(track.out, out, [&](std::ostream& os) { os << format_system(system); });
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    // e.g. a non-square system
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace hcont
