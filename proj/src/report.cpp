#include "hcont/report.hpp"

#include <iomanip>
#include <limits>
#include <stdexcept>
#include <string>

namespace hcont {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be a [re, im] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

CVector vector_from(const json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from(j.at(i));
  return v;
}

json constants_json(const ControllerConstants& c) {
  return {{"mu", c.mu},
          {"shrink", c.shrink},
          {"expand_after", c.expand_after},
          {"dt_min", c.dt_min},
          {"dt_max", c.dt_max},
          {"dt_initial", c.dt_initial},
          {"omega_initial", c.omega_initial},
          {"omega_floor", c.omega_floor},
          {"omega_decay", c.omega_decay},
          {"error_floor", c.error_floor}};
}

ControllerConstants constants_from(const json& j) {
  ControllerConstants c;
  c.mu = j.at("mu").get<double>();
  c.shrink = j.at("shrink").get<double>();
  c.expand_after = j.at("expand_after").get<int>();
  c.dt_min = j.at("dt_min").get<double>();
  c.dt_max = j.at("dt_max").get<double>();
  c.dt_initial = j.at("dt_initial").get<double>();
  c.omega_initial = j.at("omega_initial").get<double>();
  c.omega_floor = j.at("omega_floor").get<double>();
  c.omega_decay = j.at("omega_decay").get<double>();
  c.error_floor = j.at("error_floor").get<double>();
  return c;
}

json options_json(const TrackerOptions& o) {
  return {{"predictor", to_string(o.predictor)},
          {"controller", to_string(o.controller)},
          {"criterion", to_string(o.corrector.criterion)},
          {"tau", o.corrector.tau},
          {"newton_steps", o.corrector.max_newton_iters},
          {"patch", to_string(o.patch)},
          {"t_start", o.t_start},
          {"t_end", o.t_end},
          {"max_steps", o.max_steps},
          {"constants", constants_json(o.constants)}};
}

TrackerOptions options_from(const json& j) {
  TrackerOptions o;
  o.predictor = parse_predictor(j.at("predictor").get<std::string>());
  o.controller = parse_controller(j.at("controller").get<std::string>());
  o.corrector.criterion = parse_criterion(j.at("criterion").get<std::string>());
  o.corrector.tau = j.at("tau").get<double>();
  o.corrector.max_newton_iters = j.at("newton_steps").get<int>();
  o.patch = parse_patch(j.at("patch").get<std::string>());
  o.t_start = j.at("t_start").get<double>();
  o.t_end = j.at("t_end").get<double>();
  o.max_steps = j.at("max_steps").get<int>();
  o.constants = constants_from(j.at("constants"));
  return o;
}

json aggregates_json(const Aggregates& a) {
  return {{"paths", a.paths},
          {"mean_accepted", a.mean_accepted},
          {"mean_rejected", a.mean_rejected},
          {"mean_total", a.mean_total},
          {"mean_newton_iterations", a.mean_newton_iterations},
          {"mean_tangent_solves", a.mean_tangent_solves},
          {"successes", a.successes},
          {"failures", a.failures},
          {"step_size_too_small", a.step_size_too_small},
          {"singular_jacobian", a.singular_jacobian},
          {"diverged", a.diverged},
          {"max_steps_exceeded", a.max_steps_exceeded},
          {"at_infinity", a.at_infinity}};
}

Aggregates aggregates_from(const json& j) {
  Aggregates a;
  a.paths = j.at("paths").get<std::size_t>();
  a.mean_accepted = j.at("mean_accepted").get<double>();
  a.mean_rejected = j.at("mean_rejected").get<double>();
  a.mean_total = j.at("mean_total").get<double>();
  a.mean_newton_iterations = j.at("mean_newton_iterations").get<double>();
  a.mean_tangent_solves = j.at("mean_tangent_solves").get<double>();
  a.successes = j.at("successes").get<std::size_t>();
  a.failures = j.at("failures").get<std::size_t>();
  a.step_size_too_small = j.at("step_size_too_small").get<std::size_t>();
  a.singular_jacobian = j.at("singular_jacobian").get<std::size_t>();
  a.diverged = j.at("diverged").get<std::size_t>();
  a.max_steps_exceeded = j.at("max_steps_exceeded").get<std::size_t>();
  a.at_infinity = j.at("at_infinity").get<std::size_t>();
  return a;
}

void csv_precision(std::ostream& out) { out << std::setprecision(std::numeric_limits<double>::max_digits10); }

}  // namespace

json to_json(const SolveReport& report) {
  json solutions = json::array();
  for (const Solution& s : report.solutions) {
    solutions.push_back({{"point", vector_json(s.point)},
                         {"residual", s.residual},
                         {"multiplicity", s.multiplicity},
                         {"paths", s.paths}});
  }
  json paths = json::array();
  for (const PathRecord& p : report.paths) {
    paths.push_back({{"index", p.index},
                     {"status", to_string(p.status)},
                     {"t_reached", p.t_reached},
                     {"accepted", p.stats.accepted},
                     {"rejected", p.stats.rejected},
                     {"newton_iterations", p.stats.newton_iters_total},
                     {"tangent_solves", p.stats.tangent_solves},
                     {"at_infinity", p.at_infinity},
                     {"solution", p.solution ? json(*p.solution) : json(nullptr)}});
  }
  return {{"metadata",
           {{"seed", report.seed},
            {"gamma", complex_json(report.gamma)},
            {"threads", report.threads},
            {"variables", report.variables},
            {"options", options_json(report.options)}}},
          {"solutions", std::move(solutions)},
          {"paths", std::move(paths)},
          {"aggregates", aggregates_json(report.aggregates)},
          {"seconds", report.seconds}};
}

SolveReport report_from_json(const json& j) {
  SolveReport r;
  const json& meta = j.at("metadata");
  r.seed = meta.at("seed").get<std::uint64_t>();
  r.gamma = complex_from(meta.at("gamma"));
  r.threads = meta.at("threads").get<int>();
  r.variables = meta.at("variables").get<std::vector<std::string>>();
  r.options = options_from(meta.at("options"));
  for (const json& s : j.at("solutions")) {
    Solution sol;
    sol.point = vector_from(s.at("point"));
    sol.residual = s.at("residual").get<double>();
    sol.multiplicity = s.at("multiplicity").get<int>();
    sol.paths = s.at("paths").get<std::vector<std::size_t>>();
    r.solutions.push_back(std::move(sol));
  }
  for (const json& p : j.at("paths")) {
    PathRecord rec;
    rec.index = p.at("index").get<std::size_t>();
    rec.status = parse_path_status(p.at("status").get<std::string>());
    rec.t_reached = p.at("t_reached").get<double>();
    rec.stats.accepted = p.at("accepted").get<int>();
    rec.stats.rejected = p.at("rejected").get<int>();
    rec.stats.newton_iters_total = p.at("newton_iterations").get<int>();
    rec.stats.tangent_solves = p.at("tangent_solves").get<int>();
    rec.at_infinity = p.at("at_infinity").get<bool>();
    if (!p.at("solution").is_null()) rec.solution = p.at("solution").get<std::size_t>();
    r.paths.push_back(rec);
  }
  r.aggregates = aggregates_from(j.at("aggregates"));
  r.seconds = j.at("seconds").get<double>();
  return r;
}

json to_json(const BenchmarkTable& table) {
  json rows = json::array();
  for (const BenchmarkRow& row : table.rows) {
    rows.push_back({{"controller", to_string(row.controller)},
                    {"mean_accepted", row.mean_accepted},
                    {"mean_rejected", row.mean_rejected},
                    {"mean_total", row.mean_total},
                    {"ratio", row.ratio}});
  }
  return {{"runs", table.runs}, {"paths", table.paths}, {"rows", std::move(rows)}};
}

json to_json(const std::vector<PredictorRow>& rows) {
  json out = json::array();
  for (const PredictorRow& row : rows) {
    out.push_back({{"predictor", to_string(row.predictor)},
                   {"seconds", row.seconds},
                   {"normalized_runtime", row.normalized_runtime},
                   {"mean_accepted", row.mean_accepted},
                   {"mean_rejected", row.mean_rejected},
                   {"mean_total", row.mean_total},
                   {"mean_tangent_solves", row.mean_tangent_solves}});
  }
  return out;
}

void write_csv(std::ostream& out, const BenchmarkTable& table) {
  csv_precision(out);
  out << "controller,mean_accepted,mean_rejected,mean_total,ratio\n";
  for (const BenchmarkRow& row : table.rows) {
    out << to_string(row.controller) << ',' << row.mean_accepted << ',' << row.mean_rejected << ','
        << row.mean_total << ',' << row.ratio << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<PredictorRow>& rows) {
  csv_precision(out);
  out << "predictor,seconds,normalized_runtime,mean_accepted,mean_rejected,mean_total,mean_tangent_solves\n";
  for (const PredictorRow& row : rows) {
    out << to_string(row.predictor) << ',' << row.seconds << ',' << row.normalized_runtime << ','
        << row.mean_accepted << ',' << row.mean_rejected << ',' << row.mean_total << ','
        << row.mean_tangent_solves << '\n';
  }
}

void write_csv(std::ostream& out, const SolveReport& report) {
  csv_precision(out);
  out << "solution,multiplicity,residual";
  for (const auto& name : report.variables) out << ',' << name << "_re," << name << "_im";
  out << '\n';
  for (std::size_t i = 0; i < report.solutions.size(); ++i) {
    const Solution& s = report.solutions[i];
    out << i << ',' << s.multiplicity << ',' << s.residual;
    for (Eigen::Index k = 0; k < s.point.size(); ++k) out << ',' << s.point[k].real() << ',' << s.point[k].imag();
    out << '\n';
  }
}

}  // namespace hcont
