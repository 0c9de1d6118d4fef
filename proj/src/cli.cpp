#include "jumpconj/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "jumpconj/spec_io.hpp"

namespace jumpconj::cli {

namespace {

using io::json;

const std::vector<std::string> kCommands{"validate", "classify", "decide", "build", "eval",
                                         "verify", "smoothness", "plot", "examples"};

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_inputs(const RunConfig& c, std::size_t lo, std::size_t hi) {
  if (c.inputs.size() < lo || c.inputs.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " + std::to_string(hi);
    throw ArgumentError("'" + c.command + "' takes " + want + " input file(s), got " +
                        std::to_string(c.inputs.size()));
  }
}

BuildOptions build_options(const RunConfig& c) {
  BuildOptions o;
  o.eval.inv_tol = c.inv_tol;
  o.eval.n_max = c.n_max;
  o.eval.endpoint_eps = c.endpoint_eps;
  return o;
}

Orientation conjugate_orientation(const JumpMap& f, const JumpMap& g) {
  const PairDecision d = decide_pair(f, g);
  if (!d.conjugate) throw NotConjugate("maps are not conjugate (case " + std::string(to_string(d.case_pair)) + ")");
  return *d.orientation;
}

std::optional<InitialHomeo> init_from_flag(const RunConfig& c, const JumpMap& f, const JumpMap& g) {
  if (!c.init) return std::nullopt;
  const InitSpec spec = io::init_spec_from_json(io::read_json_file(*c.init));
  return make_initial_homeo(f, g, conjugate_orientation(f, g), spec);
}

// One input: a conjugacy handle. Two inputs: map specs, built with the
// default or --init initial homeomorphism.
Conjugacy conjugacy_from_inputs(const RunConfig& c) {
  require_inputs(c, 1, 2);
  if (c.inputs.size() == 1) return io::conjugacy_from_handle(io::read_json_file(c.inputs[0]));
  const JumpMap f = io::load_map(c.inputs[0]);
  const JumpMap g = io::load_map(c.inputs[1]);
  return build_conjugacy(f, g, init_from_flag(c, f, g), build_options(c));
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void write_or_emit(const RunConfig& c, std::ostream& out, const json& j) {
  if (c.out) io::write_text_file(*c.out, j.dump(2) + "\n");
  else emit(out, j);
}

std::string orbit_csv(const JumpMap& m, int n_max, double eps) {
  std::string csv = "n,point,side\n";
  auto row = [&](std::size_t n, double x, std::string_view side) {
    csv += std::to_string(n) + "," + num17(x) + "," + std::string(side) + "\n";
  };
  if (m.family() == Family::IncreasingA) {
    const OrbitPartition p = boundary_orbit_A(m, n_max, eps);
    for (std::size_t n = 0; n < p.left_points().size(); ++n) row(n, p.left_points()[n], "left");
    for (std::size_t n = 0; n < p.right_points().size(); ++n) row(n, p.right_points()[n], "right");
  } else {
    const OrbitPartition p = boundary_orbit_B(m, n_max, eps);
    for (std::size_t n = 0; n < p.points().size(); ++n) {
      const double x = p.points()[n];
      row(n, x, n == 0 ? "jump" : (x < m.t() ? "left" : "right"));
    }
  }
  return csv;
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 1, 1);
  const JumpMap m = io::load_map(c.inputs[0]);
  const ValidationReport r = validate_jump_map(m);
  json j = io::to_json(r);
  j["family"] = std::string(to_string(m.family()));
  if (c.csv && r.ok()) io::write_text_file(*c.csv, orbit_csv(m, c.n_max, c.endpoint_eps));
  write_or_emit(c, out, j);
  return r.ok() ? kOk : kRejected;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 1, 1);
  const JumpMap m = io::load_map(c.inputs[0]);
  const auto [lo, hi] = one_sided_limits(m);
  json j = {{"family", std::string(to_string(m.family()))},
            {"jump_kind", std::string(to_string(classify_jump(m)))},
            {"limits", {{"left", lo}, {"right", hi}}},
            {"value_at_t", m.value_at_t()}};
  if (c.csv) io::write_text_file(*c.csv, orbit_csv(m, c.n_max, c.endpoint_eps));
  write_or_emit(c, out, j);
  return kOk;
}

int cmd_decide(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 2, 2);
  const JumpMap f = io::load_map(c.inputs[0]);
  const JumpMap g = io::load_map(c.inputs[1]);
  const PairDecision d = decide_pair(f, g);
  write_or_emit(c, out, io::to_json(d));
  return d.conjugate ? kOk : kRejected;
}

int cmd_build(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 2, 2);
  const Conjugacy phi = conjugacy_from_inputs(c);
  write_or_emit(c, out, io::handle_to_json(phi));
  return kOk;
}

std::vector<double> read_numbers(std::istream& in) {
  std::vector<double> xs;
  std::string tok;
  while (in >> tok) xs.push_back(io::number_from_json(json(tok), "x"));
  return xs;
}

int cmd_eval(const RunConfig& c, std::ostream& out, std::istream& in) {
  require_inputs(c, 1, 1);
  const Conjugacy phi = io::conjugacy_from_handle(io::read_json_file(c.inputs[0]));
  const std::vector<double> xs = c.xs.empty() ? read_numbers(in) : c.xs;
  json results = json::array();
  for (double x : xs) results.push_back({{"x", x}, {"phi_x", phi(x)}});
  write_or_emit(c, out, {{"results", results}});
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Conjugacy phi = conjugacy_from_inputs(c);
  VerifyParams p;
  p.grid_n = c.grid_n;
  p.tol = c.tol;
  p.endpoint_eps = phi.params().endpoint_eps;
  p.seed = c.seed;
  p.keep_samples = c.csv.has_value();
  const VerificationReport r = verify_conjugacy(phi, p);
  if (c.csv) {
    std::string csv = "x,residual\n";
    for (const auto& s : r.samples) csv += num17(s.x) + "," + num17(s.residual) + "\n";
    io::write_text_file(*c.csv, csv);
  }
  write_or_emit(c, out, io::to_json(r));
  return r.passed ? kOk : kRejected;
}

int cmd_smoothness(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 1, 2);
  std::optional<Conjugacy> handle;
  if (c.inputs.size() == 1) handle = io::conjugacy_from_handle(io::read_json_file(c.inputs[0]));
  const JumpMap f = handle ? handle->f() : io::load_map(c.inputs[0]);
  const JumpMap g = handle ? handle->g() : io::load_map(c.inputs[1]);
  InitialHomeo init = handle ? handle->init() : init_from_flag(c, f, g).value_or(
                                                    default_initial_homeo(f, g, conjugate_orientation(f, g)));
  SmoothnessParams p;
  p.n = c.smooth_n;
  p.samples = c.samples;
  const SmoothnessReport r = check_smoothness(f, g, init, p);
  if (c.csv) {
    std::string csv = "x,N,product\n";
    for (const auto& s : r.product_samples) csv += num17(s.x) + "," + std::to_string(s.n) + "," + num17(s.product) + "\n";
    io::write_text_file(*c.csv, csv);
  }
  write_or_emit(c, out, io::to_json(r));
  return kOk;
}

std::string pins_path_for(const std::string& curve) {
  const std::filesystem::path p(curve);
  return (p.parent_path() / (p.stem().string() + "_pins" + p.extension().string())).string();
}

struct PlotFiles {
  std::string curve;
  std::string pins;
  std::size_t rows;
};

// Uniform grid merged with the pinned abscissae, plus the true orbit pins.
PlotFiles write_plot(const Conjugacy& phi, int grid_n, const std::string& curve_path,
                     const std::string& pins_path) {
  const JumpMap& f = phi.f();
  const JumpMap& g = phi.g();
  std::vector<double> xs;
  for (int i = 0; i < grid_n; ++i)
    xs.push_back(i == grid_n - 1 ? f.b() : f.a() + (f.b() - f.a()) * i / (grid_n - 1));
  for (const Point& p : phi.pins().points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::string curve = "x,phi_x\n";
  for (double x : xs) curve += num17(x) + "," + num17(phi(x)) + "\n";
  io::write_text_file(curve_path, curve);

  std::string pins = "n,x,phi_x,expected\n";
  double x = f.t();
  double y = g.t();
  for (int n = 0; n <= 20; ++n) {
    pins += std::to_string(n) + "," + num17(x) + "," + num17(phi(x)) + "," + num17(y) + "\n";
    x = f(x);
    y = g(y);
  }
  io::write_text_file(pins_path, pins);
  return {curve_path, pins_path, xs.size()};
}

int cmd_plot(const RunConfig& c, std::ostream& out) {
  const Conjugacy phi = conjugacy_from_inputs(c);
  const std::string curve = c.out.value_or("phi_curve.csv");
  const std::string pins = c.csv.value_or(pins_path_for(curve));
  const PlotFiles files = write_plot(phi, c.grid_n, curve, pins);
  emit(out, {{"curve", files.curve}, {"pins", files.pins}, {"rows", files.rows}});
  return kOk;
}

// ---------------------------------------------------------------------------

json rational(long long p, long long q) { return json::array({p, q}); }

json affine_spec(json intercept, json slope) {
  return {{"kind", "affine"}, {"coeffs", json::array({intercept, slope})}};
}

json map_spec(json t, const char* family, json value, json left, json right) {
  return {{"domain", json::array({0, 1})}, {"t", t}, {"family", family},
          {"value_at_t", value}, {"left", left}, {"right", right}};
}

std::vector<std::pair<std::string, json>> example_specs() {
  const json ex1_f = map_spec(rational(1, 4), "A", rational(3, 16), affine_spec(0, rational(1, 2)),
                              affine_spec(rational(1, 2), rational(1, 2)));
  json ex1_f_attains = ex1_f;
  ex1_f_attains["value_at_t"] = rational(1, 8);
  const json ex1_g = map_spec(rational(1, 2), "A", rational(5, 16), affine_spec(0, rational(1, 4)),
                              affine_spec(rational(3, 4), rational(1, 4)));
  const json ex2_f = map_spec(rational(1, 2), "B", rational(17, 40), affine_spec(1, rational(-23, 40)),
                              affine_spec(rational(23, 40), rational(-23, 40)));
  const json ex2_g = map_spec(rational(1, 4), "B", rational(53, 272), affine_spec(1, rational(-1, 8)),
                              affine_spec(rational(1, 8), rational(-1, 8)));
  return {{"ex1_f.json", ex1_f},
          {"ex1_g.json", ex1_g},
          {"ex1_f_attains.json", ex1_f_attains},
          {"ex2_f.json", ex2_f},
          {"ex2_g.json", ex2_g}};
}

int cmd_examples(const RunConfig& c, std::ostream& out) {
  const std::filesystem::path dir = c.out.value_or("examples_out");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  for (const auto& [name, spec] : example_specs()) io::write_text_file((dir / name).string(), spec.dump(2) + "\n");
  auto load = [&](const char* name) { return io::load_map((dir / name).string()); };

  json summary = json::object();
  bool ok = true;
  for (const char* ex : {"ex1", "ex2"}) {
    const std::string stem = ex;
    const JumpMap f = load((stem + "_f.json").c_str());
    const JumpMap g = load((stem + "_g.json").c_str());
    const bool valid = validate_jump_map(f).ok() && validate_jump_map(g).ok();
    const PairDecision d = decide_pair(f, g);
    const Conjugacy phi = build_conjugacy(f, g, std::nullopt, build_options(c));
    VerifyParams p;
    p.grid_n = c.grid_n;
    p.tol = c.tol;
    const VerificationReport r = verify_conjugacy(phi, p);
    io::write_text_file((dir / (stem + "_handle.json")).string(), io::handle_to_json(phi).dump(2) + "\n");
    io::write_text_file((dir / (stem + "_verify.json")).string(), io::to_json(r).dump(2) + "\n");
    const PlotFiles files = write_plot(phi, 2000, (dir / (stem + "_curve.csv")).string(),
                                       (dir / (stem + "_pins.csv")).string());
    summary[stem] = {{"valid", valid},
                     {"decision", io::to_json(d)},
                     {"pins", io::to_json(phi.pins())},
                     {"verification", io::to_json(r)},
                     {"curve_rows", files.rows}};
    ok = ok && valid && d.conjugate && r.passed;
  }
  const PairDecision neg = decide_pair(load("ex1_f.json"), load("ex1_f_attains.json"));
  summary["ex1_vs_attains"] = io::to_json(neg);
  ok = ok && !neg.conjugate;
  summary["ok"] = ok;
  io::write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  emit(out, summary);
  return ok ? kOk : kRejected;
}

int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "IoError" || k == "ParseError" || k == "ArgumentError") return kInputError;
  if (k == "InvalidMap" || k == "NotConjugate" || k == "NotComparable" || k == "InitError" ||
      k == "PinOrderError" || k == "ScopeError")
    return kRejected;
  return kNumericError;
}

}  // namespace

void check_config(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw ArgumentError("unknown command '" + c.command + "'");
  if (c.grid_n < 2) throw ArgumentError("--grid must be at least 2");
  if (c.n_max < 0) throw ArgumentError("--n-max must be non-negative");
  if (!(c.endpoint_eps > 0.0) || !(c.inv_tol > 0.0) || !(c.tol > 0.0))
    throw ArgumentError("tolerances must be positive");
  if (c.smooth_n < 10 || c.samples < 1) throw ArgumentError("smoothness needs N >= 10 and samples >= 1");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err, std::istream& in) {
  try {
    check_config(c);
    spdlog::debug("command {} with {} input(s)", c.command, c.inputs.size());
    if (c.command == "validate") return cmd_validate(c, out);
    if (c.command == "classify") return cmd_classify(c, out);
    if (c.command == "decide") return cmd_decide(c, out);
    if (c.command == "build") return cmd_build(c, out);
    if (c.command == "eval") return cmd_eval(c, out, in);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "smoothness") return cmd_smoothness(c, out);
    if (c.command == "plot") return cmd_plot(c, out);
    return cmd_examples(c, out);
  } catch (const Error& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kNumericError;
  }
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("jumpconj");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("CONJ_LOG");
  if (!env || !*env) return;
  const std::string v = env;
  const auto level = spdlog::level::from_str(v);
  if (level == spdlog::level::off && v != "off") {
    spdlog::warn("CONJ_LOG={} is not a log level; keeping warn", v);
    return;
  }
  spdlog::set_level(level);
}

}  // namespace jumpconj::cli
