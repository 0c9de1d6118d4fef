#include "jumpconj/spec_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace jumpconj::io {

namespace {

double parse_decimal(const std::string& s, const std::string& what) {
  if (s.empty()) throw ParseError(what + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError(what + ": cannot parse '" + s + "' as a number");
  return v;
}

double finite_or_throw(double v, const std::string& what) {
  if (!std::isfinite(v)) throw ParseError(what + ": NaN and infinities are not allowed");
  return v;
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::vector<double> number_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<double, double> pair_of(const json& j, const std::string& what) {
  const auto v = number_list(j, what);
  if (v.size() != 2) throw ParseError(what + ": expected two numbers");
  return {v[0], v[1]};
}

Branch branch_from_json(const json& j, Interval dom, const std::string& where) {
  const json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw ParseError(where + ".kind must be a string");
  const auto coeffs = number_list(field(j, "coeffs", where), where + ".coeffs");
  const std::string k = kind.get<std::string>();
  if (k == "affine") {
    if (coeffs.size() != 2) throw ParseError(where + ": affine branches take [intercept, slope]");
    return Branch::affine(coeffs[0], coeffs[1], dom);
  }
  if (k == "poly") {
    if (coeffs.empty()) throw ParseError(where + ": poly branches need coefficients");
    return Branch::polynomial(coeffs, dom);
  }
  throw ParseError(where + ": unknown branch kind '" + k + "'");
}

json branch_to_json(const Branch& b) {
  switch (b.kind()) {
    case Branch::Kind::Affine: return {{"kind", "affine"}, {"coeffs", b.coefficients()}};
    case Branch::Kind::Polynomial: return {{"kind", "poly"}, {"coeffs", b.coefficients()}};
    case Branch::Kind::Callable: break;
  }
  throw ArgumentError("callable branches cannot be serialized");
}

Orientation orientation_from_json(const json& j) {
  if (j == "Increasing") return Orientation::Increasing;
  if (j == "Decreasing") return Orientation::Decreasing;
  throw ParseError("orientation must be \"Increasing\" or \"Decreasing\"");
}

json interval_json(const Interval& i) { return json::array({i.lo(), i.hi()}); }

}  // namespace

double number_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return finite_or_throw(j.get<double>(), what);
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      throw ParseError(what + ": rationals are written [num, den]");
    const double den = j[1].get<double>();
    if (den == 0.0) throw ParseError(what + ": zero denominator");
    return finite_or_throw(j[0].get<double>() / den, what);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return finite_or_throw(parse_decimal(s, what), what);
    const double num = parse_decimal(s.substr(0, slash), what);
    const double den = parse_decimal(s.substr(slash + 1), what);
    if (den == 0.0) throw ParseError(what + ": zero denominator");
    return finite_or_throw(num / den, what);
  }
  throw ParseError(what + ": expected a number");
}

JumpMap map_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("map spec must be a JSON object");
  const auto [a, b] = pair_of(field(j, "domain", "map"), "domain");
  if (!(a < b)) throw ParseError("domain must satisfy a < b");
  const double t = number_from_json(field(j, "t", "map"), "t");
  if (!(a < t && t < b)) throw ParseError("t must lie strictly inside the domain");
  const json& fam = field(j, "family", "map");
  Family family;
  if (fam == "A") family = Family::IncreasingA;
  else if (fam == "B") family = Family::DecreasingB;
  else throw ParseError("family must be \"A\" or \"B\"");
  const double v = number_from_json(field(j, "value_at_t", "map"), "value_at_t");
  Branch left = branch_from_json(field(j, "left", "map"), Interval(a, t), "left");
  Branch right = branch_from_json(field(j, "right", "map"), Interval(t, b), "right");
  return JumpMap(Interval(a, b), t, std::move(left), std::move(right), v, family);
}

json map_to_json(const JumpMap& m) {
  return {{"domain", interval_json(m.domain())},
          {"t", m.t()},
          {"family", std::string(to_string(m.family()))},
          {"value_at_t", m.value_at_t()},
          {"left", branch_to_json(m.left())},
          {"right", branch_to_json(m.right())}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

JumpMap load_map(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return map_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

InitSpec init_spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("init spec must be a JSON object");
  InitSpec spec;
  if (j.contains("interpolant")) {
    try {
      spec.kind = interpolant_kind_from_string(j.at("interpolant").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("interpolant: ") + e.what());
    }
  }
  if (j.contains("extra_pins")) {
    const json& pins = j.at("extra_pins");
    if (!pins.is_array()) throw ParseError("extra_pins must be an array");
    for (std::size_t i = 0; i < pins.size(); ++i) {
      const auto [x, y] = pair_of(pins[i], "extra_pins[" + std::to_string(i) + "]");
      spec.extra_points.push_back({x, y});
    }
  }
  if (j.contains("endpoint_slopes")) {
    const json& sl = j.at("endpoint_slopes");
    if (!sl.is_array()) throw ParseError("endpoint_slopes must be an array");
    for (std::size_t i = 0; i < sl.size(); ++i) {
      const std::string what = "endpoint_slopes[" + std::to_string(i) + "]";
      if (!sl[i].is_array() || sl[i].size() != 2) throw ParseError(what + ": expected [lo, hi]");
      EndpointSlopes e;
      if (!sl[i][0].is_null()) e.lo = number_from_json(sl[i][0], what);
      if (!sl[i][1].is_null()) e.hi = number_from_json(sl[i][1], what);
      spec.endpoint_slopes.push_back(e);
    }
  }
  return spec;
}

json init_to_json(const InitialHomeo& init) {
  json pieces = json::array();
  for (const auto& p : init.pieces) {
    json knots = json::array();
    for (const auto& k : p.map.knots()) knots.push_back({k.x, k.y});
    json piece = {{"domain", interval_json(p.domain)}, {"target", interval_json(p.target)}, {"knots", knots}};
    if (p.map.kind() == InterpolantKind::MonotoneCubic) piece["slopes"] = p.map.slopes();
    pieces.push_back(std::move(piece));
  }
  return {{"interpolant", std::string(to_string(init.kind()))},
          {"orientation", std::string(to_string(init.orientation))},
          {"pieces", pieces}};
}

InitialHomeo init_from_json(const json& j) {
  InitialHomeo init;
  InterpolantKind kind;
  try {
    kind = interpolant_kind_from_string(field(j, "interpolant", "init").get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("init.interpolant: ") + e.what());
  }
  init.orientation = orientation_from_json(field(j, "orientation", "init"));
  const json& pieces = field(j, "pieces", "init");
  if (!pieces.is_array() || pieces.empty()) throw ParseError("init.pieces must be a non-empty array");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string where = "init.pieces[" + std::to_string(i) + "]";
    const auto [dlo, dhi] = pair_of(field(pieces[i], "domain", where), where + ".domain");
    const auto [tlo, thi] = pair_of(field(pieces[i], "target", where), where + ".target");
    const json& kj = field(pieces[i], "knots", where);
    if (!kj.is_array()) throw ParseError(where + ".knots must be an array");
    std::vector<Point> knots;
    for (std::size_t k = 0; k < kj.size(); ++k) {
      const auto [x, y] = pair_of(kj[k], where + ".knots");
      knots.push_back({x, y});
    }
    MonotoneInterpolant map = kind == InterpolantKind::PiecewiseAffine
                                  ? MonotoneInterpolant::piecewise_affine(std::move(knots))
                                  : MonotoneInterpolant::monotone_cubic_with_slopes(
                                        std::move(knots), number_list(field(pieces[i], "slopes", where), where + ".slopes"));
    init.pieces.push_back({Interval(dlo, dhi), Interval(tlo, thi), std::move(map)});
  }
  return init;
}

json params_to_json(const EvalParams& p) {
  return {{"inv_tol", p.inv_tol}, {"n_max", p.n_max}, {"endpoint_eps", p.endpoint_eps}};
}

EvalParams params_from_json(const json& j) {
  EvalParams p;
  if (j.contains("inv_tol")) p.inv_tol = number_from_json(j.at("inv_tol"), "inv_tol");
  if (j.contains("n_max")) {
    if (!j.at("n_max").is_number_integer()) throw ParseError("n_max must be an integer");
    p.n_max = j.at("n_max").get<int>();
  }
  if (j.contains("endpoint_eps")) p.endpoint_eps = number_from_json(j.at("endpoint_eps"), "endpoint_eps");
  return p;
}

json handle_to_json(const Conjugacy& phi) {
  return {{"format", kHandleFormat},
          {"f", map_to_json(phi.f())},
          {"g", map_to_json(phi.g())},
          {"orientation", std::string(to_string(phi.orientation()))},
          {"init", init_to_json(phi.init())},
          {"params", params_to_json(phi.params())}};
}

Conjugacy conjugacy_from_handle(const json& j) {
  if (!j.is_object() || j.value("format", "") != kHandleFormat)
    throw ParseError(std::string("not a conjugacy handle (format must be ") + kHandleFormat + ")");
  const JumpMap f = map_from_json(field(j, "f", "handle"));
  const JumpMap g = map_from_json(field(j, "g", "handle"));
  InitialHomeo init = init_from_json(field(j, "init", "handle"));
  if (orientation_from_json(field(j, "orientation", "handle")) != init.orientation)
    throw ParseError("handle orientation disagrees with its init");
  BuildOptions opts;
  if (j.contains("params")) opts.eval = params_from_json(j.at("params"));
  return build_conjugacy(f, g, std::move(init), opts);
}

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"kind", std::string(to_string(x.kind))}, {"message", x.message}, {"witness", x.witness}});
  json out = {{"ok", r.ok()}, {"violations", v}};
  if (r.limit_order) out["limit_order"] = std::string(to_string(*r.limit_order));
  return out;
}

json to_json(const PairDecision& d) {
  json out = {{"conjugate", d.conjugate}};
  if (d.orientation) out["orientation"] = std::string(to_string(*d.orientation));
  out["case_pair"] = std::string(to_string(d.case_pair));
  return out;
}

json to_json(const VerificationReport& r) {
  json out = {{"max_residual", r.max_residual},
              {"residual_argmax", r.residual_argmax},
              {"grid_size", r.grid_size},
              {"monotonicity_ok", r.monotonicity_ok},
              {"monotonicity_ties", r.monotonicity_ties},
              {"surjectivity_max_gap", r.surjectivity_max_gap},
              {"orbit_pin_max_error", r.orbit_pin_max_error},
              {"endpoint_values_ok", r.endpoint_values_ok},
              {"t_maps_to_s", r.t_maps_to_s},
              {"evaluation_failures", r.evaluation_failures},
              {"passed", r.passed}};
  if (!r.first_failure.empty()) out["first_failure"] = r.first_failure;
  return out;
}

json to_json(const SmoothnessReport& r) {
  json samples = json::array();
  for (const auto& p : r.product_samples)
    samples.push_back({{"side", std::string(to_string(p.side))},
                       {"x", p.x},
                       {"N", p.n},
                       {"product", p.product},
                       {"cauchy", p.cauchy}});
  return {{"condition_a_residuals", r.condition_a_residuals},
          {"product_samples", samples},
          {"L1_estimate", r.L1_estimate},
          {"L2_estimate", r.L2_estimate},
          {"constancy_spread", r.constancy_spread},
          {"fd_derivative_at_a", r.fd_derivative_at_a},
          {"fd_step", r.fd_step},
          {"all_cauchy", r.all_cauchy}};
}

json to_json(const PinnedPoints& p) {
  json pts = json::array();
  for (const auto& q : p.points) pts.push_back({q.x, q.y});
  return {{"orientation", std::string(to_string(p.orientation))}, {"points", pts}};
}

}  // namespace jumpconj::io
