#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jumpconj/cli.hpp"

namespace fs = std::filesystem;
using jumpconj::cli::RunConfig;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(RunConfig c, const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  const int code = jumpconj::cli::run(c, out, err, in);
  return {code, out.str(), err.str()};
}

RunConfig cfg(std::string command, std::vector<std::string> inputs = {}) {
  RunConfig c;
  c.command = std::move(command);
  c.inputs = std::move(inputs);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("jumpconj_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Materializes the example specs once per test.
fs::path example_dir(const std::string& name) {
  const fs::path dir = scratch(name);
  RunConfig c = cfg("examples");
  c.out = dir.string();
  c.grid_n = 1000;
  REQUIRE(run(c).code == 0);
  return dir;
}

}  // namespace

TEST_CASE("decide prints the decision", "[cli]") {
  const fs::path d = example_dir("decide");
  const auto r = run(cfg("decide", {(d / "ex1_f.json").string(), (d / "ex1_g.json").string()}));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out) == json::parse(R"({"conjugate":true,"orientation":"Increasing","case_pair":"C1"})"));
  const auto n = run(cfg("decide", {(d / "ex1_f.json").string(), (d / "ex1_f_attains.json").string()}));
  CHECK(n.code == 1);
  CHECK(json::parse(n.out)["conjugate"] == false);
  const auto x = run(cfg("decide", {(d / "ex1_f.json").string(), (d / "ex2_f.json").string()}));
  CHECK(x.code == 1);
  CHECK(json::parse(x.err)["error"] == "NotComparable");
}

TEST_CASE("validate and classify", "[cli]") {
  const fs::path d = example_dir("validate");
  RunConfig v = cfg("validate", {(d / "ex2_f.json").string()});
  v.csv = (d / "orbit.csv").string();
  const auto r = run(v);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["ok"] == true);
  const std::string csv = slurp(d / "orbit.csv");
  CHECK(csv.rfind("n,point,side\n0,0.5,jump\n", 0) == 0);

  json bad = json::parse(slurp(d / "ex1_f.json"));
  bad["left"]["coeffs"] = {0.01, 0.5};
  std::ofstream(d / "bad.json") << bad.dump();
  CHECK(run(cfg("validate", {(d / "bad.json").string()})).code == 1);

  const auto c = run(cfg("classify", {(d / "ex1_f_attains.json").string()}));
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["jump_kind"] == "AttainsLeft");
}

TEST_CASE("build, eval and verify through a handle", "[cli]") {
  const fs::path d = example_dir("build");
  RunConfig b = cfg("build", {(d / "ex1_f.json").string(), (d / "ex1_g.json").string()});
  b.out = (d / "h.json").string();
  REQUIRE(run(b).code == 0);

  RunConfig e = cfg("eval", {(d / "h.json").string()});
  e.xs = {0.25, 0.0625};
  const json out = json::parse(run(e).out);
  CHECK(out["results"][0]["phi_x"] == 0.5);
  CHECK(out["results"][1]["phi_x"] == 0.03125);
  const json piped = json::parse(run(cfg("eval", {(d / "h.json").string()}), "0.1875\n1/8").out);
  CHECK(piped["results"][0]["phi_x"] == 0.3125);
  CHECK(piped["results"][1]["phi_x"] == 0.125);

  RunConfig v = cfg("verify", {(d / "h.json").string()});
  v.csv = (d / "res.csv").string();
  const auto r = run(v);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["passed"] == true);
  CHECK(slurp(d / "res.csv").rfind("x,residual\n", 0) == 0);
}

TEST_CASE("init spec files", "[cli]") {
  const fs::path d = example_dir("init");
  std::ofstream(d / "init.json") << R"({"interpolant": "monotone_cubic", "extra_pins": [[0.4, 0.6]]})";
  RunConfig b = cfg("verify", {(d / "ex1_f.json").string(), (d / "ex1_g.json").string()});
  b.init = (d / "init.json").string();
  CHECK(run(b).code == 0);
  std::ofstream(d / "bad_init.json") << R"({"extra_pins": [[0.05, 0.5]]})";
  b.init = (d / "bad_init.json").string();
  const auto r = run(b);
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "InitError");
}

TEST_CASE("plot writes the curve and the orbit pins", "[cli]") {
  const fs::path d = example_dir("plot");
  RunConfig p = cfg("plot", {(d / "ex2_f.json").string(), (d / "ex2_g.json").string()});
  p.grid_n = 2000;
  p.out = (d / "curve.csv").string();
  const auto r = run(p);
  REQUIRE(r.code == 0);
  const std::string curve = slurp(d / "curve.csv");
  CHECK(curve.rfind("x,phi_x\n", 0) == 0);
  CHECK(curve.find("\n0.5,0.25\n") != std::string::npos);
  CHECK(curve.find("\n0.42499999999999999,0.19485294117647059\n") != std::string::npos);
  const std::string pins = slurp(d / "curve_pins.csv");
  CHECK(pins.rfind("n,x,phi_x,expected\n0,0.5,0.25,0.25\n", 0) == 0);
}

TEST_CASE("smoothness command", "[cli]") {
  const fs::path d = example_dir("smooth");
  RunConfig s = cfg("smoothness", {(d / "ex1_f.json").string(), (d / "ex1_g.json").string()});
  s.csv = (d / "prod.csv").string();
  const auto r = run(s);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["L1_estimate"].get<double>() <= 1e-15);
  CHECK(slurp(d / "prod.csv").rfind("x,N,product\n", 0) == 0);
  const auto b = run(cfg("smoothness", {(d / "ex2_f.json").string(), (d / "ex2_g.json").string()}));
  CHECK(b.code == 1);
  CHECK(json::parse(b.err)["error"] == "ScopeError");
}

TEST_CASE("examples are deterministic", "[cli]") {
  const fs::path a = example_dir("det_a");
  const fs::path b = example_dir("det_b");
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    INFO(entry.path().filename());
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  CHECK(files >= 14);
  const json spec = json::parse(slurp(a / "ex2_g.json"));
  CHECK(spec["value_at_t"] == json::array({53, 272}));
}

TEST_CASE("exit codes", "[cli]") {
  const fs::path d = example_dir("codes");
  const auto missing = run(cfg("decide", {"/nonexistent/a.json", "/nonexistent/b.json"}));
  CHECK(missing.code == 2);
  CHECK(json::parse(missing.err)["error"] == "IoError");

  std::ofstream(d / "broken.json") << "{ not json";
  CHECK(run(cfg("classify", {(d / "broken.json").string()})).code == 2);

  RunConfig bad_grid = cfg("verify", {(d / "ex1_f.json").string(), (d / "ex1_g.json").string()});
  bad_grid.grid_n = 1;
  CHECK(run(bad_grid).code == 2);
  RunConfig bad_tol = bad_grid;
  bad_tol.grid_n = 10;
  bad_tol.inv_tol = 0;
  CHECK(run(bad_tol).code == 2);
  CHECK(run(cfg("frobnicate")).code == 2);
  CHECK(run(cfg("decide", {(d / "ex1_f.json").string()})).code == 2);

  RunConfig shallow = cfg("build", {(d / "ex1_f.json").string(), (d / "ex1_g.json").string()});
  shallow.n_max = 3;
  shallow.out = (d / "shallow.json").string();
  REQUIRE(run(shallow).code == 0);
  RunConfig e = cfg("eval", {(d / "shallow.json").string()});
  e.xs = {0.001};
  const auto deep = run(e);
  CHECK(deep.code == 3);
  CHECK(json::parse(deep.err)["error"] == "DepthExceeded");
}
