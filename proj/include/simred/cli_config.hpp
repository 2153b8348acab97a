#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simred/errors.hpp"

namespace simred {

// Everything a CLI run needs; round-trips through JSON unchanged so that
// runs are reproducible from their own reports.
struct RunConfig {
  std::string command;
  std::string id;
  std::string gen;
  std::string fi{"i1"};

  std::optional<std::string> n;  // rational string "p/q"
  std::optional<double> C;
  std::optional<double> lambda;

  std::optional<double> x0, x1, t0, t1;
  int nx{50}, nt{50};

  double tol{1e-9};
  double quad_tol{1e-10};
  double res_tol{1e-7};
  double perturb{1.0};

  std::optional<double> z0, z1, w0, wp0;
  double t_end{0.25};
  int fields{20};
  int samples{1000};

  std::vector<double> eps{-0.5, -0.1, 0.1, 0.5};
  std::vector<int> grids{100, 200, 400};
  std::map<std::string, double> consts;

  std::uint64_t seed{default_seed()};
  std::string out;
  std::string csv;
  bool dry_run{false};

  static std::uint64_t default_seed() {
    if (const char* env = std::getenv("SIMRED_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::logic_error&) {
        raise(ErrorKind::ConfigError, "SIMRED_SEED must be an unsigned integer");
      }
    }
    return 12345;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["id"] = id;
    j["gen"] = gen;
    j["fi"] = fi;
    auto put_opt = [&j](const char* key, const auto& v) {
      if (v) j[key] = *v;
      else j[key] = nullptr;
    };
    put_opt("n", n);
    put_opt("C", C);
    put_opt("lambda", lambda);
    put_opt("x0", x0);
    put_opt("x1", x1);
    put_opt("t0", t0);
    put_opt("t1", t1);
    j["nx"] = nx;
    j["nt"] = nt;
    j["tol"] = tol;
    j["quad_tol"] = quad_tol;
    j["res_tol"] = res_tol;
    j["perturb"] = perturb;
    put_opt("z0", z0);
    put_opt("z1", z1);
    put_opt("w0", w0);
    put_opt("wp0", wp0);
    j["t_end"] = t_end;
    j["fields"] = fields;
    j["samples"] = samples;
    j["eps"] = eps;
    j["grids"] = grids;
    j["consts"] = consts;
    j["seed"] = seed;
    j["out"] = out;
    j["csv"] = csv;
    j["dry_run"] = dry_run;
    return j;
  }

  static RunConfig from_json(const nlohmann::ordered_json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.id = j.at("id").get<std::string>();
    c.gen = j.at("gen").get<std::string>();
    c.fi = j.at("fi").get<std::string>();
    auto get_opt_s = [&j](const char* key) -> std::optional<std::string> {
      if (j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<std::string>();
    };
    auto get_opt_d = [&j](const char* key) -> std::optional<double> {
      if (j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<double>();
    };
    c.n = get_opt_s("n");
    c.C = get_opt_d("C");
    c.lambda = get_opt_d("lambda");
    c.x0 = get_opt_d("x0");
    c.x1 = get_opt_d("x1");
    c.t0 = get_opt_d("t0");
    c.t1 = get_opt_d("t1");
    c.nx = j.at("nx").get<int>();
    c.nt = j.at("nt").get<int>();
    c.tol = j.at("tol").get<double>();
    c.quad_tol = j.at("quad_tol").get<double>();
    c.res_tol = j.at("res_tol").get<double>();
    c.perturb = j.at("perturb").get<double>();
    c.z0 = get_opt_d("z0");
    c.z1 = get_opt_d("z1");
    c.w0 = get_opt_d("w0");
    c.wp0 = get_opt_d("wp0");
    c.t_end = j.at("t_end").get<double>();
    c.fields = j.at("fields").get<int>();
    c.samples = j.at("samples").get<int>();
    c.eps = j.at("eps").get<std::vector<double>>();
    c.grids = j.at("grids").get<std::vector<int>>();
    c.consts = j.at("consts").get<std::map<std::string, double>>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.out = j.at("out").get<std::string>();
    c.csv = j.at("csv").get<std::string>();
    c.dry_run = j.at("dry_run").get<bool>();
    return c;
  }

  bool operator==(const RunConfig& o) const { return to_json() == o.to_json(); }
};

}  // namespace simred
