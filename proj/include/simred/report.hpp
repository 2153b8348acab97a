#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "simred/integrate.hpp"
#include "simred/mol.hpp"
#include "simred/params.hpp"
#include "simred/verify.hpp"
#include "simred/version.hpp"

namespace simred {

// Full-precision formatting for CSV artifacts.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::ConfigError, "cannot open '" + path + "' for writing");
  out << content;
}

inline std::string trajectory_csv(const OdeTrajectory& tr) {
  std::string s = "z,w,wp\n";
  for (std::size_t i = 0; i < tr.z.size(); ++i)
    s += fmt17(tr.z[i]) + "," + fmt17(tr.w[i][0]) + "," + fmt17(tr.w[i][1]) + "\n";
  return s;
}

inline std::string gridfield_csv(const GridField& g) {
  std::string s = "x,t,u\n";
  for (std::size_t k = 0; k < g.t.size(); ++k)
    for (std::size_t i = 0; i < g.x.size(); ++i)
      s += fmt17(g.x[i]) + "," + fmt17(g.t[k]) + "," + fmt17(g.u[k][i]) + "\n";
  return s;
}

inline std::string convergence_csv(const ConvergenceTable& t) {
  std::string s = "cells,linf,l2,order\n";
  for (const auto& r : t.rows) {
    s += std::to_string(r.cells) + "," + fmt17(r.linf) + "," + fmt17(r.l2) + ",";
    s += std::isfinite(r.order) ? fmt17(r.order) : std::string("undefined");
    s += "\n";
  }
  return s;
}

inline nlohmann::ordered_json convergence_json(const ConvergenceTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json j;
    j["cells"] = r.cells;
    j["linf"] = r.linf;
    j["l2"] = r.l2;
    if (std::isfinite(r.order)) j["order"] = r.order;
    else j["order"] = nullptr;
    rows.push_back(j);
  }
  return rows;
}

inline nlohmann::ordered_json params_json(const PdeParams& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n.str();
  j["C"] = p.C;
  j["lambda"] = p.lambda;
  return j;
}

inline nlohmann::ordered_json make_report(const std::string& command,
                                          const VerificationReport& rep, const PdeParams& params) {
  nlohmann::ordered_json j;
  j["subject"] = rep.subject;
  j["command"] = command;
  j["params"] = params_json(params);
  j["tolerance"] = rep.tolerance;
  j["max_residual"] = rep.max_abs_residual;
  j["argmax"] = {{"x", rep.arg_x}, {"t", rep.arg_t}};
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["pass"] = rep.pass;
  j["version"] = kVersion;
  return j;
}

}  // namespace simred
