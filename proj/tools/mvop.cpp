/*
   Copyright 2026 The mvop Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// mvop: construct, verify and export matrix-valued discrete orthogonal
// polynomial families.
//
//   mvop family  --spec F [--n N] [--format json|latex] [--operator] [--recurrence]
//   mvop verify  --spec F [--n N] [--truncated] [--x-max X] [--tol T] [--perturb]
//   mvop limits  --spec F [--format csv|json]
//   mvop export  --spec ARTIFACT.json --format latex|csv|json
//
// Exit codes: 0 pass, 1 verification failure, 2 bad input, 3 I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvop/mvop.hpp"

namespace {

using mvop::json;
using mvop::Rational;

enum ExitCode { kPass = 0, kFail = 1, kBadInput = 2, kIoError = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string spec_path;
  long n = -1;
  std::string format;  ///< empty: the command default
  std::string out;
  long x_max = 400;
  double tol = 1e-9;
  std::string probes;
  std::string tau_probes;
  bool perturb = false;
  bool want_operator = false;
  bool want_recurrence = false;
  bool truncated = false;
  bool force_operator = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw mvop::SpecError(path + ": " + e.what());
  }
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw IoError("cannot write '" + cfg.out + "'");
  os << text;
  if (!text.empty() && text.back() != '\n') os << '\n';
  if (!os) throw IoError("write to '" + cfg.out + "' failed");
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception&) {
      throw mvop::SpecError("bad probe value '" + item + "'");
    }
  }
  if (out.empty()) throw mvop::SpecError("empty probe list '" + text + "'");
  return out;
}

mvop::ProbeGrid make_grid(const RunConfig& cfg) {
  mvop::ProbeGrid g;
  if (!cfg.probes.empty()) g.a_values = parse_list(cfg.probes);
  if (!cfg.tau_probes.empty()) g.tau_values = parse_list(cfg.tau_probes);
  for (const auto& v : g.a_values)
    if (v.is_zero()) throw mvop::SpecError("a-probe 0 collapses the family to its diagonal");
  return g;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

json weight_table(const mvop::FamilySpec& spec) {
  const long top = spec.finite() ? spec.N() : 10;
  json rows = json::array();
  for (long x = 0; x <= top; ++x) rows.push_back(json{{"x", x}, {"value", mvop::to_json(mvop::weight_matrix_eval(spec, x))}});
  return rows;
}

int cmd_family(const RunConfig& cfg) {
  const mvop::FamilySpec spec = mvop::family_from_json(read_json(cfg.spec_path));
  const mvop::ProbeGrid grid = make_grid(cfg);
  const long n = cfg.n >= 0 ? cfg.n : (spec.finite() ? spec.N() : 4);
  if (spec.finite() && n > spec.N())
    throw mvop::SpecError("--n " + std::to_string(n) + " exceeds N=" + std::to_string(spec.N()));

  std::optional<mvop::CanonicalOperator> op;
  std::string op_error;
  try {
    op = mvop::canonical_operator(spec, !cfg.force_operator);
  } catch (const mvop::SpecError& e) {
    if (cfg.want_operator) throw;
    op_error = e.what();
  }

  if (cfg.format == "latex") {
    std::string text;
    for (long k = 0; k <= n; ++k) text += mvop::q_to_latex(spec, k) + "\n\n";
    if (op && cfg.want_operator) text += mvop::to_latex(op->D) + "\n\n" + mvop::to_latex(op->Lambda) + "\n";
    write_output(cfg, text);
    return kPass;
  }
  if (cfg.format != "json") throw mvop::SpecError("family: unsupported format '" + cfg.format + "'");

  json j;
  j["spec"] = mvop::to_json(spec);
  j["probe_grid"] = mvop::to_json(grid);
  json quotients = json::array();
  for (const auto& q : mvop::symbolic_quotients(spec)) quotients.push_back(mvop::to_json(q));
  j["quotients"] = std::move(quotients);
  const mvop::ChannelTables tab(spec, n + 1);
  json Q = json::array();
  for (long k = 0; k <= n; ++k) Q.push_back(mvop::to_json(mvop::construct_Q(tab, k), k));
  j["Q"] = std::move(Q);
  j["W"] = weight_table(spec);
  if (op) {
    j["D"] = mvop::to_json(op->D);
    j["Lambda"] = mvop::to_json(op->Lambda, n);
  } else {
    j["D"] = nullptr;
    j["Lambda"] = nullptr;
    j["operator_error"] = op_error;
  }
  if (cfg.want_recurrence) {
    const auto probe = grid.points(mvop::symbolic_quotients(spec).size()).front();
    json rec = json::array();
    const long top = spec.finite() ? std::min(n, spec.N() - 1) : n;
    for (long k = 0; k <= top; ++k) {
      json r = mvop::to_json(mvop::extract_recurrence(spec, k, probe));
      r["n"] = k;
      rec.push_back(std::move(r));
    }
    j["recurrence"] = json{{"probe", probe.describe()}, {"triples", std::move(rec)}};
  }
  write_output(cfg, dump(j));
  return kPass;
}

int cmd_verify(const RunConfig& cfg) {
  const mvop::FamilySpec spec = mvop::family_from_json(read_json(cfg.spec_path));
  mvop::VerifyOptions opt;
  opt.n_max = cfg.n;
  opt.grid = make_grid(cfg);
  opt.truncated = cfg.truncated;
  opt.policy = {cfg.x_max, cfg.tol};
  opt.force_operator = cfg.force_operator;
  opt.perturb = cfg.perturb;
  const mvop::VerifyReport rep = mvop::run_verify_suite(spec, opt);
  write_output(cfg, dump(mvop::to_json(rep)));
  if (!rep.passed()) {
    std::cerr << "verify: FAILED\n";
    return kFail;
  }
  return kPass;
}

mvop::TransitionSpec load_transition(const RunConfig& cfg) {
  return mvop::transition_from_json(read_json(cfg.spec_path));
}

std::string render_convergence(const mvop::ConvergenceReport& r, const std::string& format) {
  if (format == "csv") return mvop::to_csv(r);
  if (format == "json") return dump(mvop::to_json(r));
  throw mvop::SpecError("limits: unsupported format '" + format + "'");
}

int cmd_limits(const RunConfig& cfg) {
  mvop::TransitionSpec t = load_transition(cfg);
  if (cfg.n >= 0) t.n = cfg.n;
  t.validate();
  const mvop::ConvergenceReport rep = mvop::run_transition(t);
  write_output(cfg, render_convergence(rep, cfg.format));
  if (!rep.monotone()) {
    std::cerr << "limits: error is not strictly decreasing along the ladder\n";
    return kFail;
  }
  return kPass;
}

// Re-renders a JSON artifact written by `family` or `limits`.
int cmd_export(const RunConfig& cfg) {
  const json j = read_json(cfg.spec_path);
  if (j.contains("transition") && j.contains("steps")) {
    write_output(cfg, render_convergence(mvop::convergence_from_json(j), cfg.format));
    return kPass;
  }
  if (j.contains("Q") && j.contains("spec")) {
    const mvop::FamilySpec spec = mvop::family_from_json(j.at("spec"));
    if (cfg.format == "json") {
      write_output(cfg, dump(j));
      return kPass;
    }
    if (cfg.format != "latex") throw mvop::SpecError("export: family artifacts support json or latex");
    std::string text;
    for (const auto& q : j.at("Q")) text += mvop::q_to_latex(spec, q.at("n").get<long>()) + "\n\n";
    if (!j.at("D").is_null()) {
      text += mvop::to_latex(mvop::operator_from_json(j.at("D"))) + "\n\n";
      text += mvop::to_latex(mvop::eigenvalues_from_json(j.at("Lambda"))) + "\n";
    }
    write_output(cfg, text);
    return kPass;
  }
  if (j.contains("channels")) {
    // A bare family spec: export its full artifact.
    RunConfig c = cfg;
    c.want_recurrence = true;
    return cmd_family(c);
  }
  throw mvop::SpecError("export: '" + cfg.spec_path + "' is not a recognised artifact");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-valued discrete orthogonal polynomials"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "Spec or artifact file (JSON)")->required();
    sub->add_option("--n", cfg.n, "Highest degree");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--probes", cfg.probes, "Comma-separated a-probes, e.g. 1,2,3,1/2,-1");
    sub->add_option("--tau-probes", cfg.tau_probes, "Comma-separated tau-probes");
  };

  auto* family = app.add_subcommand("family", "Construct Q_n, W, D and Lambda_n");
  common(family);
  family->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "latex"}));
  family->add_flag("--operator", cfg.want_operator, "Require the difference operator");
  family->add_flag("--recurrence", cfg.want_recurrence, "Include recurrence triples");
  family->add_flag("--force-operator", cfg.force_operator, "Skip the Hahn parameter condition");

  auto* verify = app.add_subcommand("verify", "Orthogonality, bispectrality and recurrence checks");
  common(verify);
  verify->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json"}));
  verify->add_flag("--truncated", cfg.truncated, "Truncated sums on infinite support");
  verify->add_option("--x-max", cfg.x_max, "Truncation point")->check(CLI::PositiveNumber);
  verify->add_option("--tol", cfg.tol, "Relative tolerance")->check(CLI::PositiveNumber);
  verify->add_flag("--perturb", cfg.perturb, "Corrupt Q_1 (negative control)");
  verify->add_flag("--force-operator", cfg.force_operator, "Skip the Hahn parameter condition");

  auto* limits = app.add_subcommand("limits", "Run a limit-transition ladder");
  common(limits);
  limits->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* exporter = app.add_subcommand("export", "Re-render a JSON artifact");
  common(exporter);
  exporter->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "latex", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kBadInput;
  }
  if (cfg.format.empty()) cfg.format = limits->parsed() ? "csv" : "json";

  try {
    if (family->parsed()) return cmd_family(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (limits->parsed()) return cmd_limits(cfg);
    return cmd_export(cfg);
  } catch (const IoError& e) {
    std::cerr << "mvop: I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "mvop: " << e.what() << "\n";
    return kBadInput;
  }
}
