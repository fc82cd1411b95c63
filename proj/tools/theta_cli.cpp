// Command-line front end: loads JSON specifications or bundled fixtures,
// dispatches to the library, and emits deterministic reports (human-readable
// on stdout, JSON via --json-out). Exit codes: 0 all checks passed or solve
// converged; 1 violations found or non-convergence; 2 input/config error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "theta/fixtures.hpp"
#include "theta/json_io.hpp"

using theta::Error;
using theta::io::json;
namespace actions = theta::actions;
namespace spaces = theta::spaces;
namespace fixedpoint = theta::fixedpoint;
namespace fixtures = theta::fixtures;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInput = 2;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) theta::raise(Error::Kind::input, "cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    theta::raise(Error::Kind::input, "invalid JSON in '" + path + "': " + e.what());
  }
}

std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      theta::raise(Error::Kind::input, "expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

// --action accepts a JSON file path or "builtin:<kind>[:k=...,n=...,f=...,lambda=...,c=...]".
actions::Action load_action(const std::string& spec) {
  if (spec.rfind("builtin:", 0) != 0) return theta::io::action_from_json(read_json_file(spec));
  std::string rest = spec.substr(8);
  auto colon = rest.find(':');
  std::string kind_str = rest.substr(0, colon == std::string::npos ? rest.size() : colon);
  auto params = colon == std::string::npos ? std::map<std::string, std::string>{}
                                           : parse_kv(rest.substr(colon + 1));
  json j;
  j["kind"] = kind_str;
  json jp = json::object();
  if (params.count("k")) jp["k"] = std::stod(params["k"]);
  if (params.count("n")) jp["n"] = std::stoi(params["n"]);
  if (kind_str == "generator") {
    json jf;
    jf["kind"] = params.count("f") ? params["f"] : "rational";
    if (params.count("c")) jf["c"] = std::stod(params["c"]);
    jp["f"] = jf;
    jp["lambda"] = params.count("lambda") ? std::stod(params["lambda"]) : 1.0;
  }
  j["params"] = jp;
  return theta::io::action_from_json(j);
}

spaces::FiniteSpace load_space(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    if (auto sp = fixtures::space_by_name(name)) return *sp;
    theta::raise(Error::Kind::input, "unknown builtin space '" + name + "'");
  }
  return theta::io::space_from_json(read_json_file(spec), spec);
}

fixedpoint::TableMap load_map(const std::string& spec, const spaces::FiniteSpace& sp) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    if (auto m = fixtures::map_by_name(name)) return *m;
    theta::raise(Error::Kind::input, "unknown builtin map '" + name + "'");
  }
  return theta::io::map_from_json(read_json_file(spec), sp);
}

fixedpoint::TableMultiMap load_multimap(const std::string& spec, const spaces::FiniteSpace& sp) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    if (auto m = fixtures::multimap_by_name(name)) return *m;
    theta::raise(Error::Kind::input, "unknown builtin multimap '" + name + "'");
  }
  return theta::io::multimap_from_json(read_json_file(spec), sp);
}

fixedpoint::CaristiData load_caristi(const std::string& spec, const spaces::FiniteSpace& sp) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    if (auto fx = fixtures::caristi_by_name(name)) return fx->caristi;
    theta::raise(Error::Kind::input, "unknown builtin caristi data '" + name + "'");
  }
  return theta::io::caristi_from_json(read_json_file(spec), sp);
}

struct RunContext {
  std::string command;
  json config = json::object();
  std::string json_out;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void render_human(const json& report) {
  std::cout << "command: " << report["command"].get<std::string>() << "\n";
  std::cout << "status:  " << report["status"].get<std::string>() << "\n";
  if (report.contains("error"))
    std::cout << "error:   " << report["error"]["message"].get<std::string>() << "\n";
  if (report.contains("result"))
    std::cout << "result:  " << theta::io::dump_json(report["result"], -1) << "\n";
  if (report.contains("violations") && report["violations"].is_array() &&
      !report["violations"].empty()) {
    const auto& v = report["violations"];
    std::cout << "violations: " << v.size() << "\n";
    std::size_t shown = std::min<std::size_t>(v.size(), 5);
    for (std::size_t i = 0; i < shown; ++i)
      std::cout << "  " << theta::io::dump_json(v[i], -1) << "\n";
    if (shown < v.size()) std::cout << "  ... (" << v.size() - shown << " more)\n";
  }
  std::cout << "timing_ms: " << report["timing_ms"].get<double>() << "\n";
}

int finish(RunContext& ctx, json result, json violations, const std::string& status) {
  json report;
  report["command"] = ctx.command;
  report["config"] = ctx.config;
  report["result"] = std::move(result);
  report["violations"] = std::move(violations);
  report["status"] = status;
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                        ctx.start)
                  .count();
  report["timing_ms"] = ms;
  if (!ctx.json_out.empty()) {
    std::string text = theta::io::dump_json(report);
    if (ctx.json_out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(ctx.json_out);
      if (!out) theta::raise(Error::Kind::input, "cannot write '" + ctx.json_out + "'");
      out << text;
    }
  }
  if (ctx.json_out != "-") render_human(report);
  return status == "pass" ? kExitOk : kExitViolations;
}

int finish_finding(RunContext& ctx, const Error& e) {
  json report;
  report["command"] = ctx.command;
  report["config"] = ctx.config;
  report["error"] = {{"kind", Error::kind_name(e.kind())}, {"message", e.what()}};
  report["status"] = std::string("violations");
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                        ctx.start)
                  .count();
  report["timing_ms"] = ms;
  if (!ctx.json_out.empty() && ctx.json_out != "-") {
    std::ofstream out(ctx.json_out);
    if (out) out << theta::io::dump_json(report);
  }
  render_human(report);
  return kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta-metric toolkit: B-actions, finite theta-metric spaces, fixed points"};
  app.require_subcommand(1);

  std::string action_spec, space_spec, map_spec, caristi_spec, json_out;
  std::string mode = "strict";
  std::uint64_t seed = 42;
  int grid = 17, rand_pts = 256;
  double cap = 1e3, tol = theta::kTolFix;
  double arg_r = 0, arg_s = 0, radius = 0;
  long long uniformity_n = 1;
  int max_iter = 1000;
  std::string center, point_x, point_y, x0;
  bool plain = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--json-out", json_out, "write the JSON report to this path ('-' = stdout)");
  };

  auto* c_check = app.add_subcommand("check-action", "sampled axiom + inverse-property checks");
  c_check->add_option("--action", action_spec)->required();
  c_check->add_option("--seed", seed);
  c_check->add_option("--grid", grid);
  c_check->add_option("--rand", rand_pts);
  c_check->add_option("--cap", cap);
  add_common(c_check);

  auto* c_eta = app.add_subcommand("eta", "solve theta(t, s) = r for t");
  c_eta->add_option("--action", action_spec)->required();
  c_eta->add_option("--r", arg_r)->required();
  c_eta->add_option("--s", arg_s)->required();
  c_eta->add_option("--mode", mode)->check(CLI::IsMember({"strict", "existence"}));
  add_common(c_eta);

  auto* c_val = app.add_subcommand("validate-space", "check the metric axioms on a matrix");
  c_val->add_option("--space", space_spec)->required();
  c_val->add_option("--action", action_spec);
  c_val->add_flag("--plain", plain, "check the ordinary triangle inequality instead");
  add_common(c_val);

  auto* c_ball = app.add_subcommand("ball", "enumerate an open ball");
  c_ball->add_option("--space", space_spec)->required();
  c_ball->add_option("--action", action_spec)->required();
  c_ball->add_option("--center", center)->required();
  c_ball->add_option("--radius", radius)->required();
  add_common(c_ball);

  auto* c_sep = app.add_subcommand("separate", "disjoint-ball separation witness for two points");
  c_sep->add_option("--space", space_spec)->required();
  c_sep->add_option("--action", action_spec)->required();
  c_sep->add_option("--x", point_x)->required();
  c_sep->add_option("--y", point_y)->required();
  add_common(c_sep);

  auto* c_uni = app.add_subcommand("uniformity-base", "smallest m > 2n with theta(1/m,1/m) < 1/n");
  c_uni->add_option("--action", action_spec)->required();
  c_uni->add_option("--n", uniformity_n)->required();
  add_common(c_uni);

  auto* c_ban = app.add_subcommand("banach", "contraction iteration on a finite space");
  c_ban->add_option("--space", space_spec)->required();
  c_ban->add_option("--map", map_spec)->required();
  c_ban->add_option("--x0", x0)->required();
  c_ban->add_option("--tol", tol);
  c_ban->add_option("--max-iter", max_iter);
  add_common(c_ban);

  auto* c_car = app.add_subcommand("caristi", "fixed point via the caristi order");
  c_car->add_option("--space", space_spec)->required();
  c_car->add_option("--action", action_spec)->required();
  c_car->add_option("--map", map_spec)->required();
  c_car->add_option("--caristi", caristi_spec)->required();
  add_common(c_car);

  auto* c_end = app.add_subcommand("endpoint", "endpoint of a multivalued map");
  c_end->add_option("--space", space_spec)->required();
  c_end->add_option("--action", action_spec)->required();
  c_end->add_option("--map", map_spec)->required();
  c_end->add_option("--caristi", caristi_spec)->required();
  add_common(c_end);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  RunContext ctx;
  try {
    // Load everything up front so a broken input never yields partial output.
    std::optional<actions::Action> action;
    std::optional<spaces::FiniteSpace> space;
    if (!action_spec.empty()) action = load_action(action_spec);
    if (!space_spec.empty()) space = load_space(space_spec);

    ctx.config["seed"] = seed;
    ctx.config["mode"] = mode;
    ctx.config["tol"] = tol;
    ctx.config["tolerances"] = {{"tol_cmp", theta::kTolCmp}, {"tol_eta", theta::kTolEta}};
    ctx.config["action"] = action ? theta::io::action_to_json(*action) : json(nullptr);
    ctx.config["space"] = space ? json(space->name()) : json(nullptr);
    ctx.json_out = json_out;

    if (app.got_subcommand(c_check)) {
      ctx.command = "check-action";
      actions::Sampler sampler{seed, grid, rand_pts, cap};
      ctx.config["sampler"] = {{"seed", seed}, {"grid_points", grid},
                               {"random_points", rand_pts}, {"domain_cap", cap}};
      auto axioms = actions::check_action_axioms(*action, sampler);
      auto eta_rep = actions::check_eta_properties(*action, sampler);
      json result;
      result["axioms"] = theta::io::to_json(axioms);
      result["eta"] = theta::io::to_json(eta_rep);
      result["flags"] = {{"regular", actions::flag_name(action->regular_flag())},
                         {"strict_range", actions::flag_name(action->strict_range_flag())}};
      json viols = json::array();
      for (const auto& v : result["axioms"]["violations"]) viols.push_back(v);
      for (const auto& v : result["eta"]["violations"]) viols.push_back(v);
      bool pass = axioms.pass() && eta_rep.status.at("a1") == "pass" &&
                  eta_rep.status.at("a2") == "pass" && eta_rep.status.at("lemma28") == "pass";
      return finish(ctx, result, viols, pass ? "pass" : "violations");
    }

    if (app.got_subcommand(c_eta)) {
      ctx.command = "eta";
      auto m = mode == "strict" ? actions::EtaMode::strict : actions::EtaMode::existence;
      double t = actions::eta(*action, arg_r, arg_s, m);
      json result = {{"r", arg_r}, {"s", arg_s}, {"t", t},
                     {"residual", std::fabs(action->eval(t, arg_s) - arg_r)}};
      return finish(ctx, result, json::array(), "pass");
    }

    if (app.got_subcommand(c_val)) {
      ctx.command = "validate-space";
      if (!plain && !action)
        theta::raise(Error::Kind::input, "validate-space: --action required unless --plain");
      spaces::MetricReport rep =
          plain ? spaces::validate_plain_metric(*space) : spaces::validate_theta_metric(*space, *action);
      json jrep = theta::io::to_json(rep);
      return finish(ctx, jrep, jrep["violations"], rep.pass() ? "pass" : "violations");
    }

    if (app.got_subcommand(c_ball)) {
      ctx.command = "ball";
      auto b = spaces::open_ball(*space, space->require_index(center), radius, *action);
      return finish(ctx, theta::io::to_json(b, *space), json::array(), "pass");
    }

    if (app.got_subcommand(c_sep)) {
      ctx.command = "separate";
      auto w = spaces::separation_witness(*space, *action, space->require_index(point_x),
                                          space->require_index(point_y));
      return finish(ctx, theta::io::to_json(w, *space), json::array(), "pass");
    }

    if (app.got_subcommand(c_uni)) {
      ctx.command = "uniformity-base";
      long long m = spaces::uniformity_base_index(*action, uniformity_n);
      json result = {{"n", uniformity_n}, {"m", m},
                     {"theta_at_1_over_m", action->eval(1.0 / m, 1.0 / m)}};
      return finish(ctx, result, json::array(), "pass");
    }

    if (app.got_subcommand(c_ban)) {
      ctx.command = "banach";
      auto f = load_map(map_spec, *space);
      ctx.config["map"] = map_spec;
      auto tr = fixedpoint::banach_solve(*space, f, space->require_index(x0), tol, max_iter);
      json result = theta::io::to_json(tr, *space);
      result["contraction_estimate"] =
          space->size() > 1 ? json(fixedpoint::estimate_contraction(*space, f)) : json(nullptr);
      bool ok = tr.status == fixedpoint::SolveStatus::converged;
      return finish(ctx, result, json::array(), ok ? "pass" : "not_converged");
    }

    if (app.got_subcommand(c_car) || app.got_subcommand(c_end)) {
      bool multi = app.got_subcommand(c_end);
      ctx.command = multi ? "endpoint" : "caristi";
      auto cd = load_caristi(caristi_spec, *space);
      ctx.config["caristi"] = caristi_spec;
      ctx.config["map"] = map_spec;
      fixedpoint::CaristiResult res;
      if (multi) {
        auto T = load_multimap(map_spec, *space);
        res = fixedpoint::endpoint(*space, *action, cd, T);
      } else {
        auto T = load_map(map_spec, *space);
        res = fixedpoint::caristi_fixed_point(*space, *action, cd, T);
      }
      json result = theta::io::to_json(res, *space);
      result["hypothesis"] = "verified";
      return finish(ctx, result, json::array(), "pass");
    }

    std::cerr << "error: no command\n";
    return kExitInput;
  } catch (const Error& e) {
    switch (e.kind()) {
      case Error::Kind::hypothesis:
      case Error::Kind::invariant:
        return finish_finding(ctx, e);
      default:
        std::cerr << "error (" << Error::kind_name(e.kind()) << "): " << e.what() << "\n";
        return kExitInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
