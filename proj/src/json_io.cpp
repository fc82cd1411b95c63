#include "theta/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace theta::io {

namespace {

const json& require_field(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    raise(Error::Kind::input, std::string(ctx) + ": missing field '" + key + "'");
  return *it;
}

double require_number(const json& j, const char* key, const char* ctx) {
  const json& v = require_field(j, key, ctx);
  if (!v.is_number())
    raise(Error::Kind::input, std::string(ctx) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

actions::GeneratorFn generator_from_json(const json& jf) {
  if (!jf.is_object()) raise(Error::Kind::input, "generator: params.f must be an object");
  std::string kind = require_field(jf, "kind", "generator.f").get<std::string>();
  if (kind == "scale") {
    double c = require_number(jf, "c", "generator.f");
    if (!(c > 0.0 && c < 1.0))
      raise(Error::Kind::input, "generator.f scale: c must lie in (0, 1)");
    return {"scale(c=" + std::to_string(c) + ")", [c](double t) { return c * t; }};
  }
  if (kind == "rational") return {"rational", [](double t) { return t / (1.0 + t); }};
  if (kind == "log1p") return {"log1p", [](double t) { return std::log1p(t); }};
  raise(Error::Kind::input, "generator.f: unknown kind '" + kind + "'");
}

}  // namespace

actions::Action action_from_json(const json& j) {
  if (!j.is_object()) raise(Error::Kind::input, "action: expected a JSON object");
  std::string kind_str = require_field(j, "kind", "action").get<std::string>();
  auto kind = actions::kind_from_name(kind_str);
  if (!kind) raise(Error::Kind::input, "action: unknown kind '" + kind_str + "'");
  json params = j.value("params", json::object());

  if (*kind == actions::Kind::generator) {
    double lambda = require_number(params, "lambda", "action.params");
    auto gen = generator_from_json(require_field(params, "f", "action.params"));
    return actions::Action::from_generator(std::move(gen), lambda);
  }

  double k = params.value("k", 1.0);
  int n = params.value("n", 1);
  return actions::Action::make(*kind, k, n);
}

json action_to_json(const actions::Action& a) {
  json j;
  j["name"] = a.name();
  j["kind"] = actions::kind_name(a.kind());
  json params = json::object();
  switch (a.kind()) {
    case actions::Kind::k_sum:
    case actions::Kind::k_sum_prod:
      params["k"] = a.param_k();
      break;
    case actions::Kind::root_sum_power:
      params["n"] = a.param_n();
      break;
    case actions::Kind::generator:
      params["lambda"] = a.param_lambda();
      params["f"] = a.generator_fn()->name;
      break;
    default:
      break;
  }
  j["params"] = params;
  return j;
}

spaces::FiniteSpace space_from_json(const json& j, const std::string& name) {
  if (!j.is_object()) raise(Error::Kind::input, "space: expected a JSON object");
  const json& jp = require_field(j, "points", "space");
  const json& jd = require_field(j, "distances", "space");
  if (!jp.is_array() || !jd.is_array())
    raise(Error::Kind::input, "space: 'points' and 'distances' must be arrays");
  std::vector<std::string> labels;
  for (const auto& p : jp) {
    if (!p.is_string()) raise(Error::Kind::input, "space: point labels must be strings");
    labels.push_back(p.get<std::string>());
  }
  std::vector<std::vector<double>> dist;
  for (const auto& row : jd) {
    if (!row.is_array()) raise(Error::Kind::input, "space: distance rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) raise(Error::Kind::input, "space: distances must be numbers");
      r.push_back(v.get<double>());
    }
    dist.push_back(std::move(r));
  }
  return spaces::FiniteSpace(name, std::move(labels), dist);
}

json space_to_json(const spaces::FiniteSpace& sp) {
  json j;
  j["points"] = sp.labels();
  json rows = json::array();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < sp.size(); ++k) row.push_back(sp.dist(i, k));
    rows.push_back(row);
  }
  j["distances"] = rows;
  return j;
}

fixedpoint::TableMap map_from_json(const json& j, const spaces::FiniteSpace& sp) {
  const json& jm = require_field(j, "map", "map");
  if (!jm.is_object()) raise(Error::Kind::input, "map: 'map' must be an object");
  std::map<std::string, std::string> m;
  for (const auto& [from, to] : jm.items()) {
    if (!to.is_string()) raise(Error::Kind::input, "map: image of '" + from + "' must be a label");
    m[from] = to.get<std::string>();
  }
  return fixedpoint::TableMap::from_labels(sp, m);
}

fixedpoint::TableMultiMap multimap_from_json(const json& j, const spaces::FiniteSpace& sp) {
  const json& jm = require_field(j, "map", "multimap");
  if (!jm.is_object()) raise(Error::Kind::input, "multimap: 'map' must be an object");
  std::map<std::string, std::vector<std::string>> m;
  for (const auto& [from, tos] : jm.items()) {
    if (!tos.is_array())
      raise(Error::Kind::input, "multimap: image of '" + from + "' must be an array");
    for (const auto& t : tos) m[from].push_back(t.get<std::string>());
  }
  return fixedpoint::TableMultiMap::from_labels(sp, m);
}

fixedpoint::CaristiData caristi_from_json(const json& j, const spaces::FiniteSpace& sp) {
  const json& jg = require_field(j, "gamma", "caristi");
  std::string gk = require_field(jg, "kind", "caristi.gamma").get<std::string>();
  fixedpoint::Gamma gamma;
  if (gk == "identity")
    gamma = fixedpoint::gamma_identity();
  else if (gk == "rational")
    gamma = fixedpoint::gamma_rational();
  else if (gk == "custom_table") {
    const json& jt = require_field(jg, "table", "caristi.gamma");
    std::vector<std::pair<double, double>> bp;
    for (const auto& row : jt) {
      if (!row.is_array() || row.size() != 2)
        raise(Error::Kind::input, "caristi.gamma: table rows must be [t, value]");
      bp.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    gamma = fixedpoint::gamma_table(std::move(bp));
  } else {
    raise(Error::Kind::input, "caristi.gamma: unknown kind '" + gk + "'");
  }

  const json& jp = require_field(j, "psi", "caristi");
  std::string pk = require_field(jp, "kind", "caristi.psi").get<std::string>();
  if (pk == "table") {
    const json& jv = require_field(jp, "values", "caristi.psi");
    std::vector<std::vector<double>> values;
    for (const auto& row : jv) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.get<double>());
      values.push_back(std::move(r));
    }
    if (values.size() != sp.size())
      raise(Error::Kind::input, "caristi.psi: table does not match the space");
    return {std::move(gamma), fixedpoint::Psi::table(std::move(values))};
  }

  const json& jphi = require_field(jp, "phi", "caristi.psi");
  if (!jphi.is_object()) raise(Error::Kind::input, "caristi.psi: 'phi' must map labels to numbers");
  std::vector<double> phi(sp.size(), 0.0);
  std::vector<bool> seen(sp.size(), false);
  for (const auto& [label, v] : jphi.items()) {
    std::size_t i = sp.require_index(label);
    phi[i] = v.get<double>();
    seen[i] = true;
  }
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (!seen[i])
      raise(Error::Kind::input, "caristi.psi: phi missing for point '" + sp.label(i) + "'");

  if (pk == "exp_phi") return {std::move(gamma), fixedpoint::Psi::exp_phi(std::move(phi))};
  if (pk == "odd_root_phi") {
    int n = jp.value("n", 0);
    return {std::move(gamma), fixedpoint::Psi::odd_root_phi(std::move(phi), n)};
  }
  raise(Error::Kind::input, "caristi.psi: unknown kind '" + pk + "'");
}

// ---------------------------------------------------------------------------
// Report serializers

json to_json(const actions::AxiomReport& rep) {
  json j;
  j["action"] = rep.action;
  j["sampler"] = {{"seed", rep.seed},
                  {"grid_points", rep.grid_points},
                  {"random_points", rep.random_points},
                  {"domain_cap", rep.domain_cap}};
  j["conditions"] = rep.status;
  j["checks"] = rep.checks;
  j["violation_counts"] = rep.violation_counts;
  json viols = json::array();
  for (const auto& v : rep.violations)
    viols.push_back({{"condition", v.condition}, {"inputs", v.inputs}, {"values", v.values}});
  j["violations"] = viols;
  j["pass"] = rep.pass();
  return j;
}

json to_json(const spaces::MetricReport& rep) {
  json j;
  j["space"] = rep.space;
  if (rep.action)
    j["action"] = *rep.action;
  else
    j["action"] = nullptr;
  j["kind"] = rep.kind;
  j["axioms"] = rep.status;
  json viols = json::array();
  for (const auto& v : rep.violations) {
    json e = {{"axiom", v.axiom}, {"i", v.i}, {"j", v.j}, {"lhs", v.lhs}, {"rhs", v.rhs}};
    e["k"] = v.k >= 0 ? json(v.k) : json(nullptr);
    viols.push_back(e);
  }
  j["violations"] = viols;
  j["pass"] = rep.pass();
  return j;
}

json to_json(const spaces::Ball& b, const spaces::FiniteSpace& sp) {
  json j;
  j["center"] = sp.label(b.center);
  j["radius"] = b.radius;
  json members = json::array();
  for (std::size_t m : b.members) members.push_back(sp.label(m));
  j["members"] = members;
  j["radius_in_image"] = b.radius_in_image;
  return j;
}

json to_json(const spaces::OpennessWitness& w, const spaces::FiniteSpace& sp) {
  json j;
  j["delta"] = w.delta;
  j["inner"] = to_json(w.inner, sp);
  j["outer"] = to_json(w.outer, sp);
  j["inclusion_verified"] = true;
  return j;
}

json to_json(const spaces::SeparationWitness& w, const spaces::FiniteSpace& sp) {
  json j;
  j["alpha"] = w.alpha;
  j["r"] = w.r;
  j["s"] = w.s;
  j["ball_x"] = to_json(w.ball_x, sp);
  j["ball_y"] = to_json(w.ball_y, sp);
  j["disjoint_verified"] = true;
  return j;
}

json to_json(const fixedpoint::SolveTrace<std::size_t>& tr, const spaces::FiniteSpace& sp) {
  json j;
  json its = json::array();
  for (std::size_t i : tr.iterates) its.push_back(sp.label(i));
  j["iterates"] = its;
  j["step_dists"] = tr.step_dists;
  j["status"] = fixedpoint::status_name(tr.status);
  j["result"] = tr.result ? json(sp.label(*tr.result)) : json(nullptr);
  return j;
}

json to_json(const fixedpoint::PsiReport& rep, const spaces::FiniteSpace& sp) {
  json j;
  j["conditions"] = rep.status;
  j["e1"] = {{"xhat", sp.label(rep.e1_xhat)}, {"min", rep.e1_min}, {"note", rep.e1_note}};
  j["e3_skipped"] = rep.e3_skipped;
  json viols = json::array();
  for (const auto& v : rep.violations) {
    json pts = json::array();
    for (std::size_t p : v.points) pts.push_back(sp.label(p));
    viols.push_back({{"condition", v.condition}, {"points", pts}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  j["violations"] = viols;
  j["pass"] = rep.pass();
  return j;
}

json to_json(const fixedpoint::GammaReport& rep) {
  json j;
  j["conditions"] = rep.status;
  json viols = json::array();
  for (const auto& v : rep.violations)
    viols.push_back({{"condition", v.condition}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  j["violations"] = viols;
  j["pass"] = rep.pass();
  return j;
}

json to_json(const fixedpoint::CaristiResult& res, const spaces::FiniteSpace& sp) {
  json j;
  j["fixed_point"] = sp.label(res.fixed_point);
  json mins = json::array();
  for (std::size_t m : res.minimal) mins.push_back(sp.label(m));
  j["minimal_elements"] = mins;
  return j;
}

// ---------------------------------------------------------------------------
// Deterministic dumper

namespace {

void dump_value(const json& j, std::string& out, int indent, int depth) {
  auto pad = [&](int d) {
    if (indent >= 0) out.append(static_cast<std::size_t>(indent) * d, ' ');
  };
  auto newline = [&] {
    if (indent >= 0) out.push_back('\n');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      newline();
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        pad(depth + 1);
        out += json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        dump_value(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out.push_back(',');
        newline();
      }
      pad(depth);
      out.push_back('}');
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      newline();
      for (std::size_t i = 0; i < j.size(); ++i) {
        pad(depth + 1);
        dump_value(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out.push_back(',');
        newline();
      }
      pad(depth);
      out.push_back(']');
      return;
    }
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  if (indent >= 0) out.push_back('\n');
  return out;
}

}  // namespace theta::io
