#pragma once

// JSON interchange: loaders for actions, spaces, maps and Caristi data, report
// serializers, and a deterministic dumper that writes every floating-point
// number with 17 significant digits.

#include <string>

#include <json.hpp>

#include "theta/fixedpoint.hpp"
#include "theta/fixtures.hpp"
#include "theta/space.hpp"

namespace theta::io {

using nlohmann::json;

// {"name": ..., "kind": ..., "params": {...}}; generator kind takes
// params.lambda plus params.f = {"kind": "scale"|"rational"|"log1p", ...}.
actions::Action action_from_json(const json& j);
json action_to_json(const actions::Action& a);

// {"points": [...], "distances": [[...], ...]}
spaces::FiniteSpace space_from_json(const json& j, const std::string& name);
json space_to_json(const spaces::FiniteSpace& sp);

// {"map": {label: label, ...}}
fixedpoint::TableMap map_from_json(const json& j, const spaces::FiniteSpace& sp);
// {"map": {label: [label, ...], ...}}
fixedpoint::TableMultiMap multimap_from_json(const json& j, const spaces::FiniteSpace& sp);

// {"gamma": {"kind": identity|rational|custom_table, "table": [[t,v],...]},
//  "psi": {"kind": table|exp_phi|odd_root_phi, "values": [[...]],
//          "phi": {label: number}, "n": integer}}
fixedpoint::CaristiData caristi_from_json(const json& j, const spaces::FiniteSpace& sp);

json to_json(const actions::AxiomReport& rep);
json to_json(const spaces::MetricReport& rep);
json to_json(const spaces::Ball& b, const spaces::FiniteSpace& sp);
json to_json(const spaces::OpennessWitness& w, const spaces::FiniteSpace& sp);
json to_json(const spaces::SeparationWitness& w, const spaces::FiniteSpace& sp);
json to_json(const fixedpoint::SolveTrace<std::size_t>& tr, const spaces::FiniteSpace& sp);
json to_json(const fixedpoint::PsiReport& rep, const spaces::FiniteSpace& sp);
json to_json(const fixedpoint::GammaReport& rep);
json to_json(const fixedpoint::CaristiResult& res, const spaces::FiniteSpace& sp);

// Deterministic dump: keys in map order, doubles via "%.17g", non-finite
// numbers as null. indent < 0 gives a compact single line.
std::string dump_json(const json& j, int indent = 2);

}  // namespace theta::io
