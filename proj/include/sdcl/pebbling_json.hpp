#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "sdcl/pebbling.hpp"

namespace sdcl::pebbling {

inline VertexKind parse_kind(const std::string& s) {
  if (s == "source") return VertexKind::source;
  if (s == "internal") return VertexKind::internal;
  if (s == "sink") return VertexKind::sink;
  throw std::invalid_argument("unknown vertex kind '" + s + "'");
}

/// Reads {"arity": k, "vertices": [{"id", "kind", "preds": [ids]}]}. An
/// optional "type" field must be "or". Variables are assigned afterwards.
inline Dag dag_from_json(const nlohmann::json& j) {
  if (j.contains("type") && j.at("type").get<std::string>() != "or")
    throw UnsupportedFeature("only or-type pebbling formulas are supported");
  Dag dag;
  const long long arity = j.at("arity").get<long long>();
  if (arity < 1) throw std::invalid_argument("arity must be at least 1");
  dag.arity = static_cast<std::size_t>(arity);
  std::map<std::string, std::size_t> index;
  const auto& vs = j.at("vertices");
  for (const auto& jv : vs) {
    Vertex v;
    v.id = jv.at("id").get<std::string>();
    v.kind = parse_kind(jv.at("kind").get<std::string>());
    if (!index.emplace(v.id, dag.vertices.size()).second) throw std::invalid_argument("duplicate vertex id " + v.id);
    dag.vertices.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].contains("preds")) continue;
    for (const auto& p : vs[i].at("preds")) {
      const auto it = index.find(p.get<std::string>());
      if (it == index.end()) throw std::invalid_argument("vertex " + dag.vertices[i].id + ": unknown predecessor");
      dag.vertices[i].preds.push_back(it->second);
    }
  }
  dag.assign_variables();
  return dag;
}

/// Metadata written next to a generated DIMACS file.
inline nlohmann::json sidecar_json(const Instance& inst) {
  nlohmann::json j;
  j["type"] = "or";
  j["arity"] = inst.dag.arity;
  j["num_variables"] = inst.formula.num_variables();
  j["num_clauses"] = inst.formula.live_clauses();
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.dag.vertices.size(); ++i) {
    const Vertex& v = inst.dag.vertices[i];
    nlohmann::json jv;
    jv["id"] = v.id;
    jv["kind"] = to_string(v.kind);
    jv["preds"] = nlohmann::json::array();
    for (std::size_t p : v.preds) jv["preds"].push_back(inst.dag.vertices[p].id);
    jv["out_vars"] = v.out_vars;
    jv["clauses"] = inst.vertex_clauses[i].size();
    vs.push_back(std::move(jv));
  }
  auto& vars = j["variables"] = nlohmann::json::array();
  for (const auto& [var, origin] : inst.variable_origin)
    vars.push_back({{"var", var}, {"vertex", inst.dag.vertices[origin.vertex].id}, {"position", origin.position}});
  j["expected_stage_plan_length"] = stage_plan_length(inst.dag);
  return j;
}

}  // namespace sdcl::pebbling
