// Copyright 2026 The Restake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "restake/graph_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "restake/error.h"

namespace restake {
namespace {

[[noreturn]] void schema(const std::string& what) {
  throw ModelError(ModelErrc::kSchema, what);
}

void only_keys(const Json& obj, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) schema("unknown key '" + key + "' in " + where);
  }
  for (const auto& key : allowed) {
    if (!obj.contains(key)) schema("missing key '" + key + "' in " + where);
  }
}

std::string id_from_json(const Json& value, const std::string& where) {
  if (!value.is_string()) schema(where + " id must be a string");
  return value.get<std::string>();
}

}  // namespace

Rational rational_from_json(const Json& value, std::string_view field) {
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_integer()) return Rational::parse(value.dump());
  schema("'" + std::string(field) + "' must be a string such as \"1/10\" or \"0.1\"");
}

RestakingGraph graph_from_json(const Json& doc) {
  only_keys(doc, {"services", "validators", "edges"}, "graph");
  if (!doc["services"].is_array()) schema("'services' must be an array");
  if (!doc["validators"].is_array()) schema("'validators' must be an array");
  if (!doc["edges"].is_array()) schema("'edges' must be an array");

  std::vector<Service> services;
  for (const Json& s : doc["services"]) {
    only_keys(s, {"id", "profit", "alpha"}, "service");
    services.push_back(Service{id_from_json(s["id"], "service"),
                               rational_from_json(s["profit"], "profit"),
                               rational_from_json(s["alpha"], "alpha")});
  }
  std::vector<Validator> validators;
  for (const Json& v : doc["validators"]) {
    only_keys(v, {"id", "stake"}, "validator");
    validators.push_back(Validator{id_from_json(v["id"], "validator"),
                                   rational_from_json(v["stake"], "stake")});
  }
  std::vector<Edge> edges;
  for (const Json& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      schema("each edge must be a [service, validator] pair of strings");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return RestakingGraph(std::move(services), std::move(validators), edges);
}

RestakingGraph parse_graph(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

Json graph_to_json(const RestakingGraph& graph) {
  Json doc;
  doc["services"] = Json::array();
  for (const Service& s : graph.services()) {
    doc["services"].push_back({{"id", s.id}, {"profit", s.profit.str()}, {"alpha", s.alpha.str()}});
  }
  doc["validators"] = Json::array();
  for (const Validator& v : graph.validators()) {
    doc["validators"].push_back({{"id", v.id}, {"stake", v.stake.str()}});
  }
  doc["edges"] = Json::array();
  for (const auto& [s, v] : graph.edges()) doc["edges"].push_back(Json::array({s, v}));
  return doc;
}

std::string serialize_graph(const RestakingGraph& graph) {
  return graph_to_json(graph).dump(2) + "\n";
}

RestakingGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace restake
