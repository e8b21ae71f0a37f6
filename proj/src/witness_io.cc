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

#include "restake/witness_io.h"

#include <string>

#include "restake/error.h"

namespace restake {
namespace {

[[noreturn]] void schema(const std::string& what) {
  throw ModelError(ModelErrc::kSchema, what);
}

void expect_keys(const Json& doc, std::initializer_list<const char*> keys, const char* where) {
  if (!doc.is_object()) schema(std::string(where) + " must be an object");
  for (const auto& [key, _] : doc.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) schema("unknown key '" + key + "' in " + where);
  }
  for (const char* k : keys) {
    if (!doc.contains(k)) schema(std::string("missing key '") + k + "' in " + where);
  }
}

template <class Set, class Lookup>
Set set_from_json(Set set, const Json& ids, Lookup&& lookup, const char* what) {
  if (!ids.is_array()) schema(std::string(what) + " must be an array of ids");
  for (const Json& id : ids) {
    if (!id.is_string()) schema(std::string(what) + " ids must be strings");
    const std::size_t i = lookup(id.get<std::string>());
    if (set.contains(i)) throw ModelError(ModelErrc::kDuplicateId, "repeated id '" + id.get<std::string>() + "'");
    set.insert(i);
  }
  return set;
}

}  // namespace

Json ids_to_json(const RestakingGraph& graph, const ServiceSet& set) {
  return Json(graph.ids(set));
}

Json ids_to_json(const RestakingGraph& graph, const ValidatorSet& set) {
  return Json(graph.ids(set));
}

ServiceSet services_from_json(const RestakingGraph& graph, const Json& ids) {
  return set_from_json(graph.no_services(), ids,
                       [&](const std::string& id) { return graph.service_index(id); }, "services");
}

ValidatorSet validators_from_json(const RestakingGraph& graph, const Json& ids) {
  return set_from_json(graph.no_validators(), ids,
                       [&](const std::string& id) { return graph.validator_index(id); }, "validators");
}

Json attack_to_json(const RestakingGraph& graph, const Attack& attack) {
  Json doc = Json::object();
  doc["services"] = ids_to_json(graph, attack.services);
  doc["validators"] = ids_to_json(graph, attack.validators);
  return doc;
}

Attack attack_from_json(const RestakingGraph& graph, const Json& doc) {
  expect_keys(doc, {"services", "validators"}, "attack");
  return Attack{services_from_json(graph, doc["services"]),
                validators_from_json(graph, doc["validators"])};
}

std::string_view to_string(CascadeMode mode) {
  return mode == CascadeMode::kStable ? "stable" : "valid";
}

CascadeMode cascade_mode_from_string(std::string_view name) {
  if (name == "valid") return CascadeMode::kValid;
  if (name == "stable") return CascadeMode::kStable;
  schema("cascade mode must be \"valid\" or \"stable\", got \"" + std::string(name) + "\"");
}

Json cascade_to_json(const RestakingGraph& graph, const ValidatorSet& shock,
                     const Cascade& cascade) {
  Json doc = Json::object();
  doc["shock"] = ids_to_json(graph, shock);
  Json steps = Json::array();
  for (const Attack& step : cascade.steps) steps.push_back(attack_to_json(graph, step));
  doc["steps"] = std::move(steps);
  doc["mode"] = std::string(to_string(cascade.mode));
  return doc;
}

std::pair<ValidatorSet, Cascade> cascade_from_json(const RestakingGraph& graph,
                                                   const Json& doc) {
  expect_keys(doc, {"shock", "steps", "mode"}, "cascade");
  if (!doc["mode"].is_string()) schema("cascade mode must be a string");
  if (!doc["steps"].is_array()) schema("cascade steps must be an array");
  Cascade cascade;
  cascade.mode = cascade_mode_from_string(doc["mode"].get<std::string>());
  for (const Json& step : doc["steps"]) cascade.steps.push_back(attack_from_json(graph, step));
  return {validators_from_json(graph, doc["shock"]), std::move(cascade)};
}

}  // namespace restake
