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

#ifndef RESTAKE_WITNESS_IO_H_
#define RESTAKE_WITNESS_IO_H_

#include <string_view>
#include <utility>

#include "restake/cascade.h"
#include "restake/graph_io.h"

namespace restake {

// Id lists in the graph's canonical order. Parsing rejects unknown or
// repeated ids with ModelError.
Json ids_to_json(const RestakingGraph& graph, const ServiceSet& set);
Json ids_to_json(const RestakingGraph& graph, const ValidatorSet& set);
ServiceSet services_from_json(const RestakingGraph& graph, const Json& ids);
ValidatorSet validators_from_json(const RestakingGraph& graph, const Json& ids);

// {"services": [...], "validators": [...]}
Json attack_to_json(const RestakingGraph& graph, const Attack& attack);
Attack attack_from_json(const RestakingGraph& graph, const Json& doc);

std::string_view to_string(CascadeMode mode);
CascadeMode cascade_mode_from_string(std::string_view name);

// {"shock": [...], "steps": [{"services": [...], "validators": [...]}, ...],
//  "mode": "valid" | "stable"}
Json cascade_to_json(const RestakingGraph& graph, const ValidatorSet& shock,
                     const Cascade& cascade);
std::pair<ValidatorSet, Cascade> cascade_from_json(const RestakingGraph& graph,
                                                   const Json& doc);

}  // namespace restake

#endif  // RESTAKE_WITNESS_IO_H_
