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

#ifndef RESTAKE_GRAPH_IO_H_
#define RESTAKE_GRAPH_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "restake/graph.h"

namespace restake {

using Json = nlohmann::ordered_json;

// Graph file format:
//   {"services":   [{"id": "x", "profit": "1", "alpha": "1"}, ...],
//    "validators": [{"id": "a", "stake": "1/10"}, ...],
//    "edges":      [["x", "a"], ...]}
// Numbers are strings holding a fraction "p/q" or a finite decimal; plain
// JSON integers are also accepted. Unknown keys are rejected.
RestakingGraph parse_graph(std::string_view text);
RestakingGraph graph_from_json(const Json& doc);

// Emits numbers in canonical "p/q" form and edges in canonical order, so
// equal graphs serialize to identical bytes.
Json graph_to_json(const RestakingGraph& graph);
std::string serialize_graph(const RestakingGraph& graph);

RestakingGraph load_graph_file(const std::string& path);

// Parses a JSON number field (string or integer) exactly.
Rational rational_from_json(const Json& value, std::string_view field);

}  // namespace restake

#endif  // RESTAKE_GRAPH_IO_H_
