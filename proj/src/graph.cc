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

#include "restake/graph.h"

#include "restake/error.h"

namespace restake {

RestakingGraph::RestakingGraph(std::vector<Service> services,
                               std::vector<Validator> validators,
                               const std::vector<Edge>& edges)
    : services_(std::move(services)), validators_(std::move(validators)) {
  for (std::size_t i = 0; i < services_.size(); ++i) {
    const Service& s = services_[i];
    if (s.id.empty()) throw ModelError(ModelErrc::kEmptyId, "service #" + std::to_string(i));
    if (!service_index_.emplace(s.id, i).second)
      throw ModelError(ModelErrc::kDuplicateId, "service '" + s.id + "'");
    if (s.profit.is_negative())
      throw ModelError(ModelErrc::kNegativeProfit, "service '" + s.id + "' profit " + s.profit.str());
    if (!s.alpha.is_positive() || s.alpha > Rational(1))
      throw ModelError(ModelErrc::kAlphaRange, "service '" + s.id + "' alpha " + s.alpha.str());
  }
  for (std::size_t v = 0; v < validators_.size(); ++v) {
    const Validator& val = validators_[v];
    if (val.id.empty()) throw ModelError(ModelErrc::kEmptyId, "validator #" + std::to_string(v));
    if (!validator_index_.emplace(val.id, v).second)
      throw ModelError(ModelErrc::kDuplicateId, "validator '" + val.id + "'");
    if (val.stake.is_negative())
      throw ModelError(ModelErrc::kNegativeStake,
                       "validator '" + val.id + "' stake " + val.stake.str());
  }
  service_nbrs_.assign(services_.size(), ValidatorSet(validators_.size()));
  validator_nbrs_.assign(validators_.size(), ServiceSet(services_.size()));
  for (const auto& [sid, vid] : edges) {
    auto si = service_index_.find(sid);
    auto vi = validator_index_.find(vid);
    if (si == service_index_.end() || vi == validator_index_.end())
      throw ModelError(ModelErrc::kDanglingEdge, "edge (" + sid + ", " + vid + ")");
    if (service_nbrs_[si->second].contains(vi->second))
      throw ModelError(ModelErrc::kDuplicateEdge, "edge (" + sid + ", " + vid + ")");
    service_nbrs_[si->second].insert(vi->second);
    validator_nbrs_[vi->second].insert(si->second);
  }
}

std::optional<std::size_t> RestakingGraph::find_service(const std::string& id) const {
  auto it = service_index_.find(id);
  if (it == service_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RestakingGraph::find_validator(const std::string& id) const {
  auto it = validator_index_.find(id);
  if (it == validator_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RestakingGraph::service_index(const std::string& id) const {
  if (auto i = find_service(id)) return *i;
  throw ModelError(ModelErrc::kUnknownId, "service '" + id + "'");
}

std::size_t RestakingGraph::validator_index(const std::string& id) const {
  if (auto v = find_validator(id)) return *v;
  throw ModelError(ModelErrc::kUnknownId, "validator '" + id + "'");
}

ServiceSet RestakingGraph::service_set(std::span<const std::string> ids) const {
  ServiceSet out = no_services();
  for (const auto& id : ids) out.insert(service_index(id));
  return out;
}

ValidatorSet RestakingGraph::validator_set(std::span<const std::string> ids) const {
  ValidatorSet out = no_validators();
  for (const auto& id : ids) out.insert(validator_index(id));
  return out;
}

std::vector<std::string> RestakingGraph::ids(const ServiceSet& set) const {
  check_owned(set);
  std::vector<std::string> out;
  for (std::size_t i : set.indices()) out.push_back(services_[i].id);
  return out;
}

std::vector<std::string> RestakingGraph::ids(const ValidatorSet& set) const {
  check_owned(set);
  std::vector<std::string> out;
  for (std::size_t v : set.indices()) out.push_back(validators_[v].id);
  return out;
}

std::vector<Edge> RestakingGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < services_.size(); ++i) {
    for (std::size_t v : service_nbrs_[i].indices())
      out.emplace_back(services_[i].id, validators_[v].id);
  }
  return out;
}

void RestakingGraph::check_owned(const ServiceSet& set) const {
  if (set.universe() != services_.size())
    throw ModelError(ModelErrc::kUnknownId, "service set does not belong to this graph");
}

void RestakingGraph::check_owned(const ValidatorSet& set) const {
  if (set.universe() != validators_.size())
    throw ModelError(ModelErrc::kUnknownId, "validator set does not belong to this graph");
}

bool operator==(const RestakingGraph& a, const RestakingGraph& b) {
  return a.services_ == b.services_ && a.validators_ == b.validators_ &&
         a.service_nbrs_ == b.service_nbrs_;
}

ValidatorSet neighbors(const RestakingGraph& graph, const ServiceSet& services) {
  graph.check_owned(services);
  ValidatorSet out = graph.no_validators();
  for (std::size_t i : services.indices()) out |= graph.service_neighbors(i);
  return out;
}

ServiceSet neighbors(const RestakingGraph& graph, const ValidatorSet& validators) {
  graph.check_owned(validators);
  ServiceSet out = graph.no_services();
  for (std::size_t v : validators.indices()) out |= graph.validator_neighbors(v);
  return out;
}

Rational total_stake(const RestakingGraph& graph, const ValidatorSet& validators) {
  graph.check_owned(validators);
  Rational sum;
  for (std::size_t v : validators.indices()) sum += graph.validator(v).stake;
  return sum;
}

Rational total_profit(const RestakingGraph& graph, const ServiceSet& services) {
  graph.check_owned(services);
  Rational sum;
  for (std::size_t i : services.indices()) sum += graph.service(i).profit;
  return sum;
}

RestakingGraph remove_validators(const RestakingGraph& graph, const ValidatorSet& removed) {
  graph.check_owned(removed);
  std::vector<Validator> kept;
  for (std::size_t v = 0; v < graph.num_validators(); ++v) {
    if (!removed.contains(v)) kept.push_back(graph.validator(v));
  }
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    if (!removed.contains(graph.validator_index(e.second))) edges.push_back(e);
  }
  return RestakingGraph(graph.services(), std::move(kept), edges);
}

ValidatorSet exclusive_validators(const RestakingGraph& graph, const ServiceSet& coalition) {
  graph.check_owned(coalition);
  ValidatorSet out = graph.no_validators();
  for (std::size_t v = 0; v < graph.num_validators(); ++v) {
    if (graph.validator_neighbors(v).is_subset_of(coalition)) out.insert(v);
  }
  return out;
}

}  // namespace restake
