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

#ifndef RESTAKE_GRAPH_H_
#define RESTAKE_GRAPH_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "restake/index_set.h"
#include "restake/rational.h"

namespace restake {

struct Service {
  std::string id;
  Rational profit;  // gain from corrupting the service
  Rational alpha;   // fraction of securing stake needed to corrupt it, in (0, 1]

  friend bool operator==(const Service&, const Service&) = default;
};

struct Validator {
  std::string id;
  Rational stake;

  friend bool operator==(const Validator&, const Validator&) = default;
};

using Edge = std::pair<std::string, std::string>;  // (service id, validator id)

// Bipartite graph of services and the validators restaking for them.
// Immutable once built; vertex order is the order given at construction.
class RestakingGraph {
 public:
  RestakingGraph() = default;

  // Throws ModelError on empty or duplicate ids, negative stake or profit,
  // alpha outside (0, 1], dangling or duplicate edges.
  RestakingGraph(std::vector<Service> services,
                 std::vector<Validator> validators,
                 const std::vector<Edge>& edges);

  std::size_t num_services() const { return services_.size(); }
  std::size_t num_validators() const { return validators_.size(); }

  const std::vector<Service>& services() const { return services_; }
  const std::vector<Validator>& validators() const { return validators_; }
  const Service& service(std::size_t i) const { return services_.at(i); }
  const Validator& validator(std::size_t v) const { return validators_.at(v); }

  const ValidatorSet& service_neighbors(std::size_t i) const {
    return service_nbrs_.at(i);
  }
  const ServiceSet& validator_neighbors(std::size_t v) const {
    return validator_nbrs_.at(v);
  }

  std::optional<std::size_t> find_service(const std::string& id) const;
  std::optional<std::size_t> find_validator(const std::string& id) const;
  // Throw ModelError(kUnknownId) when absent.
  std::size_t service_index(const std::string& id) const;
  std::size_t validator_index(const std::string& id) const;

  ServiceSet no_services() const { return ServiceSet(num_services()); }
  ValidatorSet no_validators() const { return ValidatorSet(num_validators()); }
  ServiceSet all_services() const { return ServiceSet::full(num_services()); }
  ValidatorSet all_validators() const {
    return ValidatorSet::full(num_validators());
  }

  ServiceSet service_set(std::span<const std::string> ids) const;
  ValidatorSet validator_set(std::span<const std::string> ids) const;
  ServiceSet service_set(std::initializer_list<std::string> ids) const {
    return service_set(std::span<const std::string>(ids.begin(), ids.size()));
  }
  ValidatorSet validator_set(std::initializer_list<std::string> ids) const {
    return validator_set(std::span<const std::string>(ids.begin(), ids.size()));
  }
  std::vector<std::string> ids(const ServiceSet& set) const;
  std::vector<std::string> ids(const ValidatorSet& set) const;

  // Edges in canonical order: by service, then by validator.
  std::vector<Edge> edges() const;

  // Throw ModelError(kUnknownId) if the set does not belong to this graph.
  void check_owned(const ServiceSet& set) const;
  void check_owned(const ValidatorSet& set) const;

  // Structural equality: same vertices with the same data in the same order
  // and the same edge set.
  friend bool operator==(const RestakingGraph& a, const RestakingGraph& b);

 private:
  std::vector<Service> services_;
  std::vector<Validator> validators_;
  std::vector<ValidatorSet> service_nbrs_;
  std::vector<ServiceSet> validator_nbrs_;
  std::unordered_map<std::string, std::size_t> service_index_;
  std::unordered_map<std::string, std::size_t> validator_index_;
};

// N(A): validators securing any service of A.
ValidatorSet neighbors(const RestakingGraph& graph, const ServiceSet& services);
// N(B): services secured by any validator of B.
ServiceSet neighbors(const RestakingGraph& graph, const ValidatorSet& validators);

Rational total_stake(const RestakingGraph& graph, const ValidatorSet& validators);
Rational total_profit(const RestakingGraph& graph, const ServiceSet& services);

// G minus the validators in `removed` and their edges. Every service is kept,
// even one left without validators.
RestakingGraph remove_validators(const RestakingGraph& graph,
                                 const ValidatorSet& removed);

// Validators all of whose services lie in `coalition`. Validators with no
// services belong to every such set.
ValidatorSet exclusive_validators(const RestakingGraph& graph,
                                  const ServiceSet& coalition);

}  // namespace restake

#endif  // RESTAKE_GRAPH_H_
