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

#ifndef RESTAKE_TESTS_RANDOM_GRAPHS_H_
#define RESTAKE_TESTS_RANDOM_GRAPHS_H_

#include <random>
#include <string>
#include <vector>

#include "restake/graph.h"

namespace testing {

struct RandomGraphOptions {
  std::size_t max_services = 4;
  std::size_t max_validators = 6;
  bool positive_stakes = false;
  double edge_probability = 0.5;
};

// Small graphs with values from a fixed grid, so that ties and boundary
// cases come up often.
inline restake::RestakingGraph random_graph(std::mt19937_64& rng,
                                            const RandomGraphOptions& opt = {}) {
  using restake::Rational;
  static const std::vector<Rational> stakes = {Rational(0), Rational(1, 2), Rational(1),
                                               Rational(3, 2), Rational(2), Rational(3)};
  static const std::vector<Rational> profits = {Rational(0), Rational(1, 2), Rational(1),
                                                Rational(2), Rational(3)};
  static const std::vector<Rational> alphas = {Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                               Rational(1)};
  auto pick = [&](const std::vector<Rational>& grid, std::size_t from) {
    std::uniform_int_distribution<std::size_t> d(from, grid.size() - 1);
    return grid[d(rng)];
  };
  std::uniform_int_distribution<std::size_t> ns(1, opt.max_services);
  std::uniform_int_distribution<std::size_t> nv(1, opt.max_validators);
  std::bernoulli_distribution edge(opt.edge_probability);

  std::vector<restake::Service> services(ns(rng));
  for (std::size_t i = 0; i < services.size(); ++i)
    services[i] = {"s" + std::to_string(i), pick(profits, 0), pick(alphas, 0)};
  std::vector<restake::Validator> validators(nv(rng));
  for (std::size_t v = 0; v < validators.size(); ++v)
    validators[v] = {"v" + std::to_string(v), pick(stakes, opt.positive_stakes ? 1 : 0)};
  std::vector<restake::Edge> edges;
  for (const auto& s : services)
    for (const auto& v : validators)
      if (edge(rng)) edges.emplace_back(s.id, v.id);
  return restake::RestakingGraph(std::move(services), std::move(validators), edges);
}

}  // namespace testing

#endif  // RESTAKE_TESTS_RANDOM_GRAPHS_H_
