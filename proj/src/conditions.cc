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

#include "restake/conditions.h"

#include <functional>

#include "restake/error.h"

namespace restake {
namespace {

struct Setup {
  ValidatorSet quantified;
  std::vector<std::optional<Rational>> alpha;  // nullopt: service contributes nothing
  ServiceSet flagged;
};

// Global condition: every validator with services, the plain alphas.
Setup global_setup(const RestakingGraph& g) {
  Setup st{g.no_validators(), {}, g.no_services()};
  for (std::size_t v = 0; v < g.num_validators(); ++v) {
    if (!g.validator_neighbors(v).empty()) st.quantified.insert(v);
  }
  for (std::size_t s = 0; s < g.num_services(); ++s) {
    const Service& svc = g.service(s);
    const bool unsecured = total_stake(g, g.service_neighbors(s)).is_zero();
    if (svc.profit.is_positive() && unsecured) st.flagged.insert(s);
    st.alpha.push_back(svc.profit.is_positive() && !unsecured ? std::optional(svc.alpha) : std::nullopt);
  }
  return st;
}

Setup local_setup(const RestakingGraph& g, const ServiceSet& c) {
  g.check_owned(c);
  const ValidatorSet exclusive = exclusive_validators(g, c);
  Setup st{neighbors(g, c) & exclusive, std::vector<std::optional<Rational>>(g.num_services()),
           g.no_services()};
  for (std::size_t s : c.indices()) {
    const Service& svc = g.service(s);
    if (!svc.profit.is_positive()) continue;
    const Rational secured = total_stake(g, g.service_neighbors(s));
    if (secured.is_zero()) {
      st.flagged.insert(s);
      continue;
    }
    const Rational alpha_prime = adjusted_alpha(g, c, s).alpha_prime;
    if (!alpha_prime.is_positive()) {
      st.flagged.insert(s);
      continue;
    }
    st.alpha[s] = alpha_prime;
  }
  return st;
}

// Load of v at gamma = 0: sum of pi_s / (alpha_s sigma_N(s)).
Rational base_load(const RestakingGraph& g, const Setup& st, std::size_t v) {
  Rational load;
  for (std::size_t s : g.validator_neighbors(v).indices()) {
    if (!st.alpha[s]) continue;
    load += g.service(s).profit / (*st.alpha[s] * total_stake(g, g.service_neighbors(s)));
  }
  return load;
}

ConditionReport evaluate(const RestakingGraph& g, const Setup& st, const Rational& gamma) {
  if (gamma.is_negative()) throw PreconditionError("gamma must be >= 0, got " + gamma.str());
  ConditionReport report{true, {}, g.no_validators(), st.flagged};
  const Rational factor = Rational(1) + gamma;
  for (std::size_t v : st.quantified.indices()) {
    const Rational load = factor * base_load(g, st, v);
    const Rational& stake = g.validator(v).stake;
    if (stake * load > stake) report.violating.insert(v);
    report.loads.push_back({v, load});
  }
  report.holds = report.violating.empty() && report.flagged.empty();
  return report;
}

GammaBound max_gamma(const RestakingGraph& g, const Setup& st) {
  GammaBound bound;
  if (!st.flagged.empty()) {
    bound.status = GammaStatus::kNever;
    return bound;
  }
  Rational worst;
  for (std::size_t v : st.quantified.indices()) {
    if (!g.validator(v).stake.is_positive()) continue;
    Rational load = base_load(g, st, v);
    if (load > worst) {
      worst = load;
      bound.bottleneck = v;
    }
  }
  if (worst.is_zero()) return bound;
  bound.gamma = Rational(1) / worst - Rational(1);
  bound.status = bound.gamma.is_negative() ? GammaStatus::kNever : GammaStatus::kFinite;
  return bound;
}

}  // namespace

ConditionReport el_condition(const RestakingGraph& graph) {
  return evaluate(graph, global_setup(graph), Rational(0));
}

ConditionReport el_condition_scaled(const RestakingGraph& graph, const Rational& gamma) {
  return evaluate(graph, global_setup(graph), gamma);
}

GammaBound el_max_gamma(const RestakingGraph& graph) {
  return max_gamma(graph, global_setup(graph));
}

AdjustedAlpha adjusted_alpha(const RestakingGraph& graph, const ServiceSet& coalition,
                             std::size_t service) {
  graph.check_owned(coalition);
  if (!coalition.contains(service)) throw PreconditionError("service is not in the coalition");
  const ValidatorSet& nbrs = graph.service_neighbors(service);
  const Rational secured = total_stake(graph, nbrs);
  if (secured.is_zero())
    throw PreconditionError("adjusted alpha undefined: service '" + graph.service(service).id +
                            "' has no securing stake");
  const Rational shared = total_stake(graph, nbrs - exclusive_validators(graph, coalition));
  return {service, graph.service(service).alpha - shared / secured};
}

ConditionReport el_condition_local(const RestakingGraph& graph, const ServiceSet& coalition,
                                   const Rational& gamma) {
  return evaluate(graph, local_setup(graph, coalition), gamma);
}

GammaBound el_max_gamma_local(const RestakingGraph& graph, const ServiceSet& coalition) {
  return max_gamma(graph, local_setup(graph, coalition));
}

}  // namespace restake
