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

#ifndef RESTAKE_CONDITIONS_H_
#define RESTAKE_CONDITIONS_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "restake/graph.h"

namespace restake {

// Polynomial-time sufficient conditions for security. None of them is
// necessary: a failing condition says nothing about whether an attack exists.

struct ValidatorLoad {
  std::size_t validator;
  // sum over the validator's services of (1+gamma) pi_s / (alpha_s sigma_N(s)),
  // i.e. the left-hand side of the per-validator inequality divided by sigma_v.
  Rational load;
};

struct ConditionReport {
  bool holds = true;
  std::vector<ValidatorLoad> loads;  // one per quantified validator, graph order
  ValidatorSet violating;
  // Profitable services that can be corrupted for free (no securing stake,
  // or no exclusive stake left after the local adjustment).
  ServiceSet flagged;
};

// For every validator v with services: sum_{s in N(v)} sigma_v / sigma_N(s) * pi_s / alpha_s <= sigma_v.
ConditionReport el_condition(const RestakingGraph& graph);
// Same with every profit inflated by (1 + gamma).
ConditionReport el_condition_scaled(const RestakingGraph& graph, const Rational& gamma);

enum class GammaStatus { kUnbounded, kFinite, kNever };

struct GammaBound {
  GammaStatus status = GammaStatus::kUnbounded;
  Rational gamma;                          // valid when kFinite
  std::optional<std::size_t> bottleneck;   // validator with the largest load
};

// Largest gamma for which el_condition_scaled holds.
GammaBound el_max_gamma(const RestakingGraph& graph);

struct AdjustedAlpha {
  std::size_t service;
  Rational alpha_prime;  // alpha_s - sigma(N(s) \ Γ(C)) / sigma(N(s)); may be <= 0
};

// Throws PreconditionError if s is not in C or N(s) holds no stake.
AdjustedAlpha adjusted_alpha(const RestakingGraph& graph, const ServiceSet& coalition,
                             std::size_t service);

// Local analogue: quantifies over validators of N(C) whose services all lie
// in C, with alpha replaced by the adjusted alpha. Any profitable service of
// C with adjusted alpha <= 0 (or no securing stake) fails the condition.
ConditionReport el_condition_local(const RestakingGraph& graph, const ServiceSet& coalition,
                                   const Rational& gamma);

GammaBound el_max_gamma_local(const RestakingGraph& graph, const ServiceSet& coalition);

}  // namespace restake

#endif  // RESTAKE_CONDITIONS_H_
