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

#ifndef RESTAKE_ATTACK_H_
#define RESTAKE_ATTACK_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "restake/graph.h"

namespace restake {

// (A, B): validators B attempting to corrupt services A.
struct Attack {
  ServiceSet services;
  ValidatorSet validators;

  friend bool operator==(const Attack&, const Attack&) = default;
};

// (X, Y) with Y drawn from validators exclusive to the coalition.
struct AttackHeader {
  ServiceSet services;
  ValidatorSet exclusive;

  friend bool operator==(const AttackHeader&, const AttackHeader&) = default;
};

// Bounds on exhaustive searches. Exceeding them raises CapExceeded.
struct EnumerationLimits {
  std::size_t max_services = 16;
  std::size_t max_validators = 20;
};

// Every s in A has sigma(B ∩ N(s)) >= alpha_s * sigma(N(s)). Empty A is a
// coalition for any B.
bool is_attacking_coalition(const RestakingGraph& graph, const Attack& attack);

// Attacking coalition whose profit strictly exceeds the attackers' stake.
bool is_valid_attack(const RestakingGraph& graph, const Attack& attack);

struct MinAttack {
  ValidatorSet validators;
  Rational stake;
};

// Cheapest B making (A, B) a coalition; ties broken by canonical set order.
// With alpha = 1 on all of A this is N(A) minus zero-stake validators and
// no search is needed.
MinAttack min_attack_stake(const RestakingGraph& graph, const ServiceSet& services,
                           const EnumerationLimits& limits = {});

// All valid attacks with nonempty A, ordered by (A, B) canonically.
std::vector<Attack> enumerate_valid_attacks(const RestakingGraph& graph,
                                            const EnumerationLimits& limits = {});

struct SecurityVerdict {
  bool secure = true;
  std::optional<Attack> counterexample;  // cheapest attack on the first bad A
};
SecurityVerdict is_secure(const RestakingGraph& graph,
                          const EnumerationLimits& limits = {});

struct SlackVerdict {
  bool holds = true;
  std::optional<Attack> violation;  // coalition with (1+gamma) pi_A > sigma_B
};
// Every attacking coalition has (1 + gamma) * pi_A <= sigma_B.
SlackVerdict is_gamma_slack_secure(const RestakingGraph& graph, const Rational& gamma,
                                   const EnumerationLimits& limits = {});

enum class SlackStatus { kInsecure, kFinite, kUnbounded };

struct SlackResult {
  SlackStatus status = SlackStatus::kUnbounded;
  // min over profitable coalitions of sigma_B / pi_A - 1; negative when
  // insecure, meaningless when unbounded.
  Rational gamma;
  std::optional<Attack> witness;
};

// Largest gamma for which the graph is secure with gamma-slack.
SlackResult max_slack(const RestakingGraph& graph, const EnumerationLimits& limits = {});

struct StabilityVerdict {
  bool stable = true;
  std::optional<Attack> destabilizer;  // valid sub-attack (A', B') breaking it
};

// A valid attack is stable when every valid (A', B') != (A, B) with A' ⊆ A,
// B' ⊆ B has sigma(B \ B') < pi(A \ A'). Throws PreconditionError if the
// attack is not valid.
StabilityVerdict is_stable_attack(const RestakingGraph& graph, const Attack& attack,
                                  const EnumerationLimits& limits = {});

// (X, Y) is a header when Y ⊆ Γ(X) and Y together with validators outside
// Γ(X) can corrupt every service of X. Throws PreconditionError when
// Y ⊄ Γ(X).
bool is_attack_header(const RestakingGraph& graph, const ServiceSet& services,
                      const ValidatorSet& exclusive);

struct HeaderVerdict {
  bool holds = true;
  // The violating header with the largest deficit (1+gamma) pi_X - sigma_Y.
  std::optional<AttackHeader> violation;
};

// Checks (1 + gamma) * pi_X <= sigma_Y for every X ⊆ C and every Y ⊆ Γ(C)
// such that Y plus all validators outside Γ(C) corrupt X. Depends only on
// C's neighbourhood, so it is invariant under C-local variants.
HeaderVerdict check_header_overcollateralization(const RestakingGraph& graph,
                                                 const ServiceSet& coalition,
                                                 const Rational& gamma,
                                                 const EnumerationLimits& limits = {});

// Largest gamma for which check_header_overcollateralization holds;
// kInsecure when even gamma = 0 fails.
SlackResult max_header_slack(const RestakingGraph& graph, const ServiceSet& coalition,
                             const EnumerationLimits& limits = {});

}  // namespace restake

#endif  // RESTAKE_ATTACK_H_
