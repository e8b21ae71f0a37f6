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

#ifndef RESTAKE_CONSTRUCTIONS_H_
#define RESTAKE_CONSTRUCTIONS_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "restake/attack.h"
#include "restake/cascade.h"
#include "restake/graph.h"
#include "restake/graph_io.h"

namespace restake {

// Facts a generated graph is built to satisfy. check_claim recomputes each
// one with the analysis functions.
enum class ClaimKind {
  kSecure,           // is_secure == expect
  kEl,               // el_condition holds == expect
  kElScaled,         // el_condition_scaled(gamma) holds == expect
  kElTight,          // load == 1 at gamma for every listed validator
  kMaxRatio,         // max pi_s / sigma_v == value
  kConnected,        // one connected component == expect
  kProperMargin,     // sigma_B >= pi_A + 1 off (S, V) == expect
  kExclusive,        // Γ(coalition) == validators
  kShockAdmissible,  // shock_admissible(shock, psi, coalition) == expect
  kValidAttack,      // attack valid on G↘shock == expect
  kStableAttack,     // attack stable on G↘shock == expect; witness checked
  kAttackSurplus,    // pi_A - sigma_B on G↘shock == value
  kCascade,          // verify_cascade(shock, cascade) == expect
  kLossGlobal,       // worst_case_loss_global(psi) relation value
  kLossLocal,        // worst_case_loss_local(coalition, psi, mode) relation value
  kLossWitness,      // admissible shock + verified cascade reaching relation value
  kHeader,           // header condition at gamma == expect; witness checked
  kTotalStake,       // sigma_V == value
  kMaxSlack,         // max_slack finite with gamma == value
  kLocalVariant,     // graph is a local variant of `original` for coalition
};

enum class Relation { kEq, kGe };

struct Claim {
  std::string name;
  ClaimKind kind = ClaimKind::kSecure;
  bool expect = true;
  Relation relation = Relation::kEq;
  std::optional<Rational> value;
  std::optional<Rational> gamma;
  std::optional<Rational> psi;
  std::optional<ServiceSet> coalition;
  std::optional<ValidatorSet> shock;
  std::optional<ValidatorSet> validators;
  std::optional<Attack> attack;
  std::optional<Attack> witness;
  std::optional<Cascade> cascade;
  CascadeMode mode = CascadeMode::kStable;
  std::shared_ptr<const RestakingGraph> original;
};

struct ConstructionOutput {
  RestakingGraph graph;
  std::vector<Claim> claims;
};

struct ClaimResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

ClaimResult check_claim(const RestakingGraph& graph, const Claim& claim,
                        const EnumerationLimits& limits = {});
// Checks every claim; a claim whose check exceeds the caps fails with the
// cap diagnostic.
std::vector<ClaimResult> check_expected(const ConstructionOutput& output,
                                        const EnumerationLimits& limits = {});

std::string_view to_string(ClaimKind kind);
Json claims_to_json(const RestakingGraph& graph, const std::vector<Claim>& claims);
std::vector<Claim> claims_from_json(const RestakingGraph& graph, const Json& doc);

// Graph helpers used by the claims.
bool is_connected(const RestakingGraph& graph);
// Requires every stake positive.
Rational max_profit_stake_ratio(const RestakingGraph& graph);
// First (in canonical order) nonempty A != S whose cheapest coalition has
// sigma_B < pi_A + 1. A = S is skipped.
std::optional<Attack> proper_margin_violation(const RestakingGraph& graph,
                                              const EnumerationLimits& limits = {});
// variant keeps C, N(C), profits and alphas on C, and stakes and service
// neighbourhoods (by id) on N(C).
bool is_local_variant(const RestakingGraph& original, const RestakingGraph& variant,
                      const ServiceSet& coalition);

// One service x on validators a (stake eps) and b (stake 1 - eps), pi = 1,
// alpha = 1. Requires 0 < eps < 1.
ConstructionOutput gen_two_validator(const Rational& eps);

// Service x on a and b, isolated validator c, tuned so the scaled condition
// is tight at gamma while a shock of a at budget psi leaves a profitable
// attack on x. Requires psi, gamma, eps, sigma_a > 0, eps <= psi / gamma and
// 0 <= (1 + 1/gamma) psi - eps <= 1.
ConstructionOutput gen_noslack(const Rational& psi, const Rational& gamma, const Rational& eps,
                               const Rational& sigma_a);

// Services x, y, z on a 3-cycle of validators a, b, c. Requires
// gamma, pi > 0 and 0 <= sigma_a < 2 pi.
ConstructionOutput gen_triangle(const Rational& gamma, const Rational& pi,
                                const Rational& sigma_a);

// n unit validators v0..v(n-1); blocks u_i on {6i..6i+5} and triples t_j on
// {3j+1, 3j+2, 3j+3} mod n, every profit 2 and alpha 1. Requires 6 | n.
ConstructionOutput gen_ring(std::size_t n);

// Adds service s* and validators a*, b* around a secure graph so the
// coalition sees nothing new but loses all its exclusive stake once a* is
// shocked away.
ConstructionOutput gen_local_variant(const RestakingGraph& graph, const ServiceSet& coalition,
                                     const Rational& eps,
                                     const EnumerationLimits& limits = {});

// x, y both on a, b; pi = 2, alpha = 1/2, stake 1.
ConstructionOutput gen_stable_union_counterexample();

ConstructionOutput gen_fig4_left();
ConstructionOutput gen_fig4_right();

// Names accepted by generate_by_name, with their parameter lists.
struct GeneratorInfo {
  std::string name;
  std::vector<std::string> params;
};
const std::vector<GeneratorInfo>& generators();
// Parameters are rationals (n for ring is an integer). gen_local_variant is
// not reachable here since it needs an input graph.
ConstructionOutput generate_by_name(std::string_view name, const std::vector<Rational>& params);

}  // namespace restake

#endif  // RESTAKE_CONSTRUCTIONS_H_
