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

#ifndef RESTAKE_CASCADE_H_
#define RESTAKE_CASCADE_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "restake/attack.h"
#include "restake/graph.h"

namespace restake {

enum class CascadeMode { kValid, kStable };

// Attacks applied in order after a shock. Step t must be a valid (or stable)
// attack on the graph left by the shock and steps 1..t-1; services and
// validators are never reused across steps.
struct Cascade {
  std::vector<Attack> steps;
  CascadeMode mode = CascadeMode::kValid;

  friend bool operator==(const Cascade&, const Cascade&) = default;
};

struct CascadeVerdict {
  bool ok = true;
  std::optional<std::size_t> failing_step;  // 0-based
  std::string reason;
  std::optional<Attack> destabilizer;  // set when a stable-mode step is unstable
};

CascadeVerdict verify_cascade(const RestakingGraph& graph, const ValidatorSet& shock,
                              const Cascade& cascade, const EnumerationLimits& limits = {});

// (∪A_t, ∪B_t). Throws PreconditionError on an empty cascade.
Attack flatten_cascade(const Cascade& cascade);

// Global: sigma_D / sigma_V <= psi. Local (coalition given): the shock takes
// at most a psi fraction of the stake exclusive to the coalition; validators
// outside Γ(C) are unconstrained.
bool shock_admissible(const RestakingGraph& graph, const ValidatorSet& shock, const Rational& psi,
                      const std::optional<ServiceSet>& coalition = std::nullopt);

struct LossReport {
  Rational loss;            // psi + cascading loss
  Rational shock_fraction;  // realised sigma_D share (of V, or of Γ(C) locally)
  Rational cascade_fraction;
  ValidatorSet shock;
  Cascade cascade;
};

// Worst-case fraction of all stake lost after a shock of budget psi followed
// by any valid cascade. Cascades flatten into single valid attacks, so the
// search is over shocks and single attacks.
LossReport worst_case_loss_global(const RestakingGraph& graph, const Rational& psi,
                                  const EnumerationLimits& limits = {});

// Worst-case fraction of Γ(C)'s stake lost after a locally admissible shock
// followed by a cascade. Stable cascades do not flatten, so stable mode
// searches sequences (memoised on removed validators and used services).
// Throws PreconditionError when Γ(C) holds no stake.
LossReport worst_case_loss_local(const RestakingGraph& graph, const ServiceSet& coalition,
                                 const Rational& psi, CascadeMode mode = CascadeMode::kStable,
                                 const EnumerationLimits& limits = {});

// Share of stake lost by the cascade's attackers: of V, or of Γ(C).
Rational cascade_loss(const RestakingGraph& graph, const Cascade& cascade,
                      const std::optional<ServiceSet>& coalition = std::nullopt);

// Largest i >= 1 such that some step's services neighbour validators removed
// i steps earlier (the shock counts as step 0); 0 if there is none.
std::size_t reference_depth(const RestakingGraph& graph, const ValidatorSet& shock,
                            const Cascade& cascade);

// Smallest integer T_max >= k (1 + log_{1+gamma}(psi sigma_V / (eps gamma)))
// with eps the minimum stake, found by comparing exact powers of 1 + gamma.
// Every cascade of depth k after a shock within psi on a gamma-slack-secure
// graph has length T < T_max. Requires positive stakes, gamma, psi, k.
long long length_bound(const RestakingGraph& graph, const Rational& gamma, const Rational& psi,
                       std::size_t depth);

// Calls `visit` on every nonempty cascade (each prefix counts) reachable
// after `shock`; stops when `visit` returns false.
void for_each_cascade(const RestakingGraph& graph, const ValidatorSet& shock, CascadeMode mode,
                      const std::function<bool(const Cascade&)>& visit,
                      const EnumerationLimits& limits = {});

}  // namespace restake

#endif  // RESTAKE_CASCADE_H_
