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

#ifndef RESTAKE_SRC_KERNEL_H_
#define RESTAKE_SRC_KERNEL_H_

// Integer view of a restaking graph for exhaustive search. Stakes and
// profits are multiplied by the lcm of their denominators so that every
// comparison in the hot loops is between 128-bit integers. Only graphs with
// at most 64 services and 64 validators have a kernel.

#include <bit>
#include <cstddef>
#include <optional>
#include <vector>

#include "restake/attack.h"
#include "restake/error.h"
#include "restake/graph.h"

namespace restake::detail {

using Wide = __int128;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
inline Mask low_bits(std::size_t n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

mpz_class to_mpz(Wide x);
// Throws ModelError(kMagnitude) beyond the kernel's range.
Wide from_mpz(const mpz_class& x);

class Kernel {
 public:
  explicit Kernel(const RestakingGraph& graph);

  const RestakingGraph& graph() const { return *graph_; }
  std::size_t num_services() const { return ns_; }
  std::size_t num_validators() const { return nv_; }
  Mask all_services() const { return low_bits(ns_); }
  Mask all_validators() const { return low_bits(nv_); }

  Wide stake(std::size_t v) const { return stake_[v]; }
  Wide profit(std::size_t s) const { return profit_[s]; }
  Mask service_nbrs(std::size_t s) const { return service_nbrs_[s]; }
  Mask validator_nbrs(std::size_t v) const { return validator_nbrs_[v]; }
  Wide alpha_num(std::size_t s) const { return alpha_num_[s]; }
  Wide alpha_den(std::size_t s) const { return alpha_den_[s]; }
  Mask positive_stake() const { return positive_stake_; }
  Mask zero_profit() const { return zero_profit_; }

  Wide stake_of(Mask validators) const;
  Wide profit_of(Mask services) const;
  Mask neighbors_of_services(Mask services) const;
  Mask neighbors_of_validators(Mask validators) const;

  // Services of `candidates` that `attackers` can corrupt on G with the
  // validators in `removed` deleted.
  Mask coverage(Mask attackers, Mask removed, Mask candidates) const;
  bool is_coalition(Mask services, Mask attackers, Mask removed) const {
    return coverage(attackers, removed, services) == services;
  }
  bool is_valid(Mask services, Mask attackers, Mask removed) const {
    return services != 0 && (attackers & removed) == 0 &&
           profit_of(services) > stake_of(attackers) &&
           is_coalition(services, attackers, removed);
  }
  bool all_alpha_one(Mask services) const { return (services & ~alpha_one_) == 0; }

  // Scaled integer back to the rational it represents.
  Rational stake_value(Wide scaled) const;

  ServiceSet services(Mask m) const { return ServiceSet::from_mask(ns_, m); }
  ValidatorSet validators(Mask m) const { return ValidatorSet::from_mask(nv_, m); }
  Attack attack(Mask a, Mask b) const { return Attack{services(a), validators(b)}; }

 private:
  const RestakingGraph* graph_;
  std::size_t ns_ = 0;
  std::size_t nv_ = 0;
  mpq_class scale_;
  std::vector<Wide> stake_;
  std::vector<Wide> profit_;
  std::vector<Wide> alpha_num_;
  std::vector<Wide> alpha_den_;
  std::vector<Mask> service_nbrs_;
  std::vector<Mask> validator_nbrs_;
  Mask positive_stake_ = 0;
  Mask zero_profit_ = 0;
  Mask alpha_one_ = 0;
};

// Visits every B ⊆ universe in Gray-code order, reporting B, sigma(B) and
// the services of `interest` corrupted by base ∪ B on G↘removed. Each step
// costs O(deg) instead of O(|S| |V|). `visit` returns false to stop.
template <class Visit>
void walk_validator_subsets(const Kernel& k, Mask base, Mask universe, Mask removed,
                            Mask interest, Visit&& visit) {
  const std::size_t ns = k.num_services();
  std::vector<Wide> part(ns, 0);
  std::vector<Wide> need(ns, 0);
  Mask cov = 0;
  for (std::size_t s = 0; s < ns; ++s) {
    if (((interest >> s) & 1) == 0) continue;
    const Mask live = k.service_nbrs(s) & ~removed;
    part[s] = k.alpha_den(s) * k.stake_of(base & live);
    need[s] = k.alpha_num(s) * k.stake_of(live);
    if (part[s] >= need[s]) cov |= bit(s);
  }
  std::vector<std::size_t> members;
  for (Mask m = universe; m != 0; m &= m - 1)
    members.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  Mask current = 0;
  Wide sigma = 0;
  if (!visit(current, sigma, cov)) return;
  const std::size_t n = members.size();
  if (n >= 63) throw CapExceeded("subset walk over more than 62 validators");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < count; ++i) {
    const std::size_t v = members[static_cast<std::size_t>(std::countr_zero(i))];
    const bool adding = ((current >> v) & 1) == 0;
    current ^= bit(v);
    const Wide w = k.stake(v);
    sigma += adding ? w : -w;
    if ((removed >> v) & 1) continue;  // never part of live neighbourhoods
    for (Mask sm = k.validator_nbrs(v) & interest; sm != 0; sm &= sm - 1) {
      const auto s = static_cast<std::size_t>(std::countr_zero(sm));
      part[s] += adding ? k.alpha_den(s) * w : -(k.alpha_den(s) * w);
      if (part[s] >= need[s]) {
        cov |= bit(s);
      } else {
        cov &= ~bit(s);
      }
    }
    if (!visit(current, sigma, cov)) return;
  }
}

// Cheapest attackers for each service set A on G↘removed: entry A holds the
// (stake, mask)-lexicographically smallest B ⊆ V \ removed with (A, B) a
// coalition. Built from one subset walk plus a superset-minimum pass.
struct MinStakeTable {
  std::vector<Wide> stake;
  std::vector<Mask> attackers;
};
MinStakeTable min_stake_table(const Kernel& k, Mask removed);

struct SubAttack {
  Mask services = 0;
  Mask validators = 0;
};

// A valid (A', B') != (A, B) inside a valid attack (A, B) on G↘removed that
// makes it unstable, or nullopt if the attack is stable. The witness has the
// canonically smallest B'. Uses the alpha = 1 shortcut when it applies.
std::optional<SubAttack> find_destabilizer(const Kernel& k, Mask services, Mask attackers,
                                           Mask removed, const EnumerationLimits& limits);

void require_services(std::size_t count, const EnumerationLimits& limits,
                      const char* what);
void require_validators(std::size_t count, const EnumerationLimits& limits,
                        const char* what);

}  // namespace restake::detail

#endif  // RESTAKE_SRC_KERNEL_H_
