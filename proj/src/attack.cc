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

#include "restake/attack.h"

#include <algorithm>

#include "kernel.h"
#include "restake/error.h"

namespace restake {

using detail::Kernel;
using detail::Wide;
using detail::bit;

namespace {

void require_nonnegative(const Rational& gamma) {
  if (gamma.is_negative()) throw PreconditionError("gamma must be >= 0, got " + gamma.str());
}

Rational ratio(Wide num, Wide den) {
  return Rational(mpq_class(detail::to_mpz(num), detail::to_mpz(den)));
}

// (1 + gamma) * profit <= stake, exactly.
bool overcollateralized(Wide profit, Wide stake, const Rational& gamma) {
  return (Rational(1) + gamma) * Rational(mpq_class(detail::to_mpz(profit))) <=
         Rational(mpq_class(detail::to_mpz(stake)));
}

std::vector<std::size_t> members_of(Mask m) {
  std::vector<std::size_t> out;
  for (; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

Mask expand(std::uint64_t compact, const std::vector<std::size_t>& members) {
  Mask out = 0;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if ((compact >> j) & 1) out |= bit(members[j]);
  }
  return out;
}

std::uint64_t compress(Mask full, const std::vector<std::size_t>& members) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if ((full >> members[j]) & 1) out |= std::uint64_t{1} << j;
  }
  return out;
}

SlackResult slack_from_table(const Kernel& k, const std::vector<Wide>& stake,
                             const std::vector<Mask>& attackers,
                             const std::vector<std::size_t>& members) {
  SlackResult result;
  std::optional<std::uint64_t> arg;
  Wide best_stake = 0;
  Wide best_profit = 0;
  for (std::uint64_t a = 1; a < stake.size(); ++a) {
    const Wide pi = k.profit_of(expand(a, members));
    if (pi == 0) continue;
    // stake[a] / pi < best_stake / best_profit
    if (!arg || detail::to_mpz(stake[a]) * detail::to_mpz(best_profit) <
                    detail::to_mpz(best_stake) * detail::to_mpz(pi)) {
      arg = a;
      best_stake = stake[a];
      best_profit = pi;
    }
  }
  if (!arg) return result;
  result.gamma = ratio(best_stake, best_profit) - Rational(1);
  result.status = result.gamma.is_negative() ? SlackStatus::kInsecure : SlackStatus::kFinite;
  result.witness = k.attack(expand(*arg, members), attackers[*arg]);
  return result;
}

// Cheapest exclusive stake Y ⊆ Γ(C) ∩ N(C) completing a header on each X ⊆ C,
// indexed by X compressed onto the members of C.
struct HeaderTable {
  std::vector<std::size_t> members;
  std::vector<Wide> stake;
  std::vector<Mask> exclusive;
};

HeaderTable header_table(const Kernel& k, const ServiceSet& coalition,
                         const EnumerationLimits& limits) {
  const RestakingGraph& g = k.graph();
  const Mask c = coalition.to_mask();
  const Mask gamma_c = exclusive_validators(g, coalition).to_mask();
  const Mask free = k.all_validators() & ~gamma_c;
  const Mask pool = gamma_c & k.neighbors_of_services(c);
  HeaderTable t;
  t.members = members_of(c);
  detail::require_services(t.members.size(), limits, "header check");
  detail::require_validators(static_cast<std::size_t>(std::popcount(pool)), limits, "header check");
  const std::size_t size = std::size_t{1} << t.members.size();
  constexpr Wide kNone = -1;
  t.stake.assign(size, kNone);
  t.exclusive.assign(size, 0);
  detail::walk_validator_subsets(k, free, pool, 0, c, [&](Mask y, Wide sigma, Mask cov) {
    const std::uint64_t x = compress(cov, t.members);
    if (t.stake[x] == kNone || sigma < t.stake[x] || (sigma == t.stake[x] && y < t.exclusive[x])) {
      t.stake[x] = sigma;
      t.exclusive[x] = y;
    }
    return true;
  });
  for (std::size_t i = 0; i < t.members.size(); ++i) {
    for (std::size_t m = 0; m < size; ++m) {
      if ((m >> i) & 1) continue;
      const std::size_t up = m | (std::size_t{1} << i);
      if (t.stake[up] == kNone) continue;
      if (t.stake[m] == kNone || t.stake[up] < t.stake[m] ||
          (t.stake[up] == t.stake[m] && t.exclusive[up] < t.exclusive[m])) {
        t.stake[m] = t.stake[up];
        t.exclusive[m] = t.exclusive[up];
      }
    }
  }
  return t;
}

}  // namespace

bool is_attacking_coalition(const RestakingGraph& graph, const Attack& attack) {
  graph.check_owned(attack.services);
  graph.check_owned(attack.validators);
  for (std::size_t s : attack.services.indices()) {
    const ValidatorSet& nbrs = graph.service_neighbors(s);
    if (total_stake(graph, attack.validators & nbrs) < graph.service(s).alpha * total_stake(graph, nbrs))
      return false;
  }
  return true;
}

bool is_valid_attack(const RestakingGraph& graph, const Attack& attack) {
  return is_attacking_coalition(graph, attack) &&
         total_profit(graph, attack.services) > total_stake(graph, attack.validators);
}

MinAttack min_attack_stake(const RestakingGraph& graph, const ServiceSet& services,
                           const EnumerationLimits& limits) {
  graph.check_owned(services);
  bool alpha_one = true;
  for (std::size_t s : services.indices()) alpha_one = alpha_one && graph.service(s).alpha == Rational(1);
  if (alpha_one) {
    ValidatorSet b = graph.no_validators();
    for (std::size_t v : neighbors(graph, services).indices()) {
      if (graph.validator(v).stake.is_positive()) b.insert(v);
    }
    Rational stake = total_stake(graph, b);
    return MinAttack{std::move(b), std::move(stake)};
  }
  Kernel k(graph);
  const Mask a = services.to_mask();
  const Mask pool = k.neighbors_of_services(a);
  detail::require_validators(static_cast<std::size_t>(std::popcount(pool)), limits, "min attack stake");
  std::optional<std::pair<Wide, Mask>> best;
  detail::walk_validator_subsets(k, 0, pool, 0, a, [&](Mask b, Wide sigma, Mask cov) {
    if (cov == a && (!best || sigma < best->first || (sigma == best->first && b < best->second)))
      best = std::make_pair(sigma, b);
    return true;
  });
  // pool itself always covers A, so best is set.
  return MinAttack{k.validators(best->second), k.stake_value(best->first)};
}

std::vector<Attack> enumerate_valid_attacks(const RestakingGraph& graph,
                                            const EnumerationLimits& limits) {
  detail::require_services(graph.num_services(), limits, "attack enumeration");
  detail::require_validators(graph.num_validators(), limits, "attack enumeration");
  Kernel k(graph);
  std::vector<std::pair<Mask, Mask>> found;
  detail::walk_validator_subsets(k, 0, k.all_validators(), 0, k.all_services(),
                                 [&](Mask b, Wide sigma, Mask cov) {
                                   for (Mask a = cov; a != 0; a = (a - 1) & cov) {
                                     if (k.profit_of(a) > sigma) found.emplace_back(a, b);
                                   }
                                   return true;
                                 });
  std::sort(found.begin(), found.end());
  std::vector<Attack> out;
  out.reserve(found.size());
  for (const auto& [a, b] : found) out.push_back(k.attack(a, b));
  return out;
}

SecurityVerdict is_secure(const RestakingGraph& graph, const EnumerationLimits& limits) {
  detail::require_services(graph.num_services(), limits, "security check");
  detail::require_validators(graph.num_validators(), limits, "security check");
  Kernel k(graph);
  const auto table = detail::min_stake_table(k, 0);
  for (Mask a = 1; a < table.stake.size(); ++a) {
    if (k.profit_of(a) > table.stake[a]) return {false, k.attack(a, table.attackers[a])};
  }
  return {};
}

SlackVerdict is_gamma_slack_secure(const RestakingGraph& graph, const Rational& gamma,
                                   const EnumerationLimits& limits) {
  require_nonnegative(gamma);
  detail::require_services(graph.num_services(), limits, "slack check");
  detail::require_validators(graph.num_validators(), limits, "slack check");
  Kernel k(graph);
  const auto table = detail::min_stake_table(k, 0);
  for (Mask a = 1; a < table.stake.size(); ++a) {
    if (!overcollateralized(k.profit_of(a), table.stake[a], gamma))
      return {false, k.attack(a, table.attackers[a])};
  }
  return {};
}

SlackResult max_slack(const RestakingGraph& graph, const EnumerationLimits& limits) {
  detail::require_services(graph.num_services(), limits, "max slack");
  detail::require_validators(graph.num_validators(), limits, "max slack");
  Kernel k(graph);
  const auto table = detail::min_stake_table(k, 0);
  return slack_from_table(k, table.stake, table.attackers, members_of(k.all_services()));
}

StabilityVerdict is_stable_attack(const RestakingGraph& graph, const Attack& attack,
                                  const EnumerationLimits& limits) {
  if (!is_valid_attack(graph, attack)) throw PreconditionError("stability is only defined for valid attacks");
  Kernel k(graph);
  auto sub = detail::find_destabilizer(k, attack.services.to_mask(), attack.validators.to_mask(), 0, limits);
  if (!sub) return {};
  return {false, k.attack(sub->services, sub->validators)};
}

bool is_attack_header(const RestakingGraph& graph, const ServiceSet& services,
                      const ValidatorSet& exclusive) {
  const ValidatorSet gamma_x = exclusive_validators(graph, services);
  graph.check_owned(exclusive);
  if (!exclusive.is_subset_of(gamma_x))
    throw PreconditionError("header validators must be exclusive to the header's services");
  return is_attacking_coalition(graph, Attack{services, exclusive | gamma_x.complement()});
}

HeaderVerdict check_header_overcollateralization(const RestakingGraph& graph,
                                                 const ServiceSet& coalition,
                                                 const Rational& gamma,
                                                 const EnumerationLimits& limits) {
  require_nonnegative(gamma);
  graph.check_owned(coalition);
  Kernel k(graph);
  const HeaderTable t = header_table(k, coalition, limits);
  HeaderVerdict verdict;
  std::optional<Rational> worst;
  for (std::uint64_t x = 1; x < t.stake.size(); ++x) {
    const Mask services = expand(x, t.members);
    const Wide pi = k.profit_of(services);
    if (pi == 0) continue;
    const Rational deficit = (Rational(1) + gamma) * k.stake_value(pi) - k.stake_value(t.stake[x]);
    if (deficit.is_positive() && (!worst || deficit > *worst)) {
      worst = deficit;
      verdict.holds = false;
      verdict.violation = AttackHeader{k.services(services), k.validators(t.exclusive[x])};
    }
  }
  return verdict;
}

SlackResult max_header_slack(const RestakingGraph& graph, const ServiceSet& coalition,
                             const EnumerationLimits& limits) {
  graph.check_owned(coalition);
  Kernel k(graph);
  const HeaderTable t = header_table(k, coalition, limits);
  return slack_from_table(k, t.stake, t.exclusive, t.members);
}

}  // namespace restake
