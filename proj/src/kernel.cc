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

#include "kernel.h"

#include <algorithm>
#include <string>

#include "restake/error.h"

namespace restake::detail {
namespace {

// Comfortably below 2^127 after the few additions done in the searches.
const mpz_class kMaxMagnitude = mpz_class(1) << 118;

Wide to_wide(const mpz_class& x) {
  if (abs(x) >= kMaxMagnitude)
    throw ModelError(ModelErrc::kMagnitude, "value too large for exact search kernel");
  mpz_class a = abs(x);
  mpz_class hi = a >> 64;
  mpz_class lo = a - (hi << 64);
  auto u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  auto w = static_cast<Wide>(u);
  return sgn(x) < 0 ? -w : w;
}

bool less_pair(Wide sa, Mask ma, Wide sb, Mask mb) {
  return sa < sb || (sa == sb && ma < mb);
}

}  // namespace

Wide from_mpz(const mpz_class& x) { return to_wide(x); }

mpz_class to_mpz(Wide x) {
  const bool negative = x < 0;
  auto u = negative ? static_cast<unsigned __int128>(-(x + 1)) + 1
                    : static_cast<unsigned __int128>(x);
  mpz_class r(static_cast<unsigned long>(u >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(u & ~std::uint64_t{0});
  return negative ? mpz_class(-r) : r;
}

void require_services(std::size_t count, const EnumerationLimits& limits, const char* what) {
  if (count > limits.max_services || count > 62)
    throw CapExceeded(std::string(what) + ": " + std::to_string(count) +
                      " services exceed the enumeration cap of " +
                      std::to_string(std::min<std::size_t>(limits.max_services, 62)));
}

void require_validators(std::size_t count, const EnumerationLimits& limits, const char* what) {
  if (count > limits.max_validators || count > 62)
    throw CapExceeded(std::string(what) + ": " + std::to_string(count) +
                      " validators exceed the enumeration cap of " +
                      std::to_string(std::min<std::size_t>(limits.max_validators, 62)));
}

Kernel::Kernel(const RestakingGraph& graph)
    : graph_(&graph), ns_(graph.num_services()), nv_(graph.num_validators()) {
  if (ns_ > 64 || nv_ > 64)
    throw CapExceeded("exact search supports at most 64 services and 64 validators");
  mpz_class lcm_den = 1;
  for (const auto& v : graph.validators()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.stake.get().get_den_mpz_t());
  for (const auto& s : graph.services()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), s.profit.get().get_den_mpz_t());
  scale_ = mpq_class(lcm_den);

  mpz_class total_stake = 0;
  for (std::size_t v = 0; v < nv_; ++v) {
    mpq_class scaled = graph.validator(v).stake.get() * scale_;
    stake_.push_back(to_wide(scaled.get_num()));
    total_stake += scaled.get_num();
    if (stake_.back() > 0) positive_stake_ |= bit(v);
    validator_nbrs_.push_back(graph.validator_neighbors(v).to_mask());
  }
  mpz_class total_profit = 0;
  mpz_class max_alpha = 1;
  for (std::size_t s = 0; s < ns_; ++s) {
    const Service& svc = graph.service(s);
    mpq_class scaled = svc.profit.get() * scale_;
    profit_.push_back(to_wide(scaled.get_num()));
    total_profit += scaled.get_num();
    if (profit_.back() == 0) zero_profit_ |= bit(s);
    alpha_num_.push_back(to_wide(svc.alpha.numerator()));
    alpha_den_.push_back(to_wide(svc.alpha.denominator()));
    max_alpha = std::max(max_alpha, svc.alpha.denominator());
    if (svc.alpha == Rational(1)) alpha_one_ |= bit(s);
    service_nbrs_.push_back(graph.service_neighbors(s).to_mask());
  }
  to_wide(total_stake * max_alpha);
  to_wide(total_stake + total_profit);
}

Wide Kernel::stake_of(Mask validators) const {
  Wide sum = 0;
  for (Mask m = validators; m != 0; m &= m - 1) sum += stake_[static_cast<std::size_t>(std::countr_zero(m))];
  return sum;
}

Wide Kernel::profit_of(Mask services) const {
  Wide sum = 0;
  for (Mask m = services; m != 0; m &= m - 1) sum += profit_[static_cast<std::size_t>(std::countr_zero(m))];
  return sum;
}

Mask Kernel::neighbors_of_services(Mask services) const {
  Mask out = 0;
  for (Mask m = services; m != 0; m &= m - 1) out |= service_nbrs_[static_cast<std::size_t>(std::countr_zero(m))];
  return out;
}

Mask Kernel::neighbors_of_validators(Mask validators) const {
  Mask out = 0;
  for (Mask m = validators; m != 0; m &= m - 1) out |= validator_nbrs_[static_cast<std::size_t>(std::countr_zero(m))];
  return out;
}

Mask Kernel::coverage(Mask attackers, Mask removed, Mask candidates) const {
  Mask out = 0;
  for (Mask m = candidates; m != 0; m &= m - 1) {
    const auto s = static_cast<std::size_t>(std::countr_zero(m));
    const Mask live = service_nbrs_[s] & ~removed;
    if (alpha_den_[s] * stake_of(attackers & live) >= alpha_num_[s] * stake_of(live)) out |= bit(s);
  }
  return out;
}

Rational Kernel::stake_value(Wide scaled) const {
  return Rational(mpq_class(to_mpz(scaled)) / scale_);
}

MinStakeTable min_stake_table(const Kernel& k, Mask removed) {
  const std::size_t ns = k.num_services();
  const std::size_t size = std::size_t{1} << ns;
  constexpr Wide kNone = -1;
  MinStakeTable table{std::vector<Wide>(size, kNone), std::vector<Mask>(size, 0)};
  const Mask universe = k.all_validators() & ~removed;
  walk_validator_subsets(k, 0, universe, removed, k.all_services(),
                         [&](Mask b, Wide sigma, Mask cov) {
                           auto& best = table.stake[cov];
                           if (best == kNone || less_pair(sigma, b, best, table.attackers[cov])) {
                             best = sigma;
                             table.attackers[cov] = b;
                           }
                           return true;
                         });
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t m = 0; m < size; ++m) {
      if ((m >> i) & 1) continue;
      const std::size_t up = m | (std::size_t{1} << i);
      if (table.stake[up] == kNone) continue;
      if (table.stake[m] == kNone ||
          less_pair(table.stake[up], table.attackers[up], table.stake[m], table.attackers[m])) {
        table.stake[m] = table.stake[up];
        table.attackers[m] = table.attackers[up];
      }
    }
  }
  return table;
}

namespace {

// (M, B') destabilizes (A, B) when M is valid with B' and dropping B \ B'
// is not worth what is dropped from A.
bool breaks(const Kernel& k, Wide pi_a, Wide sigma_b, Mask m, Wide sigma_sub) {
  const Wide pi_m = k.profit_of(m);
  return pi_m > sigma_sub && pi_m + sigma_b >= pi_a + sigma_sub;
}

std::optional<SubAttack> zero_profit_destabilizer(const Kernel& k, Mask services, Mask attackers) {
  if ((services & k.zero_profit()) == 0) return std::nullopt;
  return SubAttack{services & ~k.zero_profit(), attackers};
}

}  // namespace

std::optional<SubAttack> find_destabilizer(const Kernel& k, Mask services, Mask attackers,
                                           Mask removed, const EnumerationLimits& limits) {
  const Wide pi_a = k.profit_of(services);
  const Wide sigma_b = k.stake_of(attackers);
  std::optional<SubAttack> best;

  if (k.all_alpha_one(services)) {
    // With alpha = 1 a coalition on A' needs exactly the positive-stake live
    // neighbours of A', so only 2^|A| candidates exist.
    require_services(static_cast<std::size_t>(std::popcount(services)), limits, "stability check");
    const Mask live = ~removed & k.positive_stake();
    std::vector<std::size_t> members;
    for (Mask m = services; m != 0; m &= m - 1) members.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    const std::uint64_t count = std::uint64_t{1} << members.size();
    for (std::uint64_t sub = 0; sub < count; ++sub) {
      Mask need = 0;
      for (std::size_t j = 0; j < members.size(); ++j) {
        if ((sub >> j) & 1) need |= k.service_nbrs(members[j]);
      }
      const Mask b_sub = need & live & attackers;
      if (b_sub == attackers) continue;
      if (best && b_sub >= best->validators) continue;
      Mask m = 0;
      for (std::size_t s : members) {
        if ((k.service_nbrs(s) & live & ~b_sub) == 0) m |= bit(s);
      }
      if (breaks(k, pi_a, sigma_b, m, k.stake_of(b_sub))) best = SubAttack{m, b_sub};
    }
    if (best) return best;
    return zero_profit_destabilizer(k, services, attackers);
  }

  require_validators(static_cast<std::size_t>(std::popcount(attackers)), limits, "stability check");
  walk_validator_subsets(k, 0, attackers, removed, services, [&](Mask b_sub, Wide sigma_sub, Mask cov) {
    if (b_sub == attackers) return true;
    if (best && b_sub >= best->validators) return true;
    if (breaks(k, pi_a, sigma_b, cov, sigma_sub)) best = SubAttack{cov, b_sub};
    return true;
  });
  if (best) return best;
  return zero_profit_destabilizer(k, services, attackers);
}

}  // namespace restake::detail
