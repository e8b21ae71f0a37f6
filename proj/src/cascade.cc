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

#include "restake/cascade.h"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "kernel.h"
#include "restake/error.h"

namespace restake {

using detail::Kernel;
using detail::Wide;

namespace {

struct Step {
  Mask a = 0;
  Mask b = 0;
};

void require_budget(const Rational& psi) {
  if (psi.is_negative()) throw PreconditionError("psi must be >= 0, got " + psi.str());
}

Rational ratio(Wide num, Wide den) {
  return Rational(mpq_class(detail::to_mpz(num), detail::to_mpz(den)));
}

// Largest scaled stake within a psi share of `total`.
Wide budget_cap(const Rational& psi, Wide total) {
  mpz_class cap;
  mpz_fdiv_q(cap.get_mpz_t(), mpz_class(detail::to_mpz(total) * psi.numerator()).get_mpz_t(),
             psi.denominator().get_mpz_t());
  if (cap >= detail::to_mpz(total)) return total;
  return detail::from_mpz(cap);
}

void require_kernel_caps(const Kernel& k, const EnumerationLimits& limits, const char* what) {
  detail::require_services(k.num_services(), limits, what);
  detail::require_validators(k.num_validators(), limits, what);
}

// Every valid (or stable) attack on G↘removed that avoids `used` services,
// ordered by (B, A) masks.
std::vector<Step> attacks_after(const Kernel& k, Mask removed, Mask used, CascadeMode mode,
                                const EnumerationLimits& limits) {
  std::vector<Step> out;
  const Mask free = k.all_services() & ~used;
  detail::walk_validator_subsets(
      k, 0, k.all_validators() & ~removed, removed, free, [&](Mask b, Wide sigma, Mask cov) {
        if (cov == 0 || k.profit_of(cov) <= sigma) return true;
        for (Mask a = cov; a != 0; a = (a - 1) & cov) {
          if (k.profit_of(a) <= sigma) continue;
          if (mode == CascadeMode::kStable &&
              detail::find_destabilizer(k, a, b, removed, limits))
            continue;
          out.push_back({a, b});
        }
        return true;
      });
  std::sort(out.begin(), out.end(),
            [](const Step& x, const Step& y) { return x.b != y.b ? x.b < y.b : x.a < y.a; });
  return out;
}

// Best achievable sigma(∪B ∩ target) over stable cascades from a state,
// memoised on (removed validators, used services).
class StableSearch {
 public:
  StableSearch(const Kernel& k, Mask target, const EnumerationLimits& limits)
      : k_(k), target_(target), limits_(limits) {}

  Wide best(Mask removed, Mask used) { return solve(removed, used).value; }

  std::vector<Step> path(Mask removed, Mask used) {
    std::vector<Step> out;
    for (;;) {
      const Entry& e = solve(removed, used);
      if (!e.has_step) return out;
      out.push_back(e.step);
      removed |= e.step.b;
      used |= e.step.a;
    }
  }

 private:
  struct Entry {
    Wide value = 0;
    std::size_t length = 0;
    int services = 0;  // services used along the path
    bool has_step = false;
    Step step;
  };
  struct Key {
    Mask removed;
    Mask used;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const {
      return std::hash<Mask>()(key.removed * 0x9e3779b97f4a7c15ULL ^ key.used);
    }
  };

  const Entry& solve(Mask removed, Mask used) {
    const Key key{removed, used};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Entry e;
    for (const Step& s : attacks_after(k_, removed, used, CascadeMode::kStable, limits_)) {
      const Entry& next = solve(removed | s.b, used | s.a);
      const Wide v = k_.stake_of(s.b & target_) + next.value;
      // Stopping is the baseline. Ties go to the shorter cascade, then to
      // the one touching fewer services.
      const std::size_t len = next.length + 1;
      const int used_here = std::popcount(s.a) + next.services;
      if (v > e.value ||
          (v == e.value && (len < e.length || (len == e.length && used_here < e.services)))) {
        e.value = v;
        e.length = len;
        e.services = used_here;
        e.has_step = true;
        e.step = s;
      }
    }
    return memo_.emplace(key, e).first->second;
  }

  const Kernel& k_;
  Mask target_;
  const EnumerationLimits& limits_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

Cascade to_cascade(const Kernel& k, const std::vector<Step>& steps, CascadeMode mode) {
  Cascade c;
  c.mode = mode;
  for (const Step& s : steps) c.steps.push_back(k.attack(s.a, s.b));
  return c;
}

bool for_each_from(const Kernel& k, Mask removed, Mask used, CascadeMode mode,
                   const EnumerationLimits& limits, Cascade& current,
                   const std::function<bool(const Cascade&)>& visit) {
  for (const Step& s : attacks_after(k, removed, used, mode, limits)) {
    current.steps.push_back(k.attack(s.a, s.b));
    if (!visit(current)) return false;
    if (!for_each_from(k, removed | s.b, used | s.a, mode, limits, current, visit)) return false;
    current.steps.pop_back();
  }
  return true;
}

}  // namespace

CascadeVerdict verify_cascade(const RestakingGraph& graph, const ValidatorSet& shock,
                              const Cascade& cascade, const EnumerationLimits& limits) {
  graph.check_owned(shock);
  for (const Attack& step : cascade.steps) {
    graph.check_owned(step.services);
    graph.check_owned(step.validators);
  }
  Kernel k(graph);
  Mask removed = shock.to_mask();
  Mask used = 0;
  for (std::size_t t = 0; t < cascade.steps.size(); ++t) {
    const Mask a = cascade.steps[t].services.to_mask();
    const Mask b = cascade.steps[t].validators.to_mask();
    auto fail = [&](std::string why) {
      CascadeVerdict v;
      v.ok = false;
      v.failing_step = t;
      v.reason = std::move(why);
      return v;
    };
    if (a == 0) return fail("step attacks no services");
    if (a & used) return fail("services already attacked earlier");
    if (b & removed) return fail("validators already removed by the shock or an earlier step");
    if (!k.is_coalition(a, b, removed))
      return fail("validators do not reach the required stake share");
    if (k.profit_of(a) <= k.stake_of(b)) return fail("profit does not exceed attackers' stake");
    if (cascade.mode == CascadeMode::kStable) {
      if (auto sub = detail::find_destabilizer(k, a, b, removed, limits)) {
        CascadeVerdict v = fail("attack is not stable");
        v.destabilizer = k.attack(sub->services, sub->validators);
        return v;
      }
    }
    removed |= b;
    used |= a;
  }
  return {};
}

Attack flatten_cascade(const Cascade& cascade) {
  if (cascade.steps.empty()) throw PreconditionError("cannot flatten an empty cascade");
  Attack out = cascade.steps.front();
  for (const Attack& step : cascade.steps) {
    out.services |= step.services;
    out.validators |= step.validators;
  }
  return out;
}

bool shock_admissible(const RestakingGraph& graph, const ValidatorSet& shock, const Rational& psi,
                      const std::optional<ServiceSet>& coalition) {
  require_budget(psi);
  graph.check_owned(shock);
  if (!coalition) return total_stake(graph, shock) <= psi * total_stake(graph, graph.all_validators());
  graph.check_owned(*coalition);
  const ValidatorSet gamma = exclusive_validators(graph, *coalition);
  if (gamma.empty()) throw PreconditionError("coalition has no exclusive validators");
  return total_stake(graph, shock & gamma) <= psi * total_stake(graph, gamma);
}

LossReport worst_case_loss_global(const RestakingGraph& graph, const Rational& psi,
                                  const EnumerationLimits& limits) {
  require_budget(psi);
  Kernel k(graph);
  require_kernel_caps(k, limits, "global loss");
  const Mask all = k.all_validators();
  const Wide total = k.stake_of(all);
  if (total == 0) throw PreconditionError("total stake is zero; loss fractions are undefined");
  const Wide cap = budget_cap(psi, total);

  bool found = false;
  Wide best = 0;
  Mask best_d = 0;
  Step best_step;
  for (Mask d = 0;; ++d) {
    if (k.stake_of(d) <= cap) {
      bool here = false;
      Wide local = 0;
      Step step;
      detail::walk_validator_subsets(k, 0, all & ~d, d, k.all_services(),
                                     [&](Mask b, Wide sigma, Mask cov) {
        if (cov == 0 || k.profit_of(cov) <= sigma) return true;
        if (!here || sigma > local || (sigma == local && b < step.b)) {
          here = true;
          local = sigma;
          step = {cov, b};
        }
        return true;
      });
      if (here && (!found || local > best)) {
        found = true;
        best = local;
        best_d = d;
        best_step = step;
      }
    }
    if (d == all) break;
  }

  LossReport r;
  r.cascade.mode = CascadeMode::kValid;
  r.shock = k.validators(best_d);
  if (found) r.cascade.steps.push_back(k.attack(best_step.a, best_step.b));
  r.shock_fraction = ratio(k.stake_of(best_d), total);
  r.cascade_fraction = ratio(best, total);
  r.loss = psi + r.cascade_fraction;
  return r;
}

LossReport worst_case_loss_local(const RestakingGraph& graph, const ServiceSet& coalition,
                                 const Rational& psi, CascadeMode mode,
                                 const EnumerationLimits& limits) {
  require_budget(psi);
  graph.check_owned(coalition);
  Kernel k(graph);
  require_kernel_caps(k, limits, "local loss");
  const Mask gamma = exclusive_validators(graph, coalition).to_mask();
  if (gamma == 0) throw PreconditionError("coalition has no exclusive validators; local loss is undefined");
  const Wide total = k.stake_of(gamma);
  if (total == 0) throw PreconditionError("exclusive validators hold no stake; local loss is undefined");
  const Wide cap = budget_cap(psi, total);
  const Mask all = k.all_validators();

  StableSearch search(k, gamma, limits);
  bool found = false;
  Wide best = 0;
  Mask best_d = 0;
  std::vector<Step> best_steps;
  for (Mask d = 0;; ++d) {
    if (k.stake_of(d & gamma) <= cap) {
      if (mode == CascadeMode::kStable) {
        const Wide v = search.best(d, 0);
        if (!found || v > best) {
          found = true;
          best = v;
          best_d = d;
          best_steps = search.path(d, 0);
        }
      } else {
        bool here = false;
        Wide local = 0;
        Step step;
        detail::walk_validator_subsets(k, 0, all & ~d, d, k.all_services(),
                                       [&](Mask b, Wide sigma, Mask cov) {
          if (cov == 0 || k.profit_of(cov) <= sigma) return true;
          const Wide v = k.stake_of(b & gamma);
          if (!here || v > local || (v == local && b < step.b)) {
            here = true;
            local = v;
            step = {cov, b};
          }
          return true;
        });
        if (!found || (here && local > best)) {
          found = true;
          best = here ? local : 0;
          best_d = d;
          best_steps.clear();
          if (here) best_steps.push_back(step);
        }
      }
    }
    if (d == all) break;
  }

  LossReport r;
  r.shock = k.validators(best_d);
  r.cascade = to_cascade(k, best_steps, mode);
  r.shock_fraction = ratio(k.stake_of(best_d & gamma), total);
  r.cascade_fraction = ratio(best, total);
  r.loss = psi + r.cascade_fraction;
  return r;
}

Rational cascade_loss(const RestakingGraph& graph, const Cascade& cascade,
                      const std::optional<ServiceSet>& coalition) {
  ValidatorSet lost = graph.no_validators();
  for (const Attack& step : cascade.steps) {
    graph.check_owned(step.validators);
    lost |= step.validators;
  }
  ValidatorSet base = graph.all_validators();
  if (coalition) {
    graph.check_owned(*coalition);
    base = exclusive_validators(graph, *coalition);
  }
  const Rational total = total_stake(graph, base);
  if (total.is_zero()) throw PreconditionError("reference stake is zero; loss fraction is undefined");
  return total_stake(graph, lost & base) / total;
}

std::size_t reference_depth(const RestakingGraph& graph, const ValidatorSet& shock,
                            const Cascade& cascade) {
  graph.check_owned(shock);
  std::vector<ValidatorSet> removed{shock};
  std::size_t depth = 0;
  for (std::size_t t = 1; t <= cascade.steps.size(); ++t) {
    const Attack& step = cascade.steps[t - 1];
    graph.check_owned(step.services);
    const ValidatorSet nbrs = neighbors(graph, step.services);
    for (std::size_t i = 1; i <= t; ++i) {
      if (nbrs.intersects(removed[t - i])) depth = std::max(depth, i);
    }
    removed.push_back(step.validators);
  }
  return depth;
}

long long length_bound(const RestakingGraph& graph, const Rational& gamma, const Rational& psi,
                       std::size_t depth) {
  if (!gamma.is_positive()) throw PreconditionError("gamma must be > 0");
  if (!psi.is_positive()) throw PreconditionError("psi must be > 0");
  if (depth == 0) throw PreconditionError("reference depth must be >= 1");
  if (graph.num_validators() == 0) throw PreconditionError("graph has no validators");
  Rational eps = graph.validator(0).stake;
  for (const Validator& v : graph.validators()) eps = std::min(eps, v.stake);
  if (!eps.is_positive()) throw PreconditionError("every validator needs positive stake");

  const auto k = static_cast<long>(depth);
  const Rational base = Rational(1) + gamma;
  const Rational target =
      pow(psi * total_stake(graph, graph.all_validators()) / (eps * gamma), k);
  // Smallest j with base^j >= target.
  auto reaches = [&](long j) { return pow(base, j) >= target; };
  long lo;
  long hi;
  if (reaches(0)) {
    hi = 0;
    lo = -1;
    while (reaches(lo)) {
      hi = lo;
      lo *= 2;
    }
  } else {
    lo = 0;
    hi = 1;
    while (!reaches(hi)) {
      lo = hi;
      hi *= 2;
    }
  }
  while (hi - lo > 1) {  // reaches(hi) and !reaches(lo)
    const long mid = lo + (hi - lo) / 2;
    (reaches(mid) ? hi : lo) = mid;
  }
  return static_cast<long long>(k) + hi;
}

void for_each_cascade(const RestakingGraph& graph, const ValidatorSet& shock, CascadeMode mode,
                      const std::function<bool(const Cascade&)>& visit,
                      const EnumerationLimits& limits) {
  graph.check_owned(shock);
  Kernel k(graph);
  require_kernel_caps(k, limits, "cascade enumeration");
  Cascade current;
  current.mode = mode;
  for_each_from(k, shock.to_mask(), 0, mode, limits, current, visit);
}

}  // namespace restake
