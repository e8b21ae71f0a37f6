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

#include "restake/constructions.h"

#include <algorithm>
#include <functional>
#include <set>

#include "restake/conditions.h"
#include "restake/error.h"
#include "restake/witness_io.h"

namespace restake {
namespace {

struct Builder {
  std::vector<Service> services;
  std::vector<Validator> validators;
  std::vector<Edge> edges;

  Builder& service(std::string id, Rational profit, Rational alpha = 1) {
    services.push_back({std::move(id), std::move(profit), std::move(alpha)});
    return *this;
  }
  Builder& validator(std::string id, Rational stake) {
    validators.push_back({std::move(id), std::move(stake)});
    return *this;
  }
  Builder& edge(std::string s, std::string v) {
    edges.emplace_back(std::move(s), std::move(v));
    return *this;
  }
  RestakingGraph build() const { return RestakingGraph(services, validators, edges); }
};

Claim make(std::string name, ClaimKind kind, bool expect = true) {
  Claim c;
  c.name = std::move(name);
  c.kind = kind;
  c.expect = expect;
  return c;
}

Claim valued(std::string name, ClaimKind kind, Rational value, Relation rel = Relation::kEq) {
  Claim c = make(std::move(name), kind);
  c.value = std::move(value);
  c.relation = rel;
  return c;
}

Cascade one_step(const Attack& attack, CascadeMode mode) {
  return Cascade{{attack}, mode};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

bool relate(const Rational& got, Relation rel, const Rational& want) {
  return rel == Relation::kEq ? got == want : got >= want;
}

std::string relation_text(Relation rel) { return rel == Relation::kEq ? "==" : ">="; }

std::set<std::string> id_set(const std::vector<std::string>& ids) {
  return {ids.begin(), ids.end()};
}

template <class T>
const T& field(const std::optional<T>& value, const Claim& claim, const char* what) {
  if (!value) throw PreconditionError("claim '" + claim.name + "' lacks " + what);
  return *value;
}

ClaimResult check_claim_unguarded(const RestakingGraph& g, const Claim& c,
                                  const EnumerationLimits& limits) {
  ClaimResult r{c.name, false, ""};
  auto boolean = [&](bool got, std::string detail) {
    r.passed = got == c.expect;
    r.detail = std::move(detail) + (got ? " (true)" : " (false)") +
               (r.passed ? "" : c.expect ? ", expected true" : ", expected false");
  };
  auto numeric = [&](const Rational& got) {
    const Rational& want = field(c.value, c, "a value");
    r.passed = relate(got, c.relation, want);
    r.detail = "got " + got.str() + ", want " + relation_text(c.relation) + " " + want.str();
  };
  const ValidatorSet shock = c.shock.value_or(g.no_validators());

  switch (c.kind) {
    case ClaimKind::kSecure:
      boolean(is_secure(g, limits).secure, "secure");
      break;
    case ClaimKind::kEl:
      boolean(el_condition(g).holds, "condition");
      break;
    case ClaimKind::kElScaled:
      boolean(el_condition_scaled(g, field(c.gamma, c, "gamma")).holds, "scaled condition");
      break;
    case ClaimKind::kElTight: {
      const ConditionReport report = el_condition_scaled(g, c.gamma.value_or(Rational(0)));
      const ValidatorSet& want = field(c.validators, c, "validators");
      g.check_owned(want);
      ValidatorSet tight = g.no_validators();
      for (const ValidatorLoad& l : report.loads) {
        if (l.load == Rational(1)) tight.insert(l.validator);
      }
      boolean(want.is_subset_of(tight), "listed validators tight");
      break;
    }
    case ClaimKind::kMaxRatio:
      numeric(max_profit_stake_ratio(g));
      break;
    case ClaimKind::kConnected:
      boolean(is_connected(g), "connected");
      break;
    case ClaimKind::kProperMargin:
      boolean(!proper_margin_violation(g, limits), "margin of one on proper coalitions");
      break;
    case ClaimKind::kExclusive: {
      const ValidatorSet got = exclusive_validators(g, field(c.coalition, c, "a coalition"));
      const ValidatorSet& want = field(c.validators, c, "validators");
      r.passed = got == want;
      r.detail = "exclusive validators " + Json(g.ids(got)).dump();
      break;
    }
    case ClaimKind::kShockAdmissible:
      boolean(shock_admissible(g, shock, field(c.psi, c, "psi"), c.coalition), "admissible");
      break;
    case ClaimKind::kValidAttack: {
      const auto v = verify_cascade(g, shock, one_step(field(c.attack, c, "an attack"), CascadeMode::kValid), limits);
      boolean(v.ok, v.ok ? "valid" : "valid: " + v.reason);
      break;
    }
    case ClaimKind::kStableAttack: {
      const Attack& attack = field(c.attack, c, "an attack");
      const auto valid = verify_cascade(g, shock, one_step(attack, CascadeMode::kValid), limits);
      if (!valid.ok) {
        r.detail = "attack is not valid: " + valid.reason;
        break;
      }
      const auto v = verify_cascade(g, shock, one_step(attack, CascadeMode::kStable), limits);
      boolean(v.ok, "stable");
      if (r.passed && !v.ok && c.witness && v.destabilizer != c.witness) {
        r.passed = false;
        r.detail += ", destabilizer " + attack_to_json(g, *v.destabilizer).dump() + " differs";
      }
      break;
    }
    case ClaimKind::kAttackSurplus: {
      const Attack& attack = field(c.attack, c, "an attack");
      numeric(total_profit(g, attack.services) - total_stake(g, attack.validators));
      break;
    }
    case ClaimKind::kCascade: {
      const auto v = verify_cascade(g, shock, field(c.cascade, c, "a cascade"), limits);
      boolean(v.ok, v.ok ? "cascade verifies" : "cascade verifies: " + v.reason);
      break;
    }
    case ClaimKind::kLossGlobal:
      numeric(worst_case_loss_global(g, field(c.psi, c, "psi"), limits).loss);
      break;
    case ClaimKind::kLossLocal:
      numeric(worst_case_loss_local(g, field(c.coalition, c, "a coalition"), field(c.psi, c, "psi"),
                                    c.mode, limits).loss);
      break;
    case ClaimKind::kLossWitness: {
      const Rational& psi = field(c.psi, c, "psi");
      const Cascade& cascade = field(c.cascade, c, "a cascade");
      if (!shock_admissible(g, shock, psi, c.coalition)) {
        r.detail = "shock exceeds the budget";
        break;
      }
      const auto v = verify_cascade(g, shock, cascade, limits);
      if (!v.ok) {
        r.detail = "cascade fails: " + v.reason;
        break;
      }
      numeric(psi + cascade_loss(g, cascade, c.coalition));
      break;
    }
    case ClaimKind::kHeader: {
      const auto v = check_header_overcollateralization(g, field(c.coalition, c, "a coalition"),
                                                        field(c.gamma, c, "gamma"), limits);
      boolean(v.holds, "header condition");
      if (r.passed && !v.holds && c.witness) {
        const Attack got{v.violation->services, v.violation->exclusive};
        if (got != *c.witness) {
          r.passed = false;
          r.detail += ", violating header " + attack_to_json(g, got).dump() + " differs";
        }
      }
      break;
    }
    case ClaimKind::kTotalStake:
      numeric(total_stake(g, g.all_validators()));
      break;
    case ClaimKind::kMaxSlack: {
      const SlackResult s = max_slack(g, limits);
      if (s.status != SlackStatus::kFinite) {
        r.detail = "slack is not finite";
        break;
      }
      numeric(s.gamma);
      break;
    }
    case ClaimKind::kLocalVariant:
      if (!c.original) throw PreconditionError("claim '" + c.name + "' lacks the original graph");
      {
        // The claim's coalition lives in this graph; carry it over by id.
        const auto ids = g.ids(field(c.coalition, c, "a coalition"));
        boolean(is_local_variant(*c.original, g, c.original->service_set(std::span<const std::string>(ids))),
                "local variant");
      }
      break;
  }
  return r;
}

const std::vector<std::pair<ClaimKind, std::string_view>>& kind_names() {
  static const std::vector<std::pair<ClaimKind, std::string_view>> names = {
      {ClaimKind::kSecure, "secure"},
      {ClaimKind::kEl, "el"},
      {ClaimKind::kElScaled, "el_scaled"},
      {ClaimKind::kElTight, "el_tight"},
      {ClaimKind::kMaxRatio, "max_ratio"},
      {ClaimKind::kConnected, "connected"},
      {ClaimKind::kProperMargin, "proper_margin"},
      {ClaimKind::kExclusive, "exclusive"},
      {ClaimKind::kShockAdmissible, "shock_admissible"},
      {ClaimKind::kValidAttack, "valid_attack"},
      {ClaimKind::kStableAttack, "stable_attack"},
      {ClaimKind::kAttackSurplus, "attack_surplus"},
      {ClaimKind::kCascade, "cascade"},
      {ClaimKind::kLossGlobal, "loss_global"},
      {ClaimKind::kLossLocal, "loss_local"},
      {ClaimKind::kLossWitness, "loss_witness"},
      {ClaimKind::kHeader, "header"},
      {ClaimKind::kTotalStake, "total_stake"},
      {ClaimKind::kMaxSlack, "max_slack"},
      {ClaimKind::kLocalVariant, "local_variant"},
  };
  return names;
}

[[noreturn]] void schema(const std::string& what) { throw ModelError(ModelErrc::kSchema, what); }

}  // namespace

ClaimResult check_claim(const RestakingGraph& graph, const Claim& claim,
                        const EnumerationLimits& limits) {
  try {
    return check_claim_unguarded(graph, claim, limits);
  } catch (const CapExceeded& e) {
    return {claim.name, false, std::string("cap exceeded: ") + e.what()};
  }
}

std::vector<ClaimResult> check_expected(const ConstructionOutput& output,
                                        const EnumerationLimits& limits) {
  std::vector<ClaimResult> out;
  for (const Claim& c : output.claims) out.push_back(check_claim(output.graph, c, limits));
  return out;
}

std::string_view to_string(ClaimKind kind) {
  for (const auto& [k, name] : kind_names()) {
    if (k == kind) return name;
  }
  return "unknown";
}

Json claims_to_json(const RestakingGraph& g, const std::vector<Claim>& claims) {
  Json out = Json::array();
  for (const Claim& c : claims) {
    Json doc = Json::object();
    doc["name"] = c.name;
    doc["kind"] = std::string(to_string(c.kind));
    if (c.value) {
      doc["relation"] = c.relation == Relation::kEq ? "eq" : "ge";
      doc["value"] = c.value->str();
    } else {
      doc["expect"] = c.expect;
    }
    if (c.gamma) doc["gamma"] = c.gamma->str();
    if (c.psi) doc["psi"] = c.psi->str();
    if (c.coalition) doc["coalition"] = ids_to_json(g, *c.coalition);
    if (c.cascade) {
      doc["cascade"] = cascade_to_json(g, c.shock.value_or(g.no_validators()), *c.cascade);
    } else if (c.shock) {
      doc["shock"] = ids_to_json(g, *c.shock);
    }
    if (c.validators) doc["validators"] = ids_to_json(g, *c.validators);
    if (c.attack) doc["attack"] = attack_to_json(g, *c.attack);
    if (c.witness) doc["witness"] = attack_to_json(g, *c.witness);
    if (c.kind == ClaimKind::kLossLocal) doc["mode"] = std::string(to_string(c.mode));
    if (c.original) doc["original"] = graph_to_json(*c.original);
    out.push_back(std::move(doc));
  }
  return out;
}

std::vector<Claim> claims_from_json(const RestakingGraph& g, const Json& doc) {
  static const std::set<std::string> keys = {"name",   "kind",       "relation", "value",
                                             "expect", "gamma",      "psi",      "coalition",
                                             "shock",  "cascade",    "validators", "attack",
                                             "witness", "mode",      "original"};
  if (!doc.is_array()) schema("claims must be an array");
  std::vector<Claim> out;
  for (const Json& item : doc) {
    if (!item.is_object()) schema("each claim must be an object");
    for (const auto& [key, _] : item.items()) {
      if (!keys.contains(key)) schema("unknown key '" + key + "' in claim");
    }
    if (!item.contains("name") || !item["name"].is_string()) schema("claim needs a string 'name'");
    if (!item.contains("kind") || !item["kind"].is_string()) schema("claim needs a string 'kind'");
    Claim c;
    c.name = item["name"].get<std::string>();
    const std::string kind = item["kind"].get<std::string>();
    bool known = false;
    for (const auto& [k, name] : kind_names()) {
      if (name == kind) {
        c.kind = k;
        known = true;
      }
    }
    if (!known) schema("unknown claim kind '" + kind + "'");
    if (item.contains("expect")) {
      if (!item["expect"].is_boolean()) schema("'expect' must be a boolean");
      c.expect = item["expect"].get<bool>();
    }
    if (item.contains("value")) c.value = rational_from_json(item["value"], "value");
    if (item.contains("relation")) {
      const Json& rel = item["relation"];
      if (rel == "eq") {
        c.relation = Relation::kEq;
      } else if (rel == "ge") {
        c.relation = Relation::kGe;
      } else {
        schema("'relation' must be \"eq\" or \"ge\"");
      }
    }
    if (item.contains("gamma")) c.gamma = rational_from_json(item["gamma"], "gamma");
    if (item.contains("psi")) c.psi = rational_from_json(item["psi"], "psi");
    if (item.contains("coalition")) c.coalition = services_from_json(g, item["coalition"]);
    if (item.contains("shock")) c.shock = validators_from_json(g, item["shock"]);
    if (item.contains("cascade")) {
      auto [shock, cascade] = cascade_from_json(g, item["cascade"]);
      c.shock = std::move(shock);
      c.cascade = std::move(cascade);
    }
    if (item.contains("validators")) c.validators = validators_from_json(g, item["validators"]);
    if (item.contains("attack")) c.attack = attack_from_json(g, item["attack"]);
    if (item.contains("witness")) c.witness = attack_from_json(g, item["witness"]);
    if (item.contains("mode")) {
      if (!item["mode"].is_string()) schema("'mode' must be a string");
      c.mode = cascade_mode_from_string(item["mode"].get<std::string>());
    }
    if (item.contains("original"))
      c.original = std::make_shared<const RestakingGraph>(graph_from_json(item["original"]));
    out.push_back(std::move(c));
  }
  return out;
}

bool is_connected(const RestakingGraph& g) {
  const std::size_t total = g.num_services() + g.num_validators();
  if (total <= 1) return true;
  std::vector<bool> seen_s(g.num_services(), false);
  std::vector<bool> seen_v(g.num_validators(), false);
  // Nodes: services are 0..ns-1, validators follow.
  std::vector<std::size_t> stack{0};
  std::size_t reached = 0;
  if (g.num_services() > 0) {
    seen_s[0] = true;
  } else {
    seen_v[0] = true;
  }
  const std::size_t ns = g.num_services();
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    ++reached;
    if (node < ns) {
      for (std::size_t v : g.service_neighbors(node).indices()) {
        if (!seen_v[v]) {
          seen_v[v] = true;
          stack.push_back(ns + v);
        }
      }
    } else {
      for (std::size_t s : g.validator_neighbors(node - ns).indices()) {
        if (!seen_s[s]) {
          seen_s[s] = true;
          stack.push_back(s);
        }
      }
    }
  }
  return reached == total;
}

Rational max_profit_stake_ratio(const RestakingGraph& g) {
  require(g.num_services() > 0 && g.num_validators() > 0, "ratio needs services and validators");
  Rational max_profit = g.service(0).profit;
  for (const Service& s : g.services()) max_profit = std::max(max_profit, s.profit);
  Rational min_stake = g.validator(0).stake;
  for (const Validator& v : g.validators()) min_stake = std::min(min_stake, v.stake);
  require(min_stake.is_positive(), "ratio needs every stake positive");
  return max_profit / min_stake;
}

std::optional<Attack> proper_margin_violation(const RestakingGraph& g,
                                              const EnumerationLimits& limits) {
  const std::size_t ns = g.num_services();
  if (ns > 62 || ns > limits.max_services)
    throw CapExceeded("margin check: " + std::to_string(ns) + " services exceed the enumeration cap");
  const Mask full = ns == 64 ? ~Mask{0} : (Mask{1} << ns) - 1;
  for (Mask a = 1; a < full; ++a) {
    const ServiceSet services = ServiceSet::from_mask(ns, a);
    const MinAttack cheapest = min_attack_stake(g, services, limits);
    if (cheapest.stake < total_profit(g, services) + Rational(1))
      return Attack{services, cheapest.validators};
  }
  return std::nullopt;
}

bool is_local_variant(const RestakingGraph& original, const RestakingGraph& variant,
                      const ServiceSet& coalition) {
  original.check_owned(coalition);
  for (std::size_t s : coalition.indices()) {
    const auto i = variant.find_service(original.service(s).id);
    if (!i) return false;
    const Service& a = original.service(s);
    const Service& b = variant.service(*i);
    if (a.profit != b.profit || a.alpha != b.alpha) return false;
  }
  const std::vector<std::string> coalition_ids = original.ids(coalition);
  const ServiceSet coalition_there = variant.service_set(std::span<const std::string>(coalition_ids));
  const auto nbrs_here = original.ids(neighbors(original, coalition));
  const auto nbrs_there = variant.ids(neighbors(variant, coalition_there));
  if (id_set(nbrs_here) != id_set(nbrs_there)) return false;
  for (const std::string& id : nbrs_here) {
    const std::size_t v = original.validator_index(id);
    const std::size_t w = variant.validator_index(id);
    if (original.validator(v).stake != variant.validator(w).stake) return false;
    if (id_set(original.ids(original.validator_neighbors(v))) !=
        id_set(variant.ids(variant.validator_neighbors(w))))
      return false;
  }
  return true;
}

ConstructionOutput gen_two_validator(const Rational& eps) {
  require(eps.is_positive() && eps < Rational(1), "eps must lie in (0, 1), got " + eps.str());
  RestakingGraph g = Builder()
                         .service("x", 1)
                         .validator("a", eps)
                         .validator("b", Rational(1) - eps)
                         .edge("x", "a")
                         .edge("x", "b")
                         .build();
  std::vector<Claim> claims;
  claims.push_back(make("condition holds", ClaimKind::kEl));
  Claim tight = make("both validators tight", ClaimKind::kElTight);
  tight.validators = g.all_validators();
  claims.push_back(tight);
  claims.push_back(make("secure", ClaimKind::kSecure));

  const Attack attack{g.service_set({"x"}), g.validator_set({"b"})};
  Claim admissible = make("shock {a} admissible", ClaimKind::kShockAdmissible);
  admissible.psi = eps;
  admissible.shock = g.validator_set({"a"});
  claims.push_back(admissible);

  Claim witness = valued("witness loses everything", ClaimKind::kLossWitness, 1);
  witness.psi = eps;
  witness.shock = g.validator_set({"a"});
  witness.cascade = one_step(attack, CascadeMode::kValid);
  claims.push_back(witness);

  // Past eps = 1/2 the shock {b} fits the budget too and the total exceeds 1.
  Claim loss = valued("worst-case loss", ClaimKind::kLossGlobal, 1,
                      eps <= Rational(1, 2) ? Relation::kEq : Relation::kGe);
  loss.psi = eps;
  claims.push_back(loss);
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_noslack(const Rational& psi, const Rational& gamma, const Rational& eps,
                               const Rational& sigma_a) {
  require(psi.is_positive(), "psi must be > 0");
  require(gamma.is_positive(), "gamma must be > 0");
  require(eps.is_positive(), "eps must be > 0");
  require(sigma_a.is_positive(), "sigma_a must be > 0");
  const Rational one(1);
  const Rational target = (one + one / gamma) * psi - eps;
  require(!target.is_negative(), "(1 + 1/gamma) psi - eps must be >= 0, got " + target.str());
  require(target <= one, "(1 + 1/gamma) psi - eps must be <= 1, got " + target.str());
  require(eps <= psi / gamma, "eps must be <= psi / gamma");

  const Rational sigma_b = sigma_a * (one / gamma - eps / psi);
  const Rational sigma_c = sigma_a * ((one - psi + eps) / psi - one / gamma);
  const Rational total = sigma_a / psi;
  const Rational profit = target / (one + gamma) * total;
  RestakingGraph g = Builder()
                         .service("x", profit)
                         .validator("a", sigma_a)
                         .validator("b", sigma_b)
                         .validator("c", sigma_c)
                         .edge("x", "a")
                         .edge("x", "b")
                         .build();
  const ValidatorSet shock = g.validator_set({"a"});
  const Attack attack{g.service_set({"x"}), g.validator_set({"b"})};

  std::vector<Claim> claims;
  Claim scaled = make("scaled condition holds", ClaimKind::kElScaled);
  scaled.gamma = gamma;
  claims.push_back(scaled);
  Claim tight = make("a and b tight", ClaimKind::kElTight);
  tight.gamma = gamma;
  tight.validators = g.validator_set({"a", "b"});
  claims.push_back(tight);
  claims.push_back(valued("total stake", ClaimKind::kTotalStake, total));

  Claim admissible = make("shock {a} admissible", ClaimKind::kShockAdmissible);
  admissible.psi = psi;
  admissible.shock = shock;
  claims.push_back(admissible);

  Claim valid = make("attack after shock valid", ClaimKind::kValidAttack);
  valid.shock = shock;
  valid.attack = attack;
  claims.push_back(valid);

  Claim surplus = valued("attack surplus", ClaimKind::kAttackSurplus,
                         gamma * eps * sigma_a / ((one + gamma) * psi));
  surplus.attack = attack;
  surplus.shock = shock;
  claims.push_back(surplus);

  Claim witness = valued("witness loss", ClaimKind::kLossWitness, target);
  witness.psi = psi;
  witness.shock = shock;
  witness.cascade = one_step(attack, CascadeMode::kValid);
  claims.push_back(witness);

  Claim loss = valued("worst-case loss lower bound", ClaimKind::kLossGlobal, target, Relation::kGe);
  loss.psi = psi;
  claims.push_back(loss);
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_triangle(const Rational& gamma, const Rational& pi, const Rational& sigma_a) {
  require(gamma.is_positive(), "gamma must be > 0");
  require(pi.is_positive(), "pi must be > 0");
  require(sigma_a < Rational(2) * pi, "sigma_a must be < 2 pi");
  const Rational big = Rational(2) * (Rational(1) + gamma) * pi;
  RestakingGraph g = Builder()
                         .service("x", pi)
                         .service("y", pi)
                         .service("z", pi)
                         .validator("a", sigma_a)
                         .validator("b", big)
                         .validator("c", big)
                         .edge("x", "a")
                         .edge("x", "b")
                         .edge("y", "b")
                         .edge("y", "c")
                         .edge("z", "c")
                         .edge("z", "a")
                         .build();
  const ServiceSet c = g.service_set({"x", "z"});
  const ValidatorSet shock = g.validator_set({"b", "c"});
  const Attack attack{c, g.validator_set({"a"})};

  std::vector<Claim> claims;
  Claim scaled = make("scaled condition holds", ClaimKind::kElScaled);
  scaled.gamma = gamma;
  claims.push_back(scaled);

  Claim exclusive = make("exclusive validators of {x,z}", ClaimKind::kExclusive);
  exclusive.coalition = c;
  exclusive.validators = g.validator_set({"a"});
  claims.push_back(exclusive);

  Claim admissible = make("shock {b,c} admissible at zero budget", ClaimKind::kShockAdmissible);
  admissible.psi = Rational(0);
  admissible.coalition = c;
  admissible.shock = shock;
  claims.push_back(admissible);

  Claim stable = make("attack after shock stable", ClaimKind::kStableAttack);
  stable.shock = shock;
  stable.attack = attack;
  claims.push_back(stable);

  Claim witness = valued("witness loses the exclusive stake", ClaimKind::kLossWitness, 1);
  witness.psi = Rational(0);
  witness.coalition = c;
  witness.shock = shock;
  witness.cascade = one_step(attack, CascadeMode::kStable);
  claims.push_back(witness);

  Claim loss = valued("local loss", ClaimKind::kLossLocal, 1);
  loss.psi = Rational(0);
  loss.coalition = c;
  loss.mode = CascadeMode::kStable;
  claims.push_back(loss);

  Claim header = make("header condition fails", ClaimKind::kHeader, false);
  header.coalition = c;
  header.gamma = gamma;
  header.witness = attack;
  claims.push_back(header);
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_ring(std::size_t n) {
  require(n >= 6 && n % 6 == 0, "n must be a positive multiple of 6, got " + std::to_string(n));
  const std::size_t blocks = n / 6;
  Builder b;
  for (std::size_t v = 0; v < n; ++v) b.validator("v" + std::to_string(v), 1);
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::string id = "u" + std::to_string(i);
    b.service(id, 2);
    for (std::size_t v = 6 * i; v < 6 * i + 6; ++v) b.edge(id, "v" + std::to_string(v));
  }
  for (std::size_t j = 0; j < 2 * blocks; ++j) {
    const std::string id = "t" + std::to_string(j);
    b.service(id, 2);
    for (std::size_t d = 1; d <= 3; ++d) b.edge(id, "v" + std::to_string((3 * j + d) % n));
  }
  RestakingGraph g = b.build();
  const ValidatorSet shock = g.validator_set({"v0"});
  const Attack attack{g.all_services(), shock.complement()};
  const Rational budget(1, static_cast<long>(n));

  std::vector<Claim> claims;
  claims.push_back(make("condition holds", ClaimKind::kEl));
  Claim tight = make("every validator tight", ClaimKind::kElTight);
  tight.validators = g.all_validators();
  claims.push_back(tight);
  claims.push_back(valued("max profit to stake ratio", ClaimKind::kMaxRatio, 2));
  claims.push_back(make("connected", ClaimKind::kConnected));
  claims.push_back(make("margin on proper coalitions", ClaimKind::kProperMargin));
  if (n <= 18) claims.push_back(make("secure", ClaimKind::kSecure));

  Claim stable = make("attack after shock stable", ClaimKind::kStableAttack);
  stable.shock = shock;
  stable.attack = attack;
  claims.push_back(stable);

  Claim whole = valued("whole-graph witness", ClaimKind::kLossWitness, 1);
  whole.psi = budget;
  whole.coalition = g.all_services();
  whole.shock = shock;
  whole.cascade = one_step(attack, CascadeMode::kStable);
  claims.push_back(whole);

  std::vector<ServiceSet> coalitions{g.service_set({"u0", "t0"})};
  if (n > 6) coalitions.push_back(neighbors(g, shock).complement());
  for (const ServiceSet& c : coalitions) {
    const std::string label = Json(g.ids(c)).dump();
    Claim witness = valued("zero-budget witness for " + label, ClaimKind::kLossWitness, 1);
    witness.psi = Rational(0);
    witness.coalition = c;
    witness.shock = shock;
    witness.cascade = one_step(attack, CascadeMode::kStable);
    claims.push_back(witness);
  }
  if (n == 6) {
    Claim exclusive = make("exclusive validators of {u0,t0}", ClaimKind::kExclusive);
    exclusive.coalition = coalitions.front();
    exclusive.validators = g.validator_set({"v1", "v2", "v3"});
    claims.push_back(exclusive);

    Claim local = valued("local loss of {u0,t0}", ClaimKind::kLossLocal, 1);
    local.psi = Rational(0);
    local.coalition = coalitions.front();
    claims.push_back(local);

    Claim all = valued("local loss of S", ClaimKind::kLossLocal, 1);
    all.psi = budget;
    all.coalition = g.all_services();
    claims.push_back(all);
  }
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_local_variant(const RestakingGraph& graph, const ServiceSet& coalition,
                                     const Rational& eps, const EnumerationLimits& limits) {
  graph.check_owned(coalition);
  require(eps.is_positive(), "eps must be > 0");
  require(is_secure(graph, limits).secure, "input graph must be secure");
  const ValidatorSet nbrs = neighbors(graph, coalition);
  const Rational delta = total_stake(graph, nbrs) - total_profit(graph, coalition);
  require(!delta.is_negative(), "coalition profit exceeds its neighbours' stake");

  Builder b;
  b.services = graph.services();
  b.validators = graph.validators();
  b.edges = graph.edges();
  b.service("s*", delta + Rational(2) * eps)
      .validator("a*", delta + eps)
      .validator("b*", eps)
      .edge("s*", "a*")
      .edge("s*", "b*");
  RestakingGraph g = b.build();

  // Indices of the input survive: new vertices are appended.
  const ServiceSet c = ServiceSet::from_mask(g.num_services(), coalition.to_mask());
  ServiceSet attack_services = c;
  attack_services.insert(g.service_index("s*"));
  ValidatorSet attack_validators = neighbors(g, c);
  attack_validators.insert(g.validator_index("b*"));
  const Attack attack{attack_services, attack_validators};
  const ValidatorSet shock = g.validator_set({"a*"});

  std::vector<Claim> claims;
  Claim variant = make("local variant of the input", ClaimKind::kLocalVariant);
  variant.coalition = c;
  variant.original = std::make_shared<const RestakingGraph>(graph);
  claims.push_back(variant);
  claims.push_back(make("secure", ClaimKind::kSecure));

  Claim valid = make("attack after shock valid", ClaimKind::kValidAttack);
  valid.shock = shock;
  valid.attack = attack;
  claims.push_back(valid);

  Claim header = make("header verdict unchanged", ClaimKind::kHeader,
                      check_header_overcollateralization(graph, coalition, Rational(0), limits).holds);
  header.coalition = c;
  header.gamma = Rational(0);
  claims.push_back(header);

  const ValidatorSet gamma = exclusive_validators(g, c);
  if (!gamma.empty() && gamma.is_subset_of(attack_validators) &&
      total_stake(g, gamma).is_positive()) {
    Claim witness = valued("witness loses the exclusive stake", ClaimKind::kLossWitness, 1);
    witness.psi = Rational(0);
    witness.coalition = c;
    witness.shock = shock;
    witness.cascade = one_step(attack, CascadeMode::kValid);
    claims.push_back(witness);

    Claim loss = valued("local loss under valid cascades", ClaimKind::kLossLocal, 1);
    loss.psi = Rational(0);
    loss.coalition = c;
    loss.mode = CascadeMode::kValid;
    claims.push_back(loss);
  }
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_stable_union_counterexample() {
  RestakingGraph g = Builder()
                         .service("x", 2, Rational(1, 2))
                         .service("y", 2, Rational(1, 2))
                         .validator("a", 1)
                         .validator("b", 1)
                         .edge("x", "a")
                         .edge("x", "b")
                         .edge("y", "a")
                         .edge("y", "b")
                         .build();
  const Attack first{g.service_set({"x"}), g.validator_set({"a"})};
  const Attack second{g.service_set({"y"}), g.validator_set({"b"})};
  const Attack both{g.all_services(), g.all_validators()};

  std::vector<Claim> claims;
  claims.push_back(make("secure", ClaimKind::kSecure, false));

  Claim two = make("two-step cascade stable", ClaimKind::kCascade);
  two.cascade = Cascade{{first, second}, CascadeMode::kStable};
  claims.push_back(two);

  Claim merged = make("merged cascade stable", ClaimKind::kCascade, false);
  merged.cascade = one_step(both, CascadeMode::kStable);
  claims.push_back(merged);

  Claim valid = make("merged attack valid", ClaimKind::kValidAttack);
  valid.attack = both;
  claims.push_back(valid);

  Claim stable = make("merged attack stable", ClaimKind::kStableAttack, false);
  stable.attack = both;
  stable.witness = Attack{g.all_services(), g.validator_set({"a"})};
  claims.push_back(stable);
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_fig4_left() {
  RestakingGraph g = Builder()
                         .service("s_hi", 101)
                         .service("s_green", 1)
                         .validator("r", 100)
                         .validator("w1", 1)
                         .validator("w2", 100)
                         .edge("s_hi", "r")
                         .edge("s_hi", "w1")
                         .edge("s_green", "w2")
                         .build();
  const ValidatorSet shock = g.validator_set({"r"});
  const Attack attack{g.all_services(), g.validator_set({"w1", "w2"})};

  std::vector<Claim> claims;
  claims.push_back(make("secure", ClaimKind::kSecure));
  Claim valid = make("attack after shock valid", ClaimKind::kValidAttack);
  valid.shock = shock;
  valid.attack = attack;
  claims.push_back(valid);
  Claim stable = make("attack after shock stable", ClaimKind::kStableAttack, false);
  stable.shock = shock;
  stable.attack = attack;
  stable.witness = Attack{g.service_set({"s_hi"}), g.validator_set({"w1"})};
  claims.push_back(stable);
  return {std::move(g), std::move(claims)};
}

ConstructionOutput gen_fig4_right() {
  RestakingGraph g = Builder()
                         .service("x", 1)
                         .service("y", 1)
                         .service("z", 1)
                         .validator("ab", 1)
                         .validator("bc", 1)
                         .validator("ca", 1)
                         .edge("x", "ab")
                         .edge("y", "ab")
                         .edge("y", "bc")
                         .edge("z", "bc")
                         .edge("z", "ca")
                         .edge("x", "ca")
                         .build();
  const ValidatorSet shock = g.validator_set({"bc"});
  const Attack attack{g.all_services(), g.validator_set({"ab", "ca"})};

  std::vector<Claim> claims;
  claims.push_back(make("secure", ClaimKind::kSecure));
  Claim valid = make("attack after shock valid", ClaimKind::kValidAttack);
  valid.shock = shock;
  valid.attack = attack;
  claims.push_back(valid);
  Claim stable = make("attack after shock stable", ClaimKind::kStableAttack);
  stable.shock = shock;
  stable.attack = attack;
  claims.push_back(stable);
  return {std::move(g), std::move(claims)};
}

const std::vector<GeneratorInfo>& generators() {
  static const std::vector<GeneratorInfo> list = {
      {"two-validator", {"eps"}},
      {"noslack", {"psi", "gamma", "eps", "sigma_a"}},
      {"triangle", {"gamma", "pi", "sigma_a"}},
      {"ring", {"n"}},
      {"stable-union", {}},
      {"fig4-left", {}},
      {"fig4-right", {}},
  };
  return list;
}

ConstructionOutput generate_by_name(std::string_view name, const std::vector<Rational>& params) {
  const auto it = std::find_if(generators().begin(), generators().end(),
                               [&](const GeneratorInfo& info) { return info.name == name; });
  if (it == generators().end()) throw PreconditionError("unknown generator '" + std::string(name) + "'");
  if (params.size() != it->params.size())
    throw PreconditionError("generator '" + it->name + "' takes " + std::to_string(it->params.size()) +
                            " parameter(s), got " + std::to_string(params.size()));
  if (name == "two-validator") return gen_two_validator(params[0]);
  if (name == "noslack") return gen_noslack(params[0], params[1], params[2], params[3]);
  if (name == "triangle") return gen_triangle(params[0], params[1], params[2]);
  if (name == "ring") {
    require(params[0].is_integer() && params[0].is_positive(), "n must be a positive integer");
    return gen_ring(params[0].numerator().get_ui());
  }
  if (name == "stable-union") return gen_stable_union_counterexample();
  if (name == "fig4-left") return gen_fig4_left();
  return gen_fig4_right();
}

}  // namespace restake
