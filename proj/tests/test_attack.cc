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

#include <random>

#include "doctest.h"
#include "oracle.h"
#include "random_graphs.h"
#include "restake/attack.h"
#include "restake/constructions.h"
#include "restake/error.h"

using namespace restake;

namespace {

const RestakingGraph& two_validator() {
  static const RestakingGraph g = gen_two_validator(Rational(1, 10)).graph;
  return g;
}

const RestakingGraph& triangle() {
  static const RestakingGraph g = gen_triangle(Rational(1), Rational(1), Rational(19, 10)).graph;
  return g;
}

const RestakingGraph& stable_union() {
  static const RestakingGraph g = gen_stable_union_counterexample().graph;
  return g;
}

Attack attack(const RestakingGraph& g, std::initializer_list<std::string> a,
              std::initializer_list<std::string> b) {
  return {g.service_set(a), g.validator_set(b)};
}

RestakingGraph single(const Rational& profit, const Rational& stake) {
  return RestakingGraph({{"x", profit, Rational(1)}}, {{"v", stake}}, {{"x", "v"}});
}

}  // namespace

TEST_CASE("coalitions") {
  const auto& su = stable_union();
  CHECK(is_attacking_coalition(su, attack(su, {"x"}, {"a"})));
  CHECK(is_attacking_coalition(su, attack(su, {}, {})));
  const auto& tv = two_validator();
  CHECK_FALSE(is_attacking_coalition(tv, attack(tv, {"x"}, {"b"})));
  const auto cut = remove_validators(tv, tv.validator_set({"a"}));
  CHECK(is_attacking_coalition(cut, attack(cut, {"x"}, {"b"})));
}

TEST_CASE("valid attacks") {
  const auto& su = stable_union();
  CHECK(is_valid_attack(su, attack(su, {"x", "y"}, {"a"})));
  CHECK_FALSE(is_valid_attack(su, attack(su, {}, {})));
  const auto& tv = two_validator();
  const auto cut = remove_validators(tv, tv.validator_set({"a"}));
  CHECK(is_valid_attack(cut, attack(cut, {"x"}, {"b"})));
}

TEST_CASE("cheapest attackers") {
  const auto ring = gen_ring(6).graph;
  const auto all = min_attack_stake(ring, ring.all_services());
  CHECK(all.stake == Rational(6));
  CHECK(all.validators == ring.all_validators());
  const auto none = min_attack_stake(ring, ring.no_services());
  CHECK(none.stake == Rational(0));
  CHECK(none.validators.empty());
  const auto& su = stable_union();
  const auto x = min_attack_stake(su, su.service_set({"x"}));
  CHECK(x.stake == Rational(1));
  CHECK(su.ids(x.validators) == std::vector<std::string>{"a"});
}

TEST_CASE("enumerating valid attacks") {
  const auto& tv = two_validator();
  CHECK(enumerate_valid_attacks(tv).empty());
  const auto cut = remove_validators(tv, tv.validator_set({"a"}));
  const auto found = enumerate_valid_attacks(cut);
  CHECK(std::find(found.begin(), found.end(), attack(cut, {"x"}, {"b"})) != found.end());
  const auto ns = gen_noslack(Rational(1, 10), Rational(1), Rational(1, 20), Rational(1)).graph;
  CHECK(enumerate_valid_attacks(ns).empty());
}

TEST_CASE("security") {
  CHECK(is_secure(two_validator()).secure);
  const auto zero = single(Rational(1), Rational(0));
  const auto v = is_secure(zero);
  CHECK_FALSE(v.secure);
  REQUIRE(v.counterexample);
  CHECK(is_valid_attack(zero, *v.counterexample));
  CHECK(is_secure(gen_fig4_left().graph).secure);
}

TEST_CASE("slack security") {
  CHECK(is_gamma_slack_secure(triangle(), Rational(23, 10)).holds);
  const auto v = is_gamma_slack_secure(triangle(), Rational(231, 100));
  CHECK_FALSE(v.holds);
  REQUIRE(v.violation);
  CHECK(is_attacking_coalition(triangle(), *v.violation));
  CHECK(is_gamma_slack_secure(two_validator(), Rational(0)).holds);
  CHECK_FALSE(is_gamma_slack_secure(two_validator(), Rational(1, 1000)).holds);
  CHECK_THROWS_AS(is_gamma_slack_secure(two_validator(), Rational(-1)), PreconditionError);
}

TEST_CASE("maximum slack") {
  const auto tv = max_slack(two_validator());
  CHECK(tv.status == SlackStatus::kFinite);
  CHECK(tv.gamma == Rational(0));
  const auto tri = max_slack(triangle());
  CHECK(tri.status == SlackStatus::kFinite);
  CHECK(tri.gamma == Rational(23, 10));
  REQUIRE(tri.witness);
  CHECK(tri.witness->services == triangle().all_services());
  const auto free = RestakingGraph({{"x", Rational(0), Rational(1)}}, {{"v", Rational(1)}}, {{"x", "v"}});
  CHECK(max_slack(free).status == SlackStatus::kUnbounded);
  const auto bad = max_slack(single(Rational(2), Rational(1)));
  CHECK(bad.status == SlackStatus::kInsecure);
  CHECK(bad.gamma == Rational(-1, 2));
}

TEST_CASE("stability") {
  const auto& su = stable_union();
  CHECK(is_stable_attack(su, attack(su, {"x"}, {"a"})).stable);
  const auto both = is_stable_attack(su, attack(su, {"x", "y"}, {"a", "b"}));
  CHECK_FALSE(both.stable);
  REQUIRE(both.destabilizer);
  CHECK(*both.destabilizer == attack(su, {"x", "y"}, {"a"}));
  CHECK_THROWS_AS(is_stable_attack(su, attack(su, {"x"}, {})), PreconditionError);

  const auto right = gen_fig4_right().graph;
  const auto cut = remove_validators(right, right.validator_set({"bc"}));
  CHECK(is_stable_attack(cut, attack(cut, {"x", "y", "z"}, {"ab", "ca"})).stable);
}

TEST_CASE("zero-profit services make an attack unstable") {
  const RestakingGraph g({{"x", Rational(2), Rational(1)}, {"z", Rational(0), Rational(1)}},
                         {{"a", Rational(1)}}, {{"x", "a"}, {"z", "a"}});
  const auto v = is_stable_attack(g, attack(g, {"x", "z"}, {"a"}));
  CHECK_FALSE(v.stable);
  REQUIRE(v.destabilizer);
  CHECK(*v.destabilizer == attack(g, {"x"}, {"a"}));
  CHECK(oracle::stable(g, g.all_services(), g.all_validators(), g.no_validators()) == v.stable);
}

TEST_CASE("attack headers") {
  const auto& tri = triangle();
  CHECK(is_attack_header(tri, tri.service_set({"x", "z"}), tri.validator_set({"a"})));
  CHECK(is_attack_header(tri, tri.no_services(), tri.no_validators()));
  CHECK_THROWS_AS(is_attack_header(tri, tri.service_set({"x"}), tri.validator_set({"a"})),
                  PreconditionError);
  const auto right = gen_fig4_right().graph;
  CHECK(is_attack_header(right, right.service_set({"x"}), right.no_validators()));
}

TEST_CASE("header overcollateralization") {
  const auto& tri = triangle();
  const ServiceSet c = tri.service_set({"x", "z"});
  for (const Rational& gamma : {Rational(0), Rational(1, 2), Rational(1)}) {
    const auto v = check_header_overcollateralization(tri, c, gamma);
    CHECK_FALSE(v.holds);
    REQUIRE(v.violation);
    CHECK(v.violation->services == c);
    CHECK(tri.ids(v.violation->exclusive) == std::vector<std::string>{"a"});
  }
  CHECK(check_header_overcollateralization(tri, tri.no_services(), Rational(5)).holds);

  const RestakingGraph doubled({{"x", Rational(1), Rational(1)}},
                               {{"a", Rational(1, 5)}, {"b", Rational(9, 5)}},
                               {{"x", "a"}, {"x", "b"}});
  CHECK(check_header_overcollateralization(doubled, doubled.all_services(), Rational(1)).holds);
  CHECK_FALSE(check_header_overcollateralization(doubled, doubled.all_services(), Rational(11, 10)).holds);

  const auto slack = max_header_slack(doubled, doubled.all_services());
  CHECK(slack.status == SlackStatus::kFinite);
  CHECK(slack.gamma == Rational(1));
  CHECK(max_header_slack(tri, c).status == SlackStatus::kInsecure);
}

TEST_CASE("enumeration caps refuse instead of approximating") {
  const auto ring = gen_ring(30).graph;
  CHECK_THROWS_AS(is_secure(ring), CapExceeded);
  EnumerationLimits tiny;
  tiny.max_validators = 1;
  CHECK_THROWS_AS(enumerate_valid_attacks(two_validator(), tiny), CapExceeded);
}

TEST_CASE("kernel agrees with the definitions on random graphs") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 300; ++round) {
    const auto g = testing::random_graph(rng, {3, 4});
    CAPTURE(serialize_graph(g));
    CHECK(is_secure(g).secure == oracle::secure(g));

    const auto slack = max_slack(g);
    const auto want = oracle::max_slack(g);
    if (!want) {
      CHECK(slack.status == SlackStatus::kUnbounded);
    } else {
      CHECK(slack.gamma == *want);
      CHECK((slack.status == SlackStatus::kInsecure) == want->is_negative());
      for (const Rational& gamma : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
        const bool holds = is_gamma_slack_secure(g, gamma).holds;
        CHECK(holds == oracle::slack_secure(g, gamma));
        CHECK(holds == (!want->is_negative() && gamma <= *want));
      }
    }

    std::vector<Attack> expected;
    for (const auto& a : oracle::service_subsets(g))
      for (const auto& b : oracle::validator_subsets(g))
        if (oracle::valid(g, a, b, g.no_validators())) expected.push_back({a, b});
    const auto found = enumerate_valid_attacks(g);
    CHECK(found.size() == expected.size());
    for (const Attack& at : found) {
      CHECK(oracle::valid(g, at.services, at.validators, g.no_validators()));
      const auto st = is_stable_attack(g, at);
      CHECK(st.stable == oracle::stable(g, at.services, at.validators, g.no_validators()));
      if (st.destabilizer) CHECK(is_valid_attack(g, *st.destabilizer));
    }

    for (const auto& a : oracle::service_subsets(g)) {
      const auto cheapest = min_attack_stake(g, a);
      CHECK(oracle::coalition(g, a, cheapest.validators, g.no_validators()));
      for (const auto& b : oracle::validator_subsets(g))
        if (oracle::coalition(g, a, b, g.no_validators())) CHECK(cheapest.stake <= oracle::stake(g, b));
    }

    for (const auto& c : oracle::service_subsets(g)) {
      for (const Rational& gamma : {Rational(0), Rational(1, 2), Rational(1)}) {
        CHECK(check_header_overcollateralization(g, c, gamma).holds ==
              oracle::headers_hold(g, c, gamma));
      }
    }
  }
}

TEST_CASE("monotonicity and coalition preservation under removal") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 100; ++round) {
    const auto g = testing::random_graph(rng, {3, 4});
    for (const auto& a : oracle::service_subsets(g)) {
      for (const auto& b : oracle::validator_subsets(g)) {
        const bool co = is_attacking_coalition(g, {a, b});
        if (co) CHECK(is_attacking_coalition(g, {a, g.all_validators()}));
        if (is_valid_attack(g, {a, b})) CHECK(co);
      }
    }
  }
}

TEST_CASE("headers match an existential search over free validators") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    const auto g = testing::random_graph(rng, {3, 4});
    for (const auto& x : oracle::service_subsets(g)) {
      const ValidatorSet ex = oracle::exclusive(g, x);
      for (const auto& y : oracle::validator_subsets(g)) {
        if (!y.is_subset_of(ex)) continue;
        bool any = false;
        for (const auto& b : oracle::validator_subsets(g))
          if (!b.intersects(ex) && oracle::coalition(g, x, y | b, g.no_validators())) any = true;
        CHECK(is_attack_header(g, x, y) == any);
      }
    }
  }
}
