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
#include "restake/conditions.h"
#include "restake/constructions.h"
#include "restake/error.h"

using namespace restake;

namespace {

RestakingGraph shared_service() {
  return RestakingGraph({{"x", Rational(3), Rational(1)}}, {{"a", Rational(1)}, {"b", Rational(1)}},
                        {{"x", "a"}, {"x", "b"}});
}

RestakingGraph triangle() { return gen_triangle(Rational(1), Rational(1), Rational(19, 10)).graph; }
RestakingGraph noslack() {
  return gen_noslack(Rational(1, 10), Rational(1), Rational(1, 20), Rational(1)).graph;
}

}  // namespace

TEST_CASE("unscaled condition") {
  const auto tv = gen_two_validator(Rational(1, 10)).graph;
  const auto r = el_condition(tv);
  CHECK(r.holds);
  REQUIRE(r.loads.size() == 2);
  for (const auto& l : r.loads) CHECK(l.load == Rational(1));

  const auto ring = gen_ring(30).graph;
  const auto rr = el_condition(ring);
  CHECK(rr.holds);
  CHECK(rr.loads.size() == 30);
  for (const auto& l : rr.loads) CHECK(l.load == Rational(1));

  const auto bad = el_condition(shared_service());
  CHECK_FALSE(bad.holds);
  CHECK(bad.loads[0].load == Rational(3, 2));
  CHECK(bad.violating.size() == 2);
}

TEST_CASE("unsecured profitable services are flagged") {
  const RestakingGraph g({{"x", Rational(1), Rational(1)}, {"y", Rational(1), Rational(1)}},
                         {{"a", Rational(0)}, {"b", Rational(5)}}, {{"x", "a"}, {"y", "b"}});
  const auto r = el_condition(g);
  CHECK_FALSE(r.holds);
  CHECK(g.ids(r.flagged) == std::vector<std::string>{"x"});
  CHECK(el_max_gamma(g).status == GammaStatus::kNever);

  const RestakingGraph lone({{"x", Rational(1), Rational(1)}}, {{"a", Rational(1)}}, {});
  CHECK_FALSE(el_condition(lone).holds);
  CHECK(el_condition(RestakingGraph()).holds);
}

TEST_CASE("scaled condition") {
  const auto ns = noslack();
  const auto r = el_condition_scaled(ns, Rational(1));
  CHECK(r.holds);
  CHECK(r.loads[ns.validator_index("a")].load == Rational(1));
  CHECK(r.loads[ns.validator_index("b")].load == Rational(1));
  CHECK(el_condition_scaled(triangle(), Rational(1)).holds);
  CHECK_THROWS_AS(el_condition_scaled(ns, Rational(-1)), PreconditionError);
}

TEST_CASE("maximum scaled slack") {
  const auto tv = el_max_gamma(gen_two_validator(Rational(1, 10)).graph);
  CHECK(tv.status == GammaStatus::kFinite);
  CHECK(tv.gamma == Rational(0));
  const auto ns = el_max_gamma(noslack());
  CHECK(ns.status == GammaStatus::kFinite);
  CHECK(ns.gamma == Rational(1));
  const auto tri = el_max_gamma(triangle());
  CHECK(tri.status == GammaStatus::kFinite);
  CHECK(tri.gamma == Rational(39, 20));
  REQUIRE(tri.bottleneck);
  CHECK(*tri.bottleneck == triangle().validator_index("a"));
  CHECK(el_max_gamma(shared_service()).status == GammaStatus::kNever);
  const RestakingGraph free({{"x", Rational(0), Rational(1)}}, {{"a", Rational(1)}}, {{"x", "a"}});
  CHECK(el_max_gamma(free).status == GammaStatus::kUnbounded);
}

TEST_CASE("adjusted alpha") {
  const auto tri = triangle();
  const auto c = tri.service_set({"x", "z"});
  CHECK(adjusted_alpha(tri, c, tri.service_index("x")).alpha_prime == Rational(19, 59));
  for (std::size_t s = 0; s < 3; ++s)
    CHECK(adjusted_alpha(tri, tri.all_services(), s).alpha_prime == Rational(1));
  const auto right = gen_fig4_right().graph;
  CHECK(adjusted_alpha(right, right.service_set({"x"}), 0).alpha_prime == Rational(0));
  CHECK_THROWS_AS(adjusted_alpha(tri, c, tri.service_index("y")), PreconditionError);
}

TEST_CASE("local condition") {
  const auto tri = triangle();
  const auto c = tri.service_set({"x", "z"});
  const auto r = el_condition_local(tri, c, Rational(0));
  CHECK_FALSE(r.holds);
  REQUIRE(r.loads.size() == 1);
  CHECK(r.loads[0].validator == tri.validator_index("a"));
  CHECK(r.loads[0].load * Rational(19, 10) == Rational(2));
  CHECK(el_max_gamma_local(tri, c).status == GammaStatus::kNever);

  const auto right = gen_fig4_right().graph;
  const auto rr = el_condition_local(right, right.service_set({"x"}), Rational(0));
  CHECK_FALSE(rr.holds);
  CHECK(right.ids(rr.flagged) == std::vector<std::string>{"x"});

  const auto ns = noslack();
  const auto whole = el_max_gamma_local(ns, ns.all_services());
  CHECK(whole.status == GammaStatus::kFinite);
  CHECK(whole.gamma == Rational(1));

  const RestakingGraph free({{"x", Rational(0), Rational(1)}, {"y", Rational(1), Rational(1)}},
                            {{"a", Rational(1)}}, {{"x", "a"}, {"y", "a"}});
  CHECK(el_max_gamma_local(free, free.service_set({"x"})).status == GammaStatus::kUnbounded);
}

TEST_CASE("local condition over the whole service set matches the scaled one") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const auto g = testing::random_graph(rng);
    for (const Rational& gamma : {Rational(0), Rational(1, 2), Rational(2)}) {
      CHECK(el_condition_local(g, g.all_services(), gamma).holds ==
            el_condition_scaled(g, gamma).holds);
    }
  }
}

TEST_CASE("conditions imply the properties they guard") {
  std::mt19937_64 rng(11);
  int exercised = 0;
  for (int round = 0; round < 300; ++round) {
    const auto g = testing::random_graph(rng, {3, 5});
    CAPTURE(serialize_graph(g));
    CHECK(el_condition(g).holds == oracle::el_scaled(g, Rational(0)));
    if (el_condition(g).holds) {
      CHECK(oracle::secure(g));
      ++exercised;
    }
    for (const Rational& gamma : {Rational(1, 2), Rational(1), Rational(3)}) {
      CHECK(el_condition_scaled(g, gamma).holds == oracle::el_scaled(g, gamma));
      if (el_condition_scaled(g, gamma).holds) CHECK(oracle::slack_secure(g, gamma));
    }
    const auto bound = el_max_gamma(g);
    const auto truth = oracle::max_slack(g);
    if (bound.status == GammaStatus::kFinite) {
      CHECK(el_condition_scaled(g, bound.gamma).holds);
      CHECK_FALSE(el_condition_scaled(g, bound.gamma + Rational(1, 1000)).holds);
      if (truth) CHECK(bound.gamma <= *truth);
    }
    for (const auto& c : oracle::service_subsets(g)) {
      for (const Rational& gamma : {Rational(0), Rational(1)}) {
        if (el_condition_local(g, c, gamma).holds) CHECK(oracle::headers_hold(g, c, gamma));
      }
    }
  }
  CHECK(exercised > 10);
}

TEST_CASE("local condition ignores everything outside the coalition") {
  std::mt19937_64 rng(3);
  int variants = 0;
  for (int round = 0; round < 200 && variants < 40; ++round) {
    const auto g = testing::random_graph(rng, {3, 4, true});
    if (!oracle::secure(g)) continue;
    for (const auto& c : oracle::service_subsets(g)) {
      if (c.empty()) continue;
      const auto out = gen_local_variant(g, c, Rational(1, 2));
      REQUIRE(is_local_variant(g, out.graph, c));
      const auto c2 = out.graph.service_set(g.ids(c));
      for (const Rational& gamma : {Rational(0), Rational(1)}) {
        CHECK(el_condition_local(g, c, gamma).holds == el_condition_local(out.graph, c2, gamma).holds);
        CHECK(check_header_overcollateralization(g, c, gamma).holds ==
              check_header_overcollateralization(out.graph, c2, gamma).holds);
      }
      ++variants;
    }
  }
  CHECK(variants > 0);
}
