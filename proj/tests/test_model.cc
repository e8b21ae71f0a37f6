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
#include "random_graphs.h"
#include "restake/constructions.h"
#include "restake/error.h"
#include "restake/graph.h"
#include "restake/graph_io.h"

using namespace restake;

namespace {

ModelErrc parse_error_code(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const ModelError& e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return ModelErrc::kSchema;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(Rational::parse("1/10") == Rational(1, 10));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("-2.50") == Rational(-5, 2));
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational::parse("0.1") + Rational::parse("0.2") == Rational::parse("0.3"));
  for (const char* bad : {"", "1/0", "x", "1/2/3", ".5.", "1e3", "- 1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), ModelError);
  }
}

TEST_CASE("rational arithmetic") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(b < a);
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK(pow(Rational(3, 2), 3) == Rational(27, 8));
  CHECK(pow(Rational(3, 2), -2) == Rational(4, 9));
  CHECK(pow(Rational(5), 0) == Rational(1));
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
}

TEST_CASE("index sets") {
  ServiceSet s(5, {0, 3});
  CHECK(s.size() == 2);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(1));
  CHECK(s.to_mask() == 0b01001);
  CHECK(s.complement().to_mask() == 0b10110);
  CHECK((s | ServiceSet(5, {1})).indices() == std::vector<std::size_t>{0, 1, 3});
  CHECK((s - ServiceSet(5, {0})).indices() == std::vector<std::size_t>{3});
  CHECK(ServiceSet(5, {3}).is_subset_of(s));
  CHECK(ServiceSet(5, {0}) < ServiceSet(5, {1}));
  CHECK_THROWS(s.insert(5));
  CHECK_THROWS(s.is_subset_of(ServiceSet(4)));
  ValidatorSet big(100, {0, 99});
  CHECK(big.size() == 2);
  CHECK(big.complement().size() == 98);
}

TEST_CASE("neighbors") {
  const auto tv = gen_two_validator(Rational(1, 10)).graph;
  CHECK(tv.ids(neighbors(tv, tv.service_set({"x"}))) == std::vector<std::string>{"a", "b"});
  CHECK(neighbors(tv, tv.no_services()).empty());
  CHECK(neighbors(tv, tv.no_validators()).empty());

  const auto tri = gen_triangle(Rational(1), Rational(1), Rational(19, 10)).graph;
  CHECK(neighbors(tri, tri.service_set({"x", "z"})) == tri.all_validators());
  CHECK_THROWS_AS(tri.service_set({"nope"}), ModelError);
}

TEST_CASE("totals") {
  const auto tv = gen_two_validator(Rational(1, 10)).graph;
  CHECK(total_stake(tv, tv.validator_set({"a", "b"})) == Rational(1));
  CHECK(total_stake(tv, tv.no_validators()) == Rational(0));

  const auto su = gen_stable_union_counterexample().graph;
  CHECK(total_profit(su, su.service_set({"x", "y"})) == Rational(4));
  CHECK(total_profit(su, su.no_services()) == Rational(0));

  const auto ns = gen_noslack(Rational(1, 10), Rational(1), Rational(1, 20), Rational(1)).graph;
  CHECK(total_stake(ns, ns.all_validators()) == Rational(10));

  const auto ring = gen_ring(30).graph;
  CHECK(total_profit(ring, ring.all_services()) == Rational(30));
}

TEST_CASE("removing validators keeps every service") {
  const auto tv = gen_two_validator(Rational(1, 10)).graph;
  const auto cut = remove_validators(tv, tv.validator_set({"a"}));
  CHECK(cut.num_validators() == 1);
  CHECK(cut.validator(0).id == "b");
  CHECK(cut.ids(neighbors(cut, cut.service_set({"x"}))) == std::vector<std::string>{"b"});
  CHECK(tv.num_validators() == 2);
  CHECK(remove_validators(tv, tv.no_validators()) == tv);

  const auto tri = gen_triangle(Rational(1), Rational(1), Rational(19, 10)).graph;
  const auto t2 = remove_validators(tri, tri.validator_set({"b", "c"}));
  CHECK(t2.num_services() == 3);
  CHECK(t2.ids(neighbors(t2, t2.service_set({"x"}))) == std::vector<std::string>{"a"});
  CHECK(neighbors(t2, t2.service_set({"y"})).empty());
}

TEST_CASE("exclusive validators") {
  const auto tri = gen_triangle(Rational(1), Rational(1), Rational(19, 10)).graph;
  CHECK(tri.ids(exclusive_validators(tri, tri.service_set({"x", "z"}))) ==
        std::vector<std::string>{"a"});
  CHECK(exclusive_validators(tri, tri.all_services()) == tri.all_validators());
  const auto ns = gen_noslack(Rational(1, 10), Rational(1), Rational(1, 20), Rational(1)).graph;
  CHECK(ns.ids(exclusive_validators(ns, ns.no_services())) == std::vector<std::string>{"c"});
}

TEST_CASE("graph validation errors are distinct") {
  CHECK(parse_error_code("[]") == ModelErrc::kSchema);
  CHECK(parse_error_code("{") == ModelErrc::kSchema);
  CHECK(parse_error_code(R"({"services":[],"validators":[],"edges":[],"extra":1})") == ModelErrc::kSchema);
  CHECK(parse_error_code(R"({"services":[],"validators":[]})") == ModelErrc::kSchema);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"1","alpha":"1"}],
      "validators":[{"id":"a","stake":"1"}],"edges":[["x","b"]]})") == ModelErrc::kDanglingEdge);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"1","alpha":"1"}],
      "validators":[{"id":"a","stake":"1"}],"edges":[["x","a"],["x","a"]]})") == ModelErrc::kDuplicateEdge);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"1","alpha":"1"},{"id":"x","profit":"1","alpha":"1"}],
      "validators":[],"edges":[]})") == ModelErrc::kDuplicateId);
  CHECK(parse_error_code(R"({"services":[],"validators":[{"id":"","stake":"1"}],"edges":[]})") == ModelErrc::kEmptyId);
  CHECK(parse_error_code(R"({"services":[],"validators":[{"id":"a","stake":"-1"}],"edges":[]})") == ModelErrc::kNegativeStake);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"-1","alpha":"1"}],"validators":[],"edges":[]})") == ModelErrc::kNegativeProfit);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"1","alpha":"0"}],"validators":[],"edges":[]})") == ModelErrc::kAlphaRange);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"1","alpha":"3/2"}],"validators":[],"edges":[]})") == ModelErrc::kAlphaRange);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":"one","alpha":"1"}],"validators":[],"edges":[]})") == ModelErrc::kBadNumber);
  CHECK(parse_error_code(R"({"services":[{"id":"x","profit":1.5,"alpha":"1"}],"validators":[],"edges":[]})") == ModelErrc::kSchema);
}

TEST_CASE("graph json accepts decimals, integers and fractions") {
  const auto g = parse_graph(R"({"services":[{"id":"x","profit":2,"alpha":"0.5"}],
      "validators":[{"id":"a","stake":"3/6"}],"edges":[["x","a"]]})");
  CHECK(g.service(0).profit == Rational(2));
  CHECK(g.service(0).alpha == Rational(1, 2));
  CHECK(g.validator(0).stake == Rational(1, 2));
  CHECK(serialize_graph(g).find("\"1/2\"") != std::string::npos);
}

TEST_CASE("empty graph parses") {
  const auto g = parse_graph(R"({"services":[],"validators":[],"edges":[]})");
  CHECK(g.num_services() == 0);
  CHECK(g.num_validators() == 0);
  CHECK(parse_graph(serialize_graph(g)) == g);
}

TEST_CASE("round trip of constructions and random graphs") {
  const auto tv = gen_two_validator(Rational(1, 10)).graph;
  const auto back = parse_graph(serialize_graph(tv));
  CHECK(back.num_services() == 1);
  CHECK(back.num_validators() == 2);
  CHECK(back == tv);
  for (const auto& info : generators()) {
    std::vector<Rational> params;
    if (info.name == "two-validator") params = {Rational(1, 10)};
    if (info.name == "noslack") params = {Rational(1, 10), Rational(1), Rational(1, 20), Rational(1)};
    if (info.name == "triangle") params = {Rational(1), Rational(1), Rational(19, 10)};
    if (info.name == "ring") params = {Rational(30)};
    const auto g = generate_by_name(info.name, params).graph;
    CAPTURE(info.name);
    CHECK(parse_graph(serialize_graph(g)) == g);
    CHECK(serialize_graph(parse_graph(serialize_graph(g))) == serialize_graph(g));
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_graph(rng);
    CHECK(parse_graph(serialize_graph(g)) == g);
  }
}

TEST_CASE("set algebra properties on random graphs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_graph(rng);
    const Mask sm = (Mask{1} << g.num_services()) - 1;
    const Mask vm = (Mask{1} << g.num_validators()) - 1;
    std::uniform_int_distribution<Mask> ds(0, sm);
    std::uniform_int_distribution<Mask> dv(0, vm);
    const ServiceSet a = ServiceSet::from_mask(g.num_services(), ds(rng));
    const ServiceSet a2 = a | ServiceSet::from_mask(g.num_services(), ds(rng));
    CHECK(neighbors(g, a).is_subset_of(neighbors(g, a2)));
    CHECK(exclusive_validators(g, a).is_subset_of(exclusive_validators(g, a2)));

    const ValidatorSet d1 = ValidatorSet::from_mask(g.num_validators(), dv(rng));
    const ValidatorSet d2 = ValidatorSet::from_mask(g.num_validators(), dv(rng)) - d1;
    CHECK(total_stake(g, d1 | d2) == total_stake(g, d1) + total_stake(g, d2));
    const auto once = remove_validators(g, d1 | d2);
    const auto first = remove_validators(g, d1);
    std::vector<std::string> rest = g.ids(d2);
    const auto twice = remove_validators(first, first.validator_set(std::span<const std::string>(rest)));
    CHECK(once == twice);
  }
}
