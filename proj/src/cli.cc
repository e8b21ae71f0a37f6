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

#include "restake/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "restake/attack.h"
#include "restake/cascade.h"
#include "restake/conditions.h"
#include "restake/constructions.h"
#include "restake/error.h"
#include "restake/graph_io.h"
#include "restake/witness_io.h"

namespace restake::cli {
namespace {

struct Options {
  std::string graph_path;
  std::string cascade_path;
  std::string generator;
  std::string local;
  bool has_local = false;
  std::string gamma;
  std::string psi;
  std::string shock;
  std::string cap;
  std::string claims_path;
  std::string epsilon;
  std::string pi;
  std::string sigma_a;
  std::string n;
  std::size_t depth = 0;
  bool stable = false;
  bool valid = false;
  bool json = false;
  bool allow_large = false;
  bool verify = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Collected output of one verb: a JSON document and the equivalent text.
struct Report {
  Json doc = Json::object();
  std::vector<std::string> lines;
  int code = kOk;

  void line(std::string text) { lines.push_back(std::move(text)); }
};

std::string approx(const Rational& r) {
  if (r.is_integer()) return r.str();
  std::ostringstream os;
  os << r.str() << " (approx " << std::setprecision(6) << r.approx() << ")";
  return os.str();
}

std::string id_list(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out + "}";
}

std::string attack_text(const RestakingGraph& g, const Attack& a) {
  return "(" + id_list(g.ids(a.services)) + ", " + id_list(g.ids(a.validators)) + ")";
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Rational need_number(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  return Rational::parse(text);
}

std::optional<Rational> maybe_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return Rational::parse(text);
}

std::optional<ServiceSet> coalition_of(const RestakingGraph& g, const Options& o) {
  if (!o.has_local) return std::nullopt;
  const auto ids = split_ids(o.local);
  return g.service_set(std::span<const std::string>(ids));
}

ServiceSet need_coalition(const RestakingGraph& g, const Options& o, const char* verb) {
  auto c = coalition_of(g, o);
  if (!c) throw UsageError(std::string(verb) + " needs --local");
  return *c;
}

EnumerationLimits limits_of(const Options& o) {
  EnumerationLimits lim;
  if (o.cap.empty()) return lim;
  const auto parts = split_ids(o.cap);
  if (parts.size() != 2) throw UsageError("--cap takes S,V");
  std::size_t s = 0;
  std::size_t v = 0;
  try {
    s = std::stoul(parts[0]);
    v = std::stoul(parts[1]);
  } catch (const std::exception&) {
    throw UsageError("--cap takes two integers S,V");
  }
  if (s > 62 || v > 62) throw UsageError("--cap cannot exceed 62,62");
  if ((s > lim.max_services || v > lim.max_validators) && !o.allow_large)
    throw UsageError("raising the caps above 16,20 needs --allow-large");
  lim.max_services = s;
  lim.max_validators = v;
  return lim;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(ModelErrc::kSchema, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ModelError(ModelErrc::kSchema, "invalid JSON in '" + path + "': " + e.what());
  }
}

std::string slack_text(const SlackResult& s) {
  switch (s.status) {
    case SlackStatus::kInsecure: return "insecure";
    case SlackStatus::kUnbounded: return "unbounded";
    case SlackStatus::kFinite: break;
  }
  return s.gamma.str();
}

std::string bound_text(const GammaBound& b) {
  switch (b.status) {
    case GammaStatus::kNever: return "never";
    case GammaStatus::kUnbounded: return "unbounded";
    case GammaStatus::kFinite: break;
  }
  return b.gamma.str();
}

void cmd_check(const Options& o, const EnumerationLimits& lim, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  r.doc["verb"] = "check";
  if (auto gamma = maybe_number(o.gamma)) {
    const SlackVerdict v = is_gamma_slack_secure(g, *gamma, lim);
    r.doc["gamma"] = gamma->str();
    r.doc["holds"] = v.holds;
    r.line("slack security at gamma " + approx(*gamma) + ": " + (v.holds ? "holds" : "fails"));
    if (v.violation) {
      r.doc["witness"] = attack_to_json(g, *v.violation);
      r.line("witness coalition: " + attack_text(g, *v.violation));
    }
    r.code = v.holds ? kOk : kFails;
    return;
  }
  const SecurityVerdict v = is_secure(g, lim);
  r.doc["secure"] = v.secure;
  r.line(v.secure ? "secure" : "insecure");
  if (v.counterexample) {
    r.doc["witness"] = attack_to_json(g, *v.counterexample);
    r.line("witness attack: " + attack_text(g, *v.counterexample));
  }
  r.code = v.secure ? kOk : kFails;
}

void cmd_el(const Options& o, const EnumerationLimits&, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const auto gamma = maybe_number(o.gamma);
  const auto c = coalition_of(g, o);
  ConditionReport rep;
  if (c) {
    rep = el_condition_local(g, *c, gamma.value_or(Rational(0)));
  } else if (gamma) {
    rep = el_condition_scaled(g, *gamma);
  } else {
    rep = el_condition(g);
  }
  r.doc["verb"] = "el";
  if (gamma) r.doc["gamma"] = gamma->str();
  if (c) r.doc["coalition"] = ids_to_json(g, *c);
  r.doc["holds"] = rep.holds;
  Json loads = Json::array();
  for (const ValidatorLoad& l : rep.loads) {
    Json item = Json::object();
    item["validator"] = g.validator(l.validator).id;
    item["load"] = l.load.str();
    loads.push_back(std::move(item));
  }
  r.doc["loads"] = std::move(loads);
  r.doc["violating"] = ids_to_json(g, rep.violating);
  r.doc["flagged"] = ids_to_json(g, rep.flagged);
  r.line(std::string("condition ") + (rep.holds ? "holds" : "fails"));
  for (const ValidatorLoad& l : rep.loads)
    r.line("  load " + g.validator(l.validator).id + ": " + approx(l.load));
  if (!rep.violating.empty()) r.line("violating validators: " + id_list(g.ids(rep.violating)));
  if (!rep.flagged.empty()) r.line("services corruptible for free: " + id_list(g.ids(rep.flagged)));
  r.code = rep.holds ? kOk : kFails;
}

void cmd_max_gamma(const Options& o, const EnumerationLimits& lim, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const auto c = coalition_of(g, o);
  const SlackResult exact = c ? max_header_slack(g, *c, lim) : max_slack(g, lim);
  const GammaBound proxy = c ? el_max_gamma_local(g, *c) : el_max_gamma(g);
  r.doc["verb"] = "max-gamma";
  if (c) r.doc["coalition"] = ids_to_json(g, *c);
  r.doc["exact"] = slack_text(exact);
  r.doc["el_proxy"] = bound_text(proxy);
  if (exact.witness) r.doc["witness"] = attack_to_json(g, *exact.witness);
  auto show = [](const std::string& s) {
    return s.find_first_not_of("0123456789/-") == std::string::npos ? approx(Rational::parse(s)) : s;
  };
  r.line("max gamma (exact): " + show(slack_text(exact)));
  r.line("max gamma (condition proxy): " + show(bound_text(proxy)));
  if (exact.witness) r.line("binding coalition: " + attack_text(g, *exact.witness));
}

void cmd_headers(const Options& o, const EnumerationLimits& lim, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const ServiceSet c = need_coalition(g, o, "headers");
  const Rational gamma = maybe_number(o.gamma).value_or(Rational(0));
  const HeaderVerdict v = check_header_overcollateralization(g, c, gamma, lim);
  r.doc["verb"] = "headers";
  r.doc["coalition"] = ids_to_json(g, c);
  r.doc["gamma"] = gamma.str();
  r.doc["holds"] = v.holds;
  r.line(std::string("header overcollateralization ") + (v.holds ? "holds" : "fails"));
  if (v.violation) {
    const Attack header{v.violation->services, v.violation->exclusive};
    r.doc["witness"] = attack_to_json(g, header);
    r.line("violating header: " + attack_text(g, header));
  }
  r.code = v.holds ? kOk : kFails;
}

void cmd_shock(const Options& o, const EnumerationLimits&, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const auto ids = split_ids(o.shock);
  const ValidatorSet shock = g.validator_set(std::span<const std::string>(ids));
  const Rational psi = need_number(o.psi, "--psi");
  const auto c = coalition_of(g, o);
  const bool ok = shock_admissible(g, shock, psi, c);
  r.doc["verb"] = "shock";
  r.doc["shock"] = ids_to_json(g, shock);
  r.doc["psi"] = psi.str();
  if (c) r.doc["coalition"] = ids_to_json(g, *c);
  r.doc["admissible"] = ok;
  r.line(std::string("shock ") + id_list(ids) + (ok ? " is within" : " exceeds") + " budget " +
         approx(psi));
  r.code = ok ? kOk : kFails;
}

void cmd_loss(const Options& o, const EnumerationLimits& lim, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const Rational psi = need_number(o.psi, "--psi");
  const auto c = coalition_of(g, o);
  if (o.stable && o.valid) throw UsageError("--stable and --valid are exclusive");
  if (!c && o.stable) throw UsageError("--stable applies to local loss only");
  const LossReport rep =
      c ? worst_case_loss_local(g, *c, psi, o.valid ? CascadeMode::kValid : CascadeMode::kStable, lim)
        : worst_case_loss_global(g, psi, lim);
  r.doc["verb"] = "loss";
  r.doc["psi"] = psi.str();
  if (c) r.doc["coalition"] = ids_to_json(g, *c);
  r.doc["loss"] = rep.loss.str();
  r.doc["shock_fraction"] = rep.shock_fraction.str();
  r.doc["cascade_fraction"] = rep.cascade_fraction.str();
  r.doc["witness"] = cascade_to_json(g, rep.shock, rep.cascade);
  r.line("worst-case loss: " + approx(rep.loss));
  r.line("  budget " + approx(psi) + ", realised shock " + approx(rep.shock_fraction) +
         ", cascade " + approx(rep.cascade_fraction));
  r.line("witness shock: " + id_list(g.ids(rep.shock)));
  for (const Attack& step : rep.cascade.steps) r.line("  then " + attack_text(g, step));
}

void cmd_cascade_verify(const Options& o, const EnumerationLimits& lim, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const auto [shock, cascade] = cascade_from_json(g, read_json_file(o.cascade_path));
  const CascadeVerdict v = verify_cascade(g, shock, cascade, lim);
  r.doc["verb"] = "cascade-verify";
  r.doc["ok"] = v.ok;
  if (!v.ok) {
    r.doc["failing_step"] = *v.failing_step;
    r.doc["reason"] = v.reason;
    r.line("cascade fails at step " + std::to_string(*v.failing_step + 1) + ": " + v.reason);
  } else {
    r.line("cascade verifies (" + std::to_string(cascade.steps.size()) + " steps, " +
           std::string(to_string(cascade.mode)) + ")");
  }
  if (v.destabilizer) {
    r.doc["destabilizer"] = attack_to_json(g, *v.destabilizer);
    r.line("destabilizing sub-attack: " + attack_text(g, *v.destabilizer));
  }
  r.code = v.ok ? kOk : kFails;
}

void cmd_depth(const Options& o, const EnumerationLimits& lim, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const auto [shock, cascade] = cascade_from_json(g, read_json_file(o.cascade_path));
  const CascadeVerdict v = verify_cascade(g, shock, cascade, lim);
  r.doc["verb"] = "depth";
  r.doc["ok"] = v.ok;
  if (!v.ok) {
    r.doc["failing_step"] = *v.failing_step;
    r.doc["reason"] = v.reason;
    r.line("cascade fails at step " + std::to_string(*v.failing_step + 1) + ": " + v.reason);
    r.code = kFails;
    return;
  }
  const std::size_t k = reference_depth(g, shock, cascade);
  r.doc["depth"] = k;
  r.line("reference depth: " + std::to_string(k));
}

void cmd_length_bound(const Options& o, const EnumerationLimits&, Report& r) {
  const RestakingGraph g = load_graph_file(o.graph_path);
  const Rational gamma = need_number(o.gamma, "--gamma");
  const Rational psi = need_number(o.psi, "--psi");
  if (o.depth == 0) throw UsageError("length-bound needs --depth >= 1");
  const long long bound = length_bound(g, gamma, psi, o.depth);
  r.doc["verb"] = "length-bound";
  r.doc["gamma"] = gamma.str();
  r.doc["psi"] = psi.str();
  r.doc["depth"] = o.depth;
  r.doc["bound"] = bound;
  r.line("every cascade has fewer than " + std::to_string(bound) + " steps");
}

int cmd_generate(const Options& o, const EnumerationLimits& lim, std::ostream& out,
                 std::ostream& err) {
  ConstructionOutput built = [&] {
    if (o.generator == "local-variant") {
      if (o.graph_path.empty()) throw UsageError("local-variant needs --graph");
      const RestakingGraph g = load_graph_file(o.graph_path);
      return gen_local_variant(g, need_coalition(g, o, "local-variant"),
                               maybe_number(o.epsilon).value_or(Rational(1)), lim);
    }
    auto pick = [](const std::string& text, Rational fallback) {
      return text.empty() ? fallback : Rational::parse(text);
    };
    std::vector<Rational> params;
    if (o.generator == "two-validator") {
      params = {pick(o.epsilon, Rational(1, 10))};
    } else if (o.generator == "noslack") {
      params = {pick(o.psi, Rational(1, 10)), pick(o.gamma, Rational(1)),
                pick(o.epsilon, Rational(1, 20)), pick(o.sigma_a, Rational(1))};
    } else if (o.generator == "triangle") {
      params = {pick(o.gamma, Rational(1)), pick(o.pi, Rational(1)), pick(o.sigma_a, Rational(19, 10))};
    } else if (o.generator == "ring") {
      params = {pick(o.n, Rational(6))};
    }
    return generate_by_name(o.generator, params);
  }();
  out << serialize_graph(built.graph);
  if (!o.claims_path.empty()) {
    Json doc = Json::object();
    doc["construction"] = o.generator;
    doc["claims"] = claims_to_json(built.graph, built.claims);
    std::ofstream file(o.claims_path);
    if (!file) throw UsageError("cannot write '" + o.claims_path + "'");
    file << doc.dump(2) << "\n";
  }
  if (!o.verify) return kOk;
  int code = kOk;
  for (const ClaimResult& c : check_expected(built, lim)) {
    err << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
    if (!c.passed) code = kFails;
  }
  return code;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_flag("--json", o.json, "machine-readable report");
  sub->add_option("--cap", o.cap, "enumeration caps S,V");
  sub->add_flag("--allow-large", o.allow_large, "acknowledge caps above the defaults");
}

void add_graph(CLI::App* sub, Options& o) {
  sub->add_option("graph", o.graph_path, "graph JSON file")->required();
}

void add_local(CLI::App* sub, Options& o) {
  sub->add_option("--local", o.local, "coalition as comma-separated service ids")
      ->each([&o](const std::string&) { o.has_local = true; });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact security analysis for restaking graphs", "restake"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "is the graph secure (or gamma-slack secure)?");
  add_graph(check, o);
  check->add_option("--gamma", o.gamma, "slack to test");

  auto* el = app.add_subcommand("el", "per-validator sufficient condition");
  add_graph(el, o);
  el->add_option("--gamma", o.gamma, "profit inflation");
  add_local(el, o);

  auto* max_gamma = app.add_subcommand("max-gamma", "largest slack, exact and by the condition");
  add_graph(max_gamma, o);
  add_local(max_gamma, o);

  auto* headers = app.add_subcommand("headers", "header overcollateralization for a coalition");
  add_graph(headers, o);
  headers->add_option("--gamma", o.gamma, "required slack");
  add_local(headers, o);

  auto* shock = app.add_subcommand("shock", "is a shock within budget?");
  add_graph(shock, o);
  shock->add_option("--shock", o.shock, "removed validators, comma-separated");
  shock->add_option("--psi", o.psi, "budget");
  add_local(shock, o);

  auto* loss = app.add_subcommand("loss", "worst-case stake loss after a shock");
  add_graph(loss, o);
  loss->add_option("--psi", o.psi, "shock budget");
  loss->add_flag("--stable", o.stable, "stable cascades (local default)");
  loss->add_flag("--valid", o.valid, "valid cascades in local mode");
  add_local(loss, o);

  auto* verify = app.add_subcommand("cascade-verify", "check a cascade witness");
  add_graph(verify, o);
  verify->add_option("cascade", o.cascade_path, "cascade JSON file")->required();

  auto* depth = app.add_subcommand("depth", "reference depth of a cascade");
  add_graph(depth, o);
  depth->add_option("cascade", o.cascade_path, "cascade JSON file")->required();

  auto* bound = app.add_subcommand("length-bound", "upper bound on cascade length");
  add_graph(bound, o);
  bound->add_option("--gamma", o.gamma, "slack");
  bound->add_option("--psi", o.psi, "shock budget");
  bound->add_option("--depth", o.depth, "reference depth");

  auto* generate = app.add_subcommand("generate", "emit a constructed graph");
  generate->add_option("name", o.generator,
                       "two-validator | noslack | triangle | ring | stable-union | "
                       "fig4-left | fig4-right | local-variant")
      ->required();
  generate->add_option("--epsilon", o.epsilon);
  generate->add_option("--psi", o.psi);
  generate->add_option("--gamma", o.gamma);
  generate->add_option("--pi", o.pi);
  generate->add_option("--sigma-a", o.sigma_a);
  generate->add_option("--n", o.n);
  generate->add_option("--graph", o.graph_path, "input graph for local-variant");
  add_local(generate, o);
  generate->add_option("--claims", o.claims_path, "write expected claims JSON here");
  generate->add_flag("--verify", o.verify, "check the claims, report on stderr");

  for (CLI::App* sub : app.get_subcommands({})) add_common(sub, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const EnumerationLimits lim = limits_of(o);
    CLI::App* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    if (verb == "generate") return cmd_generate(o, lim, out, err);

    Report r;
    if (verb == "check") cmd_check(o, lim, r);
    else if (verb == "el") cmd_el(o, lim, r);
    else if (verb == "max-gamma") cmd_max_gamma(o, lim, r);
    else if (verb == "headers") cmd_headers(o, lim, r);
    else if (verb == "shock") cmd_shock(o, lim, r);
    else if (verb == "loss") cmd_loss(o, lim, r);
    else if (verb == "cascade-verify") cmd_cascade_verify(o, lim, r);
    else if (verb == "depth") cmd_depth(o, lim, r);
    else if (verb == "length-bound") cmd_length_bound(o, lim, r);

    if (o.json) {
      out << r.doc.dump(2) << "\n";
    } else {
      for (const std::string& l : r.lines) out << l << "\n";
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
      out << "time: " << std::fixed << std::setprecision(1) << ms.count() << " ms\n";
    }
    return r.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << " (raise with --cap S,V --allow-large)\n";
    return kRefused;
  } catch (const ModelError& e) {
    err << "model error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace restake::cli
