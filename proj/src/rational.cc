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

#include "restake/rational.h"

#include <cctype>
#include <string>

#include "restake/error.h"

namespace restake {

std::string_view to_string(ModelErrc code) {
  switch (code) {
    case ModelErrc::kSchema: return "schema violation";
    case ModelErrc::kBadNumber: return "malformed number";
    case ModelErrc::kEmptyId: return "empty identifier";
    case ModelErrc::kDuplicateId: return "duplicate identifier";
    case ModelErrc::kUnknownId: return "unknown vertex";
    case ModelErrc::kDanglingEdge: return "dangling edge";
    case ModelErrc::kDuplicateEdge: return "duplicate edge";
    case ModelErrc::kNegativeStake: return "negative stake";
    case ModelErrc::kNegativeProfit: return "negative profit";
    case ModelErrc::kAlphaRange: return "alpha outside (0, 1]";
    case ModelErrc::kMagnitude: return "magnitude out of range";
  }
  return "model error";
}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw ModelError(ModelErrc::kBadNumber, "cannot parse '" + std::string(text) + "'");
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad_number(text);
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_number(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      bad_number(text);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::string digits = std::string(whole) + std::string(frac);
    value = mpq_class(mpz_class(digits, 10), den);
  } else {
    if (!all_digits(body)) bad_number(text);
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

Rational pow(const Rational& base, long exponent) {
  mpq_class result(1);
  if (exponent == 0) return Rational(result);
  if (base.is_zero() && exponent < 0) throw std::domain_error("Rational: 0 to a negative power");
  mpz_class num, den;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_pow_ui(num.get_mpz_t(), base.get().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get().get_den_mpz_t(), e);
  result = exponent > 0 ? mpq_class(num, den) : mpq_class(den, num);
  return Rational(result);
}

}  // namespace restake
