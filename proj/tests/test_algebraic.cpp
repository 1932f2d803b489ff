#include "rosen/algebraic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rosen/error.hpp"

using namespace rosen;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

FieldElement random_element(std::mt19937_64& rng, const Context& ctx) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < ctx->degree(); ++i) c.emplace_back(num(rng), den(rng));
  for (auto& r : c) r.canonicalize();
  return FieldElement(ctx, std::span<const Rational>(c));
}

}  // namespace

TEST_CASE("minimal polynomials of 2cos(pi/q)") {
  CHECK(cosine_minimal_polynomial(3) == ints({-1, 1}));
  CHECK(cosine_minimal_polynomial(4) == ints({-2, 0, 1}));
  CHECK(cosine_minimal_polynomial(5) == ints({-1, -1, 1}));
  CHECK(cosine_minimal_polynomial(6) == ints({-3, 0, 1}));
  CHECK(cosine_minimal_polynomial(7) == ints({1, -2, -1, 1}));
  CHECK(cosine_minimal_polynomial(8) == ints({2, 0, -4, 0, 1}));
  CHECK(cosine_minimal_polynomial(10) == ints({5, 0, -5, 0, 1}));
  CHECK(cosine_minimal_polynomial(12) == ints({1, 0, -4, 0, 1}));
}

TEST_CASE("minimal polynomial vanishes at lambda numerically") {
  for (int q = 3; q <= 30; ++q) {
    const auto p = cosine_minimal_polynomial(q);
    const double l = 2 * std::cos(std::numbers::pi / q);
    double v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * l + p[i].get_d();
    CHECK(std::abs(v) < 1e-9);
  }
}

TEST_CASE("contexts") {
  CHECK_THROWS_AS(make_context(2), InvalidParameter);
  CHECK_THROWS_AS(make_context(-4), InvalidParameter);
  auto theta = make_theta_context();
  CHECK(theta->is_theta());
  CHECK(theta->name() == "inf");
  CHECK(theta->degree() == 1);
  CHECK(*FieldElement::lambda(theta).as_rational() == 2);
  CHECK(make_context(7)->degree() == 3);
  CHECK(make_context(3)->rational_lambda() == Rational(1));
}

TEST_CASE("lambda identities") {
  auto c5 = make_context(5);
  auto l5 = FieldElement::lambda(c5);
  CHECK(l5 * l5 == l5 + FieldElement(c5, 1L));
  CHECK(l5.inverse() == l5 - FieldElement(c5, 1L));

  auto c4 = make_context(4);
  auto l4 = FieldElement::lambda(c4);
  CHECK(invert(l4) == l4 * FieldElement(c4, Rational(1, 2)));
  CHECK(*(l4 * l4).as_integer() == 2);
  CHECK_THROWS_AS(FieldElement(c4).inverse(), DivisionByZero);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(11);
  for (int q : {4, 5, 7, 8, 9, 12}) {
    auto ctx = make_context(q);
    for (int t = 0; t < 40; ++t) {
      auto a = random_element(rng, ctx);
      auto b = random_element(rng, ctx);
      auto c = random_element(rng, ctx);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == FieldElement(ctx));
      if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement(ctx, 1L));
    }
  }
}

TEST_CASE("sign agrees with floating point and is multiplicative") {
  std::mt19937_64 rng(12);
  for (int q : {4, 5, 6, 7, 8, 11}) {
    auto ctx = make_context(q);
    for (int t = 0; t < 60; ++t) {
      auto a = random_element(rng, ctx);
      auto b = random_element(rng, ctx);
      CHECK(sign(a * b) == sign(a) * sign(b));
      const double d = a.to_double();
      if (std::abs(d) > 1e-9) CHECK(sign(a) == (d > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("sign of tiny nonzero differences") {
  // Convergents of 1 + sqrt(2) approach it from both sides very closely.
  auto c4 = make_context(4);
  auto l = FieldElement::lambda(c4);
  auto target = FieldElement(c4, 1L) + l;
  FieldElement z = l * FieldElement(c4, 2L);
  for (int k = 0; k < 60; ++k) {
    CHECK(sign(z - target) == 1);  // z_k > 1 + sqrt(2), decreasing
    z = l * FieldElement(c4, 2L) - z.inverse();
  }
}

TEST_CASE("approximation intervals nest and contain the value") {
  auto c7 = make_context(7);
  auto x = FieldElement::lambda(c7) * FieldElement(c7, Rational(3, 7)) - FieldElement(c7, 2L);
  Interval prev = x.approximate(16);
  for (unsigned bits : {32u, 64u, 128u, 256u, 512u}) {
    Interval cur = x.approximate(bits);
    CHECK(prev.contains(cur));
    CHECK(cur.width() <= Rational(1, 1) / Rational(Integer(1) << bits) * 4);
    prev = cur;
  }
  CHECK(std::abs(x.to_double() - (3.0 / 7 * 2 * std::cos(std::numbers::pi / 7) - 2)) < 1e-12);
}

TEST_CASE("nearest lambda multiple") {
  auto c3 = make_context(3);
  CHECK(nearest_lambda_multiple(FieldElement(c3, Rational(7, 2))) == 3);  // tie to the lesser
  CHECK(nearest_lambda_multiple(FieldElement(c3, Rational(5, 7))) == 1);
  CHECK(nearest_lambda_multiple(FieldElement(c3, Rational(-1, 2))) == -1);

  std::mt19937_64 rng(13);
  for (int q : {4, 5, 7}) {
    auto ctx = make_context(q);
    for (int t = 0; t < 40; ++t) {
      auto a = random_element(rng, ctx);
      const Integer k = nearest_lambda_multiple(a);
      // |a - k lambda| <= lambda/2 and shifting a by m lambda shifts k by m.
      auto rest = a - FieldElement::lambda_multiple(ctx, k);
      auto half = FieldElement::lambda(ctx) * FieldElement(ctx, Rational(1, 2));
      CHECK(sign(half - rest) >= 0);
      CHECK(sign(rest + half) > 0);
      CHECK(nearest_lambda_multiple(a + FieldElement::lambda_multiple(ctx, 5)) == k + 5);
      CHECK(floor(a) <= ceil(a));
    }
  }
}

TEST_CASE("context mismatch") {
  auto a = FieldElement(make_context(4), 1L);
  auto b = FieldElement(make_context(5), 1L);
  CHECK_THROWS_AS(a + b, ContextMismatch);
  CHECK_FALSE(a == b);
}

TEST_CASE("reduction modulo the minimal polynomial") {
  auto c5 = make_context(5);
  std::vector<Rational> cube{0, 0, 0, 1};  // lambda^3 = 2 lambda + 1
  CHECK(FieldElement(c5, std::span<const Rational>(cube)).to_string() == "[1,2]");
}
