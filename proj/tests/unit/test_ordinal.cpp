#include <doctest.h>

#include <random>

#include "ordlab/ordinal.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace ordlab;

namespace {

Ordinal o(const char* s) { return parse_cnf(s); }
const Ordinal w = Ordinal::omega();

}  // namespace

TEST_CASE("parse and render canonical forms") {
  CHECK(render(o("0")) == "0");
  CHECK(render(o("w")) == "w");
  CHECK(render(o("w^1")) == "w");
  CHECK(render(o("w^2*3 + w + 1")) == "w^2*3 + w + 1");
  CHECK(render(o("w^w")) == "w^w");
  CHECK(render(o("w^(w^2)")) == "w^(w^2)");
  CHECK(render(o("w^(w + 1)*2")) == "w^(w + 1)*2");
  CHECK(render(o("  w^2*3+w  ")) == "w^2*3 + w");
  CHECK(render(o("123456789012345678901234567890")) == "123456789012345678901234567890");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(o(""), CnfSyntaxError);
  CHECK_THROWS_AS(o("w^"), CnfSyntaxError);
  CHECK_THROWS_AS(o("w*"), CnfSyntaxError);
  CHECK_THROWS_AS(o("01"), CnfSyntaxError);
  CHECK_THROWS_AS(o("w + x"), CnfSyntaxError);
  CHECK_THROWS_AS(o("w^(2"), CnfSyntaxError);
  CHECK_THROWS_AS(o("1 + w"), CnfNormalizationError);
  CHECK_THROWS_AS(o("w + w"), CnfNormalizationError);
  CHECK_THROWS_AS(o("w*0"), CnfNormalizationError);
  CHECK_THROWS_AS(o("w + 0"), CnfNormalizationError);
  try {
    o("w + w^2");
    FAIL("expected a normalization error");
  } catch (const CnfNormalizationError& e) {
    CHECK(e.position() > 0);
  }
}

TEST_CASE("from_terms validates normal form") {
  CHECK_THROWS_AS(Ordinal::from_terms({{Ordinal(1u), 1}, {Ordinal(2u), 1}}), CnfNormalizationError);
  CHECK_THROWS_AS(Ordinal::from_terms({{Ordinal(1u), 0}}), CnfNormalizationError);
  CHECK(Ordinal::from_terms({{Ordinal(2u), 1}, {Ordinal(0u), 5}}) == o("w^2 + 5"));
}

TEST_CASE("comparison examples") {
  CHECK(compare(o("w^2"), o("w*5 + 3")) > 0);
  CHECK(compare(o("w + 1"), o("w")) > 0);
  CHECK(compare(o("w^w"), o("w^100*1000")) > 0);
  CHECK(compare(o("w^(w+1)"), o("w^w*7")) > 0);
  CHECK(ordering_name(compare(o("3"), o("3"))) == "EQ");
  CHECK(ordering_name(compare(o("3"), o("w"))) == "LT");
}

TEST_CASE("arithmetic examples") {
  CHECK(render(add(w, Ordinal(1u))) == "w + 1");
  CHECK(add(Ordinal(1u), w) == w);
  CHECK(render(add(o("w^2 + w*3 + 2"), o("w*2 + 1"))) == "w^2 + w*5 + 1");
  CHECK(render(mul(Ordinal(2u), w)) == "w");
  CHECK(render(mul(w, Ordinal(2u))) == "w*2");
  CHECK(render(mul(o("w + 1"), o("w + 1"))) == "w^2 + w + 1");
  CHECK(render(mul(o("w^2*3 + 5"), o("w^3*2 + 4"))) == "w^5*2 + w^2*12 + 5");
  CHECK(render(omega_pow(o("2"))) == "w^2");
  CHECK(render(omega_pow(w)) == "w^w");
  CHECK(omega_pow(Ordinal()) == Ordinal(1u));
}

TEST_CASE("kind and predecessor") {
  CHECK(kind(Ordinal()) == OrdinalKind::Zero);
  CHECK(kind(o("w + 3")) == OrdinalKind::Successor);
  CHECK(kind(o("w^2 + w")) == OrdinalKind::Limit);
  CHECK(predecessor(o("w^2 + 1")) == o("w^2"));
  CHECK(predecessor(o("5")) == o("4"));
  CHECK_THROWS(predecessor(w));
  CHECK_THROWS(predecessor(Ordinal()));
}

TEST_CASE("restriction predicates") {
  CHECK(below_omega_omega(o("w^100*3 + w")));
  CHECK_FALSE(below_omega_omega(o("w^w")));
  CHECK(omega_tower(1) == w);
  CHECK(omega_tower(2) == o("w^w"));
  CHECK(omega_tower(3) == o("w^(w^w)"));
  for (unsigned k = 1; k <= 4; ++k) {
    CHECK_FALSE(below_omega_tower(omega_tower(k), k));
    CHECK(below_omega_tower(omega_tower(k), k + 1));
  }
  CHECK(below_omega_tower(o("w^(w^3)"), 3));
}

TEST_CASE("norm") {
  CHECK(norm(Ordinal()) == 0);
  CHECK(norm(o("7")) == 8);
  CHECK(norm(w) == 2);
  CHECK(norm(o("w^2*3 + 1")) == 5);
  CHECK(norm(o("w^w")) == 3);
}

TEST_CASE("enumeration matches the coefficient-vector count") {
  // Below w^3 the universe is exactly the coefficient vectors with norm <= 4.
  const auto enumerated = enumerate_below(omega_pow(Ordinal(3u)), 4);
  std::vector<Ordinal> expected;
  for (const auto& p : oracle::all_below(3, 4))
    if (oracle::norm(p) <= 4) expected.push_back(oracle::to_ordinal(p));
  std::sort(expected.begin(), expected.end());
  REQUIRE(enumerated.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(enumerated[i] == expected[i]);
  for (std::size_t i = 1; i < enumerated.size(); ++i) CHECK(enumerated[i - 1] < enumerated[i]);
}

TEST_CASE("enumeration beyond w^w stays in bound and norm") {
  const auto bound = o("w^(w + 1)");
  const auto xs = enumerate_below(bound, 5);
  CHECK(!xs.empty());
  for (const auto& x : xs) {
    CHECK(x < bound);
    CHECK(norm(x) <= 5);
    CHECK(is_normal(x));
  }
  CHECK(std::find(xs.begin(), xs.end(), o("w^w")) != xs.end());
}

TEST_CASE("arithmetic agrees with the coefficient-vector oracle below w^4") {
  const auto polys = oracle::all_below(4, 2);
  for (const auto& a : polys)
    for (const auto& b : polys) {
      const Ordinal x = oracle::to_ordinal(a), y = oracle::to_ordinal(b);
      REQUIRE(oracle::from_ordinal(add(x, y)) == oracle::add(a, b));
      REQUIRE(oracle::from_ordinal(mul(x, y)) == oracle::mul(a, b));
      REQUIRE((compare(x, y) < 0) == (oracle::cmp(a, b) < 0));
      REQUIRE((compare(x, y) == 0) == (oracle::cmp(a, b) == 0));
    }
}

TEST_CASE("algebraic laws on random ordinals") {
  gen::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto a = gen::ordinal(rng, 2), b = gen::ordinal(rng, 2), c = gen::ordinal(rng, 2);
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    if (b < c) CHECK(add(a, b) < add(a, c));
    if (b < c) CHECK(omega_pow(b) < omega_pow(c));
    CHECK(add(a, b) >= b);
    CHECK(is_normal(add(a, b)));
    CHECK(is_normal(mul(a, b)));
    CHECK(parse_cnf(render(a)) == a);
  }
}

TEST_CASE("coefficients beyond 64 bits") {
  const auto big = o("w*18446744073709551615 + 18446744073709551615");
  CHECK(render(add(big, o("w + 1"))) == "w*18446744073709551616 + 1");
  CHECK(render(mul(big, Ordinal(2u))) == "w*36893488147419103230 + 18446744073709551615");
  CHECK(coefficient_at(big, Ordinal(1u)) == Natural("18446744073709551615"));
}
