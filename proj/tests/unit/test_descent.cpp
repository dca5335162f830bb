#include <doctest.h>

#include <random>

#include "ordlab/descent.hpp"
#include "../support/generators.hpp"

using namespace ordlab;

namespace {

Ordinal o(const char* s) { return parse_cnf(s); }

std::vector<Ordinal> os(std::initializer_list<const char*> xs) {
  std::vector<Ordinal> out;
  for (auto x : xs) out.push_back(o(x));
  return out;
}

std::uint64_t brute_least_m(const std::vector<Ordinal>& f, const Ordinal& alpha, std::uint64_t n, std::uint64_t limit) {
  for (std::uint64_t m = 0; m <= limit; ++m) {
    const Ordinal window = add(alpha, mul(omega_pow(Ordinal(n)), Ordinal(m)));
    for (const auto& x : f)
      if (x < window) return m;
  }
  return limit + 1;
}

}  // namespace

TEST_CASE("check_strict_descent") {
  const auto bound = o("w^2");
  CHECK(check_strict_descent(os({"w*3", "w + 5", "7", "0"}), bound).valid());
  CHECK(check_strict_descent({}, bound).valid());
  CHECK(check_strict_descent(os({"w*3", "w*3"}), bound).violation_at == 1u);
  CHECK(check_strict_descent(os({"w*3", "w*4"}), bound).violation_at == 1u);
  CHECK(check_strict_descent(os({"w^2", "w"}), bound).violation_at == 0u);
}

TEST_CASE("fundamental sequences") {
  CHECK(fundamental(o("w"), 3) == o("3"));
  CHECK(fundamental(o("w^2"), 3) == o("w*3"));
  CHECK(fundamental(o("w^2*2"), 2) == o("w^2 + w*2"));
  CHECK(fundamental(o("w^w"), 3) == o("w^3"));
  CHECK(fundamental(o("w^(w^w)"), 2) == o("w^(w^2)"));
  CHECK(fundamental(o("w"), 0) == Ordinal());
  CHECK(fundamental(o("w^2 + w"), 0) == o("w^2"));
  CHECK_THROWS_AS(fundamental(o("w + 1"), 2), NotALimit);
  CHECK_THROWS_AS(fundamental(Ordinal(), 2), NotALimit);
}

TEST_CASE("fundamental sequences descend and are increasing in n") {
  const auto limits = enumerate_below(o("w^(w + 1)"), 5);
  for (const auto& a : limits) {
    if (kind(a) != OrdinalKind::Limit) continue;
    for (std::uint64_t n = 0; n <= 5; ++n) {
      CHECK(fundamental(a, n) < a);
      if (n > 0) CHECK(fundamental(a, n - 1) <= fundamental(a, n));
    }
  }
}

TEST_CASE("cofinality at desk scale for powers of w") {
  const auto universe = enumerate_below(o("w^3"), 4);
  for (unsigned k = 1; k <= 3; ++k) {
    const Ordinal a = omega_pow(Ordinal(std::uint64_t{k}));
    for (const auto& b : universe) {
      if (!(b < a)) continue;
      const auto limit = static_cast<std::uint64_t>(norm(b)) + 2;
      bool found = false;
      for (std::uint64_t n = 0; n <= limit && !found; ++n) found = b < fundamental(a, n);
      CHECK_MESSAGE(found, render(b) << " below " << render(a));
    }
  }
}

TEST_CASE("canonical walks") {
  const std::vector<std::uint64_t> none;
  CHECK(canonical_walk(o("3"), none).entries == os({"3", "2", "1", "0"}));
  const std::vector<std::uint64_t> two{2};
  CHECK(canonical_walk(o("w"), two).entries == os({"w", "2", "1", "0"}));
  const auto t = canonical_walk_constant(o("w^2"), 2);
  CHECK(t.entries == os({"w^2", "w*2", "w + 2", "w + 1", "w", "2", "1", "0"}));
  CHECK(t.valid());
  CHECK(t.bound == o("w^2 + 1"));
}

TEST_CASE("walk with exhausted steps carries a partial trace") {
  const std::vector<std::uint64_t> steps{1};
  try {
    canonical_walk(o("w*2"), steps);
    FAIL("expected StepsExhausted");
  } catch (const StepsExhausted& e) {
    CHECK(e.partial().entries == os({"w*2", "w + 1", "w"}));
    CHECK(e.partial().valid());
  }
}

TEST_CASE("walk length is nondecreasing in the step") {
  for (unsigned k = 1; k <= 3; ++k) {
    std::size_t previous = 0;
    for (std::uint64_t n = 0; n <= 4; ++n) {
      const auto len = canonical_walk_constant(omega_pow(Ordinal(std::uint64_t{k})), n).entries.size();
      CHECK(len >= previous);
      previous = len;
    }
  }
}

TEST_CASE("least_m examples and the cap") {
  CHECK(least_m(os({"w^2", "w*3"}), o("w"), 1) == 3);
  CHECK(least_m(os({"w*2 + 1"}), Ordinal(), 1) == 3);
  CHECK(least_m(os({"5"}), o("6"), 0) == 0);
  // The witness comes from a later entry whose coefficient exceeds f(0)'s.
  CHECK(least_m(os({"w^2", "w*100"}), Ordinal(), 1) == 101);
  CHECK(least_m_cap(os({"w^2", "w*100"}), 1) == 102);
  CHECK_THROWS_AS(least_m(os({"w^2", "w^2 + 1"}), Ordinal(), 1), std::invalid_argument);
  CHECK_THROWS_AS(least_m(os({"w^3"}), o("w"), 1), NoWitness);
}

TEST_CASE("least_m agrees with a brute-force scan") {
  gen::Rng rng(11);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    std::vector<Ordinal> f;
    for (int j = 0; j < 4; ++j) f.push_back(gen::ordinal(rng, 1));
    std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a > b; });
    f.erase(std::unique(f.begin(), f.end()), f.end());
    const Ordinal alpha = gen::ordinal(rng, 1);
    const std::uint64_t n = gen::below(rng, 3);
    const auto expected = brute_least_m(f, alpha, n, 2000);
    if (expected > least_m_cap(f, n)) {
      CHECK_THROWS_AS(least_m(f, alpha, n), NoWitness);
      CHECK(expected == 2001);
    } else {
      CHECK(least_m(f, alpha, n) == expected);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}
