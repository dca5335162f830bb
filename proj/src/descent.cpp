#include "ordlab/descent.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ordlab {

StepsExhausted::StepsExhausted(DescentTrace partial)
    : Error("walk reached a limit ordinal after the step sequence ran out"), partial_(std::move(partial)) {}

DescentTrace check_strict_descent(std::span<const Ordinal> seq, const Ordinal& bound) {
  DescentTrace trace{bound, {seq.begin(), seq.end()}, std::nullopt};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (compare(seq[i], bound) >= 0 || (i > 0 && compare(seq[i], seq[i - 1]) >= 0)) {
      trace.violation_at = i;
      break;
    }
  }
  return trace;
}

std::uint64_t least_m_cap(std::span<const Ordinal> f, std::uint64_t n) {
  const Ordinal exponent(n);
  Natural largest = 0;
  for (const auto& e : f) largest = std::max(largest, coefficient_at(e, exponent));
  return static_cast<std::uint64_t>(largest) + 2;
}

std::uint64_t least_m(std::span<const Ordinal> f, const Ordinal& alpha, std::uint64_t n) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (compare(f[i], f[i - 1]) >= 0) throw std::invalid_argument("least_m: sequence is not strictly descending");

  const Ordinal step = omega_pow(Ordinal(n));
  const std::uint64_t cap = least_m_cap(f, n);
  for (std::uint64_t m = 0; m <= cap; ++m) {
    const Ordinal window = add(alpha, mul(step, Ordinal(m)));
    if (std::any_of(f.begin(), f.end(), [&](const Ordinal& e) { return compare(e, window) < 0; })) return m;
  }
  throw NoWitness("least_m: no entry falls below alpha + w^" + std::to_string(n) + "*m for m <= " +
                  std::to_string(cap));
}

Ordinal fundamental(const Ordinal& a, std::uint64_t n) {
  if (kind(a) != OrdinalKind::Limit) throw NotALimit("fundamental: " + render(a) + " is not a limit ordinal");

  std::vector<Term> terms = a.terms();
  const Ordinal last_exponent = terms.back().exponent;
  if (terms.back().coefficient == 1)
    terms.pop_back();
  else
    terms.back().coefficient -= 1;
  const Ordinal prefix = Ordinal::from_terms(std::move(terms));

  if (kind(last_exponent) == OrdinalKind::Successor)
    return add(prefix, mul(omega_pow(predecessor(last_exponent)), Ordinal(n)));
  return add(prefix, omega_pow(fundamental(last_exponent, n)));
}

namespace {

DescentTrace walk(const Ordinal& start, const std::function<std::optional<std::uint64_t>()>& next_step) {
  DescentTrace trace{add(start, Ordinal(1u)), {start}, std::nullopt};
  Ordinal current = start;
  while (!current.is_zero()) {
    if (kind(current) == OrdinalKind::Successor) {
      current = predecessor(current);
    } else {
      auto n = next_step();
      if (!n) throw StepsExhausted(std::move(trace));
      current = fundamental(current, *n);
    }
    trace.entries.push_back(current);
  }
  return trace;
}

}  // namespace

DescentTrace canonical_walk(const Ordinal& start, std::span<const std::uint64_t> steps) {
  std::size_t used = 0;
  return walk(start, [&]() -> std::optional<std::uint64_t> {
    if (used == steps.size()) return std::nullopt;
    return steps[used++];
  });
}

DescentTrace canonical_walk_constant(const Ordinal& start, std::uint64_t n) {
  return walk(start, [n]() -> std::optional<std::uint64_t> { return n; });
}

}  // namespace ordlab
