#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. None of them call into the code they are checking, except to convert
// values at the boundary.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ordlab/dickson.hpp"
#include "ordlab/formula.hpp"
#include "ordlab/ordinal.hpp"

namespace oracle {

// --- ordinals below w^w as coefficient vectors ------------------------------

/// c[i] is the coefficient of w^i; no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline Poly trimmed(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly from_ordinal(const ordlab::Ordinal& a) {
  Poly p;
  for (const auto& t : a.terms()) {
    const auto e = static_cast<std::size_t>(t.exponent.finite_value());
    if (p.size() <= e) p.resize(e + 1);
    p[e] = static_cast<std::uint64_t>(t.coefficient);
  }
  return p;
}

inline ordlab::Ordinal to_ordinal(const Poly& p) {
  std::vector<ordlab::Term> terms;
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) terms.push_back({ordlab::Ordinal(std::uint64_t{i}), p[i]});
  return ordlab::Ordinal::from_terms(std::move(terms));
}

inline int cmp(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

/// Terms of a below the leading exponent of b are absorbed.
inline Poly add(const Poly& a, const Poly& b) {
  if (b.empty()) return a;
  const std::size_t d = b.size() - 1;
  Poly out = b;
  if (a.size() > d) {
    out.resize(std::max(a.size(), b.size()));
    out[d] += a[d];
    for (std::size_t i = d + 1; i < a.size(); ++i) out[i] = a[i];
  }
  return trimmed(out);
}

/// a * (w^e * c), then left distributivity over the terms of b.
inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out;
  for (std::size_t e = b.size(); e-- > 0;) {
    if (b[e] == 0) continue;
    Poly term;
    if (e > 0) {
      term.assign(a.size() + e, 0);
      term.back() = b[e];
    } else {
      term = a;
      term.back() *= b[e];
    }
    out = add(out, term);
  }
  return out;
}

inline std::uint64_t norm(const Poly& p) {
  std::uint64_t largest = 0, terms = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    ++terms;
    largest = std::max({largest, p[i], std::uint64_t{i}});
  }
  return largest + terms;
}

/// Every Poly below w^degree with all coefficients <= max_coeff.
inline std::vector<Poly> all_below(std::size_t degree, std::uint64_t max_coeff) {
  std::vector<Poly> out{{}};
  Poly p(degree, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < degree && p[i] == max_coeff) p[i++] = 0;
    if (i == degree) break;
    ++p[i];
    out.push_back(trimmed(p));
  }
  return out;
}

/// Hardy function by direct unfolding: (.., c_j, 0, .., 0)[n] lowers c_j by one
/// and puts n at j-1.
inline std::uint64_t hardy(Poly a, std::uint64_t n) {
  for (;;) {
    a = trimmed(a);
    if (a.empty()) return n;
    if (a[0] > 0) {
      --a[0];
      ++n;
      continue;
    }
    std::size_t j = 1;
    while (a[j] == 0) ++j;
    --a[j];
    a[j - 1] = n;
  }
}

// --- functions --------------------------------------------------------------

inline std::uint64_t ackermann(std::uint64_t m, std::uint64_t n) {
  if (m == 0) return n + 1;
  if (n == 0) return ackermann(m - 1, 1);
  return ackermann(m - 1, ackermann(m, n - 1));
}

inline std::uint64_t fast_growing(std::uint64_t k, std::uint64_t n) {
  if (k == 0) return n + 1;
  std::uint64_t x = n;
  for (std::uint64_t i = 0; i <= n; ++i) x = fast_growing(k - 1, x);
  return x;
}

// --- Dickson ----------------------------------------------------------------

inline bool divides(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

inline bool covered(const std::vector<ordlab::Monomial>& gens, const std::vector<std::uint64_t>& p) {
  return std::any_of(gens.begin(), gens.end(), [&](const ordlab::Monomial& g) { return divides(g.exponents, p); });
}

/// Points of {0..side-1}^k in the up-closure of `gens`.
inline std::set<std::vector<std::uint64_t>> up_closure(const std::vector<ordlab::Monomial>& gens, std::size_t k,
                                                       std::uint64_t side) {
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> p(k, 0);
  for (;;) {
    if (covered(gens, p)) out.insert(p);
    std::size_t i = 0;
    while (i < k && p[i] == side - 1) p[i++] = 0;
    if (i == k) break;
    ++p[i];
  }
  return out;
}

/// Residual rank by brute force over a grid: enumerates every coordinate flat
/// (a set of free directions plus fixed values for the rest) with fixed values
/// below `side`, keeps those inside the complement that cannot be extended by
/// one more free direction, and sums w^dim over them. A free coordinate is
/// probed at side - 1, so `side` must exceed every coordinate of `gens` by at
/// least one.
inline ordlab::Ordinal residual(const std::vector<ordlab::Monomial>& gens, std::size_t k, std::uint64_t side) {
  using ordlab::Ordinal;
  const auto inside = [&](unsigned free, const std::vector<std::uint64_t>& fixed) {
    auto p = fixed;
    for (std::size_t i = 0; i < k; ++i)
      if (free >> i & 1u) p[i] = side - 1;
    return !covered(gens, p);
  };
  std::vector<std::uint64_t> counts(k + 1, 0);
  for (unsigned free = 0; free < (1u << k); ++free) {
    std::vector<std::uint64_t> a(k, 0);
    for (;;) {
      bool maximal = inside(free, a);
      for (std::size_t i = 0; maximal && i < k; ++i)
        if (!(free >> i & 1u) && inside(free | 1u << i, a)) maximal = false;
      if (maximal) ++counts[static_cast<std::size_t>(std::popcount(free))];
      std::size_t i = 0;
      while (i < k && ((free >> i & 1u) || a[i] == side - 1)) a[i++] = 0;
      if (i == k) break;
      ++a[i];
    }
  }
  Ordinal out;
  for (std::size_t j = k + 1; j-- > 0;)
    if (counts[j] != 0) out = ordlab::add(out, ordlab::mul(ordlab::omega_pow(Ordinal(std::uint64_t{j})), Ordinal(counts[j])));
  return out;
}

// --- formulas ---------------------------------------------------------------

/// Plain recursive evaluator over a name-to-value map, no memoization.
inline std::uint64_t value(const ordlab::Expr& e, const std::map<std::string, std::uint64_t>& env) {
  switch (e.op()) {
    case ordlab::ExprOp::Zero: return 0;
    case ordlab::ExprOp::Var: return env.at(e.name());
    case ordlab::ExprOp::Succ: return value(e.lhs(), env) + 1;
    case ordlab::ExprOp::Add: return value(e.lhs(), env) + value(e.rhs(), env);
    case ordlab::ExprOp::Mul: return value(e.lhs(), env) * value(e.rhs(), env);
  }
  return 0;
}

inline bool holds(const ordlab::Formula& f, std::map<std::string, std::uint64_t> env, std::uint64_t N) {
  using ordlab::FormulaOp;
  switch (f.op()) {
    case FormulaOp::Eq: return value(f.left_term(), env) == value(f.right_term(), env);
    case FormulaOp::Lt: return value(f.left_term(), env) < value(f.right_term(), env);
    case FormulaOp::Not: return !holds(f.left(), env, N);
    case FormulaOp::And: return holds(f.left(), env, N) && holds(f.right(), env, N);
    case FormulaOp::Or: return holds(f.left(), env, N) || holds(f.right(), env, N);
    case FormulaOp::Implies: return !holds(f.left(), env, N) || holds(f.right(), env, N);
    default: break;
  }
  const bool ex = f.op() == FormulaOp::Exists || f.op() == FormulaOp::ExistsBelow;
  const std::uint64_t limit = f.is_bounded_quantifier() ? value(f.bound(), env) : N;
  for (std::uint64_t i = 0; i < limit; ++i) {
    env[f.bound_variable()] = i;
    if (holds(f.left(), env, N) == ex) return ex;
  }
  return !ex;
}

inline std::uint64_t cantor(std::uint64_t a, std::uint64_t b) { return (a + b) * (a + b + 1) / 2 + b; }

/// Least code z < N, by enumeration of codes, with theta((z)_1, (z)_2).
/// Decoding walks the diagonals instead of inverting the formula.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> least_code(const ordlab::Formula& theta,
                                                                         std::uint64_t N) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> decode(N);
  std::uint64_t z = 0;
  for (std::uint64_t d = 0; z < N; ++d)
    for (std::uint64_t b = 0; b <= d && z < N; ++b, ++z) decode[z] = {d - b, b};
  for (z = 0; z < N; ++z) {
    const auto [x, y] = decode[z];
    if (x < N && y < N && holds(theta, {{"x", x}, {"y", y}}, N)) return decode[z];
  }
  return std::nullopt;
}

}  // namespace oracle
