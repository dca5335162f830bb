#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

/// A finite sequence of ordinals together with the outcome of checking it
/// for strict descent below `bound`.
struct DescentTrace {
  Ordinal bound;
  std::vector<Ordinal> entries;
  /// First offending index; empty when the trace is valid.
  std::optional<std::size_t> violation_at;

  bool valid() const noexcept { return !violation_at.has_value(); }
};

class NotALimit : public Error {
 public:
  using Error::Error;
};

class NoWitness : public Error {
 public:
  using Error::Error;
};

/// A walk reached a limit ordinal after its step sequence ran out. The
/// partial trace (valid so far) is carried along.
class StepsExhausted : public Error {
 public:
  explicit StepsExhausted(DescentTrace partial);
  const DescentTrace& partial() const noexcept { return partial_; }

 private:
  DescentTrace partial_;
};

/// Valid iff every entry is below `bound` and each entry is strictly below
/// its predecessor. Otherwise records the first index that breaks either rule.
DescentTrace check_strict_descent(std::span<const Ordinal> seq, const Ordinal& bound);

/// Upper bound on the search performed by least_m: the largest coefficient of
/// w^n among the entries, plus two.
///
/// Write alpha = high + w^n*a + low with high using exponents > n. For an entry
/// e = high' + w^n*c + low', the window alpha + w^n*m (m >= 1) equals
/// high + w^n*(a+m), so e falls inside iff high' < high, or high' = high and
/// c < a + m. The first case is already caught at m = 0 and the second at
/// m = c + 1 at the latest, so max_i c_i + 2 bounds the search.
std::uint64_t least_m_cap(std::span<const Ordinal> f, std::uint64_t n);

/// Least m such that some f(i) < alpha + w^n * m. Requires `f` strictly
/// descending (std::invalid_argument otherwise); throws NoWitness when no m up
/// to least_m_cap succeeds.
std::uint64_t least_m(std::span<const Ordinal> f, const Ordinal& alpha, std::uint64_t n);

/// n-th element of the fundamental sequence of a limit ordinal:
///   (g + w^(b+1))[n] = g + w^b * n
///   (g + w^l)[n]     = g + w^(l[n])     for limit l
Ordinal fundamental(const Ordinal& a, std::uint64_t n);

/// Descends from `start` to 0: successors step to their predecessor, limits
/// consume the next step value n and move to fundamental(a, n).
DescentTrace canonical_walk(const Ordinal& start, std::span<const std::uint64_t> steps);

/// canonical_walk with the infinite constant step sequence n, n, n, ...
DescentTrace canonical_walk_constant(const Ordinal& start, std::uint64_t n);

}  // namespace ordlab
