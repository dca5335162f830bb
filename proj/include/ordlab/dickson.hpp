#pragma once

// Dickson's lemma over N^k: bad sequences, minimal monomial bases, and an
// ordinal rank below w^k that strictly drops whenever a bad sequence grows.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MonomialSyntaxError : public Error {
 public:
  using Error::Error;
};

class NotAntichain : public Error {
 public:
  using Error::Error;
};

class NotBad : public Error {
 public:
  NotBad(std::size_t earlier, std::size_t later);
  std::size_t earlier() const noexcept { return earlier_; }
  std::size_t later() const noexcept { return later_; }

 private:
  std::size_t earlier_;
  std::size_t later_;
};

/// Exponent vector of a monomial in k variables.
struct Monomial {
  std::vector<std::uint64_t> exponents;

  std::size_t dim() const noexcept { return exponents.size(); }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Componentwise u <= v, i.e. u divides v.
bool product_leq(const Monomial& u, const Monomial& v);

/// Componentwise-minimal elements of the up-closure of `vectors`, sorted
/// lexicographically and without duplicates.
std::vector<Monomial> minimal_basis(std::span<const Monomial> vectors);

/// Rank of D = N^k minus the up-closure of `minimal`: the sum over j of
/// w^j * c_j, where c_j counts the maximal j-dimensional coordinate flats
/// inside D (translates of N^J with the remaining coordinates fixed). Points in
/// no flat of positive dimension count as 0-dimensional flats.
///
/// Removing the up-closure of any v in D makes this drop strictly: flats of
/// dimension above the largest flat through v are untouched, and that flat
/// itself disappears. The plain lexicographic order type of D does not have
/// this property (it is w both before and after adding (0,1) to {(0,2)}).
/// Equals w^k for the empty antichain and is below w^k otherwise.
Ordinal residual_order_type(std::span<const Monomial> minimal, std::size_t k);

struct MonomialState {
  std::size_t k = 1;
  std::vector<Monomial> sequence;
  std::vector<Monomial> minimal;
  /// ranks[j] is the residual rank after sequence[j] was added.
  std::vector<Ordinal> ranks;

  explicit MonomialState(std::size_t dim);

  /// Residual rank of the current state; w^k before any element.
  Ordinal current_rank() const;
};

struct ExtendOutcome {
  MonomialState state;
  /// Index of the first earlier element dividing the candidate, if rejected.
  /// A rejected extension leaves `state` untouched.
  std::optional<std::size_t> rejected_by;

  bool accepted() const noexcept { return !rejected_by.has_value(); }
};

ExtendOutcome extend_bad(const MonomialState& state, const Monomial& v);

/// Residual ranks of every prefix. Throws NotBad on the first pair
/// i < j with seq[i] dividing seq[j].
std::vector<Ordinal> rank_bad_sequence(std::span<const Monomial> seq, std::size_t k);

/// "(2,0,1)"
Monomial parse_monomial(std::string_view text);
std::string render_monomial(const Monomial& m);
/// "(1,1);(0,2);(3,0)"; an empty string yields an empty list.
std::vector<Monomial> parse_monomial_list(std::string_view text);

}  // namespace ordlab
