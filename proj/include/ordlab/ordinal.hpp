#pragma once

// Cantor normal form notations for ordinals below epsilon_0.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ordlab {

using Natural = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CNF text. `position()` is the byte offset of the offending character.
class CnfSyntaxError : public Error {
 public:
  CnfSyntaxError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed text that does not denote a normal form (exponents out of
/// order, zero coefficient, zero summand).
class CnfNormalizationError : public Error {
 public:
  CnfNormalizationError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct Term;

namespace detail {
struct OrdinalAccess;
}

enum class OrdinalKind { Zero, Successor, Limit };

/// An ordinal below epsilon_0 as a finite tree: omega^e1*c1 + ... + omega^en*cn
/// with e1 > ... > en and every ci >= 1. Zero is the empty sum.
///
/// Values are immutable; copies share the underlying term list.
class Ordinal {
 public:
  Ordinal() = default;
  explicit Ordinal(const Natural& n);
  explicit Ordinal(std::uint64_t n) : Ordinal(Natural(n)) {}

  /// Builds from terms, throwing CnfNormalizationError unless they are
  /// already in normal form.
  static Ordinal from_terms(std::vector<Term> terms);

  static Ordinal omega();

  const std::vector<Term>& terms() const;
  bool is_zero() const noexcept { return rep_ == nullptr; }
  bool is_finite() const;
  /// Value of a finite ordinal; throws std::domain_error otherwise.
  Natural finite_value() const;

 private:
  friend struct detail::OrdinalAccess;

  std::shared_ptr<const std::vector<Term>> rep_;
};

struct Term {
  Ordinal exponent;
  Natural coefficient;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return compare(a, b); }
inline bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }

/// "LT", "EQ" or "GT".
std::string ordering_name(std::strong_ordering c);

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal omega_pow(const Ordinal& a);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

OrdinalKind kind(const Ordinal& a);
/// b with b + 1 = a. Throws std::domain_error unless `a` is a successor.
Ordinal predecessor(const Ordinal& a);

bool below_omega_omega(const Ordinal& a);
/// omega_1 = omega, omega_{k+1} = omega^(omega_k). Requires k >= 1.
Ordinal omega_tower(unsigned k);
bool below_omega_tower(const Ordinal& a, unsigned k);

/// Largest integer occurring in `a` (coefficients and finite exponents) plus
/// the number of terms at every level. Finite exponents count as integers,
/// not as nested terms, so norm(7) = 8 and norm(w) = 2.
Natural norm(const Ordinal& a);

/// Every ordinal strictly below `bound` whose norm is at most `max_norm`,
/// in increasing order.
std::vector<Ordinal> enumerate_below(const Ordinal& bound, unsigned max_norm);

/// True iff every level of the tree satisfies the normal-form invariants.
/// Ordinals built through the public API always pass; exposed for tests.
bool is_normal(const Ordinal& a);

Ordinal parse_cnf(std::string_view text);
std::string render(const Ordinal& a);

/// Coefficient of the top-level term with the given exponent, or 0 if absent.
Natural coefficient_at(const Ordinal& a, const Ordinal& exponent);

}  // namespace ordlab
