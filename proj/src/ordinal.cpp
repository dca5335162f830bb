#include "ordlab/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

namespace ordlab {

namespace detail {
struct OrdinalAccess {
  static Ordinal make(std::vector<Term> terms) {
    Ordinal o;
    if (!terms.empty()) o.rep_ = std::make_shared<const std::vector<Term>>(std::move(terms));
    return o;
  }
};
}  // namespace detail

namespace {

using detail::OrdinalAccess;

const std::vector<Term>& empty_terms() {
  static const std::vector<Term> empty;
  return empty;
}

// Checks one level; nested exponents are assumed normal already.
bool level_is_normal(const std::vector<Term>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient < 1) return false;
    if (i > 0 && compare(terms[i - 1].exponent, terms[i].exponent) != std::strong_ordering::greater) return false;
  }
  return true;
}

}  // namespace

CnfSyntaxError::CnfSyntaxError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)), position_(position) {}

CnfNormalizationError::CnfNormalizationError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)), position_(position) {}

Ordinal::Ordinal(const Natural& n) {
  if (n < 0) throw std::domain_error("ordinal from a negative integer");
  if (n > 0) rep_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{Ordinal(), n}});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  if (!level_is_normal(terms)) throw CnfNormalizationError("terms are not in Cantor normal form", 0);
  return OrdinalAccess::make(std::move(terms));
}

Ordinal Ordinal::omega() {
  static const Ordinal w = OrdinalAccess::make({Term{Ordinal(1u), 1}});
  return w;
}

const std::vector<Term>& Ordinal::terms() const { return rep_ ? *rep_ : empty_terms(); }

bool Ordinal::is_finite() const { return !rep_ || (rep_->size() == 1 && rep_->front().exponent.is_zero()); }

Natural Ordinal::finite_value() const {
  if (!is_finite()) throw std::domain_error("ordinal is not finite");
  return rep_ ? rep_->front().coefficient : Natural(0);
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(x[i].exponent, y[i].exponent); c != 0) return c;
    if (x[i].coefficient != y[i].coefficient)
      return x[i].coefficient < y[i].coefficient ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x.size() <=> y.size();
}

std::string ordering_name(std::strong_ordering c) {
  if (c < 0) return "LT";
  if (c > 0) return "GT";
  return "EQ";
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const auto& lead = b.terms().front();
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    auto c = compare(t.exponent, lead.exponent);
    if (c < 0) break;
    if (c == 0) {
      out.push_back(Term{t.exponent, t.coefficient + lead.coefficient});
      out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
      return OrdinalAccess::make(std::move(out));
    }
    out.push_back(t);
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return OrdinalAccess::make(std::move(out));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const auto& lead = a.terms().front();
  Ordinal out;
  for (const auto& t : b.terms()) {
    if (!t.exponent.is_zero()) {
      // a * w^g = w^(lead exponent + g) for g > 0
      out = add(out, OrdinalAccess::make({Term{add(lead.exponent, t.exponent), t.coefficient}}));
    } else {
      std::vector<Term> scaled(a.terms().begin(), a.terms().end());
      scaled.front().coefficient *= t.coefficient;
      out = add(out, OrdinalAccess::make(std::move(scaled)));
    }
  }
  return out;
}

Ordinal omega_pow(const Ordinal& a) { return OrdinalAccess::make({Term{a, 1}}); }

OrdinalKind kind(const Ordinal& a) {
  if (a.is_zero()) return OrdinalKind::Zero;
  return a.terms().back().exponent.is_zero() ? OrdinalKind::Successor : OrdinalKind::Limit;
}

Ordinal predecessor(const Ordinal& a) {
  if (kind(a) != OrdinalKind::Successor) throw std::domain_error("predecessor of a non-successor ordinal");
  std::vector<Term> terms = a.terms();
  if (terms.back().coefficient == 1)
    terms.pop_back();
  else
    terms.back().coefficient -= 1;
  return OrdinalAccess::make(std::move(terms));
}

bool below_omega_omega(const Ordinal& a) {
  return std::all_of(a.terms().begin(), a.terms().end(), [](const Term& t) { return t.exponent.is_finite(); });
}

Ordinal omega_tower(unsigned k) {
  if (k == 0) throw std::invalid_argument("omega tower height must be at least 1");
  Ordinal out = Ordinal::omega();
  for (unsigned i = 1; i < k; ++i) out = omega_pow(out);
  return out;
}

bool below_omega_tower(const Ordinal& a, unsigned k) { return compare(a, omega_tower(k)) < 0; }

namespace {

struct NormParts {
  Natural largest = 0;
  Natural terms = 0;
};

void collect_norm(const Ordinal& a, NormParts& acc) {
  for (const auto& t : a.terms()) {
    acc.terms += 1;
    acc.largest = std::max(acc.largest, t.coefficient);
    if (t.exponent.is_finite())
      acc.largest = std::max(acc.largest, t.exponent.finite_value());
    else
      collect_norm(t.exponent, acc);
  }
}

struct NormShape {
  Ordinal value;
  unsigned largest;
  unsigned terms;
};

// All ordinals whose largest integer is <= max_int and whose term count is <=
// max_terms. Memoized per (max_int, max_terms).
class ShapeEnumerator {
 public:
  explicit ShapeEnumerator(unsigned max_int) : max_int_(max_int) {}

  const std::vector<NormShape>& all(unsigned max_terms) {
    if (auto it = cache_.find(max_terms); it != cache_.end()) return it->second;
    std::vector<NormShape> exponents;
    for (unsigned e = 0; e <= max_int_; ++e) exponents.push_back({Ordinal(std::uint64_t{e}), e, 0});
    if (max_terms >= 2) {
      for (const auto& s : all(max_terms - 1))
        if (!s.value.is_finite() && s.largest + s.terms < max_int_) exponents.push_back(s);
    }
    std::sort(exponents.begin(), exponents.end(),
              [](const NormShape& x, const NormShape& y) { return compare(x.value, y.value) > 0; });

    std::vector<NormShape> out;
    std::vector<Term> current;
    extend(exponents, 0, current, 0, 0, max_terms, out);
    auto [it, inserted] = cache_.emplace(max_terms, std::move(out));
    return it->second;
  }

 private:
  void extend(const std::vector<NormShape>& exponents, std::size_t from, std::vector<Term>& current, unsigned largest,
              unsigned used, unsigned max_terms, std::vector<NormShape>& out) {
    out.push_back({OrdinalAccess::make(current), largest, used});
    for (std::size_t i = from; i < exponents.size(); ++i) {
      const auto& e = exponents[i];
      const unsigned cost = used + 1 + e.terms;
      if (cost > max_terms) continue;
      // Largest integer and term count only grow as terms are added, so the
      // norm bound prunes whole subtrees.
      for (unsigned c = 1; c <= max_int_; ++c) {
        const unsigned now_largest = std::max({largest, c, e.largest});
        if (now_largest + cost > max_int_) break;
        current.push_back(Term{e.value, c});
        extend(exponents, i + 1, current, now_largest, cost, max_terms, out);
        current.pop_back();
      }
    }
  }

  unsigned max_int_;
  std::map<unsigned, std::vector<NormShape>> cache_;
};

}  // namespace

Natural norm(const Ordinal& a) {
  NormParts acc;
  collect_norm(a, acc);
  return acc.largest + acc.terms;
}

std::vector<Ordinal> enumerate_below(const Ordinal& bound, unsigned max_norm) {
  ShapeEnumerator gen(max_norm);
  std::vector<Ordinal> out;
  for (const auto& s : gen.all(max_norm))
    if (s.largest + s.terms <= max_norm && compare(s.value, bound) < 0) out.push_back(s.value);
  std::sort(out.begin(), out.end(), [](const Ordinal& x, const Ordinal& y) { return compare(x, y) < 0; });
  return out;
}

bool is_normal(const Ordinal& a) {
  const auto& terms = a.terms();
  if (!level_is_normal(terms)) return false;
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return is_normal(t.exponent); });
}

Natural coefficient_at(const Ordinal& a, const Ordinal& exponent) {
  for (const auto& t : a.terms())
    if (compare(t.exponent, exponent) == 0) return t.coefficient;
  return 0;
}

// --- text form -------------------------------------------------------------

namespace {

class CnfParser {
 public:
  explicit CnfParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    skip_space();
    Ordinal out = ordinal();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw CnfSyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  Natural nat() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    if (pos_ - start > 1 && text_[start] == '0') {
      pos_ = start;
      fail("leading zero in natural number");
    }
    return Natural(std::string(text_.substr(start, pos_ - start)));
  }

  Ordinal ordinal() {
    std::vector<Term> terms;
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      Term t = term();
      if (t.coefficient == 0) {
        // A lone "0" denotes zero; anywhere else it is a zero summand.
        skip_space();
        if (!terms.empty() || peek('+')) throw CnfNormalizationError("zero summand", at);
      } else {
        if (!terms.empty() && compare(terms.back().exponent, t.exponent) <= 0)
          throw CnfNormalizationError("exponents must strictly decrease", at);
        terms.push_back(std::move(t));
      }
      skip_space();
      if (!peek('+')) break;
      ++pos_;
    }
    return OrdinalAccess::make(std::move(terms));
  }

  Term term() {
    if (peek('w')) {
      ++pos_;
      Ordinal exponent(1u);
      if (peek('^')) {
        ++pos_;
        exponent = power();
      }
      Natural coeff = 1;
      if (peek('*')) {
        ++pos_;
        const std::size_t at = pos_;
        coeff = nat();
        if (coeff == 0) throw CnfNormalizationError("zero coefficient", at);
      }
      return Term{exponent, coeff};
    }
    return Term{Ordinal(), nat()};
  }

  Ordinal power() {
    if (peek('w')) {
      ++pos_;
      return Ordinal::omega();
    }
    if (peek('(')) {
      ++pos_;
      skip_space();
      Ordinal inner = ordinal();
      skip_space();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    return Ordinal(nat());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_term(const Term& t) {
  if (t.exponent.is_zero()) return t.coefficient.str();
  std::string out = "w";
  const auto& e = t.exponent;
  if (e.is_finite()) {
    if (e.finite_value() != 1) out += "^" + e.finite_value().str();
  } else if (e == Ordinal::omega()) {
    out += "^w";
  } else {
    out += "^(" + render(e) + ")";
  }
  if (t.coefficient != 1) out += "*" + t.coefficient.str();
  return out;
}

}  // namespace

Ordinal parse_cnf(std::string_view text) { return CnfParser(text).parse_all(); }

std::string render(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += " + ";
    out += render_term(t);
  }
  return out;
}

}  // namespace ordlab
