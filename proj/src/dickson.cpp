#include "ordlab/dickson.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <boost/container/small_vector.hpp>

namespace ordlab {

NotBad::NotBad(std::size_t earlier, std::size_t later)
    : Error("not a bad sequence: element " + std::to_string(earlier) + " divides element " + std::to_string(later)),
      earlier_(earlier),
      later_(later) {}

namespace {

void require_dim(const Monomial& m, std::size_t k) {
  if (m.dim() != k)
    throw DimensionMismatch("monomial " + render_monomial(m) + " has dimension " + std::to_string(m.dim()) +
                            ", expected " + std::to_string(k));
}

void require_same_dim(std::span<const Monomial> ms) {
  for (const auto& m : ms) require_dim(m, ms.front().dim());
}

// Subsets of the generators, as indices. Every set met during the recursion is
// a subset of the original generators restricted to the trailing coordinates.
using Subset = boost::container::small_vector<std::uint32_t, 12>;
using Counts = boost::container::small_vector<Natural, 6>;

struct FlatCounter {
  const std::vector<Monomial>& gens;
  std::size_t k;

  Subset up_to(const Subset& s, std::size_t d, std::uint64_t x) const {
    Subset out;
    for (auto i : s)
      if (gens[i].exponents[d] <= x) out.push_back(i);
    return out;
  }

  // D(F) = N^k minus the up-closure of F. A flat is a set
  // {p : p_i = a_i for i outside J} with the coordinates in J free; its
  // dimension is |J|. Returns, per dimension, the number of maximal flats of
  // D(F) in coordinates d..k-1 that lie inside none of the D(G), G in `exclude`.
  //
  // Recursion on coordinate d: flats free in it are the flats of the limit
  // section D_inf, one dimension up; flats fixing it at x are flats of the
  // section D_x that do not extend along it, i.e. are not inside D_inf.
  // Sections are constant between consecutive values of coordinate d in F and
  // in the exclusions, so each run is counted once and scaled by its length.
  Counts maximal_flats(const Subset& F, const boost::container::small_vector<Subset, 4>& exclude, std::size_t d) const {
    const std::size_t dims = k - d;
    Counts counts(dims + 1, 0);
    if (d == k) {
      const bool escapes = std::all_of(exclude.begin(), exclude.end(), [](const Subset& g) { return !g.empty(); });
      counts[0] = F.empty() && escapes ? 1 : 0;
      return counts;
    }

    // Restricted to later coordinates, a subset is its own limit section.
    const auto along = maximal_flats(F, exclude, d + 1);
    for (std::size_t j = 0; j < dims; ++j) counts[j + 1] += along[j];

    boost::container::small_vector<std::uint64_t, 16> breaks{0};
    for (auto i : F) breaks.push_back(gens[i].exponents[d]);
    for (const auto& g : exclude)
      for (auto i : g) breaks.push_back(gens[i].exponents[d]);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    // At and beyond the last break every section equals its limit, so no flat
    // fixing coordinate d there can be maximal.
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
      const std::uint64_t x = breaks[b];
      boost::container::small_vector<Subset, 4> ex;
      for (const auto& g : exclude) ex.push_back(up_to(g, d, x));
      ex.push_back(F);
      const auto fixed = maximal_flats(up_to(F, d, x), ex, d + 1);
      const Natural run = breaks[b + 1] - x;
      for (std::size_t j = 0; j < dims; ++j)
        if (fixed[j] != 0) counts[j] += fixed[j] * run;
    }
    return counts;
  }
};

Ordinal residual(const std::vector<Monomial>& minimal, std::size_t k) {
  Subset all;
  for (std::uint32_t i = 0; i < minimal.size(); ++i) all.push_back(i);
  const auto counts = FlatCounter{minimal, k}.maximal_flats(all, {}, 0);
  std::vector<Term> terms;
  for (std::size_t j = k + 1; j-- > 0;)
    if (counts[j] != 0) terms.push_back({Ordinal(std::uint64_t{j}), counts[j]});
  return Ordinal::from_terms(std::move(terms));
}

}  // namespace

bool product_leq(const Monomial& u, const Monomial& v) {
  require_dim(v, u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    if (u.exponents[i] > v.exponents[i]) return false;
  return true;
}

std::vector<Monomial> minimal_basis(std::span<const Monomial> vectors) {
  if (vectors.empty()) return {};
  require_same_dim(vectors);
  std::vector<Monomial> sorted(vectors.begin(), vectors.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // Any divisor of v is lexicographically <= v, so scanning in lex order only
  // needs to compare against the elements already kept.
  std::vector<Monomial> out;
  for (const auto& v : sorted) {
    if (std::none_of(out.begin(), out.end(), [&](const Monomial& u) { return product_leq(u, v); })) out.push_back(v);
  }
  return out;
}

Ordinal residual_order_type(std::span<const Monomial> minimal, std::size_t k) {
  if (k == 0) throw DimensionMismatch("dimension must be at least 1");
  for (const auto& m : minimal) require_dim(m, k);
  for (std::size_t i = 0; i < minimal.size(); ++i)
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (i != j && product_leq(minimal[i], minimal[j]))
        throw NotAntichain(render_monomial(minimal[i]) + " divides " + render_monomial(minimal[j]));
  return residual(std::vector<Monomial>(minimal.begin(), minimal.end()), k);
}

MonomialState::MonomialState(std::size_t dim) : k(dim) {
  if (dim == 0) throw DimensionMismatch("dimension must be at least 1");
}

Ordinal MonomialState::current_rank() const { return ranks.empty() ? omega_pow(Ordinal(k)) : ranks.back(); }

ExtendOutcome extend_bad(const MonomialState& state, const Monomial& v) {
  require_dim(v, state.k);
  for (std::size_t i = 0; i < state.sequence.size(); ++i)
    if (product_leq(state.sequence[i], v)) return {state, i};

  MonomialState next = state;
  next.sequence.push_back(v);
  std::vector<Monomial> minimal;
  for (const auto& m : state.minimal)
    if (!product_leq(v, m)) minimal.push_back(m);
  minimal.push_back(v);
  std::sort(minimal.begin(), minimal.end());
  next.minimal = std::move(minimal);
  next.ranks.push_back(residual_order_type(next.minimal, state.k));
  return {std::move(next), std::nullopt};
}

std::vector<Ordinal> rank_bad_sequence(std::span<const Monomial> seq, std::size_t k) {
  for (const auto& m : seq) require_dim(m, k);
  for (std::size_t j = 0; j < seq.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (product_leq(seq[i], seq[j])) throw NotBad(i, j);

  std::vector<Ordinal> ranks;
  for (std::size_t j = 0; j < seq.size(); ++j)
    ranks.push_back(residual_order_type(minimal_basis(seq.subspan(0, j + 1)), k));
  return ranks;
}

// --- text form -------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Monomial parse_monomial(std::string_view text) {
  const auto s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw MonomialSyntaxError("monomial must be a parenthesized tuple: '" + std::string(text) + "'");
  Monomial m;
  std::string_view body = s.substr(1, s.size() - 2);
  for (;;) {
    const auto comma = body.find(',');
    const auto field = trim(body.substr(0, comma));
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw MonomialSyntaxError("bad exponent '" + std::string(field) + "' in monomial '" + std::string(text) + "'");
    m.exponents.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    // "(5,)" is accepted as a one-element tuple.
    if (m.exponents.size() == 1 && trim(body).empty()) break;
  }
  return m;
}

std::string render_monomial(const Monomial& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(m.exponents[i]);
  }
  return out + ")";
}

std::vector<Monomial> parse_monomial_list(std::string_view text) {
  std::vector<Monomial> out;
  if (trim(text).empty()) return out;
  for (;;) {
    const auto semi = text.find(';');
    out.push_back(parse_monomial(text.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return out;
}

}  // namespace ordlab
