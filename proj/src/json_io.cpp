#include "ordlab/json_io.hpp"

#include <string>

namespace ordlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonFormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Ordinal cnf_field(const Json& j) {
  if (!j.is_string()) throw JsonFormatError("expected a CNF string, got " + j.dump());
  return parse_cnf(j.get<std::string>());
}

std::uint64_t uint_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw JsonFormatError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw JsonFormatError(std::string("field '") + key + "' must be an array");
  return v;
}

}  // namespace

Json to_json(const DescentTrace& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back(render(e));
  Json status = t.valid() ? Json("valid") : Json{{"violation_at", *t.violation_at}};
  return {{"bound", render(t.bound)}, {"entries", std::move(entries)}, {"status", std::move(status)}};
}

DescentTrace descent_trace_from_json(const Json& j) {
  const Ordinal bound = cnf_field(field(j, "bound"));
  std::vector<Ordinal> entries;
  for (const auto& e : array_field(j, "entries")) entries.push_back(cnf_field(e));
  return check_strict_descent(entries, bound);
}

bool descent_trace_consistent(const Json& j) {
  const DescentTrace t = descent_trace_from_json(j);
  const Json& status = field(j, "status");
  if (status.is_string()) return status.get<std::string>() == "valid" && t.valid();
  if (!t.valid()) return uint_field(status, "violation_at") == *t.violation_at;
  return false;
}

Json to_json(const CallTree& t) {
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(to_json(c));
  return {{"m", t.m}, {"n", t.n}, {"value", t.value}, {"measure", render(t.measure)}, {"children", std::move(children)}};
}

CallTree call_tree_from_json(const Json& j) {
  CallTree t;
  t.m = uint_field(j, "m");
  t.n = uint_field(j, "n");
  t.value = uint_field(j, "value");
  t.measure = cnf_field(field(j, "measure"));
  for (const auto& c : array_field(j, "children")) t.children.push_back(call_tree_from_json(c));
  return t;
}

Json to_json(const MonomialState& s) {
  Json sequence = Json::array(), minimal = Json::array(), ranks = Json::array();
  for (const auto& m : s.sequence) sequence.push_back(render_monomial(m));
  for (const auto& m : s.minimal) minimal.push_back(render_monomial(m));
  for (const auto& r : s.ranks) ranks.push_back(render(r));
  return {{"dim", s.k}, {"sequence", std::move(sequence)}, {"minimal", std::move(minimal)}, {"ranks", std::move(ranks)}};
}

MonomialState monomial_state_from_json(const Json& j) {
  const std::uint64_t dim = uint_field(j, "dim");
  MonomialState state(dim);
  for (const auto& e : array_field(j, "sequence")) {
    if (!e.is_string()) throw JsonFormatError("sequence entries must be monomial strings");
    auto outcome = extend_bad(state, parse_monomial(e.get<std::string>()));
    if (!outcome.accepted())
      throw JsonFormatError("sequence is not bad: " + e.get<std::string>() + " is divisible by element " +
                            std::to_string(*outcome.rejected_by));
    state = std::move(outcome.state);
  }
  if (j.contains("minimal")) {
    std::vector<Monomial> minimal;
    for (const auto& e : array_field(j, "minimal")) minimal.push_back(parse_monomial(e.get<std::string>()));
    if (minimal != state.minimal) throw JsonFormatError("recorded minimal basis does not match the sequence");
  }
  if (j.contains("ranks")) {
    const Json& ranks = array_field(j, "ranks");
    if (ranks.size() != state.ranks.size()) throw JsonFormatError("recorded ranks have the wrong length");
    for (std::size_t i = 0; i < ranks.size(); ++i)
      if (cnf_field(ranks[i]) != state.ranks[i])
        throw JsonFormatError("recorded rank " + std::to_string(i) + " does not match the sequence");
  }
  return state;
}

Json to_json(const UniformizationReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(w ? Json(*w) : Json(nullptr));
  return {{"item1", r.item1}, {"item2", r.item2}, {"item3", r.item3}, {"X", r.X},
          {"N", r.N},         {"theta", r.theta}, {"selected", r.selected}, {"witnesses", std::move(witnesses)}};
}

}  // namespace ordlab
