#pragma once

// JSON documents for traces, call trees, monomial states and uniformization
// reports. Every reader re-derives what it can instead of trusting the input.

#include <json.hpp>

#include "ordlab/descent.hpp"
#include "ordlab/dickson.hpp"
#include "ordlab/formula.hpp"
#include "ordlab/hierarchies.hpp"

namespace ordlab {

using Json = nlohmann::json;

/// Malformed or inconsistent document.
class JsonFormatError : public Error {
 public:
  using Error::Error;
};

/// {"bound": CNF, "entries": [CNF...], "status": "valid" | {"violation_at": i}}
Json to_json(const DescentTrace& t);
/// Reads bound and entries and recomputes the status with check_strict_descent.
DescentTrace descent_trace_from_json(const Json& j);
/// True when the recorded status matches the recomputed one.
bool descent_trace_consistent(const Json& j);

/// {"m", "n", "value", "measure": CNF, "children": [...]}
Json to_json(const CallTree& t);
CallTree call_tree_from_json(const Json& j);

/// {"dim", "sequence": ["(a,b)"...], "minimal": [...], "ranks": [CNF...]}
Json to_json(const MonomialState& s);
/// Replays "sequence" through extend_bad. Throws JsonFormatError if an element
/// is rejected or if the recorded minimal basis or ranks disagree.
MonomialState monomial_state_from_json(const Json& j);

/// {"item1", "item2", "item3", "X", "N", "theta", "selected", "witnesses"}
Json to_json(const UniformizationReport& r);

}  // namespace ordlab
