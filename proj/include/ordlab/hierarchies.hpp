#pragma once

// Ackermann evaluation with an ordinal termination witness, and the Hardy and
// fast-growing hierarchies.

#include <cstdint>
#include <variant>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

/// Raised when an input lies outside the configured desk-scale limits. Not a
/// failure of the function, only of the budget.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotBelowOmegaOmega : public Error {
 public:
  using Error::Error;
};

struct AckermannCaps {
  /// Any n is accepted for m <= free_m.
  std::uint64_t free_m = 2;
  std::uint64_t max_m = 3;
  /// Bound on n when free_m < m <= max_m.
  std::uint64_t max_n = 12;
};

std::uint64_t ackermann(std::uint64_t m, std::uint64_t n, const AckermannCaps& caps = {});

/// One call A(m, n) with its recursive calls in evaluation order.
struct CallTree {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t value = 0;
  Ordinal measure;  // w*m + n
  std::vector<CallTree> children;
};

Ordinal ackermann_measure(std::uint64_t m, std::uint64_t n);

/// Full call tree of the naive recursion, no memoization.
CallTree ackermann_traced(std::uint64_t m, std::uint64_t n, const AckermannCaps& caps = {});

/// Child indices from the root to a node.
using TreePath = std::vector<std::size_t>;

struct TraceValid {};
struct BadEdge {
  TreePath path;  // the child whose measure fails to drop
};
struct BadValue {
  TreePath path;
};
struct BadMeasure {
  TreePath path;
};

using TraceVerdict = std::variant<TraceValid, BadEdge, BadValue, BadMeasure>;

/// Independent checker: recomputes each measure from (m, n), requires every
/// edge to strictly decrease it, and checks each node against the recurrence
/// using only its children. Nodes are visited in preorder; the first failure
/// wins.
TraceVerdict validate_trace(const CallTree& tree);

std::string verdict_name(const TraceVerdict& v);
const TreePath* verdict_path(const TraceVerdict& v);

struct HierarchyCaps {
  /// Maximum number of unfolding steps a single evaluation may take.
  std::uint64_t max_steps = 50'000'000;
  /// fast_growing accepts k <= max_k, and k = max_k + 1 only for n <= max_n_above.
  std::uint64_t max_k = 2;
  std::uint64_t max_n_above = 1;
};

/// H_0(n) = n, H_{a+1}(n) = H_a(n+1), H_l(n) = H_{l[n]}(n).
std::uint64_t hardy(const Ordinal& a, std::uint64_t n, const HierarchyCaps& caps = {});

/// F_0(n) = n + 1, F_{k+1}(n) = F_k applied n+1 times to n.
std::uint64_t fast_growing(std::uint64_t k, std::uint64_t n, const HierarchyCaps& caps = {});

}  // namespace ordlab
