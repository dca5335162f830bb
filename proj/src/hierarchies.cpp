#include "ordlab/hierarchies.hpp"

#include <limits>
#include <optional>
#include <string>

#include "ordlab/descent.hpp"

namespace ordlab {

namespace {

void check_ackermann_caps(std::uint64_t m, std::uint64_t n, const AckermannCaps& caps) {
  if (m <= caps.free_m) return;
  if (m <= caps.max_m && n <= caps.max_n) return;
  throw CapExceeded("ackermann(" + std::to_string(m) + ", " + std::to_string(n) + ") exceeds the configured caps (m <= " +
                    std::to_string(caps.free_m) + ", or m <= " + std::to_string(caps.max_m) +
                    " with n <= " + std::to_string(caps.max_n) + ")");
}

constexpr std::uint64_t kMaxTableEntries = 200'000'000;
constexpr std::uint64_t kMaxTreeNodes = 5'000'000;

// Row m holds A(m, 0), A(m, 1), ... filled on demand, so each value is
// computed once from the recurrence.
class AckermannTable {
 public:
  std::uint64_t value(std::uint64_t m, std::uint64_t n) {
    if (m == 0) {
      if (n == std::numeric_limits<std::uint64_t>::max()) throw CapExceeded("ackermann: value overflows 64 bits");
      return n + 1;
    }
    if (rows_.size() < m) rows_.resize(m);
    while (rows_[m - 1].size() <= n) {
      if (++entries_ > kMaxTableEntries) throw CapExceeded("ackermann: evaluation budget exhausted");
      const std::size_t i = rows_[m - 1].size();
      const std::uint64_t v = i == 0 ? value(m - 1, 1) : value(m - 1, rows_[m - 1][i - 1]);
      rows_[m - 1].push_back(v);
    }
    return rows_[m - 1][n];
  }

 private:
  std::vector<std::vector<std::uint64_t>> rows_;
  std::uint64_t entries_ = 0;
};

CallTree build_tree(std::uint64_t m, std::uint64_t n, std::uint64_t& nodes) {
  if (++nodes > kMaxTreeNodes) throw CapExceeded("ackermann_traced: call tree exceeds node budget");
  CallTree node{m, n, 0, ackermann_measure(m, n), {}};
  if (m == 0) {
    node.value = n + 1;
  } else if (n == 0) {
    node.children.push_back(build_tree(m - 1, 1, nodes));
    node.value = node.children[0].value;
  } else {
    node.children.push_back(build_tree(m, n - 1, nodes));
    node.children.push_back(build_tree(m - 1, node.children[0].value, nodes));
    node.value = node.children[1].value;
  }
  return node;
}

bool has_args(const CallTree& t, std::uint64_t m, std::uint64_t n) { return t.m == m && t.n == n; }

// Checks a node against the recurrence using only its children's fields.
bool recurrence_holds(const CallTree& t) {
  const auto& c = t.children;
  if (t.m == 0) return c.empty() && t.n != std::numeric_limits<std::uint64_t>::max() && t.value == t.n + 1;
  if (t.n == 0) return c.size() == 1 && has_args(c[0], t.m - 1, 1) && t.value == c[0].value;
  return c.size() == 2 && has_args(c[0], t.m, t.n - 1) && has_args(c[1], t.m - 1, c[0].value) &&
         t.value == c[1].value;
}

std::optional<TraceVerdict> first_failure(const CallTree& t, TreePath& path) {
  const Ordinal measure = ackermann_measure(t.m, t.n);
  if (t.measure != measure) return BadMeasure{path};
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    const auto& child = t.children[i];
    if (compare(ackermann_measure(child.m, child.n), measure) >= 0) {
      TreePath p = path;
      p.push_back(i);
      return BadEdge{std::move(p)};
    }
  }
  if (!recurrence_holds(t)) return BadValue{path};
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(i);
    if (auto v = first_failure(t.children[i], path)) return v;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t ackermann(std::uint64_t m, std::uint64_t n, const AckermannCaps& caps) {
  check_ackermann_caps(m, n, caps);
  AckermannTable table;
  return table.value(m, n);
}

Ordinal ackermann_measure(std::uint64_t m, std::uint64_t n) {
  return add(mul(Ordinal::omega(), Ordinal(m)), Ordinal(n));
}

CallTree ackermann_traced(std::uint64_t m, std::uint64_t n, const AckermannCaps& caps) {
  check_ackermann_caps(m, n, caps);
  std::uint64_t nodes = 0;
  return build_tree(m, n, nodes);
}

TraceVerdict validate_trace(const CallTree& tree) {
  TreePath path;
  if (auto v = first_failure(tree, path)) return *v;
  return TraceValid{};
}

std::string verdict_name(const TraceVerdict& v) {
  switch (v.index()) {
    case 0: return "valid";
    case 1: return "bad_edge";
    case 2: return "bad_value";
    default: return "bad_measure";
  }
}

const TreePath* verdict_path(const TraceVerdict& v) {
  if (auto* e = std::get_if<BadEdge>(&v)) return &e->path;
  if (auto* e = std::get_if<BadValue>(&v)) return &e->path;
  if (auto* e = std::get_if<BadMeasure>(&v)) return &e->path;
  return nullptr;
}

std::uint64_t hardy(const Ordinal& a, std::uint64_t n, const HierarchyCaps& caps) {
  if (!below_omega_omega(a)) throw NotBelowOmegaOmega("hardy: " + render(a) + " is not below w^w");
  Ordinal index = a;
  std::uint64_t steps = 0;
  while (!index.is_zero()) {
    if (++steps > caps.max_steps) throw CapExceeded("hardy: step budget exhausted");
    if (kind(index) == OrdinalKind::Successor) {
      index = predecessor(index);
      ++n;
    } else {
      index = fundamental(index, n);
    }
  }
  return n;
}

namespace {

std::uint64_t fast_growing_step(std::uint64_t k, std::uint64_t n, std::uint64_t& steps, std::uint64_t max_steps) {
  if (++steps > max_steps) throw CapExceeded("fast_growing: step budget exhausted");
  if (k == 0) return n + 1;
  std::uint64_t x = n;
  for (std::uint64_t i = 0; i <= n; ++i) x = fast_growing_step(k - 1, x, steps, max_steps);
  return x;
}

}  // namespace

std::uint64_t fast_growing(std::uint64_t k, std::uint64_t n, const HierarchyCaps& caps) {
  if (k > caps.max_k + 1 || (k == caps.max_k + 1 && n > caps.max_n_above))
    throw CapExceeded("fast_growing(" + std::to_string(k) + ", " + std::to_string(n) +
                      ") exceeds the configured caps");
  std::uint64_t steps = 0;
  return fast_growing_step(k, n, steps, caps.max_steps);
}

}  // namespace ordlab
