#pragma once

// First-order arithmetic formulas: syntax, arithmetical-hierarchy
// classification, uniformization with respect to a variable, and evaluation
// in the bounded models {0, ..., N-1}.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

class FormulaSyntaxError : public Error {
 public:
  FormulaSyntaxError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::vector<std::string> names);
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

class UnassignedVariable : public Error {
 public:
  using Error::Error;
};

class NotSigma : public Error {
 public:
  using Error::Error;
};

class VariableNotFree : public Error {
 public:
  using Error::Error;
};

class InsufficientBound : public Error {
 public:
  using Error::Error;
};

class EvaluationOverflow : public Error {
 public:
  using Error::Error;
};

// --- terms -----------------------------------------------------------------

enum class ExprOp { Zero, Var, Succ, Add, Mul };

struct ExprNode;

/// Arithmetic term over 0, variables, successor, + and *. Immutable.
class Expr {
 public:
  /// Empty handle, only useful as a placeholder to assign over.
  Expr() = default;
  static Expr zero();
  static Expr var(std::string name);
  static Expr succ(Expr e);
  static Expr plus(Expr a, Expr b);
  static Expr times(Expr a, Expr b);
  /// S(S(...S(0)...)) with n applications.
  static Expr numeral(std::uint64_t n);

  ExprOp op() const;
  const std::string& name() const;
  const Expr& lhs() const;
  const Expr& rhs() const;
  /// Sorted, without duplicates.
  const std::vector<std::string>& variables() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend struct ExprNode;
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

// --- formulas --------------------------------------------------------------

enum class FormulaOp { Eq, Lt, Not, And, Or, Implies, Exists, Forall, ExistsBelow, ForallBelow };

struct FormulaNode;

class Formula {
 public:
  /// Empty handle, only useful as a placeholder to assign over.
  Formula() = default;
  static Formula eq(Expr a, Expr b);
  static Formula lt(Expr a, Expr b);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula exists(std::string v, Formula body);
  static Formula forall(std::string v, Formula body);
  /// (Ev < bound) body; `bound` is evaluated outside the scope of v.
  static Formula exists_below(std::string v, Expr bound, Formula body);
  static Formula forall_below(std::string v, Expr bound, Formula body);

  FormulaOp op() const;
  bool is_atom() const;
  bool is_quantifier() const;
  bool is_bounded_quantifier() const;

  /// Atoms: the two sides.
  const Expr& left_term() const;
  const Expr& right_term() const;
  /// Connectives: operands (Not has only `left`). Quantifiers: body is `left`.
  const Formula& left() const;
  const Formula& right() const;
  const std::string& bound_variable() const;
  const Expr& bound() const;

  /// Sorted free variables.
  const std::vector<std::string>& free_variables() const;
  bool has_free(std::string_view v) const;

  /// Identity of the underlying node; stable for the lifetime of the value.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend struct FormulaNode;
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

/// Every variable name occurring in `f`, free or bound.
std::vector<std::string> all_variables(const Formula& f);

/// Capture-avoiding substitution of `e` for the free occurrences of `v`.
Formula substitute(const Formula& f, const std::string& v, const Expr& e);

/// Parses the ASCII concrete syntax:
///   quantifiers "Ex", "Ax", bounded "Ex<t", "Ax<t"; connectives "~ & | ->";
///   atoms "t = t", "t < t"; terms over "0", numerals, variables, "S(t)", "+", "*".
/// With `closed`, any free variable raises UnboundVariable.
Formula parse_formula(std::string_view text, bool closed = false);
std::string render_formula(const Formula& f);
std::string render_expr(const Expr& e);

// --- classification --------------------------------------------------------

struct Level {
  enum class Kind { Delta0, Sigma, Pi };
  Kind kind = Kind::Delta0;
  unsigned k = 0;

  static Level delta0() { return {}; }
  static Level sigma(unsigned k) { return {Kind::Sigma, k}; }
  static Level pi(unsigned k) { return {Kind::Pi, k}; }
  friend bool operator==(const Level&, const Level&) = default;
};

std::string render_level(const Level& l);

/// Least n with f in Sigma_n, and least n with f in Pi_n, after prenexing
/// with bounded quantifiers treated as transparent. Both are 0 exactly for
/// Delta_0 formulas.
struct HierarchyRank {
  unsigned sigma = 0;
  unsigned pi = 0;
};

HierarchyRank hierarchy_rank(const Formula& f);

/// Minimal level; when f is both Sigma_n and Pi_n for the least such n, Sigma_n
/// is reported.
Level classify(const Formula& f);

// --- pairing ---------------------------------------------------------------

/// Cantor pairing (a+b)(a+b+1)/2 + b. Throws std::overflow_error past 64 bits.
std::uint64_t pair(std::uint64_t a, std::uint64_t b);
std::uint64_t proj1(std::uint64_t z);
std::uint64_t proj2(std::uint64_t z);

// --- uniformization --------------------------------------------------------

/// Delta_0 formula stating that `code` = pair(first, second), where `first`
/// and `second` are bound below S(code) and `body` may mention them:
///   (Es < S(code)) (s*S(s) < S(code+code) & code+code < S(s)*S(S(s)) &
///     (Esecond < S(s)) (s*S(s) + second + second = code + code &
///       (Efirst < S(s)) (first + second = s & body)))
Formula projection_block(const std::string& code, const std::string& first, const std::string& second,
                         const std::string& sum, const Formula& body);

/// For phi = Ey Theta(x, y) in Sigma_{k+1} with Theta in Pi_k, builds
///   Ez ((z)_1 = x & Theta((z)_1, (z)_2) & ~(Ew < z) Theta((w)_1, (w)_2))
/// with the projections written as projection blocks. Leading existentials are
/// exposed by prenex moves only as far as needed; adjacent existentials are
/// contracted through the pairing function.
///
/// With `allow_vacuous`, x need not occur free in phi.
Formula uniformize(const Formula& phi, const std::string& x, bool allow_vacuous = false);

// --- bounded models --------------------------------------------------------

using Assignment = std::map<std::string, std::uint64_t>;

/// Truth of `f` in {0, ..., N-1}: unbounded quantifiers range below N, bounded
/// quantifiers range below the value of their bound, and terms are evaluated
/// exactly.
bool eval_bounded(const Formula& f, const Assignment& assignment, std::uint64_t N);

/// Evaluator that memoizes quantifier subformulas across calls with the same
/// N. Formulas passed in must outlive it.
class BoundedModel {
 public:
  explicit BoundedModel(std::uint64_t N);
  ~BoundedModel();
  BoundedModel(const BoundedModel&) = delete;
  BoundedModel& operator=(const BoundedModel&) = delete;

  bool eval(const Formula& f, const Assignment& assignment);
  std::uint64_t size() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct UniformizationReport {
  bool item1 = false;  // Ax < X (PhiBar(x) -> Phi(x))
  bool item2 = false;  // Ax, x' < X (PhiBar(x) & PhiBar(x') -> x = x')
  bool item3 = false;  // (Ex < X Phi(x)) -> (Ex < N PhiBar(x))
  std::uint64_t X = 0;
  std::uint64_t N = 0;
  std::string theta;
  /// The x < X at which PhiBar holds.
  std::vector<std::uint64_t> selected;
  /// Least witness y below N for each x < X, if any.
  std::vector<std::optional<std::uint64_t>> witnesses;

  bool all_hold() const noexcept { return item1 && item2 && item3; }
};

/// Evaluates the three uniformization properties for Phi(x) = Ey theta(x, y)
/// over x < X in the model of size N. `theta` must be Delta_0 with free
/// variables among x, y. Refuses with InsufficientBound unless
/// pair(X - 1, W) < N, where W is the largest least witness below N.
UniformizationReport check_uniformization(const Formula& theta, std::uint64_t X, std::uint64_t N);

// --- schemes ---------------------------------------------------------------

/// (phi(0) & Ai (phi(i) -> phi(S(i)))) -> Ai phi(i)
Formula induction_instance(const Formula& phi, const std::string& i);

/// (Ai Ej phi(i, j)) -> Am En (Ai < m) (Ej < n) phi(i, j), with m and n fresh.
Formula bounding_instance(const Formula& phi, const std::string& i, const std::string& j);

}  // namespace ordlab
