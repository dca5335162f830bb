#include "ordlab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ordlab {

struct ExprNode {
  ExprOp op = ExprOp::Zero;
  std::string name;
  Expr lhs;
  Expr rhs;
  std::vector<std::string> vars;
};

struct FormulaNode {
  FormulaOp op = FormulaOp::Eq;
  Expr t1;
  Expr t2;
  Formula a;
  Formula b;
  std::string var;
  Expr bound;
  std::vector<std::string> free;
};

namespace {

std::vector<std::string> merged(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::vector<std::string> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> without(std::vector<std::string> xs, const std::string& v) {
  xs.erase(std::remove(xs.begin(), xs.end(), v), xs.end());
  return xs;
}

bool contains(const std::vector<std::string>& sorted, std::string_view v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

FormulaSyntaxError::FormulaSyntaxError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)), position_(position) {}

UnboundVariable::UnboundVariable(std::vector<std::string> names)
    : Error([&] {
        std::string msg = "unbound variable(s):";
        for (const auto& n : names) msg += " " + n;
        return msg;
      }()),
      names_(std::move(names)) {}

// --- Expr --------------------------------------------------------------------

Expr Expr::zero() {
  static const Expr z(std::make_shared<const ExprNode>());
  return z;
}

Expr Expr::var(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::Var;
  n->vars = {name};
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::succ(Expr e) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::Succ;
  n->vars = e.variables();
  n->lhs = std::move(e);
  return Expr(std::move(n));
}

Expr Expr::plus(Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::Add;
  n->vars = merged(a.variables(), b.variables());
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::times(Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::Mul;
  n->vars = merged(a.variables(), b.variables());
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::numeral(std::uint64_t n) {
  Expr e = zero();
  for (std::uint64_t i = 0; i < n; ++i) e = succ(e);
  return e;
}

ExprOp Expr::op() const { return node_->op; }
const std::string& Expr::name() const { return node_->name; }
const Expr& Expr::lhs() const { return node_->lhs; }
const Expr& Expr::rhs() const { return node_->rhs; }
const std::vector<std::string>& Expr::variables() const { return node_->vars; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case ExprOp::Zero: return true;
    case ExprOp::Var: return a.name() == b.name();
    case ExprOp::Succ: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// --- Formula -----------------------------------------------------------------

namespace {

std::shared_ptr<FormulaNode> make_node(FormulaOp op) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  return n;
}

}  // namespace

Formula Formula::eq(Expr a, Expr b) {
  auto n = make_node(FormulaOp::Eq);
  n->free = merged(a.variables(), b.variables());
  n->t1 = std::move(a);
  n->t2 = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::lt(Expr a, Expr b) {
  auto n = make_node(FormulaOp::Lt);
  n->free = merged(a.variables(), b.variables());
  n->t1 = std::move(a);
  n->t2 = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = make_node(FormulaOp::Not);
  n->free = f.free_variables();
  n->a = std::move(f);
  return Formula(std::move(n));
}

namespace {

template <class F>
Formula binary(FormulaOp op, Formula a, Formula b, F make) {
  auto n = make_node(op);
  n->free = merged(a.free_variables(), b.free_variables());
  n->a = std::move(a);
  n->b = std::move(b);
  return make(std::move(n));
}

}  // namespace

Formula Formula::conjunction(Formula a, Formula b) {
  return binary(FormulaOp::And, std::move(a), std::move(b), [](auto n) { return Formula(std::move(n)); });
}

Formula Formula::disjunction(Formula a, Formula b) {
  return binary(FormulaOp::Or, std::move(a), std::move(b), [](auto n) { return Formula(std::move(n)); });
}

Formula Formula::implication(Formula a, Formula b) {
  return binary(FormulaOp::Implies, std::move(a), std::move(b), [](auto n) { return Formula(std::move(n)); });
}

Formula Formula::exists(std::string v, Formula body) {
  auto n = make_node(FormulaOp::Exists);
  n->free = without(body.free_variables(), v);
  n->var = std::move(v);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string v, Formula body) {
  auto n = make_node(FormulaOp::Forall);
  n->free = without(body.free_variables(), v);
  n->var = std::move(v);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::exists_below(std::string v, Expr bound, Formula body) {
  auto n = make_node(FormulaOp::ExistsBelow);
  n->free = merged(without(body.free_variables(), v), bound.variables());
  n->var = std::move(v);
  n->bound = std::move(bound);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall_below(std::string v, Expr bound, Formula body) {
  auto n = make_node(FormulaOp::ForallBelow);
  n->free = merged(without(body.free_variables(), v), bound.variables());
  n->var = std::move(v);
  n->bound = std::move(bound);
  n->a = std::move(body);
  return Formula(std::move(n));
}

FormulaOp Formula::op() const { return node_->op; }
bool Formula::is_atom() const { return op() == FormulaOp::Eq || op() == FormulaOp::Lt; }
bool Formula::is_quantifier() const {
  return op() == FormulaOp::Exists || op() == FormulaOp::Forall || is_bounded_quantifier();
}
bool Formula::is_bounded_quantifier() const {
  return op() == FormulaOp::ExistsBelow || op() == FormulaOp::ForallBelow;
}
const Expr& Formula::left_term() const { return node_->t1; }
const Expr& Formula::right_term() const { return node_->t2; }
const Formula& Formula::left() const { return node_->a; }
const Formula& Formula::right() const { return node_->b; }
const std::string& Formula::bound_variable() const { return node_->var; }
const Expr& Formula::bound() const { return node_->bound; }
const std::vector<std::string>& Formula::free_variables() const { return node_->free; }
bool Formula::has_free(std::string_view v) const { return contains(node_->free, v); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case FormulaOp::Eq:
    case FormulaOp::Lt: return a.left_term() == b.left_term() && a.right_term() == b.right_term();
    case FormulaOp::Not: return a.left() == b.left();
    case FormulaOp::And:
    case FormulaOp::Or:
    case FormulaOp::Implies: return a.left() == b.left() && a.right() == b.right();
    case FormulaOp::Exists:
    case FormulaOp::Forall: return a.bound_variable() == b.bound_variable() && a.left() == b.left();
    case FormulaOp::ExistsBelow:
    case FormulaOp::ForallBelow:
      return a.bound_variable() == b.bound_variable() && a.bound() == b.bound() && a.left() == b.left();
  }
  return false;
}

// --- variables and substitution ----------------------------------------------

namespace {

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    out.insert(f.left_term().variables().begin(), f.left_term().variables().end());
    out.insert(f.right_term().variables().begin(), f.right_term().variables().end());
    return;
  }
  if (f.is_quantifier()) {
    out.insert(f.bound_variable());
    if (f.is_bounded_quantifier()) out.insert(f.bound().variables().begin(), f.bound().variables().end());
    collect_variables(f.left(), out);
    return;
  }
  collect_variables(f.left(), out);
  if (f.op() != FormulaOp::Not) collect_variables(f.right(), out);
}

// Hands out variable names that do not occur in a given set.
class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  std::string fresh(const std::string& base) {
    std::string name = base;
    for (unsigned i = 1; used_.count(name); ++i) name = base + std::to_string(i);
    used_.insert(name);
    return name;
  }

  void reserve(const Formula& f) { collect_variables(f, used_); }

 private:
  std::set<std::string> used_;
};

Expr substitute_expr(const Expr& t, const std::string& v, const Expr& e) {
  if (!contains(t.variables(), v)) return t;
  switch (t.op()) {
    case ExprOp::Zero: return t;
    case ExprOp::Var: return e;
    case ExprOp::Succ: return Expr::succ(substitute_expr(t.lhs(), v, e));
    case ExprOp::Add: return Expr::plus(substitute_expr(t.lhs(), v, e), substitute_expr(t.rhs(), v, e));
    case ExprOp::Mul: return Expr::times(substitute_expr(t.lhs(), v, e), substitute_expr(t.rhs(), v, e));
  }
  return t;
}

Formula rebuild_quantifier(const Formula& q, std::string v, Expr bound, Formula body) {
  switch (q.op()) {
    case FormulaOp::Exists: return Formula::exists(std::move(v), std::move(body));
    case FormulaOp::Forall: return Formula::forall(std::move(v), std::move(body));
    case FormulaOp::ExistsBelow: return Formula::exists_below(std::move(v), std::move(bound), std::move(body));
    default: return Formula::forall_below(std::move(v), std::move(bound), std::move(body));
  }
}

}  // namespace

std::vector<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  collect_variables(f, out);
  return {out.begin(), out.end()};
}

Formula substitute(const Formula& f, const std::string& v, const Expr& e) {
  if (!f.has_free(v)) return f;
  switch (f.op()) {
    case FormulaOp::Eq:
      return Formula::eq(substitute_expr(f.left_term(), v, e), substitute_expr(f.right_term(), v, e));
    case FormulaOp::Lt:
      return Formula::lt(substitute_expr(f.left_term(), v, e), substitute_expr(f.right_term(), v, e));
    case FormulaOp::Not: return Formula::negation(substitute(f.left(), v, e));
    case FormulaOp::And: return Formula::conjunction(substitute(f.left(), v, e), substitute(f.right(), v, e));
    case FormulaOp::Or: return Formula::disjunction(substitute(f.left(), v, e), substitute(f.right(), v, e));
    case FormulaOp::Implies: return Formula::implication(substitute(f.left(), v, e), substitute(f.right(), v, e));
    default: break;
  }
  Expr bound = f.is_bounded_quantifier() ? substitute_expr(f.bound(), v, e) : Expr();
  std::string q = f.bound_variable();
  Formula body = f.left();
  if (q != v && body.has_free(v) && contains(e.variables(), q)) {
    std::set<std::string> used(e.variables().begin(), e.variables().end());
    collect_variables(body, used);
    used.insert(v);
    const std::string renamed = NameSupply(std::move(used)).fresh(q);
    body = substitute(body, q, Expr::var(renamed));
    q = renamed;
  }
  if (q != v) body = substitute(body, v, e);
  return rebuild_quantifier(f, std::move(q), std::move(bound), std::move(body));
}

// --- parsing -----------------------------------------------------------------

namespace {

constexpr std::uint64_t kMaxNumeral = 1'000'000;

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = implication();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw FormulaSyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek_char() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool lower_at(std::size_t i) const {
    return i < text_.size() && std::islower(static_cast<unsigned char>(text_[i]));
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string identifier() {
    skip_space();
    if (!lower_at(pos_)) fail("expected a variable");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                   std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implication(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    const char c = peek_char();
    if (c == '~') {
      ++pos_;
      return Formula::negation(unary());
    }
    if ((c == 'E' || c == 'A') && lower_at(pos_ + 1)) {
      ++pos_;
      std::string v = identifier();
      if (accept("<")) {
        Expr bound = term();
        Formula body = unary();
        return c == 'E' ? Formula::exists_below(std::move(v), std::move(bound), std::move(body))
                        : Formula::forall_below(std::move(v), std::move(bound), std::move(body));
      }
      Formula body = unary();
      return c == 'E' ? Formula::exists(std::move(v), std::move(body)) : Formula::forall(std::move(v), std::move(body));
    }
    if (c == '(') {
      // Either a parenthesized formula or an atom whose first term is
      // parenthesized; try the formula first and fall back.
      const std::size_t start = pos_;
      try {
        ++pos_;
        Formula inner = implication();
        expect(")");
        const char next = peek_char();
        if (next != '=' && next != '<' && next != '+' && next != '*') return inner;
      } catch (const FormulaSyntaxError&) {
      }
      pos_ = start;
    }
    return atom();
  }

  Formula atom() {
    Expr lhs = term();
    if (accept("=")) return Formula::eq(lhs, term());
    if (accept("<")) return Formula::lt(lhs, term());
    fail("expected '=' or '<'");
  }

  Expr term() {
    Expr e = product();
    while (accept("+")) e = Expr::plus(e, product());
    return e;
  }

  Expr product() {
    Expr e = primary();
    while (accept("*")) e = Expr::times(e, primary());
    return e;
  }

  Expr primary() {
    const char c = peek_char();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
      if (ec != std::errc() || value > kMaxNumeral) {
        pos_ = start;
        fail("numeral too large");
      }
      return Expr::numeral(value);
    }
    if (c == 'S') {
      ++pos_;
      expect("(");
      Expr inner = term();
      expect(")");
      return Expr::succ(inner);
    }
    if (c == '(') {
      ++pos_;
      Expr inner = term();
      expect(")");
      return inner;
    }
    if (lower_at(pos_)) return Expr::var(identifier());
    fail("expected a term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int expr_precedence(const Expr& e) {
  switch (e.op()) {
    case ExprOp::Add: return 1;
    case ExprOp::Mul: return 2;
    default: return 3;
  }
}

std::string render_expr_at(const Expr& e, int needed) {
  std::string out = render_expr(e);
  return expr_precedence(e) < needed ? "(" + out + ")" : out;
}

int formula_precedence(const Formula& f) {
  switch (f.op()) {
    case FormulaOp::Implies: return 1;
    case FormulaOp::Or: return 2;
    case FormulaOp::And: return 3;
    default: return 4;
  }
}

std::string render_formula_at(const Formula& f, int needed) {
  std::string out = render_formula(f);
  return formula_precedence(f) < needed ? "(" + out + ")" : out;
}

// Quantifier bodies and negated formulas: atoms and connectives get
// parentheses, nested quantifiers and negations do not.
std::string render_scope(const Formula& f) {
  if (f.is_quantifier() || f.op() == FormulaOp::Not) return render_formula(f);
  return "(" + render_formula(f) + ")";
}

}  // namespace

Formula parse_formula(std::string_view text, bool closed) {
  Formula f = FormulaParser(text).parse_all();
  if (closed && !f.free_variables().empty()) throw UnboundVariable(f.free_variables());
  return f;
}

std::string render_expr(const Expr& e) {
  switch (e.op()) {
    case ExprOp::Zero: return "0";
    case ExprOp::Var: return e.name();
    case ExprOp::Succ: {
      std::uint64_t n = 0;
      const Expr* cur = &e;
      while (cur->op() == ExprOp::Succ) {
        ++n;
        cur = &cur->lhs();
      }
      if (cur->op() == ExprOp::Zero) return std::to_string(n);
      return "S(" + render_expr(e.lhs()) + ")";
    }
    case ExprOp::Add: return render_expr_at(e.lhs(), 1) + " + " + render_expr_at(e.rhs(), 2);
    case ExprOp::Mul: return render_expr_at(e.lhs(), 2) + " * " + render_expr_at(e.rhs(), 3);
  }
  return "";
}

std::string render_formula(const Formula& f) {
  switch (f.op()) {
    case FormulaOp::Eq: return render_expr(f.left_term()) + " = " + render_expr(f.right_term());
    case FormulaOp::Lt: return render_expr(f.left_term()) + " < " + render_expr(f.right_term());
    case FormulaOp::Not: return "~" + render_scope(f.left());
    case FormulaOp::And: return render_formula_at(f.left(), 3) + " & " + render_formula_at(f.right(), 4);
    case FormulaOp::Or: return render_formula_at(f.left(), 2) + " | " + render_formula_at(f.right(), 3);
    case FormulaOp::Implies: return render_formula_at(f.left(), 2) + " -> " + render_formula_at(f.right(), 1);
    case FormulaOp::Exists: return "E" + f.bound_variable() + " " + render_scope(f.left());
    case FormulaOp::Forall: return "A" + f.bound_variable() + " " + render_scope(f.left());
    case FormulaOp::ExistsBelow:
      return "E" + f.bound_variable() + "<" + render_expr(f.bound()) + " " + render_scope(f.left());
    case FormulaOp::ForallBelow:
      return "A" + f.bound_variable() + "<" + render_expr(f.bound()) + " " + render_scope(f.left());
  }
  return "";
}

// --- classification ----------------------------------------------------------

HierarchyRank hierarchy_rank(const Formula& f) {
  switch (f.op()) {
    case FormulaOp::Eq:
    case FormulaOp::Lt: return {0, 0};
    case FormulaOp::Not: {
      auto r = hierarchy_rank(f.left());
      return {r.pi, r.sigma};
    }
    case FormulaOp::And:
    case FormulaOp::Or: {
      auto l = hierarchy_rank(f.left());
      auto r = hierarchy_rank(f.right());
      return {std::max(l.sigma, r.sigma), std::max(l.pi, r.pi)};
    }
    case FormulaOp::Implies: {
      auto l = hierarchy_rank(f.left());
      auto r = hierarchy_rank(f.right());
      return {std::max(l.pi, r.sigma), std::max(l.sigma, r.pi)};
    }
    case FormulaOp::Exists: {
      auto r = hierarchy_rank(f.left());
      const unsigned s = std::max(1u, std::min(r.sigma, r.pi + 1));
      return {s, s + 1};
    }
    case FormulaOp::Forall: {
      auto r = hierarchy_rank(f.left());
      const unsigned p = std::max(1u, std::min(r.pi, r.sigma + 1));
      return {p + 1, p};
    }
    case FormulaOp::ExistsBelow:
    case FormulaOp::ForallBelow: return hierarchy_rank(f.left());
  }
  return {};
}

Level classify(const Formula& f) {
  const auto r = hierarchy_rank(f);
  if (r.sigma == 0 && r.pi == 0) return Level::delta0();
  if (r.sigma <= r.pi) return Level::sigma(r.sigma);
  return Level::pi(r.pi);
}

std::string render_level(const Level& l) {
  switch (l.kind) {
    case Level::Kind::Delta0: return "Delta0";
    case Level::Kind::Sigma: return "Sigma" + std::to_string(l.k);
    case Level::Kind::Pi: return "Pi" + std::to_string(l.k);
  }
  return "";
}

// --- pairing -----------------------------------------------------------------

std::uint64_t pair(std::uint64_t a, std::uint64_t b) {
  using wide = unsigned __int128;
  const wide s = wide(a) + b;
  const wide z = s * (s + 1) / 2 + b;
  if (z > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("pair: result exceeds 64 bits");
  return static_cast<std::uint64_t>(z);
}

namespace {

// Largest s with s(s+1)/2 <= z.
std::uint64_t diagonal(std::uint64_t z) {
  using wide = unsigned __int128;
  auto tri = [](wide s) { return s * (s + 1) / 2; };
  wide s = static_cast<wide>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (s > 0 && tri(s) > z) --s;
  while (tri(s + 1) <= z) ++s;
  return static_cast<std::uint64_t>(s);
}

}  // namespace

std::uint64_t proj2(std::uint64_t z) {
  const std::uint64_t s = diagonal(z);
  return z - static_cast<std::uint64_t>((static_cast<unsigned __int128>(s) * (s + 1)) / 2);
}

std::uint64_t proj1(std::uint64_t z) { return diagonal(z) - proj2(z); }

// --- uniformization ----------------------------------------------------------

Formula projection_block(const std::string& code, const std::string& first, const std::string& second,
                         const std::string& sum, const Formula& body) {
  const Expr c = Expr::var(code);
  const Expr s = Expr::var(sum);
  const Expr a = Expr::var(first);
  const Expr b = Expr::var(second);
  const Expr s_times_succ = Expr::times(s, Expr::succ(s));
  const Expr twice_code = Expr::plus(c, c);

  // The equation on `second` comes first so the search for `first` only runs
  // for the single matching value.
  const Formula with_first =
      Formula::exists_below(first, Expr::succ(s), Formula::conjunction(Formula::eq(Expr::plus(a, b), s), body));
  const Formula inner = Formula::exists_below(
      second, Expr::succ(s),
      Formula::conjunction(Formula::eq(Expr::plus(Expr::plus(s_times_succ, b), b), twice_code), with_first));
  // s is pinned to the diagonal holding `code`, so only one s survives the
  // first two conjuncts.
  const Formula on_diagonal =
      Formula::conjunction(Formula::lt(s_times_succ, Expr::succ(twice_code)),
                           Formula::lt(twice_code, Expr::times(Expr::succ(s), Expr::succ(Expr::succ(s)))));
  return Formula::exists_below(sum, Expr::succ(c), Formula::conjunction(on_diagonal, inner));
}

namespace {

struct Exposed {
  std::string var;
  Formula matrix;
};

// Rewrites a Sigma_{k+1} formula into Ey matrix with matrix in Pi_k, using
// prenex moves and contraction of existential pairs through the pairing
// function.
class Exposer {
 public:
  Exposer(unsigned k, NameSupply& names) : k_(k), names_(names) {}

  bool needs(const Formula& f) const { return hierarchy_rank(f).pi > k_; }

  Exposed expose(const Formula& f) {
    switch (f.op()) {
      case FormulaOp::Exists: {
        if (!needs(f.left())) return {f.bound_variable(), f.left()};
        Exposed inner = expose(f.left());
        if (inner.var == f.bound_variable()) inner = rename(inner);
        return contract(f.bound_variable(), inner.var, inner.matrix);
      }
      case FormulaOp::Not: return expose(push_negation(f.left()));
      case FormulaOp::Implies: return expose(Formula::disjunction(Formula::negation(f.left()), f.right()));
      case FormulaOp::And:
      case FormulaOp::Or: return expose_binary(f);
      case FormulaOp::ExistsBelow: {
        Exposed inner = expose(f.left());
        if (inner.var == f.bound_variable() || contains(f.bound().variables(), inner.var)) inner = rename(inner);
        return {inner.var, Formula::exists_below(f.bound_variable(), f.bound(), inner.matrix)};
      }
      case FormulaOp::ForallBelow:
        throw NotSigma("cannot move an existential quantifier out of a bounded universal quantifier");
      default: throw NotSigma("no leading existential quantifier to expose in " + render_formula(f));
    }
  }

 private:
  // ~g with the negation moved one level inward.
  Formula push_negation(const Formula& g) {
    switch (g.op()) {
      case FormulaOp::Not: return g.left();
      case FormulaOp::And: return Formula::disjunction(Formula::negation(g.left()), Formula::negation(g.right()));
      case FormulaOp::Or: return Formula::conjunction(Formula::negation(g.left()), Formula::negation(g.right()));
      case FormulaOp::Implies: return Formula::conjunction(g.left(), Formula::negation(g.right()));
      case FormulaOp::Forall: return Formula::exists(g.bound_variable(), Formula::negation(g.left()));
      case FormulaOp::Exists: return Formula::forall(g.bound_variable(), Formula::negation(g.left()));
      case FormulaOp::ExistsBelow:
        return Formula::forall_below(g.bound_variable(), g.bound(), Formula::negation(g.left()));
      case FormulaOp::ForallBelow:
        return Formula::exists_below(g.bound_variable(), g.bound(), Formula::negation(g.left()));
      default: return Formula::negation(g);
    }
  }

  Exposed rename(const Exposed& e) {
    const std::string v = names_.fresh(e.var);
    return {v, substitute(e.matrix, e.var, Expr::var(v))};
  }

  // Ey1 Ey2 matrix  ~>  Eu (u = pair(y1, y2) & matrix)
  Exposed contract(const std::string& y1, const std::string& y2, const Formula& matrix) {
    const std::string u = names_.fresh("u");
    const std::string s = names_.fresh("s");
    return {u, projection_block(u, y1, y2, s, matrix)};
  }

  Exposed expose_binary(const Formula& f) {
    const bool left_needs = needs(f.left());
    const bool right_needs = needs(f.right());
    const auto combine = [&](Formula a, Formula b) {
      return f.op() == FormulaOp::And ? Formula::conjunction(std::move(a), std::move(b))
                                      : Formula::disjunction(std::move(a), std::move(b));
    };
    if (left_needs && right_needs) {
      Exposed l = expose(f.left());
      Exposed r = expose(f.right());
      if (f.right().has_free(l.var) || l.var == r.var) l = rename(l);
      if (f.left().has_free(r.var) || l.matrix.has_free(r.var)) r = rename(r);
      return contract(l.var, r.var, combine(l.matrix, r.matrix));
    }
    if (left_needs) {
      Exposed l = expose(f.left());
      if (f.right().has_free(l.var)) l = rename(l);
      return {l.var, combine(l.matrix, f.right())};
    }
    if (right_needs) {
      Exposed r = expose(f.right());
      if (f.left().has_free(r.var)) r = rename(r);
      return {r.var, combine(f.left(), r.matrix)};
    }
    throw NotSigma("no existential quantifier to expose in " + render_formula(f));
  }

  unsigned k_;
  NameSupply& names_;
};

}  // namespace

Formula uniformize(const Formula& phi, const std::string& x, bool allow_vacuous) {
  const Level level = classify(phi);
  if (level.kind != Level::Kind::Sigma)
    throw NotSigma("uniformize: expected a Sigma formula, got " + render_level(level) + ": " + render_formula(phi));
  if (!allow_vacuous && !phi.has_free(x)) throw VariableNotFree("uniformize: " + x + " is not free in the formula");

  std::set<std::string> used;
  collect_variables(phi, used);
  used.insert(x);
  NameSupply names(std::move(used));

  const unsigned k = level.k - 1;
  Exposer exposer(k, names);
  Exposed e = exposer.expose(phi);
  if (e.var == x) {
    const std::string v = names.fresh("y");
    e = {v, substitute(e.matrix, e.var, Expr::var(v))};
  }
  if (hierarchy_rank(e.matrix).pi > k)
    throw NotSigma("uniformize: could not reduce the matrix to Pi" + std::to_string(k));
  names.reserve(e.matrix);

  const std::string z = names.fresh("z");
  const std::string w = names.fresh("w");
  const std::string s = names.fresh("s");
  const std::string a = names.fresh("a");
  const std::string b = names.fresh("b");

  const Formula theta_ab = substitute(substitute(e.matrix, x, Expr::var(a)), e.var, Expr::var(b));
  const Formula first_is_x = projection_block(z, a, b, s, Formula::eq(Expr::var(a), Expr::var(x)));
  const Formula holds_at_z = projection_block(z, a, b, s, theta_ab);
  const Formula none_below = Formula::negation(Formula::exists_below(w, Expr::var(z), projection_block(w, a, b, s, theta_ab)));
  Formula out = Formula::exists(z, Formula::conjunction(Formula::conjunction(first_is_x, holds_at_z), none_below));

  if (classify(out) != level)
    throw std::logic_error("uniformize: result level " + render_level(classify(out)) + " differs from " +
                           render_level(level));
  return out;
}

// --- bounded evaluation ------------------------------------------------------

// Formulas are compiled once per model into nodes addressing variables by slot,
// so evaluation never touches strings. Shared subformulas stay shared, which
// keeps memo entries keyed by node meaningful.

namespace {

struct CompiledExpr {
  ExprOp op;
  int slot = -1;
  int lhs = -1;
  int rhs = -1;
};

struct CompiledFormula {
  FormulaOp op;
  int t1 = -1, t2 = -1;  // expressions
  int a = -1, b = -1;    // subformulas
  int var = -1;          // bound variable slot
  int bound = -1;        // bound expression
  std::vector<int> free;
  /// Only quantifiers whose body contains another quantifier are memoized;
  /// below that a lookup costs about as much as recomputing.
  bool memoize = false;
  bool has_quantifier = false;
  /// For existentials: an atom on the left spine of the body's conjunctions
  /// whose left side grows with the bound variable and whose right side does
  /// not mention it. Once it overshoots, no larger value can satisfy the body.
  int cutoff = -1;
};

struct MemoKey {
  int node;
  std::vector<std::uint64_t> values;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<int>()(k.node);
    for (auto v : k.values) h ^= std::hash<std::uint64_t>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

struct BoundedModel::Impl {
  std::uint64_t N;
  std::unordered_map<std::string, int> slots;
  std::vector<std::string> slot_names;
  std::vector<std::uint64_t> env;
  std::vector<char> assigned;
  std::vector<CompiledExpr> exprs;
  std::vector<CompiledFormula> nodes;
  std::unordered_map<const void*, int> compiled;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo;

  int slot(const std::string& name) {
    auto [it, inserted] = slots.emplace(name, static_cast<int>(slot_names.size()));
    if (inserted) {
      slot_names.push_back(name);
      env.push_back(0);
      assigned.push_back(0);
    }
    return it->second;
  }

  int compile(const Expr& e) {
    CompiledExpr c;
    c.op = e.op();
    switch (e.op()) {
      case ExprOp::Zero: break;
      case ExprOp::Var: c.slot = slot(e.name()); break;
      case ExprOp::Succ: c.lhs = compile(e.lhs()); break;
      case ExprOp::Add:
      case ExprOp::Mul:
        c.lhs = compile(e.lhs());
        c.rhs = compile(e.rhs());
        break;
    }
    exprs.push_back(c);
    return static_cast<int>(exprs.size()) - 1;
  }

  int compile(const Formula& f) {
    if (auto it = compiled.find(f.id()); it != compiled.end()) return it->second;
    CompiledFormula c;
    c.op = f.op();
    if (f.is_atom()) {
      c.t1 = compile(f.left_term());
      c.t2 = compile(f.right_term());
    } else {
      c.a = compile(f.left());
      c.has_quantifier = nodes[c.a].has_quantifier;
      if (f.op() == FormulaOp::And || f.op() == FormulaOp::Or || f.op() == FormulaOp::Implies) {
        c.b = compile(f.right());
        c.has_quantifier = c.has_quantifier || nodes[c.b].has_quantifier;
      }
      if (f.is_quantifier() || f.is_bounded_quantifier()) {
        c.var = slot(f.bound_variable());
        if (f.is_bounded_quantifier()) c.bound = compile(f.bound());
        c.memoize = c.has_quantifier;
        c.has_quantifier = true;
        if (f.op() == FormulaOp::Exists || f.op() == FormulaOp::ExistsBelow) c.cutoff = find_cutoff(f);
        for (const auto& v : f.free_variables()) c.free.push_back(slot(v));
      }
    }
    nodes.push_back(std::move(c));
    const int index = static_cast<int>(nodes.size()) - 1;
    compiled.emplace(f.id(), index);
    return index;
  }

  // Terms built from 0, S, + and * are nondecreasing in every variable.
  int find_cutoff(const Formula& q) {
    const std::string& v = q.bound_variable();
    Formula f = q.left();
    while (f.op() == FormulaOp::And) f = f.left();
    if (f.op() != FormulaOp::Lt && f.op() != FormulaOp::Eq) return -1;
    const auto& lhs_vars = f.left_term().variables();
    const auto& rhs_vars = f.right_term().variables();
    if (!contains(lhs_vars, v) || contains(rhs_vars, v)) return -1;
    return compiled.at(f.id());
  }

  bool overshoots(int atom) const {
    const CompiledFormula& a = nodes[atom];
    const std::uint64_t lhs = value(a.t1);
    const std::uint64_t rhs = value(a.t2);
    return a.op == FormulaOp::Lt ? lhs >= rhs : lhs > rhs;
  }

  std::uint64_t lookup(int s) const {
    if (!assigned[s]) throw UnassignedVariable("variable " + slot_names[s] + " has no value");
    return env[s];
  }

  std::uint64_t value(int index) const {
    const CompiledExpr& t = exprs[index];
    std::uint64_t r = 0;
    switch (t.op) {
      case ExprOp::Zero: return 0;
      case ExprOp::Var: return lookup(t.slot);
      case ExprOp::Succ:
        if (__builtin_add_overflow(value(t.lhs), std::uint64_t{1}, &r)) throw EvaluationOverflow("term overflow");
        return r;
      case ExprOp::Add:
        if (__builtin_add_overflow(value(t.lhs), value(t.rhs), &r)) throw EvaluationOverflow("term overflow");
        return r;
      case ExprOp::Mul:
        if (__builtin_mul_overflow(value(t.lhs), value(t.rhs), &r)) throw EvaluationOverflow("term overflow");
        return r;
    }
    return 0;
  }

  bool eval(int index) {
    const CompiledFormula& f = nodes[index];
    switch (f.op) {
      case FormulaOp::Eq: return value(f.t1) == value(f.t2);
      case FormulaOp::Lt: return value(f.t1) < value(f.t2);
      case FormulaOp::Not: return !eval(f.a);
      case FormulaOp::And: return eval(f.a) && eval(f.b);
      case FormulaOp::Or: return eval(f.a) || eval(f.b);
      case FormulaOp::Implies: return !eval(f.a) || eval(f.b);
      default: return quantifier(index);
    }
  }

  bool quantifier(int index) {
    const CompiledFormula& f = nodes[index];
    MemoKey key{index, {}};
    if (f.memoize) {
      key.values.reserve(f.free.size());
      for (int s : f.free) key.values.push_back(lookup(s));
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }

    const bool existential = f.op == FormulaOp::Exists || f.op == FormulaOp::ExistsBelow;
    const std::uint64_t limit = f.bound >= 0 ? value(f.bound) : N;
    const int v = f.var;
    const std::uint64_t saved_value = env[v];
    const char saved_assigned = assigned[v];
    assigned[v] = 1;
    bool result = !existential;
    for (std::uint64_t i = 0; i < limit; ++i) {
      env[v] = i;
      if (eval(f.a) == existential) {
        result = existential;
        break;
      }
      if (f.cutoff >= 0 && overshoots(f.cutoff)) break;
    }
    env[v] = saved_value;
    assigned[v] = saved_assigned;

    if (f.memoize) memo.emplace(std::move(key), result);
    return result;
  }
};

BoundedModel::BoundedModel(std::uint64_t N) : impl_(std::make_unique<Impl>()) { impl_->N = N; }
BoundedModel::~BoundedModel() = default;

std::uint64_t BoundedModel::size() const noexcept { return impl_->N; }

bool BoundedModel::eval(const Formula& f, const Assignment& assignment) {
  for (const auto& v : f.free_variables())
    if (!assignment.count(v)) throw UnassignedVariable("variable " + v + " has no value");
  for (const auto& [name, val] : assignment)
    if (val >= impl_->N)
      throw std::invalid_argument("assignment " + name + " = " + std::to_string(val) + " is outside the model of size " +
                                  std::to_string(impl_->N));
  const int root = impl_->compile(f);
  std::fill(impl_->assigned.begin(), impl_->assigned.end(), 0);
  for (const auto& [name, val] : assignment) {
    const int s = impl_->slot(name);
    impl_->env[s] = val;
    impl_->assigned[s] = 1;
  }
  return impl_->eval(root);
}

bool eval_bounded(const Formula& f, const Assignment& assignment, std::uint64_t N) {
  BoundedModel model(N);
  return model.eval(f, assignment);
}

UniformizationReport check_uniformization(const Formula& theta, std::uint64_t X, std::uint64_t N) {
  if (classify(theta) != Level::delta0())
    throw std::invalid_argument("check_uniformization: theta must be Delta0, got " + render_level(classify(theta)));
  for (const auto& v : theta.free_variables())
    if (v != "x" && v != "y")
      throw std::invalid_argument("check_uniformization: theta may only mention x and y free, found " + v);
  if (X == 0) throw std::invalid_argument("check_uniformization: X must be at least 1");

  UniformizationReport report;
  report.X = X;
  report.N = N;
  report.theta = render_formula(theta);

  BoundedModel model(N);
  std::uint64_t largest_witness = 0;
  for (std::uint64_t x = 0; x < X && x < N; ++x) {
    std::optional<std::uint64_t> witness;
    for (std::uint64_t y = 0; y < N && !witness; ++y)
      if (model.eval(theta, {{"x", x}, {"y", y}})) witness = y;
    if (witness) largest_witness = std::max(largest_witness, *witness);
    report.witnesses.push_back(witness);
  }
  if (pair(X - 1, largest_witness) >= N)
    throw InsufficientBound("check_uniformization: need pair(X-1, W) = pair(" + std::to_string(X - 1) + ", " +
                            std::to_string(largest_witness) + ") = " + std::to_string(pair(X - 1, largest_witness)) +
                            " < N = " + std::to_string(N));

  const Formula phi = Formula::exists("y", theta);
  const Formula phibar = uniformize(phi, "x", true);

  std::vector<bool> holds(X);
  std::vector<bool> selected(X);
  for (std::uint64_t x = 0; x < X; ++x) {
    holds[x] = model.eval(phi, {{"x", x}});
    selected[x] = model.eval(phibar, {{"x", x}});
    if (selected[x]) report.selected.push_back(x);
  }

  report.item1 = true;
  for (std::uint64_t x = 0; x < X; ++x) report.item1 = report.item1 && (!selected[x] || holds[x]);
  report.item2 = true;
  for (std::uint64_t x = 0; x < X; ++x)
    for (std::uint64_t x2 = 0; x2 < X; ++x2) report.item2 = report.item2 && (!(selected[x] && selected[x2]) || x == x2);
  // The conclusion of item 3 ranges over the whole model: the least code may
  // pair a first coordinate >= X, and under the precondition that code is
  // below N, so the search is exact.
  const bool some_holds = std::find(holds.begin(), holds.end(), true) != holds.end();
  report.item3 = !some_holds || model.eval(Formula::exists("x", phibar), {});
  return report;
}

// --- schemes -----------------------------------------------------------------

Formula induction_instance(const Formula& phi, const std::string& i) {
  const Formula base = substitute(phi, i, Expr::zero());
  const Formula step = Formula::forall(i, Formula::implication(phi, substitute(phi, i, Expr::succ(Expr::var(i)))));
  return Formula::implication(Formula::conjunction(base, step), Formula::forall(i, phi));
}

Formula bounding_instance(const Formula& phi, const std::string& i, const std::string& j) {
  std::set<std::string> used;
  collect_variables(phi, used);
  used.insert(i);
  used.insert(j);
  NameSupply names(std::move(used));
  const std::string m = names.fresh("m");
  const std::string n = names.fresh("n");
  const Formula hypothesis = Formula::forall(i, Formula::exists(j, phi));
  const Formula bounded =
      Formula::forall_below(i, Expr::var(m), Formula::exists_below(j, Expr::var(n), phi));
  return Formula::implication(hypothesis, Formula::forall(m, Formula::exists(n, bounded)));
}

}  // namespace ordlab
