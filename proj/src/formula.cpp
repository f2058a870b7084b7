#include "ltlf/formula.hpp"
#include "ltlf/trace.hpp"

#include <sstream>
#include <unordered_map>

namespace ltlf {

bool is_unary(Op op) {
  switch (op) {
  case Op::Not:
  case Op::Next:
  case Op::WeakNext:
  case Op::Eventually:
  case Op::Globally:
    return true;
  default:
    return false;
  }
}

bool is_binary(Op op) {
  switch (op) {
  case Op::And:
  case Op::Or:
  case Op::Until:
  case Op::WeakUntil:
  case Op::Release:
    return true;
  default:
    return false;
  }
}

bool is_temporal(Op op) {
  switch (op) {
  case Op::Next:
  case Op::WeakNext:
  case Op::Until:
  case Op::WeakUntil:
  case Op::Release:
  case Op::Eventually:
  case Op::Globally:
    return true;
  default:
    return false;
  }
}

PropositionSet::PropositionSet(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (size_t i = 0; i < names_.size(); ++i)
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("duplicate proposition: " + names_[i]);
}

int PropositionSet::index_of(const std::string &name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return (int)i;
  return -1;
}

struct FormulaBuilder {
  static Formula make(std::shared_ptr<const FormulaNode> n) {
    return Formula(std::move(n));
  }
  static const std::shared_ptr<const FormulaNode> &ptr(const Formula &f) {
    return f.node_;
  }
};

static Formula mk(Op op, Formula l = {}, Formula r = {}, int prop = -1,
                  std::string name = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->left = FormulaBuilder::ptr(l);
  n->right = FormulaBuilder::ptr(r);
  n->prop = prop;
  n->prop_name = std::move(name);
  return FormulaBuilder::make(std::move(n));
}

Formula Formula::tt() { return mk(Op::True); }
Formula Formula::ff() { return mk(Op::False); }
Formula Formula::prop(int index, std::string name) {
  if (index < 0)
    throw std::invalid_argument("proposition index must be >= 0");
  return mk(Op::Prop, {}, {}, index, std::move(name));
}
Formula Formula::make_not(Formula f) { return mk(Op::Not, std::move(f)); }
Formula Formula::make_and(Formula l, Formula r) {
  return mk(Op::And, std::move(l), std::move(r));
}
Formula Formula::make_or(Formula l, Formula r) {
  return mk(Op::Or, std::move(l), std::move(r));
}
Formula Formula::next(Formula f) { return mk(Op::Next, std::move(f)); }
Formula Formula::weak_next(Formula f) { return mk(Op::WeakNext, std::move(f)); }
Formula Formula::until(Formula l, Formula r) {
  return mk(Op::Until, std::move(l), std::move(r));
}
Formula Formula::weak_until(Formula l, Formula r) {
  return mk(Op::WeakUntil, std::move(l), std::move(r));
}
Formula Formula::release(Formula l, Formula r) {
  return mk(Op::Release, std::move(l), std::move(r));
}
Formula Formula::eventually(Formula f) { return mk(Op::Eventually, std::move(f)); }
Formula Formula::globally(Formula f) { return mk(Op::Globally, std::move(f)); }

Formula Formula::left() const { return FormulaBuilder::make(node_->left); }
Formula Formula::right() const { return FormulaBuilder::make(node_->right); }

bool Formula::operator==(const Formula &o) const {
  if (node_ == o.node_)
    return true;
  if (!node_ || !o.node_)
    return false;
  return compare(*this, o) == 0;
}

static int op_rank(Op op) { return (int)op; }

int compare(const Formula &a, const Formula &b) {
  if (a.raw() == b.raw())
    return 0;
  if (op_rank(a.op()) != op_rank(b.op()))
    return op_rank(a.op()) < op_rank(b.op()) ? -1 : 1;
  if (a.op() == Op::Prop) {
    if (a.prop_index() != b.prop_index())
      return a.prop_index() < b.prop_index() ? -1 : 1;
    return a.prop_name().compare(b.prop_name());
  }
  if (is_unary(a.op()))
    return compare(a.left(), b.left());
  if (is_binary(a.op())) {
    int c = compare(a.left(), b.left());
    if (c != 0)
      return c;
    return compare(a.right(), b.right());
  }
  return 0; // constants
}

uint64_t formula_size(const Formula &f) {
  std::unordered_map<const FormulaNode *, uint64_t> memo;
  auto rec = [&](auto &&self, const Formula &g) -> uint64_t {
    auto it = memo.find(g.raw());
    if (it != memo.end())
      return it->second;
    uint64_t s = 0;
    switch (g.op()) {
    case Op::True:
    case Op::False:
      s = 0;
      break;
    case Op::Prop:
      s = 1;
      break;
    case Op::Not:
      s = self(self, g.left());
      break;
    case Op::And:
    case Op::Or:
      s = 1 + self(self, g.left()) + self(self, g.right());
      break;
    case Op::Next:
    case Op::WeakNext:
    case Op::Eventually:
    case Op::Globally:
      s = 1 + self(self, g.left());
      break;
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
      s = 1 + self(self, g.left()) + self(self, g.right());
      break;
    }
    memo.emplace(g.raw(), s);
    return s;
  };
  return rec(rec, f);
}

bool is_qualitative(const Formula &f) {
  std::unordered_map<const FormulaNode *, bool> memo;
  auto rec = [&](auto &&self, const Formula &g) -> bool {
    auto it = memo.find(g.raw());
    if (it != memo.end())
      return it->second;
    bool q = true;
    if (g.op() == Op::Next || g.op() == Op::WeakNext)
      q = false;
    else if (is_unary(g.op()))
      q = self(self, g.left());
    else if (is_binary(g.op()))
      q = self(self, g.left()) && self(self, g.right());
    memo.emplace(g.raw(), q);
    return q;
  };
  return rec(rec, f);
}

/* Printing precedence levels: | < & < U/W/R < unary/atom. */
static int print_level(Op op) {
  switch (op) {
  case Op::Or:
    return 0;
  case Op::And:
    return 1;
  case Op::Until:
  case Op::WeakUntil:
  case Op::Release:
    return 2;
  default:
    return 3;
  }
}

static const char *op_token(Op op) {
  switch (op) {
  case Op::Until:
    return "U";
  case Op::WeakUntil:
    return "W";
  case Op::Release:
    return "R";
  case Op::And:
    return "&";
  case Op::Or:
    return "|";
  case Op::Next:
    return "X";
  case Op::WeakNext:
    return "WX";
  case Op::Eventually:
    return "F";
  case Op::Globally:
    return "G";
  default:
    return "?";
  }
}

static void print_rec(std::ostringstream &out, const Formula &f, int parent_level,
                      bool left_of_same) {
  int level = print_level(f.op());
  /* & and | print left-associatively, U/W/R right-associatively, so a child
   * on the "wrong" side of an operator of its own level needs parentheses,
   * as does any child of strictly higher binding context. */
  bool parens = level < parent_level || (level == parent_level && left_of_same);
  if (parens)
    out << '(';
  switch (f.op()) {
  case Op::True:
    out << "true";
    break;
  case Op::False:
    out << "false";
    break;
  case Op::Prop:
    out << f.prop_name();
    break;
  case Op::Not:
    out << '!';
    print_rec(out, f.left(), 3, false);
    break;
  case Op::Next:
  case Op::WeakNext:
  case Op::Eventually:
  case Op::Globally:
    out << op_token(f.op()) << ' ';
    print_rec(out, f.left(), 3, false);
    break;
  case Op::And:
  case Op::Or:
    print_rec(out, f.left(), level, false);
    out << ' ' << op_token(f.op()) << ' ';
    print_rec(out, f.right(), level, true);
    break;
  case Op::Until:
  case Op::WeakUntil:
  case Op::Release:
    print_rec(out, f.left(), level, true);
    out << ' ' << op_token(f.op()) << ' ';
    print_rec(out, f.right(), level, false);
    break;
  }
  if (parens)
    out << ')';
}

std::string to_string(const Formula &f) {
  if (!f.valid())
    return "<null>";
  std::ostringstream out;
  print_rec(out, f, 0, false);
  return out.str();
}

std::vector<char> evaluate_all(const Formula &f, const Trace &trace) {
  int T = trace.length();
  if (T == 0)
    throw std::invalid_argument("empty trace");
  std::unordered_map<const FormulaNode *, std::vector<char>> memo;
  auto rec = [&](auto &&self, const Formula &g) -> const std::vector<char> & {
    auto it = memo.find(g.raw());
    if (it != memo.end())
      return it->second;
    std::vector<char> v(T, 0);
    switch (g.op()) {
    case Op::True:
      for (int t = 0; t < T; ++t)
        v[t] = 1;
      break;
    case Op::False:
      break;
    case Op::Prop:
      if (g.prop_index() >= trace.num_props)
        throw std::invalid_argument("proposition index out of range: " +
                                    g.prop_name());
      for (int t = 0; t < T; ++t)
        v[t] = trace.value(t, g.prop_index());
      break;
    case Op::Not: {
      const auto &a = self(self, g.left());
      for (int t = 0; t < T; ++t)
        v[t] = !a[t];
      break;
    }
    case Op::And: {
      const auto &a = self(self, g.left());
      const auto &b = self(self, g.right());
      for (int t = 0; t < T; ++t)
        v[t] = a[t] && b[t];
      break;
    }
    case Op::Or: {
      const auto &a = self(self, g.left());
      const auto &b = self(self, g.right());
      for (int t = 0; t < T; ++t)
        v[t] = a[t] || b[t];
      break;
    }
    case Op::Next: {
      const auto &a = self(self, g.left());
      for (int t = 0; t < T - 1; ++t)
        v[t] = a[t + 1];
      break;
    }
    case Op::WeakNext: {
      const auto &a = self(self, g.left());
      for (int t = 0; t < T - 1; ++t)
        v[t] = a[t + 1];
      v[T - 1] = 1;
      break;
    }
    case Op::Until: {
      const auto &a = self(self, g.left());
      const auto &b = self(self, g.right());
      v[T - 1] = b[T - 1];
      for (int t = T - 2; t >= 0; --t)
        v[t] = b[t] || (a[t] && v[t + 1]);
      break;
    }
    case Op::WeakUntil: {
      const auto &a = self(self, g.left());
      const auto &b = self(self, g.right());
      v[T - 1] = b[T - 1] || a[T - 1];
      for (int t = T - 2; t >= 0; --t)
        v[t] = b[t] || (a[t] && v[t + 1]);
      break;
    }
    case Op::Release: {
      const auto &a = self(self, g.left());
      const auto &b = self(self, g.right());
      v[T - 1] = b[T - 1];
      for (int t = T - 2; t >= 0; --t)
        v[t] = b[t] && (a[t] || v[t + 1]);
      break;
    }
    case Op::Eventually: {
      const auto &a = self(self, g.left());
      v[T - 1] = a[T - 1];
      for (int t = T - 2; t >= 0; --t)
        v[t] = a[t] || v[t + 1];
      break;
    }
    case Op::Globally: {
      const auto &a = self(self, g.left());
      v[T - 1] = a[T - 1];
      for (int t = T - 2; t >= 0; --t)
        v[t] = a[t] && v[t + 1];
      break;
    }
    }
    return memo.emplace(g.raw(), std::move(v)).first->second;
  };
  return rec(rec, f);
}

bool evaluate(const Formula &f, const Trace &trace, int t) {
  if (t < 0 || t >= trace.length())
    throw std::invalid_argument("position out of range");
  return evaluate_all(f, trace)[t] != 0;
}

bool satisfies(const Formula &f, const Trace &trace) {
  return evaluate(f, trace, 0);
}

Formula to_nnf(const Formula &f) {
  auto rec = [&](auto &&self, const Formula &g, bool neg) -> Formula {
    switch (g.op()) {
    case Op::True:
      return neg ? Formula::ff() : Formula::tt();
    case Op::False:
      return neg ? Formula::tt() : Formula::ff();
    case Op::Prop:
      return neg ? Formula::make_not(g) : g;
    case Op::Not:
      return self(self, g.left(), !neg);
    case Op::And: {
      Formula l = self(self, g.left(), neg), r = self(self, g.right(), neg);
      return neg ? Formula::make_or(l, r) : Formula::make_and(l, r);
    }
    case Op::Or: {
      Formula l = self(self, g.left(), neg), r = self(self, g.right(), neg);
      return neg ? Formula::make_and(l, r) : Formula::make_or(l, r);
    }
    case Op::Next: {
      Formula a = self(self, g.left(), neg);
      return neg ? Formula::weak_next(a) : Formula::next(a);
    }
    case Op::WeakNext: {
      Formula a = self(self, g.left(), neg);
      return neg ? Formula::next(a) : Formula::weak_next(a);
    }
    case Op::Eventually: {
      Formula a = self(self, g.left(), neg);
      return neg ? Formula::globally(a) : Formula::eventually(a);
    }
    case Op::Globally: {
      Formula a = self(self, g.left(), neg);
      return neg ? Formula::eventually(a) : Formula::globally(a);
    }
    case Op::Until: {
      Formula l = self(self, g.left(), neg), r = self(self, g.right(), neg);
      return neg ? Formula::release(l, r) : Formula::until(l, r);
    }
    case Op::Release: {
      Formula l = self(self, g.left(), neg), r = self(self, g.right(), neg);
      return neg ? Formula::until(l, r) : Formula::release(l, r);
    }
    case Op::WeakUntil: {
      if (!neg) {
        Formula l = self(self, g.left(), false), r = self(self, g.right(), false);
        return Formula::weak_until(l, r);
      }
      /* ¬(a W b) = (¬a R ¬b) & F ¬a */
      Formula nl = self(self, g.left(), true), nr = self(self, g.right(), true);
      return Formula::make_and(Formula::release(nl, nr),
                               Formula::eventually(nl));
    }
    }
    throw std::logic_error("unreachable");
  };
  return rec(rec, f, false);
}

parse_error::parse_error(const std::string &msg, size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)),
      position(pos) {}

} // namespace ltlf
