#include "ltlf/formula.hpp"

#include <algorithm>
#include <unordered_map>

namespace ltlf {

const std::vector<RewriteRule> &rewrite_rules() {
  static const std::vector<RewriteRule> rules = {
      {"not_true", "!true", "false"},
      {"not_false", "!false", "true"},
      {"not_not", "!!p", "p"},
      {"and_true", "p & true", "p"},
      {"and_false", "p & false", "false"},
      {"and_idem", "p & p", "p"},
      {"and_compl", "p & !p", "false"},
      {"and_absorb", "p & (p | q)", "p"},
      {"and_g_subsume", "p & G p", "G p"},
      {"and_f_subsume", "p & F p", "p"},
      {"or_true", "p | true", "true"},
      {"or_false", "p | false", "p"},
      {"or_idem", "p | p", "p"},
      {"or_compl", "p | !p", "true"},
      {"or_absorb", "p | (p & q)", "p"},
      {"or_g_subsume", "p | G p", "p"},
      {"or_f_subsume", "p | F p", "F p"},
      {"or_until_subsume", "q | (p U q)", "p U q"},
      {"or_wuntil_subsume", "q | (p W q)", "p W q"},
      {"weaken_until", "(p U q) | G p", "p W q"},
      {"ff_f", "F F p", "F p"},
      {"gg_g", "G G p", "G p"},
      {"f_true", "F true", "true"},
      {"f_false", "F false", "false"},
      {"g_true", "G true", "true"},
      {"g_false", "G false", "false"},
      {"until_true_left", "true U p", "F p"},
      {"until_false_left", "false U p", "p"},
      {"until_true_right", "p U true", "true"},
      {"until_false_right", "p U false", "false"},
      {"until_idem", "p U p", "p"},
      {"until_or_subsume", "(p | q) U q", "p U q"},
      {"wuntil_true_left", "true W p", "true"},
      {"wuntil_false_left", "false W p", "p"},
      {"wuntil_true_right", "p W true", "true"},
      {"wuntil_false_right", "p W false", "G p"},
      {"wuntil_idem", "p W p", "p"},
      {"wuntil_or_subsume", "(p | q) W q", "p W q"},
      {"release_true_left", "true R p", "p"},
      {"release_false_left", "false R p", "G p"},
      {"release_true_right", "p R true", "true"},
      {"release_false_right", "p R false", "false"},
      {"release_idem", "p R p", "p"},
  };
  return rules;
}

namespace {

void flatten(Op op, const Formula &f, std::vector<Formula> &out) {
  if (f.op() == op) {
    flatten(op, f.left(), out);
    flatten(op, f.right(), out);
  } else {
    out.push_back(f);
  }
}

bool contains(const std::vector<Formula> &list, const Formula &x) {
  for (const auto &y : list)
    if (compare(y, x) == 0)
      return true;
  return false;
}

struct Simplifier {
  std::unordered_map<const FormulaNode *, Formula> memo;

  Formula simp(const Formula &f) {
    auto it = memo.find(f.raw());
    if (it != memo.end())
      return it->second;
    Formula r;
    if (is_unary(f.op()))
      r = dispatch_root(rebuild_unary(f.op(), simp(f.left())));
    else if (is_binary(f.op()))
      r = dispatch_root(
          rebuild_binary(f.op(), simp(f.left()), simp(f.right())));
    else
      r = f;
    memo.emplace(f.raw(), r);
    return r;
  }

  static Formula rebuild_unary(Op op, Formula a) {
    switch (op) {
    case Op::Not:
      return Formula::make_not(std::move(a));
    case Op::Next:
      return Formula::next(std::move(a));
    case Op::WeakNext:
      return Formula::weak_next(std::move(a));
    case Op::Eventually:
      return Formula::eventually(std::move(a));
    case Op::Globally:
      return Formula::globally(std::move(a));
    default:
      throw std::logic_error("not unary");
    }
  }

  static Formula rebuild_binary(Op op, Formula l, Formula r) {
    switch (op) {
    case Op::And:
      return Formula::make_and(std::move(l), std::move(r));
    case Op::Or:
      return Formula::make_or(std::move(l), std::move(r));
    case Op::Until:
      return Formula::until(std::move(l), std::move(r));
    case Op::WeakUntil:
      return Formula::weak_until(std::move(l), std::move(r));
    case Op::Release:
      return Formula::release(std::move(l), std::move(r));
    default:
      throw std::logic_error("not binary");
    }
  }

  /* Root-level rules only; children are already simplified. */
  Formula dispatch_root(Formula f) {
    for (int guard = 0; guard < 1000; ++guard) {
      Formula g = apply_root(f);
      if (g.raw() == f.raw() || compare(g, f) == 0)
        return f;
      f = g;
    }
    throw std::logic_error("rewrite loop did not stabilize");
  }

  Formula apply_root(const Formula &f) {
    switch (f.op()) {
    case Op::And:
    case Op::Or:
      return commutative(f.op(), f);
    case Op::Not: {
      Formula a = f.left();
      if (a.op() == Op::True)
        return Formula::ff();
      if (a.op() == Op::False)
        return Formula::tt();
      if (a.op() == Op::Not)
        return a.left();
      return f;
    }
    case Op::Eventually: {
      Formula a = f.left();
      if (a.op() == Op::True || a.op() == Op::False)
        return a;
      if (a.op() == Op::Eventually)
        return a;
      return f;
    }
    case Op::Globally: {
      Formula a = f.left();
      if (a.op() == Op::True || a.op() == Op::False)
        return a;
      if (a.op() == Op::Globally)
        return a;
      return f;
    }
    case Op::Until: {
      Formula l = f.left(), r = f.right();
      if (r.op() == Op::True)
        return Formula::tt();
      if (r.op() == Op::False)
        return Formula::ff();
      if (l.op() == Op::True)
        return Formula::eventually(r);
      if (l.op() == Op::False)
        return r;
      if (compare(l, r) == 0)
        return l;
      if (Formula s = strip_member(l, r); s.valid())
        return Formula::until(s, r);
      return f;
    }
    case Op::WeakUntil: {
      Formula l = f.left(), r = f.right();
      if (r.op() == Op::True || l.op() == Op::True)
        return Formula::tt();
      if (r.op() == Op::False)
        return Formula::globally(l);
      if (l.op() == Op::False)
        return r;
      if (compare(l, r) == 0)
        return l;
      if (Formula s = strip_member(l, r); s.valid())
        return Formula::weak_until(s, r);
      return f;
    }
    case Op::Release: {
      Formula l = f.left(), r = f.right();
      if (r.op() == Op::True)
        return Formula::tt();
      if (r.op() == Op::False)
        return Formula::ff();
      if (l.op() == Op::True)
        return r;
      if (l.op() == Op::False)
        return Formula::globally(r);
      if (compare(l, r) == 0)
        return l;
      return f;
    }
    default:
      return f;
    }
  }

  /* (x1|...|r|...|xk) with member r removed, or invalid when r is absent. */
  static Formula strip_member(const Formula &orlist, const Formula &r) {
    if (orlist.op() != Op::Or)
      return {};
    std::vector<Formula> mem;
    flatten(Op::Or, orlist, mem);
    std::vector<Formula> kept;
    bool dropped = false;
    for (auto &m : mem) {
      if (!dropped && compare(m, r) == 0) {
        dropped = true;
        continue;
      }
      kept.push_back(m);
    }
    if (!dropped)
      return {};
    return fold(Op::Or, kept);
  }

  static Formula fold(Op op, std::vector<Formula> &list) {
    if (list.empty())
      return op == Op::And ? Formula::tt() : Formula::ff();
    Formula f = list[0];
    for (size_t i = 1; i < list.size(); ++i)
      f = rebuild_binary(op, f, list[i]);
    return f;
  }

  Formula commutative(Op op, const Formula &f) {
    const bool conj = op == Op::And;
    std::vector<Formula> list;
    flatten(op, f, list);

    /* Constant folding and duplicate removal over the flattened list. */
    std::vector<Formula> ops;
    for (auto &x : list) {
      if (x.op() == (conj ? Op::True : Op::False))
        continue;
      if (x.op() == (conj ? Op::False : Op::True))
        return conj ? Formula::ff() : Formula::tt();
      if (!contains(ops, x))
        ops.push_back(x);
    }

    for (auto &x : ops)
      if (x.op() == Op::Not && contains(ops, x.left()))
        return conj ? Formula::ff() : Formula::tt();

    /* Pairwise list rules, restarting after each hit. */
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < ops.size() && !changed; ++i) {
        const Formula &x = ops[i];
        if (x.op() == (conj ? Op::Or : Op::And)) {
          /* absorption: drop x when it contains another operand */
          std::vector<Formula> mem;
          flatten(conj ? Op::Or : Op::And, x, mem);
          for (size_t j = 0; j < ops.size() && !changed; ++j)
            if (j != i && contains(mem, ops[j])) {
              ops.erase(ops.begin() + i);
              changed = true;
            }
        } else if (x.op() == Op::Globally) {
          /* p & G p -> G p ; p | G p -> p */
          for (size_t j = 0; j < ops.size() && !changed; ++j)
            if (j != i && compare(ops[j], x.left()) == 0) {
              ops.erase(ops.begin() + (conj ? j : i));
              changed = true;
            }
        } else if (x.op() == Op::Eventually) {
          /* p & F p -> p ; p | F p -> F p */
          for (size_t j = 0; j < ops.size() && !changed; ++j)
            if (j != i && compare(ops[j], x.left()) == 0) {
              ops.erase(ops.begin() + (conj ? i : j));
              changed = true;
            }
        } else if (!conj &&
                   (x.op() == Op::Until || x.op() == Op::WeakUntil)) {
          /* q | (p U q) -> p U q ; q | (p W q) -> p W q */
          for (size_t j = 0; j < ops.size() && !changed; ++j)
            if (j != i && compare(ops[j], x.right()) == 0) {
              ops.erase(ops.begin() + j);
              changed = true;
            }
        }
      }
      /* (p U q) | G p -> p W q */
      if (!conj && !changed) {
        for (size_t i = 0; i < ops.size() && !changed; ++i) {
          if (ops[i].op() != Op::Until)
            continue;
          for (size_t j = 0; j < ops.size() && !changed; ++j) {
            if (ops[j].op() != Op::Globally)
              continue;
            if (compare(ops[i].left(), ops[j].left()) == 0) {
              Formula w = dispatch_root(
                  Formula::weak_until(ops[i].left(), ops[i].right()));
              ops.erase(ops.begin() + std::max(i, j));
              ops.erase(ops.begin() + std::min(i, j));
              ops.push_back(w);
              changed = true;
            }
          }
        }
      }
    }

    std::sort(ops.begin(), ops.end(),
              [](const Formula &a, const Formula &b) { return compare(a, b) < 0; });
    return fold(op, ops);
  }
};

} // namespace

Formula simplify(const Formula &f) {
  if (!is_qualitative(f))
    throw std::invalid_argument("simplify expects a qualitative formula");
  Simplifier s;
  return s.simp(f);
}

} // namespace ltlf
