#include "ltlf/formula.hpp"

#include <random>

namespace ltlf {

namespace {

/* Feasibility DP over the NNF sampling grammar:
 *   any[s]: some formula of exactly size s exists
 *   nt[s]:  some purely boolean formula (literals, &, |) of size s exists
 * Requirement "req" = contains at least one temporal operator. */
struct SizeTables {
  std::vector<char> any, nt;

  explicit SizeTables(int max_size) {
    any.assign(max_size + 1, 0);
    nt.assign(max_size + 1, 0);
    if (max_size >= 1) {
      any[1] = 1;
      nt[1] = 1;
    }
    for (int s = 2; s <= max_size; ++s) {
      if (any[s - 1])
        any[s] = 1;
      for (int l = 1; l + 1 < s + 1 && !any[s]; ++l) {
        int r = s - 1 - l;
        if (r >= 1 && any[l] && any[r])
          any[s] = 1;
      }
      for (int l = 1; l <= s - 2; ++l) {
        int r = s - 1 - l;
        if (r >= 1 && nt[l] && nt[r]) {
          nt[s] = 1;
          break;
        }
      }
    }
  }

  bool req(int s) const { return s >= 2 && any[s]; }
};

enum class Mode { Any, NoTemporal, NeedTemporal };

struct Sampler {
  const PropositionSet &props;
  bool qualitative;
  SizeTables tables;
  std::mt19937_64 rng;

  Sampler(const PropositionSet &p, bool qual, int max_size, uint64_t seed)
      : props(p), qualitative(qual), tables(max_size), rng(seed) {}

  int pick(int n) { return (int)(rng() % (uint64_t)n); }

  bool feasible(Mode m, int s) const {
    if (s < 1)
      return false;
    switch (m) {
    case Mode::Any:
      return tables.any[s];
    case Mode::NoTemporal:
      return tables.nt[s];
    case Mode::NeedTemporal:
      return tables.req(s);
    }
    return false;
  }

  Formula literal() {
    int k = pick(2 * props.size());
    Formula p = Formula::prop(k / 2, props.name(k / 2));
    return (k % 2) ? Formula::make_not(p) : p;
  }

  /* Grammar productions, uniform over the feasible ones for (mode, size);
   * binary size splits uniform over the feasible splits. */
  Formula sample(Mode m, int s) {
    if (s == 1)
      return literal();
    std::vector<Op> prods;
    auto child_ok = [&](Op op, int l, int r) {
      if (op == Op::Until || op == Op::WeakUntil || op == Op::Release)
        return (bool)(tables.any[l] && tables.any[r]);
      /* logical */
      if (m == Mode::NoTemporal)
        return (bool)(tables.nt[l] && tables.nt[r]);
      if (m == Mode::NeedTemporal)
        return (tables.req(l) && tables.any[r]) ||
               (tables.nt[l] && tables.req(r));
      return (bool)(tables.any[l] && tables.any[r]);
    };
    auto binary_feasible = [&](Op op) {
      for (int l = 1; l <= s - 2; ++l)
        if (child_ok(op, l, s - 1 - l))
          return true;
      return false;
    };

    if (m != Mode::NoTemporal) {
      std::vector<Op> unary = {Op::Eventually, Op::Globally};
      if (!qualitative) {
        unary.push_back(Op::Next);
        unary.push_back(Op::WeakNext);
      }
      if (tables.any[s - 1])
        for (Op op : unary)
          prods.push_back(op);
      for (Op op : {Op::Until, Op::WeakUntil, Op::Release})
        if (binary_feasible(op))
          prods.push_back(op);
    }
    for (Op op : {Op::And, Op::Or})
      if (binary_feasible(op))
        prods.push_back(op);

    if (prods.empty())
      throw std::invalid_argument("no formula of size " + std::to_string(s));
    Op op = prods[pick((int)prods.size())];

    if (is_unary(op))
      return make_unary(op, sample(Mode::Any, s - 1));

    std::vector<int> splits;
    for (int l = 1; l <= s - 2; ++l)
      if (child_ok(op, l, s - 1 - l))
        splits.push_back(l);
    int l = splits[pick((int)splits.size())];
    int r = s - 1 - l;

    if (op == Op::Until || op == Op::WeakUntil || op == Op::Release) {
      Formula a = sample(Mode::Any, l);
      Formula b = sample(Mode::Any, r);
      return op == Op::Until       ? Formula::until(a, b)
             : op == Op::WeakUntil ? Formula::weak_until(a, b)
                                   : Formula::release(a, b);
    }

    Mode ml = Mode::Any, mr = Mode::Any;
    if (m == Mode::NoTemporal) {
      ml = mr = Mode::NoTemporal;
    } else if (m == Mode::NeedTemporal) {
      /* left carries a temporal operator, or left is purely boolean and the
       * right one carries it; uniform over the feasible cases */
      bool a = tables.req(l) && tables.any[r];
      bool b = tables.nt[l] && tables.req(r);
      bool use_a = a && (!b || pick(2) == 0);
      if (use_a) {
        ml = Mode::NeedTemporal;
        mr = Mode::Any;
      } else {
        ml = Mode::NoTemporal;
        mr = Mode::NeedTemporal;
      }
    }
    Formula a = sample(ml, l);
    Formula b = sample(mr, r);
    return op == Op::And ? Formula::make_and(a, b) : Formula::make_or(a, b);
  }

  static Formula make_unary(Op op, Formula a) {
    switch (op) {
    case Op::Next:
      return Formula::next(std::move(a));
    case Op::WeakNext:
      return Formula::weak_next(std::move(a));
    case Op::Eventually:
      return Formula::eventually(std::move(a));
    case Op::Globally:
      return Formula::globally(std::move(a));
    default:
      throw std::logic_error("not unary temporal");
    }
  }
};

} // namespace

Formula random_formula(int size, const PropositionSet &props,
                       bool qualitative_only, uint64_t seed) {
  if (props.size() < 1)
    throw std::invalid_argument("empty proposition set");
  if (size < 2)
    throw std::invalid_argument(
        "size must be >= 2 to fit a temporal operator");
  Sampler s(props, qualitative_only, size, seed);
  if (!s.feasible(Mode::NeedTemporal, size))
    throw std::invalid_argument("no formula of size " + std::to_string(size));
  return s.sample(Mode::NeedTemporal, size);
}

} // namespace ltlf
