#include "ltlf/baseline.hpp"

#include "ltlf/util.hpp"

#include <map>
#include <stdexcept>

namespace ltlf {

namespace {

bool has_temporal(const Formula &f) {
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Prop:
    return false;
  case Op::Not:
    return has_temporal(f.left());
  case Op::And:
  case Op::Or:
    return has_temporal(f.left()) || has_temporal(f.right());
  default:
    return true;
  }
}

/* all NNF formulas of each exact size, literals up through compounds;
 * commutative ops take each unordered argument pair once */
std::vector<std::vector<Formula>> size_tables(int max_size,
                                              const PropositionSet &props,
                                              bool qualitative) {
  std::vector<std::vector<Formula>> all(max_size + 1);
  if (max_size < 1)
    return all;
  for (int p = 0; p < props.size(); ++p) {
    Formula x = Formula::prop(p, props.name(p));
    all[1].push_back(x);
    all[1].push_back(Formula::make_not(x));
  }
  for (int s = 2; s <= max_size; ++s) {
    for (const Formula &a : all[s - 1]) {
      all[s].push_back(Formula::eventually(a));
      all[s].push_back(Formula::globally(a));
      if (!qualitative) {
        all[s].push_back(Formula::next(a));
        all[s].push_back(Formula::weak_next(a));
      }
    }
    for (int s1 = 1; 2 * s1 <= s - 1; ++s1) {
      int s2 = s - 1 - s1;
      const auto &lhs = all[s1];
      const auto &rhs = all[s2];
      for (size_t i = 0; i < lhs.size(); ++i) {
        size_t j0 = s1 == s2 ? i : 0;
        for (size_t j = j0; j < rhs.size(); ++j) {
          all[s].push_back(Formula::make_and(lhs[i], rhs[j]));
          all[s].push_back(Formula::make_or(lhs[i], rhs[j]));
        }
      }
    }
    for (int s1 = 1; s1 <= s - 2; ++s1) {
      int s2 = s - 1 - s1;
      for (const Formula &a : all[s1])
        for (const Formula &b : all[s2]) {
          all[s].push_back(Formula::until(a, b));
          all[s].push_back(Formula::weak_until(a, b));
          all[s].push_back(Formula::release(a, b));
        }
    }
  }
  return all;
}

std::vector<Formula> filter_temporal(std::vector<Formula> in) {
  std::vector<Formula> out;
  out.reserve(in.size());
  for (auto &f : in)
    if (has_temporal(f))
      out.push_back(std::move(f));
  return out;
}

bool consistent(const Formula &f, const Dataset &d) {
  for (const auto &lt : d.traces)
    if (satisfies(f, lt.trace) != lt.label)
      return false;
  return true;
}

double accuracy_of(const Formula &f, const Dataset &d) {
  int ok = 0;
  for (const auto &lt : d.traces)
    if (satisfies(f, lt.trace) == lt.label)
      ++ok;
  return double(ok) / d.size();
}

} // namespace

std::vector<Formula> enumerate_formulas(int size, const PropositionSet &props,
                                        bool qualitative) {
  if (size < 1)
    throw std::invalid_argument("formula size must be positive");
  if (props.size() == 0)
    throw std::invalid_argument("empty proposition set");
  auto all = size_tables(size, props, qualitative);
  if (size == 1)
    return all[1];
  return filter_temporal(std::move(all[size]));
}

ExactResult exact_learner(const Dataset &d, const SearchBudget &budget) {
  if (d.size() == 0)
    throw std::invalid_argument("empty dataset");
  if (budget.props.size() == 0)
    throw std::invalid_argument("search budget needs propositions");

  /* a trace carrying both labels rules out any consistent formula */
  std::map<std::vector<uint32_t>, bool> seen;
  for (const auto &lt : d.traces) {
    auto [it, fresh] = seen.emplace(lt.trace.steps, lt.label);
    if (!fresh && it->second != lt.label)
      return {SearchVerdict::Inconsistent, Formula(), 0};
  }

  Stopwatch clock;
  ExactResult r;
  auto all = size_tables(std::max(budget.max_size, 1), budget.props,
                         budget.qualitative);
  for (int s = 2; s <= budget.max_size; ++s) {
    for (const Formula &f : all[s]) {
      if (!has_temporal(f))
        continue;
      if (budget.budget_seconds > 0 &&
          clock.seconds() >= budget.budget_seconds)
        return r;
      if (consistent(f, d))
        return {SearchVerdict::Found, f, s};
    }
    r.size_reached = s;
  }
  return r;
}

MaxAccuracyResult max_accuracy_learner(const Dataset &d,
                                       const SearchBudget &budget) {
  if (d.size() == 0)
    throw std::invalid_argument("empty dataset");
  if (budget.props.size() == 0)
    throw std::invalid_argument("search budget needs propositions");

  Stopwatch clock;
  MaxAccuracyResult best;
  best.formula = Formula::tt();
  best.accuracy = accuracy_of(best.formula, d);

  auto all = size_tables(std::max(budget.max_size, 1), budget.props,
                         budget.qualitative);
  for (int s = 1; s <= budget.max_size; ++s) {
    for (const Formula &f : all[s]) {
      if (s >= 2 && !has_temporal(f))
        continue;
      if (budget.budget_seconds > 0 &&
          clock.seconds() >= budget.budget_seconds) {
        best.budget_hit = true;
        return best;
      }
      double acc = accuracy_of(f, d);
      if (acc > best.accuracy) {
        best.accuracy = acc;
        best.formula = f;
      }
    }
  }
  return best;
}

} // namespace ltlf
