#pragma once

/* Independent reference implementations used to cross-check the library.
 * Everything here is written directly from the operator definitions with no
 * shared code, so a bug in the library cannot hide in its own oracle. */

#include "ltlf/formula.hpp"
#include "ltlf/trace.hpp"

#include <vector>

namespace oracle {

/* Plain recursive finite-trace semantics. */
inline bool eval(const ltlf::Formula &f, const ltlf::Trace &tr, int t) {
  using ltlf::Op;
  const int len = tr.length();
  switch (f.op()) {
  case Op::True:
    return true;
  case Op::False:
    return false;
  case Op::Prop:
    return tr.value(t, f.prop_index());
  case Op::Not:
    return !eval(f.left(), tr, t);
  case Op::And:
    return eval(f.left(), tr, t) && eval(f.right(), tr, t);
  case Op::Or:
    return eval(f.left(), tr, t) || eval(f.right(), tr, t);
  case Op::Next:
    return t + 1 < len && eval(f.left(), tr, t + 1);
  case Op::WeakNext:
    return t + 1 >= len || eval(f.left(), tr, t + 1);
  case Op::Until:
    for (int k = t; k < len; ++k) {
      if (eval(f.right(), tr, k))
        return true;
      if (!eval(f.left(), tr, k))
        return false;
    }
    return false;
  case Op::WeakUntil:
    for (int k = t; k < len; ++k) {
      if (eval(f.right(), tr, k))
        return true;
      if (!eval(f.left(), tr, k))
        return false;
    }
    return true; /* left held to the end */
  case Op::Release:
    /* right holds up to and including the step where left first holds;
     * no obligation that left ever holds on a finite trace */
    for (int k = t; k < len; ++k) {
      if (!eval(f.right(), tr, k))
        return false;
      if (eval(f.left(), tr, k))
        return true;
    }
    return true;
  case Op::Eventually:
    for (int k = t; k < len; ++k)
      if (eval(f.left(), tr, k))
        return true;
    return false;
  case Op::Globally:
    for (int k = t; k < len; ++k)
      if (!eval(f.left(), tr, k))
        return false;
    return true;
  }
  return false;
}

/* Trace whose steps are the given assignment words, lowest bit = prop 0. */
inline ltlf::Trace trace_of(int num_props, std::vector<uint32_t> steps) {
  ltlf::Trace t;
  t.num_props = num_props;
  t.steps = std::move(steps);
  return t;
}

/* Every trace of exactly the given length. */
inline std::vector<ltlf::Trace> traces_of_length(int num_props, int length) {
  const uint32_t symbols = 1u << num_props;
  std::vector<ltlf::Trace> out;
  std::vector<uint32_t> steps(length, 0);
  while (true) {
    out.push_back(trace_of(num_props, steps));
    int i = 0;
    for (; i < length; ++i) {
      if (++steps[i] < symbols)
        break;
      steps[i] = 0;
    }
    if (i == length)
      return out;
  }
}

/* Every nonempty trace of length <= max_length. */
inline std::vector<ltlf::Trace> traces_up_to(int num_props, int max_length) {
  std::vector<ltlf::Trace> out;
  for (int len = 1; len <= max_length; ++len)
    for (auto &t : traces_of_length(num_props, len))
      out.push_back(std::move(t));
  return out;
}

} // namespace oracle
