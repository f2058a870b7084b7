#pragma once

#include "ltlf/formula.hpp"
#include "ltlf/logicmin.hpp"
#include "ltlf/network.hpp"

#include <cstdint>
#include <vector>

namespace ltlf {

/* Discretized behavior of one filter: output bit f over every setting of
 * (x_1..x_n, m_1..m_n, tau) plus end-of-trace bits. Row index packing:
 * x_j = bit j, m_j = bit n+j, tau = bit 2n. The m bits stand for the
 * inputs' next-step values, tau for "a next step exists". */
struct TemporalTruthTable {
  int n = 0;                  /* input variable count */
  std::vector<char> f;        /* 2^(2n+1) output bits */
  std::vector<char> dc;       /* same length, 1 = row is a don't-care */
  bool omega = false;         /* end-of-trace output bit */
  std::vector<char> omega_in; /* end-of-trace input bits, size n */
  bool qualitative = false;   /* metric rows collapsed into don't-cares */

  int rows() const { return 1 << (2 * n + 1); }
};

struct TableDefect {
  bool ok = true;
  uint32_t pattern = 0; /* packed (x, m) bits of the violating pair */
};

/* A table is valid when f never falls from 1 at tau=0 to 0 at tau=1 for
 * the same (x, m) setting; reports the first violating pattern. */
TableDefect validate_table(const TemporalTruthTable &t);

/* Evaluates the filter's hard-mode pre-activation on every bit setting:
 * f = step(sum wp*x + sum wm*m + max(0,wq)*tau + bias). omega bits take
 * the step of the filter's own out_base and of each input's base (the
 * previous layer's out_base, or the network input base for layer 0).
 * Rejects tables wider than 24 bits (2n+1 > 24). */
TemporalTruthTable filter_to_table(const Network &net, int layer, int filter);

/* One literal of a TNF clause: input variable `var`, plain or negated,
 * read at the current step or (metric) at the next step. */
struct TnfLiteral {
  int var = 0;
  bool positive = true;
  bool metric = false;
};
using TnfClause = std::vector<TnfLiteral>;

/* DNF `phi` until/weak-until DNF `psi` over the literal space above. */
struct TnfFormula {
  std::vector<TnfClause> phi, psi;
  bool weak = false;             /* WeakUntil when the table's omega is set */
  std::vector<char> metric_weak; /* per variable: WX when set, else X */
};

/* Clause-per-row conversion: rows with f=1, tau=1 feed phi, rows with
 * f=1, tau=0 feed psi; metric literal polarity follows the m bits;
 * don't-care rows are skipped (qualitative tables keep no metric
 * literals). The table must be valid. */
TnfFormula table_to_formula(const TemporalTruthTable &t);

/* Same shape, but each onset runs through two-level minimization with the
 * don't-care rows as its dc set before clauses are assembled. */
TnfFormula minimize_table(const TemporalTruthTable &t);

/* Renders a TNF against concrete subformulas for its variables. */
Formula tnf_to_formula(const TnfFormula &tnf,
                       const std::vector<Formula> &vars);

struct ExtractionReport {
  Formula formula;             /* final extracted formula */
  uint64_t raw_size = 0;       /* composed size with no minimization at all */
  uint64_t minimized_size = 0; /* composed size after per-table minimization */
  uint64_t final_size = 0;     /* after the rewrite pass */
  bool simplified = false;     /* rewrite pass ran (qualitative results only) */
};

/* Bottom-up extraction of the whole network: per-filter tables, two-level
 * minimization, TNF assembly, substitution of lower-layer formulas for
 * table variables, and a rewrite pass on qualitative composed results
 * (metric results are returned unsimplified). raw_size is computed
 * arithmetically; materializing the unminimized composition can explode. */
ExtractionReport network_to_formula(const Network &net,
                                    const PropositionSet &props);

} // namespace ltlf
