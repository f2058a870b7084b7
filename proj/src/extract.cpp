#include "ltlf/extract.hpp"

#include "ltlf/util.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlf {

namespace {

void check_table(const TemporalTruthTable &t) {
  if (t.n < 1)
    throw std::invalid_argument("table needs at least one variable");
  if (2 * t.n + 1 > 24)
    throw std::invalid_argument("table wider than 24 bits");
  if ((int)t.f.size() != t.rows() || (int)t.dc.size() != t.rows() ||
      (int)t.omega_in.size() != t.n)
    throw std::invalid_argument("table field sizes are inconsistent");
}

} // namespace

TableDefect validate_table(const TemporalTruthTable &t) {
  check_table(t);
  uint32_t half = 1u << (2 * t.n);
  for (uint32_t k = 0; k < half; ++k)
    if (t.f[k] && !t.f[k | half])
      return {false, k};
  return {};
}

TemporalTruthTable filter_to_table(const Network &net, int layer, int filter) {
  if (layer < 0 || layer >= net.num_layers())
    throw std::invalid_argument("layer index out of range");
  const Layer &l = net.layers[layer];
  if (filter < 0 || filter >= (int)l.filters.size())
    throw std::invalid_argument("filter index out of range");
  const FilterWeights &fw = l.filters[filter];
  int n = layer == 0 ? net.num_inputs : (int)net.layers[layer - 1].filters.size();
  if (2 * n + 1 > 24)
    throw std::invalid_argument("table wider than 24 bits");

  TemporalTruthTable t;
  t.n = n;
  t.qualitative = net.qualitative;
  t.f.assign(1 << (2 * n + 1), 0);
  t.dc.assign(t.f.size(), 0);
  t.omega = hard_step(fw.out_base) > 0.5;
  t.omega_in.resize(n);
  for (int j = 0; j < n; ++j) {
    double base = layer == 0 ? net.input_base[j]
                             : net.layers[layer - 1].filters[j].out_base;
    t.omega_in[j] = hard_step(base) > 0.5;
  }

  double rq = std::max(0.0, fw.wq);
  uint32_t half = 1u << (2 * n);
  for (uint32_t k = 0; k < (uint32_t)t.rows(); ++k) {
    double pre = fw.bias + (k & half ? rq : 0.0);
    for (int j = 0; j < n; ++j) {
      if (k & (1u << j))
        pre += fw.wp[j];
      if (!t.qualitative && (k & (1u << (n + j))))
        pre += fw.wm[j];
    }
    t.f[k] = hard_step(pre) > 0.5;
    /* metric bits carry no information in qualitative mode; every row
     * off the m=0 slice becomes a don't-care for the minimizer */
    if (t.qualitative && ((k >> n) & ((1u << n) - 1)) != 0)
      t.dc[k] = 1;
  }
  return t;
}

namespace {

TnfClause clause_of_row(const TemporalTruthTable &t, uint32_t k) {
  TnfClause c;
  for (int j = 0; j < t.n; ++j)
    c.push_back({j, (k & (1u << j)) != 0, false});
  if (!t.qualitative)
    for (int j = 0; j < t.n; ++j)
      c.push_back({j, (k & (1u << (t.n + j))) != 0, true});
  return c;
}

TnfClause clause_of_cube(const Cube &c, int n) {
  TnfClause out;
  for (int j = 0; j < n; ++j)
    if (c.mask & (1u << j))
      out.push_back({j, (c.value & (1u << j)) != 0, false});
  for (int j = 0; j < n; ++j)
    if (c.mask & (1u << (n + j)))
      out.push_back({j, (c.value & (1u << (n + j))) != 0, true});
  return out;
}

} // namespace

TnfFormula table_to_formula(const TemporalTruthTable &t) {
  TableDefect d = validate_table(t);
  if (!d.ok)
    throw std::invalid_argument("invalid temporal truth table");
  TnfFormula out;
  out.weak = t.omega;
  out.metric_weak = t.omega_in;
  uint32_t half = 1u << (2 * t.n);
  for (uint32_t k = 0; k < (uint32_t)t.rows(); ++k) {
    if (!t.f[k] || t.dc[k])
      continue;
    if (k & half)
      out.phi.push_back(clause_of_row(t, k));
    else
      out.psi.push_back(clause_of_row(t, k));
  }
  return out;
}

TnfFormula minimize_table(const TemporalTruthTable &t) {
  TableDefect d = validate_table(t);
  if (!d.ok)
    throw std::invalid_argument("invalid temporal truth table");
  TnfFormula out;
  out.weak = t.omega;
  out.metric_weak = t.omega_in;
  uint32_t half = 1u << (2 * t.n);

  for (int tau = 1; tau >= 0; --tau) {
    std::vector<uint32_t> onset, dcset;
    for (uint32_t p = 0; p < half; ++p) {
      uint32_t k = p | (tau ? half : 0);
      if (t.dc[k])
        dcset.push_back(p);
      else if (t.f[k])
        onset.push_back(p);
    }
    std::vector<Cube> cover = minimize_cover(onset, dcset, 2 * t.n);
    auto &side = tau ? out.phi : out.psi;
    for (const Cube &c : cover) {
      TnfClause cl = clause_of_cube(c, t.n);
      if (t.qualitative)
        for (const TnfLiteral &lit : cl)
          if (lit.metric)
            throw std::logic_error("metric literal in a qualitative cover");
      side.push_back(std::move(cl));
    }
  }
  return out;
}

Formula tnf_to_formula(const TnfFormula &tnf,
                       const std::vector<Formula> &vars) {
  /* A row fires at the final step exactly when its metric bits equal the
   * base bits, so on any side whose value is consulted there (psi always,
   * phi only under weak until) the next-step literal must be weak
   * precisely when its polarity matches the base: WX is true and X false
   * at the end regardless of operand.  The phi side of a strong until is
   * never consulted at the end; there the prefix follows the base alone. */
  auto literal = [&](const TnfLiteral &l, bool end_matters) {
    if (l.var < 0 || l.var >= (int)vars.size())
      throw std::invalid_argument("TNF variable out of range");
    Formula base = vars[l.var];
    if (!l.positive)
      base = Formula::make_not(base);
    if (l.metric) {
      bool wb = l.var < (int)tnf.metric_weak.size() && tnf.metric_weak[l.var];
      bool weak = end_matters ? (l.positive == wb) : wb;
      base = weak ? Formula::weak_next(base) : Formula::next(base);
    }
    return base;
  };
  auto side = [&](const std::vector<TnfClause> &clauses, bool end_matters) {
    Formula dnf;
    for (const TnfClause &cl : clauses) {
      Formula conj;
      for (const TnfLiteral &l : cl) {
        Formula lit = literal(l, end_matters);
        conj = conj.valid() ? Formula::make_and(conj, lit) : lit;
      }
      if (!conj.valid())
        conj = Formula::tt();
      dnf = dnf.valid() ? Formula::make_or(dnf, conj) : conj;
    }
    return dnf.valid() ? dnf : Formula::ff();
  };
  Formula phi = side(tnf.phi, tnf.weak), psi = side(tnf.psi, true);
  return tnf.weak ? Formula::weak_until(phi, psi) : Formula::until(phi, psi);
}

namespace {

/* Size the substituted TNF without building it: literal = variable cost
 * (+1 for the X/WX node; negation is free), k-literal clause adds k-1
 * conjunction nodes, c-clause side adds c-1 disjunctions, plus the
 * connective. Empty sides are constants of size 0. */
uint64_t tnf_cost(const TnfFormula &tnf, const std::vector<uint64_t> &vars) {
  auto side = [&](const std::vector<TnfClause> &clauses) {
    uint64_t total = 0;
    for (const TnfClause &cl : clauses) {
      uint64_t c = cl.empty() ? 0 : (uint64_t)cl.size() - 1;
      for (const TnfLiteral &l : cl)
        c += vars.at(l.var) + (l.metric ? 1 : 0);
      total += c;
    }
    if (!clauses.empty())
      total += clauses.size() - 1;
    return total;
  };
  return side(tnf.phi) + side(tnf.psi) + 1;
}

} // namespace

ExtractionReport network_to_formula(const Network &net,
                                    const PropositionSet &props) {
  if (props.size() != net.num_inputs)
    throw std::invalid_argument("proposition set does not match network");

  std::vector<Formula> cur;
  std::vector<uint64_t> cur_cost;
  for (int j = 0; j < props.size(); ++j) {
    cur.push_back(Formula::prop(j, props.name(j)));
    cur_cost.push_back(1);
  }

  for (int l = 0; l < net.num_layers(); ++l) {
    std::vector<Formula> next;
    std::vector<uint64_t> next_cost;
    for (size_t i = 0; i < net.layers[l].filters.size(); ++i) {
      TemporalTruthTable t = filter_to_table(net, l, (int)i);
      next_cost.push_back(tnf_cost(table_to_formula(t), cur_cost));
      next.push_back(tnf_to_formula(minimize_table(t), cur));
    }
    cur = std::move(next);
    cur_cost = std::move(next_cost);
  }

  ExtractionReport report;
  report.raw_size = cur_cost[0];
  Formula composed = cur[0];
  report.minimized_size = formula_size(composed);
  if (is_qualitative(composed)) {
    report.formula = simplify(composed);
    report.simplified = true;
  } else {
    report.formula = composed;
  }
  report.final_size = formula_size(report.formula);
  return report;
}

} // namespace ltlf
