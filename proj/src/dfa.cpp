#include "ltlf/dfa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ltlf {

bool Dfa::accepts(const Trace &t) const {
  if (t.length() < 1)
    throw std::invalid_argument("automaton acceptance needs a nonempty trace");
  if (t.num_props != num_props)
    throw std::invalid_argument("trace width does not match alphabet");
  uint32_t mask = (uint32_t)num_symbols() - 1;
  int s = initial;
  for (int i = 0; i < t.length(); ++i)
    s = transitions[s][t.steps[i] & mask];
  return accepting[s] != 0;
}

namespace {

struct FormulaLess {
  bool operator()(const Formula &a, const Formula &b) const {
    return compare(a, b) < 0;
  }
};

/* boolean function over k atom bits, one bit per assignment, tail zeroed */
using Bits = std::vector<uint64_t>;

constexpr int kMaxProps = 8;
constexpr int kMaxAtomBits = 16;
constexpr int kMaxStates = 4096;

struct Progression {
  int num_props;
  std::vector<Formula> temporal; /* residual atoms, first-visit order */
  std::map<Formula, int, FormulaLess> temporal_index;
  int k = 0;         /* props + temporal atoms + nonempty marker */
  int alive_bit = 0; /* index of the rest-is-nonempty marker bit */
  uint32_t npoints = 0;
  size_t words = 0;
  uint64_t tail = 0; /* mask of meaningful bits in the last word */
  std::vector<Bits> atom_tables;
  std::unordered_map<const FormulaNode *, Bits> table_memo;

  explicit Progression(const Formula &f, const PropositionSet &props)
      : num_props(props.size()) {
    if (num_props > kMaxProps)
      throw std::invalid_argument("proposition count exceeds automaton limit");
    collect(f);
    k = num_props + (int)temporal.size() + 1;
    if (k > kMaxAtomBits)
      throw std::invalid_argument(
          "formula has too many residual subterms for automaton construction");
    alive_bit = k - 1;
    npoints = uint32_t(1) << k;
    words = size_t((npoints + 63) / 64);
    tail = (npoints % 64) ? ((uint64_t(1) << (npoints % 64)) - 1) : ~uint64_t(0);
    atom_tables.assign(k, Bits(words, 0));
    for (uint32_t x = 0; x < npoints; ++x)
      for (int i = 0; i < k; ++i)
        if ((x >> i) & 1)
          atom_tables[i][x / 64] |= uint64_t(1) << (x % 64);
  }

  void collect(const Formula &f) {
    switch (f.op()) {
    case Op::True:
    case Op::False:
      return;
    case Op::Prop:
      if (f.prop_index() < 0 || f.prop_index() >= num_props)
        throw std::invalid_argument("proposition index outside the set");
      return;
    case Op::Not:
      collect(f.left());
      return;
    case Op::And:
    case Op::Or:
      collect(f.left());
      collect(f.right());
      return;
    default:
      break;
    }
    /* temporal root: becomes an atom, children may add more */
    if (temporal_index.emplace(f, (int)temporal.size()).second)
      temporal.push_back(f);
    collect(f.left());
    if (is_binary(f.op()))
      collect(f.right());
  }

  int bit_of(const Formula &f) const {
    return num_props + temporal_index.at(f);
  }

  Bits constant(bool v) const {
    Bits b(words, v ? ~uint64_t(0) : 0);
    if (v)
      b.back() = tail;
    return b;
  }
  static Bits bits_and(const Bits &a, const Bits &b) {
    Bits r(a);
    for (size_t i = 0; i < r.size(); ++i)
      r[i] &= b[i];
    return r;
  }
  static Bits bits_or(const Bits &a, const Bits &b) {
    Bits r(a);
    for (size_t i = 0; i < r.size(); ++i)
      r[i] |= b[i];
    return r;
  }
  Bits bits_not(const Bits &a) const {
    Bits r(a);
    for (auto &w : r)
      w = ~w;
    r.back() &= tail;
    return r;
  }
  static bool bit_at(const Bits &b, uint32_t x) {
    return (b[x / 64] >> (x % 64)) & 1;
  }

  /* truth table of f as a boolean combination over the atoms */
  Bits table_of(const Formula &f) {
    auto it = table_memo.find(f.raw());
    if (it != table_memo.end())
      return it->second;
    Bits r;
    switch (f.op()) {
    case Op::True:
      r = constant(true);
      break;
    case Op::False:
      r = constant(false);
      break;
    case Op::Prop:
      r = atom_tables[f.prop_index()];
      break;
    case Op::Not:
      r = bits_not(table_of(f.left()));
      break;
    case Op::And:
      r = bits_and(table_of(f.left()), table_of(f.right()));
      break;
    case Op::Or:
      r = bits_or(table_of(f.left()), table_of(f.right()));
      break;
    default:
      r = atom_tables[bit_of(f)];
      break;
    }
    table_memo.emplace(f.raw(), r);
    return r;
  }

  /* truth of f on sym . rest, as a function of rest's atom values */
  Bits progress(const Formula &f, uint32_t sym,
                std::unordered_map<const FormulaNode *, Bits> &memo) {
    auto it = memo.find(f.raw());
    if (it != memo.end())
      return it->second;
    Bits r;
    switch (f.op()) {
    case Op::True:
      r = constant(true);
      break;
    case Op::False:
      r = constant(false);
      break;
    case Op::Prop:
      r = constant((sym >> f.prop_index()) & 1);
      break;
    case Op::Not:
      r = bits_not(progress(f.left(), sym, memo));
      break;
    case Op::And:
      r = bits_and(progress(f.left(), sym, memo),
                   progress(f.right(), sym, memo));
      break;
    case Op::Or:
      r = bits_or(progress(f.left(), sym, memo),
                  progress(f.right(), sym, memo));
      break;
    case Op::Next:
      r = bits_and(table_of(f.left()), atom_tables[alive_bit]);
      break;
    case Op::WeakNext:
      r = bits_or(table_of(f.left()), bits_not(atom_tables[alive_bit]));
      break;
    case Op::Eventually:
      r = bits_or(progress(f.left(), sym, memo), atom_tables[bit_of(f)]);
      break;
    case Op::Globally:
      r = bits_and(progress(f.left(), sym, memo), atom_tables[bit_of(f)]);
      break;
    case Op::Until:
    case Op::WeakUntil:
      r = bits_or(progress(f.right(), sym, memo),
                  bits_and(progress(f.left(), sym, memo),
                           atom_tables[bit_of(f)]));
      break;
    case Op::Release:
      r = bits_and(progress(f.right(), sym, memo),
                   bits_or(progress(f.left(), sym, memo),
                           atom_tables[bit_of(f)]));
      break;
    }
    memo.emplace(f.raw(), r);
    return r;
  }

  /* per symbol: packed progressed atom values for every atom assignment */
  std::vector<uint32_t> composition(uint32_t sym) {
    std::unordered_map<const FormulaNode *, Bits> memo;
    uint32_t base = (sym & ((uint32_t(1) << num_props) - 1)) |
                    (uint32_t(1) << alive_bit); /* nonempty after a symbol */
    std::vector<uint32_t> comp(npoints, base);
    for (size_t i = 0; i < temporal.size(); ++i) {
      Bits t = progress(temporal[i], sym, memo);
      uint32_t bit = uint32_t(1) << (num_props + i);
      for (uint32_t x = 0; x < npoints; ++x)
        if (bit_at(t, x))
          comp[x] |= bit;
    }
    return comp;
  }

  /* atom values on the empty continuation: weak operators hold, strong fail */
  uint32_t empty_point() const {
    uint32_t x = 0;
    for (size_t i = 0; i < temporal.size(); ++i) {
      Op op = temporal[i].op();
      bool weak = op == Op::WeakNext || op == Op::Globally ||
                  op == Op::WeakUntil || op == Op::Release;
      if (weak)
        x |= uint32_t(1) << (num_props + i);
    }
    return x;
  }
};

} // namespace

Dfa to_dfa(const Formula &f, const PropositionSet &props) {
  if (!f.valid())
    throw std::invalid_argument("invalid formula");
  Formula g = to_nnf(f);
  Progression prog(g, props);

  int nsym = 1 << props.size();
  std::vector<std::vector<uint32_t>> comp(nsym);
  for (int a = 0; a < nsym; ++a)
    comp[a] = prog.composition((uint32_t)a);
  uint32_t eps = prog.empty_point();

  std::map<Bits, int> ids;
  std::vector<Bits> state_fn;
  std::vector<char> accepting;
  std::vector<std::vector<int>> transitions;

  auto intern = [&](const Bits &b) {
    auto [it, fresh] = ids.emplace(b, (int)state_fn.size());
    if (fresh) {
      if ((int)state_fn.size() >= kMaxStates)
        throw std::invalid_argument("automaton construction exceeds state limit");
      state_fn.push_back(b);
      accepting.push_back(Progression::bit_at(b, eps) ? 1 : 0);
      transitions.emplace_back();
    }
    return it->second;
  };

  int start = intern(prog.table_of(g));
  std::queue<int> work;
  work.push(start);
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    if (!transitions[s].empty())
      continue;
    Bits fn = state_fn[s]; /* copy: state_fn may reallocate below */
    std::vector<int> row(nsym);
    for (int a = 0; a < nsym; ++a) {
      Bits nt(prog.words, 0);
      for (uint32_t x = 0; x < prog.npoints; ++x)
        if (Progression::bit_at(fn, comp[a][x]))
          nt[x / 64] |= uint64_t(1) << (x % 64);
      int before = (int)state_fn.size();
      int target = intern(nt);
      row[a] = target;
      if (target == before)
        work.push(target);
    }
    transitions[s] = std::move(row);
  }

  Dfa d;
  d.num_props = props.size();
  d.initial = start;
  d.accepting = std::move(accepting);
  d.transitions = std::move(transitions);
  return minimize(d);
}

Dfa minimize(const Dfa &d) {
  int S = d.num_states();
  if (S == 0)
    return d;
  int A = d.num_symbols();

  /* reachable states, BFS order */
  std::vector<int> order;
  std::vector<char> seen(S, 0);
  order.push_back(d.initial);
  seen[d.initial] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < A; ++a) {
      int t = d.transitions[order[i]][a];
      if (!seen[t]) {
        seen[t] = 1;
        order.push_back(t);
      }
    }

  /* Moore refinement to the coarsest congruence respecting acceptance */
  std::vector<int> part(S, -1);
  int classes;
  {
    std::map<int, int> first;
    for (int s : order) {
      int key = d.accepting[s] ? 1 : 0;
      auto [it, fresh] = first.emplace(key, (int)first.size());
      part[s] = it->second;
    }
    classes = (int)first.size();
  }
  while (true) {
    std::map<std::vector<int>, int> sig_id;
    std::vector<int> next(S, -1);
    for (int s : order) {
      std::vector<int> sig;
      sig.reserve(A + 1);
      sig.push_back(part[s]);
      for (int a = 0; a < A; ++a)
        sig.push_back(part[d.transitions[s][a]]);
      auto [it, fresh] = sig_id.emplace(std::move(sig), (int)sig_id.size());
      next[s] = it->second;
    }
    int n = (int)sig_id.size();
    part = std::move(next);
    if (n == classes)
      break;
    classes = n;
  }

  /* quotient with canonical BFS numbering from the initial class */
  std::vector<int> rep(classes, -1);
  for (int s : order)
    if (rep[part[s]] < 0)
      rep[part[s]] = s;

  std::vector<int> renum(classes, -1);
  std::vector<int> class_order;
  renum[part[d.initial]] = 0;
  class_order.push_back(part[d.initial]);
  for (size_t i = 0; i < class_order.size(); ++i) {
    int c = class_order[i];
    for (int a = 0; a < A; ++a) {
      int t = part[d.transitions[rep[c]][a]];
      if (renum[t] < 0) {
        renum[t] = (int)class_order.size();
        class_order.push_back(t);
      }
    }
  }

  Dfa m;
  m.num_props = d.num_props;
  m.initial = 0;
  m.accepting.resize(classes);
  m.transitions.assign(classes, std::vector<int>(A));
  for (int c : class_order) {
    int id = renum[c];
    m.accepting[id] = d.accepting[rep[c]] ? 1 : 0;
    for (int a = 0; a < A; ++a)
      m.transitions[id][a] = renum[part[d.transitions[rep[c]][a]]];
  }
  return m;
}

namespace {

/* pair BFS from the given seed states; shortest symbol sequence after which
 * acceptance differs, empty allowed only when check_root is set.  The
 * acceptance test runs on every edge, not just first visits: a differing
 * seed pair may be reachable only by a cycle back onto itself. */
std::optional<std::vector<uint32_t>>
distinguishing_path(const Dfa &a, const Dfa &b, int sa, int sb,
                    bool check_root) {
  int nb = b.num_states();
  int A = a.num_symbols();
  auto acc_differs = [&](int x, int y) {
    return (a.accepting[x] != 0) != (b.accepting[y] != 0);
  };
  if (check_root && acc_differs(sa, sb))
    return std::vector<uint32_t>{};

  std::vector<int> prev(size_t(a.num_states()) * nb, -2);
  std::vector<uint32_t> via(prev.size(), 0);
  auto id = [&](int x, int y) { return size_t(x) * nb + y; };
  std::queue<size_t> q;
  prev[id(sa, sb)] = -1;
  q.push(id(sa, sb));
  while (!q.empty()) {
    size_t cur = q.front();
    q.pop();
    int x = int(cur / nb), y = int(cur % nb);
    for (int s = 0; s < A; ++s) {
      int nx = a.transitions[x][s], ny = b.transitions[y][s];
      size_t nid = id(nx, ny);
      if (acc_differs(nx, ny)) {
        std::vector<uint32_t> path{(uint32_t)s};
        size_t at = cur;
        while (prev[at] != -1) {
          path.push_back(via[at]);
          at = (size_t)prev[at];
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (prev[nid] != -2)
        continue;
      prev[nid] = (int)cur;
      via[nid] = (uint32_t)s;
      q.push(nid);
    }
  }
  return std::nullopt;
}

Trace trace_from_symbols(int num_props, const std::vector<uint32_t> &syms) {
  Trace t;
  t.num_props = num_props;
  t.steps = syms;
  return t;
}

} // namespace

std::optional<Trace> dfa_counterexample(const Dfa &a, const Dfa &b) {
  if (a.num_props != b.num_props)
    throw std::invalid_argument("alphabet mismatch");
  auto path =
      distinguishing_path(a, b, a.initial, b.initial, /*check_root=*/false);
  if (!path)
    return std::nullopt;
  return trace_from_symbols(a.num_props, *path);
}

bool dfa_equivalent(const Dfa &a, const Dfa &b) {
  return !dfa_counterexample(a, b).has_value();
}

bool dfa_equivalent(const Formula &a, const Formula &b,
                    const PropositionSet &props) {
  return dfa_equivalent(to_dfa(a, props), to_dfa(b, props));
}

std::vector<LabeledTrace> characteristic_sample(const Dfa &d) {
  int A = d.num_symbols();
  int S = d.num_states();

  /* shortest access string per state, BFS in symbol order */
  std::vector<std::vector<uint32_t>> access(S);
  std::vector<char> have(S, 0);
  std::vector<int> order;
  have[d.initial] = 1;
  order.push_back(d.initial);
  for (size_t i = 0; i < order.size(); ++i) {
    int s = order[i];
    for (int a = 0; a < A; ++a) {
      int t = d.transitions[s][a];
      if (!have[t]) {
        have[t] = 1;
        access[t] = access[s];
        access[t].push_back((uint32_t)a);
        order.push_back(t);
      }
    }
  }

  std::vector<std::vector<uint32_t>> strings;
  for (int s : order)
    strings.push_back(access[s]);
  for (int s : order)
    for (int a = 0; a < A; ++a) {
      auto ext = access[s];
      ext.push_back((uint32_t)a);
      strings.push_back(std::move(ext));
    }
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j) {
      auto w = distinguishing_path(d, d, order[i], order[j],
                                   /*check_root=*/true);
      if (!w)
        continue; /* equivalent states: nothing separates them */
      for (int s : {order[i], order[j]}) {
        auto ext = access[s];
        ext.insert(ext.end(), w->begin(), w->end());
        strings.push_back(std::move(ext));
      }
    }

  std::set<std::vector<uint32_t>> unique;
  std::vector<LabeledTrace> sample;
  for (auto &s : strings) {
    if (s.empty() || !unique.insert(s).second)
      continue;
    Trace t = trace_from_symbols(d.num_props, s);
    sample.push_back({t, d.accepts(t)});
  }
  return sample;
}

std::vector<LabeledTrace> characteristic_sample(const Formula &f,
                                                const PropositionSet &props) {
  return characteristic_sample(to_dfa(f, props));
}

std::string dfa_dump(const Dfa &d) {
  std::string out;
  for (int s = 0; s < d.num_states(); ++s) {
    out += std::to_string(s);
    out += d.accepting[s] ? " accept" : " reject";
    if (s == d.initial)
      out += " initial";
    out += " :";
    for (int a = 0; a < d.num_symbols(); ++a) {
      out += ' ';
      out += std::to_string(d.transitions[s][a]);
    }
    out += '\n';
  }
  return out;
}

} // namespace ltlf
