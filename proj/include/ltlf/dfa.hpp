#pragma once

#include "ltlf/formula.hpp"
#include "ltlf/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ltlf {

/* Deterministic automaton over the assignment alphabet: symbol s encodes one
 * assignment, bit j of s = value of proposition j. Transitions are total. */
struct Dfa {
  int num_props = 0;
  int initial = 0;
  std::vector<char> accepting;               /* per state */
  std::vector<std::vector<int>> transitions; /* [state][symbol] */

  int num_states() const { return (int)accepting.size(); }
  int num_symbols() const { return 1 << num_props; }

  /* runs the trace from the initial state; empty traces are rejected
   * with an error, acceptance is defined over nonempty traces only */
  bool accepts(const Trace &t) const;
};

/* Compiles a formula by progression: states are residual obligations,
 * canonicalized as boolean functions over the formula's temporal subterms,
 * propositions, and a rest-is-nonempty marker; a state accepts when its
 * residual holds on the empty continuation (weak operators true, strong
 * false). Result is minimized. Guards: at most 8 propositions, at most 16
 * distinct residual atoms, at most 4096 construction states. */
Dfa to_dfa(const Formula &f, const PropositionSet &props);

/* Language-minimal equivalent with canonical BFS state numbering
 * (idempotent on its own output). */
Dfa minimize(const Dfa &d);

/* Shortest nonempty trace accepted by exactly one of the two automata,
 * lexicographically least among the shortest; nullopt when the languages
 * over nonempty traces coincide. Alphabets must match. */
std::optional<Trace> dfa_counterexample(const Dfa &a, const Dfa &b);

bool dfa_equivalent(const Dfa &a, const Dfa &b);
bool dfa_equivalent(const Formula &a, const Formula &b,
                    const PropositionSet &props);

/* Labeled traces that pin down a minimized automaton for a state-merging
 * learner: every state's shortest access string, each access string extended
 * by every symbol, and both access strings of every state pair extended by a
 * shortest distinguishing suffix; the empty string is dropped and each trace
 * is labeled by acceptance. Expects a minimized automaton. */
std::vector<LabeledTrace> characteristic_sample(const Dfa &d);
std::vector<LabeledTrace> characteristic_sample(const Formula &f,
                                                const PropositionSet &props);

/* one line per state: id, accepting flag, successor per symbol */
std::string dfa_dump(const Dfa &d);

} // namespace ltlf
