#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlf {

enum class Op : uint8_t {
  True,
  False,
  Prop,
  Not,
  And,
  Or,
  Next,
  WeakNext,
  Until,
  WeakUntil,
  Release,
  Eventually,
  Globally,
};

bool is_unary(Op op);
bool is_binary(Op op);
bool is_temporal(Op op);

/* The proposition alphabet. Indices are positions in the declared order and
 * double as bit positions in trace steps and DFA alphabet symbols. */
class PropositionSet {
public:
  PropositionSet() = default;
  explicit PropositionSet(std::vector<std::string> names);

  int size() const { return (int)names_.size(); }
  const std::string &name(int i) const { return names_.at(i); }
  const std::vector<std::string> &names() const { return names_; }
  /* -1 when absent. */
  int index_of(const std::string &name) const;
  bool operator==(const PropositionSet &o) const { return names_ == o.names_; }

private:
  std::vector<std::string> names_;
};

class Formula;

struct FormulaNode {
  Op op;
  std::shared_ptr<const FormulaNode> left, right;
  int prop = -1;
  std::string prop_name;
};

/* Immutable formula handle. Copies share structure, so large extraction
 * results form DAGs; size/eval/printing must be pointer-memoized. */
class Formula {
public:
  Formula() = default;

  static Formula tt();
  static Formula ff();
  static Formula prop(int index, std::string name);
  static Formula make_not(Formula f);
  static Formula make_and(Formula l, Formula r);
  static Formula make_or(Formula l, Formula r);
  static Formula next(Formula f);
  static Formula weak_next(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula weak_until(Formula l, Formula r);
  static Formula release(Formula l, Formula r);
  static Formula eventually(Formula f);
  static Formula globally(Formula f);

  bool valid() const { return node_ != nullptr; }
  Op op() const { return node_->op; }
  Formula left() const;
  Formula right() const;
  int prop_index() const { return node_->prop; }
  const std::string &prop_name() const { return node_->prop_name; }
  const FormulaNode *raw() const { return node_.get(); }

  bool operator==(const Formula &o) const;

private:
  friend struct FormulaBuilder;
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

/* Total structural order: op rank, then prop index, then children.
 * Used for canonical operand ordering and deterministic tie-breaking. */
int compare(const Formula &a, const Formula &b);

/* Size metric: temporal operators + binary logical operators + proposition
 * occurrences. Negation and constants are free.
 *   size(a U b) = 3,  size(b | G !a | (b R a)) = 8,  size(true) = 0. */
uint64_t formula_size(const Formula &f);

bool is_qualitative(const Formula &f); // no X / WX anywhere

/* Minimal-parentheses printer. parse(print(f)) reconstructs f exactly. */
std::string to_string(const Formula &f);

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string &msg, size_t position);
  size_t position; // byte offset into the input
};

/* Recursive-descent parser for
 *   f := "true" | "false" | ident | "!" f | "X" f | "WX" f | "F" f | "G" f
 *      | f "U" f | f "W" f | f "R" f | f "&" f | f "|" f | "(" f ")"
 * Precedence: unary > U/W/R > & > |. U/W/R are right-associative,
 * & and | left-associative. Identifiers must be declared in props. */
Formula parse(const std::string &text, const PropositionSet &props);

struct Trace; // trace.hpp

/* Finite-trace semantics at position t (0-based, t < length). */
bool evaluate(const Formula &f, const Trace &trace, int t);
/* evaluate at t = 0; the trace must be nonempty. */
bool satisfies(const Formula &f, const Trace &trace);
/* Root truth value at every position; one DP pass over the DAG. */
std::vector<char> evaluate_all(const Formula &f, const Trace &trace);

/* Negation normal form: negations pushed to propositions through De Morgan
 * and operator duals (¬X↦WX¬, ¬U↦R over negated args, ¬F↦G¬, ...). */
Formula to_nnf(const Formula &f);

/* One rewrite rule, as a concrete instance over fresh propositions p, q.
 * Every rule the simplifier applies is listed so soundness is checkable
 * (each lhs/rhs pair must be DFA-equivalent). */
struct RewriteRule {
  std::string name;
  std::string lhs, rhs; // parseable over props {p, q}
};
const std::vector<RewriteRule> &rewrite_rules();

/* Applies the rewrite_rules() set bottom-up to a fixpoint, with commutative
 * operands flattened, deduplicated and canonically ordered. Never increases
 * formula_size. Rejects metric formulas. */
Formula simplify(const Formula &f);

/* Size-conditioned random sampler over the negation-normal-form grammar
 * (literals, &, |, U, W, R, F, G, plus X/WX when qualitative_only is false).
 * The result has exactly the requested size and at least one temporal
 * operator. At each node the production is drawn uniformly from the feasible
 * ones and binary size splits uniformly from the feasible splits. */
Formula random_formula(int size, const PropositionSet &props,
                       bool qualitative_only, uint64_t seed);

} // namespace ltlf
