#pragma once

#include "ltlf/formula.hpp"
#include "ltlf/trace.hpp"

#include <vector>

namespace ltlf {

/* Enumeration limits for the exhaustive learners. The proposition set is
 * the candidate alphabet; budget_seconds = 0 means no wall-clock cap. */
struct SearchBudget {
  int max_size = 4;
  double budget_seconds = 0;
  PropositionSet props;
  bool qualitative = true;
};

/* Every negation-normal-form formula of exactly the given size over the
 * propositions, deterministically ordered, each unordered &/| argument
 * pair built once. Size 1 yields the literals; sizes >= 2 yield only
 * formulas containing a temporal operator. */
std::vector<Formula> enumerate_formulas(int size, const PropositionSet &props,
                                        bool qualitative);

enum class SearchVerdict { Found, Timeout, Inconsistent };

struct ExactResult {
  SearchVerdict verdict = SearchVerdict::Timeout;
  Formula formula;      /* valid only when verdict == Found */
  int size_reached = 0; /* largest size fully scanned */
};

/* Smallest formula consistent with every label, scanning sizes 2,3,...
 * up to the budget; Timeout when the clock or size cap runs out first,
 * Inconsistent immediately when some trace carries both labels. */
ExactResult exact_learner(const Dataset &d, const SearchBudget &budget);

struct MaxAccuracyResult {
  Formula formula; /* always valid; true when nothing beats it */
  double accuracy = 0;
  bool budget_hit = false;
};

/* Highest-training-accuracy formula over all candidates of sizes 1..cap
 * within the clock budget; ties keep the smaller, earlier candidate. The
 * constant true is the starting candidate, so a result always exists and
 * accuracy never decreases as the cap grows. */
MaxAccuracyResult max_accuracy_learner(const Dataset &d,
                                       const SearchBudget &budget);

} // namespace ltlf
