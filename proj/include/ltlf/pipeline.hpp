#pragma once

#include "ltlf/baseline.hpp"
#include "ltlf/extract.hpp"
#include "ltlf/network.hpp"
#include "ltlf/trace.hpp"

#include <string>
#include <vector>

namespace ltlf {

struct LearnConfig {
  std::vector<std::vector<int>> architectures = {{1}, {3, 1}, {5, 5, 1}};
  int restarts = 2;
  double time_budget = 0; /* seconds shared by all runs; 0 = none */
  int size_threshold = 25;
  TrainConfig train; /* template; per-run seed and budget are filled in */
  uint64_t seed = 0;
  bool qualitative = true;
};

struct NetworkRunReport {
  std::vector<int> architecture;
  int restart = 0;
  uint64_t seed = 0; /* training seed of this run */
  int epochs = 0;
  bool converged = false;
  bool budget_exhausted = false;
  double net_train_accuracy = 0; /* hard-mode network accuracy */
  std::string formula;           /* extracted formula text */
  uint64_t raw_size = 0, minimized_size = 0, final_size = 0;
  double train_accuracy = 0; /* extracted formula's accuracy on train */
  bool discarded = false;    /* final size above the threshold */
  double seconds = 0;
};

struct LearnReport {
  Formula formula; /* selected extracted formula */
  int selected = -1;
  bool fallback = false; /* every candidate was over the threshold */
  bool budget_hit = false;
  std::vector<NetworkRunReport> runs;
  double seconds = 0;
};

/* Trains architectures x restarts on slices of the shared budget, extracts
 * a formula from each, drops candidates larger than the size threshold,
 * and picks the highest training accuracy, ties to the smaller then
 * lexicographically least formula. When everything is dropped, the
 * smallest candidate wins anyway and the report is flagged. */
LearnReport run_learn(const Dataset &train, const LearnConfig &cfg);

struct ExperimentConfig {
  int min_size = 2, max_size = 6;
  int formulas_per_size = 10;
  int num_props = 3;
  int trace_length = 15;
  int train_pos = 100, train_neg = 100;
  int test_pos = 100, test_neg = 100;
  bool include_char_sample = true;
  double noise = 0;         /* training labels only */
  LearnConfig learn;        /* learner knobs; learn.seed is derived */
  bool run_neural = true;
  bool run_exact = false;
  bool run_max_accuracy = false;
  int baseline_max_size = 4;
  double baseline_budget = 60;
  uint64_t seed = 0;
  int jobs = 1;
};

struct ResultRow {
  int size = 0, index = 0;
  std::string target;
  std::string method; /* neural | exact | max_accuracy */
  double train_accuracy = 0, test_accuracy = 0, precision = 0, recall = 0;
  uint64_t output_size = 0;
  std::string output;
  uint64_t raw_size = 0, minimized_size = 0, final_size = 0; /* neural only */
  double runtime_seconds = 0;
  bool timeout = false;
  bool fallback = false;
  bool failed = false;
  std::string error;
};

struct ExperimentCell {
  int size = 0, index = 0;
  std::string target;
  int target_resamples = 0; /* extra target draws to get a balanced dataset */
  bool has_learn = false;
  LearnReport learn;
};

struct ExperimentResults {
  std::vector<ResultRow> rows;   /* ordered by size, index, method */
  std::vector<ExperimentCell> cells;
};

/* Full sweep: per target formula, build train/test data (test traces are
 * resampled with a different seed), optionally flip training labels, run
 * the selected methods, and record one row per method. Per-cell failures
 * become failed rows; the sweep never aborts. All randomness fans out of
 * cfg.seed by counters, so a rerun reproduces the table. */
ExperimentResults run_experiment(const ExperimentConfig &cfg);

/* Fixed-order CSV rendering of result rows and per-(method, size)
 * aggregates with normal-approximation 95% confidence intervals. */
std::string results_csv(const std::vector<ResultRow> &rows);
std::string results_csv_schema();

struct AggregateRow {
  std::string method;
  int size = 0;
  int runs = 0;
  double mean_test_accuracy = 0, test_accuracy_ci95 = 0;
  double mean_output_size = 0, output_size_ci95 = 0;
  double mean_runtime_seconds = 0;
};

std::vector<AggregateRow> aggregate_rows(const std::vector<ResultRow> &rows);
std::string aggregate_csv(const std::vector<AggregateRow> &rows);
std::string aggregate_csv_schema();

} // namespace ltlf
