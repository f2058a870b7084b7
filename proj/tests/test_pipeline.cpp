#include "doctest.h"
#include "oracle.hpp"

#include "ltlf/dfa.hpp"
#include "ltlf/pipeline.hpp"
#include "ltlf/util.hpp"

#include <sstream>

using namespace ltlf;

namespace {

const PropositionSet kAB({"a", "b"});

LearnConfig quick_learn() {
  LearnConfig lc;
  lc.architectures = {{1}};
  lc.restarts = 2;
  lc.time_budget = 0;
  lc.train.max_epochs = 600;
  lc.train.batch_size = 20;
  return lc;
}

/* blanks one CSV column so reruns can be compared modulo wall-clock */
std::string drop_column(const std::string &csv, int column) {
  std::string out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    int col = 0;
    bool quoted = false;
    std::string kept;
    for (char c : line) {
      if (c == '"')
        quoted = !quoted;
      if (c == ',' && !quoted) {
        ++col;
        kept += c;
        continue;
      }
      if (col != column)
        kept += c;
    }
    out += kept + "\n";
  }
  return out;
}

} // namespace

TEST_CASE("learning selects a faithful formula on an easy target") {
  Formula target = parse("F a", kAB);
  Dataset d = build_dataset(target, kAB, 30, 30, 8,
                            characteristic_sample(target, kAB), 9);
  LearnConfig lc = quick_learn();
  lc.seed = 3;
  LearnReport rep = run_learn(d, lc);
  REQUIRE(rep.runs.size() == 2);
  CHECK(rep.selected >= 0);
  CHECK(!rep.fallback);
  CHECK(!rep.budget_hit);
  CHECK(dfa_equivalent(rep.formula, target, kAB));
  const NetworkRunReport &sel = rep.runs[rep.selected];
  CHECK(sel.formula == to_string(rep.formula));
  CHECK(sel.raw_size >= sel.minimized_size);
  CHECK(sel.minimized_size >= sel.final_size);
  CHECK(!sel.discarded);
  CHECK(sel.train_accuracy == 1.0);
}

TEST_CASE("a zero size threshold forces the fallback path") {
  Formula target = parse("F a", kAB);
  Dataset d = build_dataset(target, kAB, 20, 20, 8, {}, 12);
  LearnConfig lc = quick_learn();
  lc.size_threshold = 0;
  LearnReport rep = run_learn(d, lc);
  CHECK(rep.fallback);
  CHECK(rep.selected >= 0);
  for (const auto &run : rep.runs)
    CHECK(run.discarded);
  /* the fallback still picks the smallest candidate */
  for (const auto &run : rep.runs)
    CHECK(rep.runs[rep.selected].final_size <= run.final_size);
}

TEST_CASE("unbudgeted learning runs are reproducible") {
  Formula target = parse("a U b", kAB);
  Dataset d = build_dataset(target, kAB, 25, 25, 8,
                            characteristic_sample(target, kAB), 4);
  LearnConfig lc = quick_learn();
  lc.train.max_epochs = 120;
  lc.seed = 8;
  LearnReport a = run_learn(d, lc);
  LearnReport b = run_learn(d, lc);
  CHECK(to_string(a.formula) == to_string(b.formula));
  CHECK(a.selected == b.selected);
  CHECK(a.fallback == b.fallback);
  REQUIRE(a.runs.size() == b.runs.size());
  for (size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].formula == b.runs[i].formula);
    CHECK(a.runs[i].epochs == b.runs[i].epochs);
    CHECK(a.runs[i].seed == b.runs[i].seed);
    CHECK(a.runs[i].final_size == b.runs[i].final_size);
    CHECK(a.runs[i].train_accuracy == b.runs[i].train_accuracy);
  }
}

TEST_CASE("experiments fill one row per method per cell") {
  ExperimentConfig cfg;
  cfg.min_size = 2;
  cfg.max_size = 3;
  cfg.formulas_per_size = 2;
  cfg.num_props = 2;
  cfg.trace_length = 6;
  cfg.train_pos = cfg.train_neg = 10;
  cfg.test_pos = cfg.test_neg = 10;
  cfg.learn = quick_learn();
  cfg.learn.train.max_epochs = 150;
  cfg.run_exact = true;
  cfg.run_max_accuracy = true;
  cfg.baseline_max_size = 3;
  cfg.baseline_budget = 30;
  cfg.seed = 5;
  ExperimentResults res = run_experiment(cfg);
  REQUIRE(res.cells.size() == 4);
  REQUIRE(res.rows.size() == 12); /* 4 cells x 3 methods */
  size_t r = 0;
  for (const auto &cell : res.cells) {
    CHECK(cell.has_learn);
    for (const char *method : {"neural", "exact", "max_accuracy"}) {
      const ResultRow &row = res.rows[r++];
      CHECK(row.method == method);
      CHECK(row.size == cell.size);
      CHECK(row.index == cell.index);
      CHECK(row.target == cell.target);
      CHECK(!row.failed);
      CHECK(row.train_accuracy >= 0);
      CHECK(row.train_accuracy <= 1);
      CHECK(row.test_accuracy >= 0);
      CHECK(row.test_accuracy <= 1);
      Formula t = parse(row.target, PropositionSet({"a", "b"}));
      CHECK(formula_size(t) == (uint64_t)row.size);
      if (row.method == "neural") {
        CHECK(row.raw_size >= row.minimized_size);
        CHECK(row.minimized_size >= row.final_size);
        CHECK(row.output_size == row.final_size);
      }
      if (!row.timeout) {
        Formula out = parse(row.output, PropositionSet({"a", "b"}));
        CHECK(formula_size(out) == row.output_size);
      }
    }
  }
}

TEST_CASE("experiment reruns agree modulo wall-clock columns") {
  ExperimentConfig cfg;
  cfg.min_size = 2;
  cfg.max_size = 2;
  cfg.formulas_per_size = 2;
  cfg.num_props = 2;
  cfg.trace_length = 6;
  cfg.train_pos = cfg.train_neg = 8;
  cfg.test_pos = cfg.test_neg = 8;
  cfg.learn = quick_learn();
  cfg.learn.train.max_epochs = 100;
  cfg.seed = 7;
  std::string a = results_csv(run_experiment(cfg).rows);
  std::string b = results_csv(run_experiment(cfg).rows);
  /* runtime_seconds is column 13 */
  CHECK(drop_column(a, 13) == drop_column(b, 13));
}

TEST_CASE("aggregates compute textbook means and intervals") {
  std::vector<ResultRow> rows(3);
  rows[0].method = rows[1].method = "neural";
  rows[0].size = rows[1].size = 2;
  rows[0].test_accuracy = 0.8;
  rows[1].test_accuracy = 0.6;
  rows[0].output_size = 4;
  rows[1].output_size = 2;
  rows[0].runtime_seconds = 1.0;
  rows[1].runtime_seconds = 3.0;
  rows[2].method = "exact";
  rows[2].size = 2;
  rows[2].test_accuracy = 1.0;
  auto agg = aggregate_rows(rows);
  REQUIRE(agg.size() == 2);
  const AggregateRow *neural = nullptr, *exact = nullptr;
  for (const auto &a : agg)
    (a.method == "neural" ? neural : exact) = &a;
  REQUIRE(neural != nullptr);
  REQUIRE(exact != nullptr);
  CHECK(neural->runs == 2);
  CHECK(neural->mean_test_accuracy == doctest::Approx(0.7));
  /* sample sd .1414..., 1.96 * sd / sqrt(2) = .196 */
  CHECK(neural->test_accuracy_ci95 == doctest::Approx(0.196));
  CHECK(neural->mean_output_size == doctest::Approx(3.0));
  CHECK(neural->mean_runtime_seconds == doctest::Approx(2.0));
  CHECK(exact->runs == 1);
  CHECK(exact->test_accuracy_ci95 == 0.0);
}

TEST_CASE("csv headers match their documented schemas") {
  std::string header =
      "size,index,target,method,train_accuracy,test_accuracy,precision,"
      "recall,output_size,output,raw_size,minimized_size,final_size,"
      "runtime_seconds,timeout,fallback,failed,error";
  CHECK(results_csv({}) == header + "\n");
  CHECK(results_csv_schema().find("runtime_seconds") != std::string::npos);
  CHECK(results_csv_schema().find("minimized_size") != std::string::npos);
  std::string agg_header =
      "method,size,runs,mean_test_accuracy,test_accuracy_ci95,"
      "mean_output_size,output_size_ci95,mean_runtime_seconds";
  CHECK(aggregate_csv({}) == agg_header + "\n");
  CHECK(aggregate_csv_schema().find("mean_test_accuracy") !=
        std::string::npos);
  /* quoting: a field containing a comma survives a round trip */
  std::vector<ResultRow> rows(1);
  rows[0].method = "neural";
  rows[0].target = "a U b";
  rows[0].output = "a, b";
  std::string csv = results_csv(rows);
  CHECK(csv.find("\"a, b\"") != std::string::npos);
}
