#include "ltlf/pipeline.hpp"

#include "ltlf/dfa.hpp"
#include "ltlf/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ltlf {

LearnReport run_learn(const Dataset &train, const LearnConfig &cfg) {
  if (train.size() == 0)
    throw std::invalid_argument("empty training set");
  if (cfg.architectures.empty() || cfg.restarts < 1)
    throw std::invalid_argument("learner needs architectures and restarts");

  Stopwatch clock;
  LearnReport report;
  std::vector<Formula> formulas;
  int total_runs = (int)cfg.architectures.size() * cfg.restarts;
  int run_index = 0;

  for (const auto &arch : cfg.architectures)
    for (int restart = 0; restart < cfg.restarts; ++restart, ++run_index) {
      Stopwatch run_clock;
      TrainConfig tc = cfg.train;
      tc.seed = seed_for(cfg.seed, 2 * run_index);
      if (cfg.time_budget > 0) {
        /* remaining wall clock split evenly over the runs still to go;
         * a tiny floor keeps exhausted runs at a single epoch */
        double remaining = cfg.time_budget - clock.seconds();
        tc.budget_seconds =
            std::max(remaining / (total_runs - run_index), 0.001);
      } else {
        tc.budget_seconds = 0;
      }

      Network init = random_network(arch, train.props.size(), cfg.qualitative,
                                    seed_for(cfg.seed, 2 * run_index + 1));
      TrainResult tr = ::ltlf::train(init, train, tc);
      ExtractionReport ex = network_to_formula(tr.net, train.props);

      NetworkRunReport run;
      run.architecture = arch;
      run.restart = restart;
      run.seed = tc.seed;
      run.epochs = tr.epochs_run;
      run.converged = tr.converged;
      run.budget_exhausted = tr.budget_exhausted;
      run.net_train_accuracy = hard_accuracy(tr.net, train);
      run.formula = to_string(ex.formula);
      run.raw_size = ex.raw_size;
      run.minimized_size = ex.minimized_size;
      run.final_size = ex.final_size;
      run.train_accuracy = formula_metrics(ex.formula, train).accuracy;
      run.discarded = ex.final_size > (uint64_t)cfg.size_threshold;
      run.seconds = run_clock.seconds();
      report.runs.push_back(std::move(run));
      formulas.push_back(ex.formula);
    }

  auto better_candidate = [&](int a, int b) {
    /* highest training accuracy, then smallest, then least text */
    const auto &ra = report.runs[a], &rb = report.runs[b];
    if (ra.train_accuracy != rb.train_accuracy)
      return ra.train_accuracy > rb.train_accuracy;
    if (ra.final_size != rb.final_size)
      return ra.final_size < rb.final_size;
    return ra.formula < rb.formula;
  };
  auto smaller = [&](int a, int b) {
    const auto &ra = report.runs[a], &rb = report.runs[b];
    if (ra.final_size != rb.final_size)
      return ra.final_size < rb.final_size;
    return ra.formula < rb.formula;
  };

  for (int i = 0; i < total_runs; ++i) {
    if (report.runs[i].discarded)
      continue;
    if (report.selected < 0 || better_candidate(i, report.selected))
      report.selected = i;
  }
  if (report.selected < 0) {
    report.fallback = true;
    report.selected = 0;
    for (int i = 1; i < total_runs; ++i)
      if (smaller(i, report.selected))
        report.selected = i;
  }
  report.formula = formulas[report.selected];
  report.budget_hit = cfg.time_budget > 0 && clock.seconds() > cfg.time_budget;
  report.seconds = clock.seconds();
  return report;
}

namespace {

PropositionSet default_props(int n) {
  if (n < 1)
    throw std::invalid_argument("need at least one proposition");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    if (n <= 26)
      names.push_back(std::string(1, char('a' + i)));
    else
      names.push_back("p" + std::to_string(i));
  }
  return PropositionSet(names);
}

struct CellOutcome {
  ExperimentCell cell;
  std::vector<ResultRow> rows;
};

ResultRow method_row(const ExperimentConfig &cfg, int size, int index,
                     const std::string &target, const std::string &method,
                     const Formula &f, const Dataset &train,
                     const Dataset &test, double seconds, bool timeout,
                     bool fallback) {
  ResultRow row;
  row.size = size;
  row.index = index;
  row.target = target;
  row.method = method;
  row.train_accuracy = formula_metrics(f, train).accuracy;
  Metrics m = formula_metrics(f, test);
  row.test_accuracy = m.accuracy;
  row.precision = m.precision;
  row.recall = m.recall;
  row.output_size = formula_size(f);
  row.output = to_string(f);
  row.runtime_seconds = seconds;
  row.timeout = timeout;
  row.fallback = fallback;
  (void)cfg;
  return row;
}

/* Seed fan-out per cell: counter 100+k draws target candidates, 1/2 seed
 * the train/test fills, 3 the label flips, 4 the learner. */
CellOutcome run_cell(const ExperimentConfig &cfg, const PropositionSet &props,
                     int size, int index, uint64_t cell_seed) {
  CellOutcome out;
  out.cell.size = size;
  out.cell.index = index;

  Formula target;
  Dataset train, test;
  bool have_data = false;
  constexpr int kTargetAttempts = 50;
  std::string last_error = "no target candidate admitted a balanced dataset";
  for (int a = 0; a < kTargetAttempts && !have_data; ++a) {
    target = random_formula(size, props, cfg.learn.qualitative,
                            seed_for(cell_seed, 100 + a));
    try {
      std::vector<LabeledTrace> sample;
      if (cfg.include_char_sample)
        sample = characteristic_sample(target, props);
      train = build_dataset(target, props, cfg.train_pos, cfg.train_neg,
                            cfg.trace_length, sample, seed_for(cell_seed, 1));
      test = build_dataset(target, props, cfg.test_pos, cfg.test_neg,
                           cfg.trace_length, sample, seed_for(cell_seed, 2));
      have_data = true;
      out.cell.target_resamples = a;
    } catch (const std::exception &e) {
      /* unbalanced target or automaton guard: draw another candidate */
      last_error = e.what();
    }
  }
  if (!have_data) {
    out.cell.target = "";
    ResultRow row;
    row.size = size;
    row.index = index;
    row.method = "cell";
    row.failed = true;
    row.error = last_error;
    out.rows.push_back(row);
    return out;
  }
  out.cell.target = to_string(target);

  if (cfg.noise > 0)
    train = inject_noise(train, cfg.noise, seed_for(cell_seed, 3));

  if (cfg.run_neural) {
    Stopwatch sw;
    try {
      LearnConfig lc = cfg.learn;
      lc.seed = seed_for(cell_seed, 4);
      LearnReport learn = run_learn(train, lc);
      ResultRow row = method_row(cfg, size, index, out.cell.target, "neural",
                                 learn.formula, train, test, sw.seconds(),
                                 learn.budget_hit, learn.fallback);
      const NetworkRunReport &sel = learn.runs[learn.selected];
      row.raw_size = sel.raw_size;
      row.minimized_size = sel.minimized_size;
      row.final_size = sel.final_size;
      out.cell.learn = std::move(learn);
      out.cell.has_learn = true;
      out.rows.push_back(std::move(row));
    } catch (const std::exception &e) {
      ResultRow row;
      row.size = size;
      row.index = index;
      row.target = out.cell.target;
      row.method = "neural";
      row.failed = true;
      row.error = e.what();
      row.runtime_seconds = sw.seconds();
      out.rows.push_back(std::move(row));
    }
  }

  SearchBudget budget;
  budget.max_size = cfg.baseline_max_size;
  budget.budget_seconds = cfg.baseline_budget;
  budget.props = props;
  budget.qualitative = cfg.learn.qualitative;

  if (cfg.run_exact) {
    Stopwatch sw;
    try {
      ExactResult r = exact_learner(train, budget);
      bool found = r.verdict == SearchVerdict::Found;
      Formula f = found ? r.formula : Formula::tt();
      ResultRow row = method_row(cfg, size, index, out.cell.target, "exact", f,
                                 train, test, sw.seconds(), !found, false);
      if (r.verdict == SearchVerdict::Inconsistent)
        row.error = "contradictory labels; no consistent formula exists";
      out.rows.push_back(std::move(row));
    } catch (const std::exception &e) {
      ResultRow row;
      row.size = size;
      row.index = index;
      row.target = out.cell.target;
      row.method = "exact";
      row.failed = true;
      row.error = e.what();
      out.rows.push_back(std::move(row));
    }
  }

  if (cfg.run_max_accuracy) {
    Stopwatch sw;
    try {
      MaxAccuracyResult r = max_accuracy_learner(train, budget);
      out.rows.push_back(method_row(cfg, size, index, out.cell.target,
                                    "max_accuracy", r.formula, train, test,
                                    sw.seconds(), r.budget_hit, false));
    } catch (const std::exception &e) {
      ResultRow row;
      row.size = size;
      row.index = index;
      row.target = out.cell.target;
      row.method = "max_accuracy";
      row.failed = true;
      row.error = e.what();
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

} // namespace

ExperimentResults run_experiment(const ExperimentConfig &cfg) {
  if (cfg.min_size < 2 || cfg.max_size < cfg.min_size)
    throw std::invalid_argument("bad size range");
  if (cfg.formulas_per_size < 1)
    throw std::invalid_argument("need at least one formula per size");
  PropositionSet props = default_props(cfg.num_props);

  struct CellSpec {
    int size, index;
    uint64_t seed;
  };
  std::vector<CellSpec> specs;
  uint64_t counter = 0;
  for (int size = cfg.min_size; size <= cfg.max_size; ++size)
    for (int index = 0; index < cfg.formulas_per_size; ++index)
      specs.push_back({size, index, seed_for(cfg.seed, counter++)});

  std::vector<CellOutcome> outcomes(specs.size());
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < specs.size(); ++i)
      outcomes[i] = run_cell(cfg, props, specs[i].size, specs[i].index,
                             specs[i].seed);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next++; i < specs.size(); i = next++)
        outcomes[i] = run_cell(cfg, props, specs[i].size, specs[i].index,
                               specs[i].seed);
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  ExperimentResults results;
  for (auto &o : outcomes) {
    results.cells.push_back(std::move(o.cell));
    for (auto &row : o.rows)
      results.rows.push_back(std::move(row));
  }
  return results;
}

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

} // namespace

std::string results_csv_schema() {
  return "size: target formula size\n"
         "index: formula ordinal within its size\n"
         "target: target formula text\n"
         "method: neural | exact | max_accuracy | cell (failures)\n"
         "train_accuracy: output formula's accuracy on the training labels\n"
         "test_accuracy,precision,recall: output formula on the clean test "
         "set\n"
         "output_size: formula size of the output\n"
         "output: output formula text\n"
         "raw_size,minimized_size,final_size: extraction stage sizes "
         "(neural rows)\n"
         "runtime_seconds: wall clock spent by the method\n"
         "timeout: budget ended the search / no consistent formula\n"
         "fallback: neural selection had to ignore the size threshold\n"
         "failed,error: the method itself failed\n";
}

std::string results_csv(const std::vector<ResultRow> &rows) {
  std::ostringstream out;
  out << "size,index,target,method,train_accuracy,test_accuracy,precision,"
         "recall,output_size,output,raw_size,minimized_size,final_size,"
         "runtime_seconds,timeout,fallback,failed,error\n";
  for (const auto &r : rows)
    out << r.size << ',' << r.index << ',' << csv_quote(r.target) << ','
        << r.method << ',' << fmt(r.train_accuracy) << ','
        << fmt(r.test_accuracy) << ',' << fmt(r.precision) << ','
        << fmt(r.recall) << ',' << r.output_size << ',' << csv_quote(r.output)
        << ',' << r.raw_size << ',' << r.minimized_size << ',' << r.final_size
        << ',' << fmt(r.runtime_seconds) << ',' << (r.timeout ? 1 : 0) << ','
        << (r.fallback ? 1 : 0) << ',' << (r.failed ? 1 : 0) << ','
        << csv_quote(r.error) << '\n';
  return out.str();
}

std::vector<AggregateRow> aggregate_rows(const std::vector<ResultRow> &rows) {
  struct Acc {
    std::vector<double> acc, size, runtime;
  };
  std::map<std::pair<std::string, int>, Acc> groups;
  for (const auto &r : rows) {
    if (r.failed)
      continue;
    Acc &g = groups[{r.method, r.size}];
    g.acc.push_back(r.test_accuracy);
    g.size.push_back((double)r.output_size);
    g.runtime.push_back(r.runtime_seconds);
  }

  auto mean = [](const std::vector<double> &v) {
    double s = 0;
    for (double x : v)
      s += x;
    return v.empty() ? 0.0 : s / v.size();
  };
  auto ci95 = [&](const std::vector<double> &v) {
    if (v.size() < 2)
      return 0.0;
    double m = mean(v), ss = 0;
    for (double x : v)
      ss += (x - m) * (x - m);
    double sd = std::sqrt(ss / (v.size() - 1));
    return 1.96 * sd / std::sqrt((double)v.size());
  };

  std::vector<AggregateRow> out;
  for (const auto &[key, g] : groups) {
    AggregateRow a;
    a.method = key.first;
    a.size = key.second;
    a.runs = (int)g.acc.size();
    a.mean_test_accuracy = mean(g.acc);
    a.test_accuracy_ci95 = ci95(g.acc);
    a.mean_output_size = mean(g.size);
    a.output_size_ci95 = ci95(g.size);
    a.mean_runtime_seconds = mean(g.runtime);
    out.push_back(std::move(a));
  }
  return out;
}

std::string aggregate_csv_schema() {
  return "method,size: aggregation group\n"
         "runs: rows aggregated (failures excluded)\n"
         "mean_test_accuracy,test_accuracy_ci95: mean with normal-"
         "approximation 95% half-width\n"
         "mean_output_size,output_size_ci95: same for formula size\n"
         "mean_runtime_seconds: mean method wall clock\n";
}

std::string aggregate_csv(const std::vector<AggregateRow> &rows) {
  std::ostringstream out;
  out << "method,size,runs,mean_test_accuracy,test_accuracy_ci95,"
         "mean_output_size,output_size_ci95,mean_runtime_seconds\n";
  for (const auto &a : rows)
    out << a.method << ',' << a.size << ',' << a.runs << ','
        << fmt(a.mean_test_accuracy) << ',' << fmt(a.test_accuracy_ci95) << ','
        << fmt(a.mean_output_size) << ',' << fmt(a.output_size_ci95) << ','
        << fmt(a.mean_runtime_seconds) << '\n';
  return out.str();
}

} // namespace ltlf
