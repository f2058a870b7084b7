#include "CLI11.hpp"
#include "json.hpp"

#include "ltlf/baseline.hpp"
#include "ltlf/dfa.hpp"
#include "ltlf/extract.hpp"
#include "ltlf/network.hpp"
#include "ltlf/pipeline.hpp"
#include "ltlf/util.hpp"

#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace ltlf;

namespace {

PropositionSet parse_props(const std::string &csv) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty())
        names.push_back(cur);
      cur.clear();
    } else if (!isspace((unsigned char)c)) {
      cur += c;
    }
  }
  if (!cur.empty())
    names.push_back(cur);
  if (names.empty())
    throw CLI::ValidationError("--props", "no proposition names given");
  return PropositionSet(names);
}

std::vector<int> parse_arch(const std::string &csv) {
  std::vector<int> arch;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      arch.push_back(std::stoi(cur));
      cur.clear();
    }
  };
  for (char c : csv) {
    if (c == ',')
      flush();
    else if (!isspace((unsigned char)c))
      cur += c;
  }
  flush();
  if (arch.empty())
    throw CLI::ValidationError("--arch", "empty architecture");
  return arch;
}

/* semicolon-separated list of comma-separated layer widths: "1;3,1;5,5,1" */
std::vector<std::vector<int>> parse_archs(const std::string &text) {
  std::vector<std::vector<int>> archs;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      archs.push_back(parse_arch(cur));
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == ';')
      flush();
    else
      cur += c;
  }
  flush();
  if (archs.empty())
    throw CLI::ValidationError("--archs", "empty architecture list");
  return archs;
}

void write_text(const std::string &path, const std::string &content) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out)
    throw std::runtime_error("write to " + path + " failed");
}

json train_config_to_json(const TrainConfig &c) {
  return {{"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"max_epochs", c.max_epochs},
          {"alpha0", c.alpha0},
          {"alpha_step", c.alpha_step},
          {"beta0", c.beta0},
          {"beta_step", c.beta_step},
          {"early_stop", c.early_stop}};
}

void train_config_from_json(const json &j, TrainConfig &c) {
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.alpha0 = j.value("alpha0", c.alpha0);
  c.alpha_step = j.value("alpha_step", c.alpha_step);
  c.beta0 = j.value("beta0", c.beta0);
  c.beta_step = j.value("beta_step", c.beta_step);
  c.early_stop = j.value("early_stop", c.early_stop);
}

json learn_config_to_json(const LearnConfig &c) {
  return {{"architectures", c.architectures},
          {"restarts", c.restarts},
          {"time_budget", c.time_budget},
          {"size_threshold", c.size_threshold},
          {"qualitative", c.qualitative},
          {"train", train_config_to_json(c.train)}};
}

void learn_config_from_json(const json &j, LearnConfig &c) {
  if (j.contains("architectures"))
    c.architectures = j["architectures"].get<std::vector<std::vector<int>>>();
  c.restarts = j.value("restarts", c.restarts);
  c.time_budget = j.value("time_budget", c.time_budget);
  c.size_threshold = j.value("size_threshold", c.size_threshold);
  c.qualitative = j.value("qualitative", c.qualitative);
  if (j.contains("train"))
    train_config_from_json(j["train"], c.train);
}

json experiment_config_to_json(const ExperimentConfig &c) {
  return {{"min_size", c.min_size},
          {"max_size", c.max_size},
          {"formulas_per_size", c.formulas_per_size},
          {"num_props", c.num_props},
          {"trace_length", c.trace_length},
          {"train_pos", c.train_pos},
          {"train_neg", c.train_neg},
          {"test_pos", c.test_pos},
          {"test_neg", c.test_neg},
          {"include_char_sample", c.include_char_sample},
          {"noise", c.noise},
          {"learn", learn_config_to_json(c.learn)},
          {"run_neural", c.run_neural},
          {"run_exact", c.run_exact},
          {"run_max_accuracy", c.run_max_accuracy},
          {"baseline_max_size", c.baseline_max_size},
          {"baseline_budget", c.baseline_budget},
          {"seed", c.seed},
          {"jobs", c.jobs}};
}

void experiment_config_from_json(const json &j, ExperimentConfig &c) {
  c.min_size = j.value("min_size", c.min_size);
  c.max_size = j.value("max_size", c.max_size);
  c.formulas_per_size = j.value("formulas_per_size", c.formulas_per_size);
  c.num_props = j.value("num_props", c.num_props);
  c.trace_length = j.value("trace_length", c.trace_length);
  c.train_pos = j.value("train_pos", c.train_pos);
  c.train_neg = j.value("train_neg", c.train_neg);
  c.test_pos = j.value("test_pos", c.test_pos);
  c.test_neg = j.value("test_neg", c.test_neg);
  c.include_char_sample = j.value("include_char_sample", c.include_char_sample);
  c.noise = j.value("noise", c.noise);
  if (j.contains("learn"))
    learn_config_from_json(j["learn"], c.learn);
  c.run_neural = j.value("run_neural", c.run_neural);
  c.run_exact = j.value("run_exact", c.run_exact);
  c.run_max_accuracy = j.value("run_max_accuracy", c.run_max_accuracy);
  c.baseline_max_size = j.value("baseline_max_size", c.baseline_max_size);
  c.baseline_budget = j.value("baseline_budget", c.baseline_budget);
  c.seed = j.value("seed", c.seed);
  c.jobs = j.value("jobs", c.jobs);
}

json run_report_to_json(const NetworkRunReport &r) {
  return {{"architecture", r.architecture},
          {"restart", r.restart},
          {"seed", r.seed},
          {"epochs", r.epochs},
          {"converged", r.converged},
          {"budget_exhausted", r.budget_exhausted},
          {"net_train_accuracy", r.net_train_accuracy},
          {"formula", r.formula},
          {"raw_size", r.raw_size},
          {"minimized_size", r.minimized_size},
          {"final_size", r.final_size},
          {"train_accuracy", r.train_accuracy},
          {"discarded", r.discarded},
          {"seconds", r.seconds}};
}

json learn_report_to_json(const LearnReport &r) {
  json runs = json::array();
  for (const auto &run : r.runs)
    runs.push_back(run_report_to_json(run));
  return {{"formula", to_string(r.formula)},
          {"selected", r.selected},
          {"fallback", r.fallback},
          {"budget_hit", r.budget_hit},
          {"seconds", r.seconds},
          {"runs", runs}};
}

json metrics_to_json(const Metrics &m) {
  return {{"accuracy", m.accuracy}, {"precision", m.precision},
          {"recall", m.recall},     {"tp", m.tp},
          {"tn", m.tn},             {"fp", m.fp},
          {"fn", m.fn}};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"learn compact LTLf formulas from labeled finite traces"};
  app.require_subcommand(1);

  /* ---- gen-formulas ---- */
  struct {
    int size = 4, count = 1;
    std::string props = "a,b,c";
    bool metric = false;
    uint64_t seed = 0;
    std::string out;
  } gf;
  auto *gen_formulas =
      app.add_subcommand("gen-formulas", "sample random formulas");
  gen_formulas->add_option("--size", gf.size, "formula size (>= 2)");
  gen_formulas->add_option("--count", gf.count, "how many to sample");
  gen_formulas->add_option("--props", gf.props, "comma-separated names");
  gen_formulas->add_flag("--metric", gf.metric, "allow X/WX operators");
  gen_formulas->add_option("--seed", gf.seed, "master seed");
  gen_formulas->add_option("--out", gf.out, "output file (default stdout)");
  gen_formulas->callback([&] {
    PropositionSet props = parse_props(gf.props);
    std::string text;
    for (int i = 0; i < gf.count; ++i)
      text +=
          to_string(random_formula(gf.size, props, !gf.metric,
                                   seed_for(gf.seed, (uint64_t)i))) +
          "\n";
    if (gf.out.empty())
      std::cout << text;
    else
      write_text(gf.out, text);
  });

  /* ---- gen-data ---- */
  struct {
    std::string target, props = "a,b,c";
    int pos = 100, neg = 100, length = 15;
    bool no_char = false;
    double noise = 0;
    uint64_t seed = 0;
    std::string out;
  } gd;
  auto *gen_data = app.add_subcommand("gen-data", "build a labeled dataset");
  gen_data->add_option("--target", gd.target, "target formula")->required();
  gen_data->add_option("--props", gd.props, "comma-separated names");
  gen_data->add_option("--pos", gd.pos, "positive traces");
  gen_data->add_option("--neg", gd.neg, "negative traces");
  gen_data->add_option("--length", gd.length, "trace length");
  gen_data->add_flag("--no-char-sample", gd.no_char,
                     "skip the characteristic sample");
  gen_data->add_option("--noise", gd.noise, "label flip rate");
  gen_data->add_option("--seed", gd.seed, "master seed");
  gen_data->add_option("--out", gd.out, "output JSONL (default stdout)");
  gen_data->callback([&] {
    PropositionSet props = parse_props(gd.props);
    Formula target = parse(gd.target, props);
    std::vector<LabeledTrace> sample;
    if (!gd.no_char)
      sample = characteristic_sample(target, props);
    Dataset d = build_dataset(target, props, gd.pos, gd.neg, gd.length,
                              sample, gd.seed);
    if (gd.noise > 0)
      d = inject_noise(d, gd.noise, seed_for(gd.seed, 1));
    if (gd.out.empty())
      write_jsonl(d, std::cout);
    else
      write_jsonl_file(d, gd.out);
  });

  /* ---- train ---- */
  struct {
    std::string data, arch = "3,1";
    TrainConfig tc;
    double budget = 0;
    bool metric = false;
    uint64_t seed = 0;
    std::string out = "model.json", log;
  } tr;
  auto *train_cmd = app.add_subcommand("train", "train one network");
  train_cmd->add_option("--data", tr.data, "training JSONL")->required();
  train_cmd->add_option("--arch", tr.arch, "layer widths, e.g. 3,1");
  train_cmd->add_option("--lr", tr.tc.learning_rate, "learning rate");
  train_cmd->add_option("--batch", tr.tc.batch_size, "mini-batch size");
  train_cmd->add_option("--epochs", tr.tc.max_epochs, "epoch cap");
  train_cmd->add_option("--alpha0", tr.tc.alpha0, "initial leak");
  train_cmd->add_option("--alpha-step", tr.tc.alpha_step, "leak step/epoch");
  train_cmd->add_option("--beta0", tr.tc.beta0, "initial steepness");
  train_cmd->add_option("--beta-step", tr.tc.beta_step, "steepness step");
  train_cmd->add_option("--budget", tr.budget, "wall-clock seconds, 0 = none");
  train_cmd->add_flag("--metric", tr.metric, "learn metric operators too");
  train_cmd->add_option("--seed", tr.seed, "master seed");
  train_cmd->add_option("--out", tr.out, "checkpoint path");
  train_cmd->add_option("--log", tr.log, "per-epoch CSV path");
  train_cmd->callback([&] {
    Dataset d = read_jsonl_file(tr.data);
    TrainConfig tc = tr.tc;
    tc.seed = tr.seed;
    tc.budget_seconds = tr.budget;
    Network init = random_network(parse_arch(tr.arch), d.props.size(),
                                  !tr.metric, seed_for(tr.seed, 1));
    TrainResult res = ltlf::train(init, d, tc);
    std::cout << "epochs " << res.epochs_run << (res.converged ? " converged" : "")
              << (res.budget_exhausted ? " budget-exhausted" : "")
              << " hard-accuracy " << hard_accuracy(res.net, d) << "\n";
    write_checkpoint_file({res.net, res.epochs_run, tr.seed}, tr.out);
    if (!tr.log.empty())
      write_text(tr.log, training_log_csv(res.log));
  });

  /* ---- extract ---- */
  struct {
    std::string model, data, props;
    std::string out;
  } ex;
  auto *extract_cmd =
      app.add_subcommand("extract", "discretize a checkpoint into a formula");
  extract_cmd->add_option("--model", ex.model, "checkpoint path")->required();
  extract_cmd->add_option("--data", ex.data, "dataset naming the inputs");
  extract_cmd->add_option("--props", ex.props, "comma-separated input names");
  extract_cmd->add_option("--out", ex.out, "report JSON (default stdout)");
  extract_cmd->callback([&] {
    Checkpoint c = read_checkpoint_file(ex.model);
    PropositionSet props;
    if (!ex.props.empty())
      props = parse_props(ex.props);
    else if (!ex.data.empty())
      props = read_jsonl_file(ex.data).props;
    else
      throw CLI::ValidationError("--props", "need --props or --data");
    ExtractionReport rep = network_to_formula(c.net, props);
    json j = {{"formula", to_string(rep.formula)},
              {"raw_size", rep.raw_size},
              {"minimized_size", rep.minimized_size},
              {"final_size", rep.final_size},
              {"simplified", rep.simplified}};
    if (ex.out.empty())
      std::cout << j.dump(2) << "\n";
    else
      write_text(ex.out, j.dump(2) + "\n");
  });

  /* ---- learn ---- */
  struct {
    std::string data, test;
    std::string archs = "1;3,1;5,5,1";
    LearnConfig lc;
    uint64_t seed = 0;
    std::string report;
  } ln;
  auto *learn_cmd =
      app.add_subcommand("learn", "train, extract and select end to end");
  learn_cmd->add_option("--data", ln.data, "training JSONL")->required();
  learn_cmd->add_option("--test", ln.test, "held-out JSONL to score");
  learn_cmd->add_option("--archs", ln.archs, "architectures, e.g. 1;3,1");
  learn_cmd->add_option("--restarts", ln.lc.restarts, "restarts per arch");
  learn_cmd->add_option("--budget", ln.lc.time_budget, "total seconds");
  learn_cmd->add_option("--threshold", ln.lc.size_threshold, "size cutoff");
  learn_cmd->add_option("--lr", ln.lc.train.learning_rate, "learning rate");
  learn_cmd->add_option("--batch", ln.lc.train.batch_size, "mini-batch size");
  learn_cmd->add_option("--epochs", ln.lc.train.max_epochs, "epoch cap");
  learn_cmd->add_flag("--metric", [&](size_t) { ln.lc.qualitative = false; },
                      "learn metric operators too");
  learn_cmd->add_option("--seed", ln.seed, "master seed");
  learn_cmd->add_option("--report", ln.report, "detailed JSON report path");
  learn_cmd->callback([&] {
    Dataset d = read_jsonl_file(ln.data);
    LearnConfig lc = ln.lc;
    lc.architectures = parse_archs(ln.archs);
    lc.seed = ln.seed;
    LearnReport rep = run_learn(d, lc);
    std::cout << "formula: " << to_string(rep.formula) << "\n";
    std::cout << "size: " << formula_size(rep.formula)
              << (rep.fallback ? " (over threshold, fallback)" : "") << "\n";
    std::cout << "train accuracy: "
              << formula_metrics(rep.formula, d).accuracy << "\n";
    if (!ln.test.empty()) {
      Dataset t = read_jsonl_file(ln.test);
      Metrics m = formula_metrics(rep.formula, t);
      std::cout << "test accuracy: " << m.accuracy << " precision: "
                << m.precision << " recall: " << m.recall << "\n";
    }
    if (!ln.report.empty())
      write_text(ln.report, learn_report_to_json(rep).dump(2) + "\n");
  });

  /* ---- baseline ---- */
  struct {
    std::string data, method = "exact";
    int max_size = 4;
    double budget = 60;
    bool metric = false;
    uint64_t seed = 0;
  } bl;
  auto *baseline_cmd =
      app.add_subcommand("baseline", "enumerative reference learners");
  baseline_cmd->add_option("--data", bl.data, "training JSONL")->required();
  baseline_cmd
      ->add_option("--method", bl.method, "exact | max-accuracy")
      ->check(CLI::IsMember({"exact", "max-accuracy"}));
  baseline_cmd->add_option("--max-size", bl.max_size, "size cap");
  baseline_cmd->add_option("--budget", bl.budget, "wall-clock seconds");
  baseline_cmd->add_flag("--metric", bl.metric, "enumerate X/WX too");
  baseline_cmd->add_option("--seed", bl.seed, "accepted for uniformity");
  baseline_cmd->callback([&] {
    Dataset d = read_jsonl_file(bl.data);
    SearchBudget budget;
    budget.max_size = bl.max_size;
    budget.budget_seconds = bl.budget;
    budget.props = d.props;
    budget.qualitative = !bl.metric;
    if (bl.method == "exact") {
      ExactResult r = exact_learner(d, budget);
      switch (r.verdict) {
      case SearchVerdict::Found:
        std::cout << "found: " << to_string(r.formula) << "\n";
        break;
      case SearchVerdict::Timeout:
        std::cout << "timeout: no consistent formula within budget "
                     "(sizes fully scanned: "
                  << r.size_reached << ")\n";
        break;
      case SearchVerdict::Inconsistent:
        std::cout << "inconsistent: a trace carries both labels\n";
        break;
      }
    } else {
      MaxAccuracyResult r = max_accuracy_learner(d, budget);
      std::cout << "formula: " << to_string(r.formula) << "\naccuracy: "
                << r.accuracy << (r.budget_hit ? " (budget hit)" : "")
                << "\n";
    }
  });

  /* ---- experiment ---- */
  ExperimentConfig ec;
  struct {
    std::string config, archs;
    std::string out, aggregate, cells;
    bool no_neural = false, dump_config = false;
  } ep;
  auto *experiment_cmd =
      app.add_subcommand("experiment", "full sweep over random targets");
  experiment_cmd->add_option("--config", ep.config,
                             "JSON config (flags override it)");
  experiment_cmd->add_option("--min-size", ec.min_size, "smallest target");
  experiment_cmd->add_option("--max-size", ec.max_size, "largest target");
  experiment_cmd->add_option("--per-size", ec.formulas_per_size,
                             "formulas per size");
  experiment_cmd->add_option("--props", ec.num_props, "proposition count");
  experiment_cmd->add_option("--length", ec.trace_length, "trace length");
  experiment_cmd->add_option("--train-pos", ec.train_pos, "train positives");
  experiment_cmd->add_option("--train-neg", ec.train_neg, "train negatives");
  experiment_cmd->add_option("--test-pos", ec.test_pos, "test positives");
  experiment_cmd->add_option("--test-neg", ec.test_neg, "test negatives");
  experiment_cmd->add_option("--noise", ec.noise, "train label flip rate");
  experiment_cmd->add_option("--budget", ec.learn.time_budget,
                             "seconds per formula for the neural learner");
  experiment_cmd->add_option("--archs", ep.archs, "architecture list");
  experiment_cmd->add_option("--restarts", ec.learn.restarts,
                             "restarts per architecture");
  experiment_cmd->add_option("--threshold", ec.learn.size_threshold,
                             "selection size threshold");
  experiment_cmd->add_flag("--no-neural", ep.no_neural, "skip the network");
  experiment_cmd->add_flag("--run-exact", ec.run_exact, "run exact");
  experiment_cmd->add_flag("--run-max-accuracy", ec.run_max_accuracy,
                           "run max-accuracy");
  experiment_cmd->add_option("--baseline-max-size", ec.baseline_max_size,
                             "baseline size cap");
  experiment_cmd->add_option("--baseline-budget", ec.baseline_budget,
                             "baseline seconds");
  experiment_cmd->add_option("--seed", ec.seed, "master seed");
  experiment_cmd->add_option("--jobs", ec.jobs, "parallel cells");
  experiment_cmd->add_option("--out", ep.out, "results CSV (default stdout)");
  experiment_cmd->add_option("--aggregate", ep.aggregate, "aggregate CSV");
  experiment_cmd->add_option("--cells", ep.cells, "per-cell JSON detail");
  experiment_cmd->add_flag("--dump-config", ep.dump_config,
                           "print the effective config and exit");
  experiment_cmd->callback([&] {
    if (!ep.archs.empty())
      ec.learn.architectures = parse_archs(ep.archs);
    if (ep.no_neural)
      ec.run_neural = false;
    if (ep.dump_config) {
      std::cout << experiment_config_to_json(ec).dump(2) << "\n";
      return;
    }
    ExperimentResults res = run_experiment(ec);
    std::string csv = results_csv(res.rows);
    if (ep.out.empty())
      std::cout << csv;
    else
      write_text(ep.out, csv);
    if (!ep.aggregate.empty())
      write_text(ep.aggregate, aggregate_csv(aggregate_rows(res.rows)));
    if (!ep.cells.empty()) {
      json cells = json::array();
      for (const auto &c : res.cells) {
        json jc = {{"size", c.size},
                   {"index", c.index},
                   {"target", c.target},
                   {"target_resamples", c.target_resamples}};
        if (c.has_learn)
          jc["learn"] = learn_report_to_json(c.learn);
        cells.push_back(std::move(jc));
      }
      write_text(ep.cells, cells.dump(2) + "\n");
    }
  });

  /* ---- eval ---- */
  struct {
    std::string formula, data;
  } ev;
  auto *eval_cmd = app.add_subcommand("eval", "score a formula on a dataset");
  eval_cmd->add_option("--formula", ev.formula, "formula text")->required();
  eval_cmd->add_option("--data", ev.data, "JSONL dataset")->required();
  eval_cmd->callback([&] {
    Dataset d = read_jsonl_file(ev.data);
    Formula f = parse(ev.formula, d.props);
    std::cout << metrics_to_json(formula_metrics(f, d)).dump(2) << "\n";
  });

  /* ---- report ---- */
  bool schema = false;
  auto *report_cmd =
      app.add_subcommand("report", "document the CSV outputs");
  report_cmd->add_flag("--schema", schema, "print the column schemas");
  report_cmd->callback([&] {
    std::cout << "results columns:\n"
              << results_csv_schema() << "\naggregate columns:\n"
              << aggregate_csv_schema();
  });

  /* a config file must load before flag parsing so flags override it */
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) {
        std::cerr << "cannot open config " << argv[i + 1] << "\n";
        return 1;
      }
      try {
        json j;
        in >> j;
        experiment_config_from_json(j, ec);
      } catch (const std::exception &e) {
        std::cerr << "bad config: " << e.what() << "\n";
        return 1;
      }
    }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
