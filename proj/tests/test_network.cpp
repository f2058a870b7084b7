#include "doctest.h"
#include "oracle.hpp"

#include "ltlf/formula.hpp"
#include "ltlf/network.hpp"
#include "ltlf/trace.hpp"
#include "ltlf/util.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace ltlf;

namespace {

const PropositionSet kAB({"a", "b"});

Dataset tiny_dataset(const Formula &target, int n, int length,
                     uint64_t seed) {
  Dataset d;
  d.props = kAB;
  for (int i = 0; i < n; ++i) {
    Trace t = random_trace(kAB, length, seed_for(seed, (uint64_t)i));
    d.traces.push_back({t, satisfies(target, t)});
  }
  return d;
}

} // namespace

TEST_CASE("teacher networks replay their formulas in hard mode") {
  auto traces = oracle::traces_up_to(2, 4);
  for (const char *s :
       {"a", "!a", "true", "false", "a & b", "a | !b", "a U b", "a W b",
        "a R b", "F a", "G a", "X a", "WX a", "X !a", "WX !b", "!a U !b",
        "F (a & b)", "G (a | b)", "(a U b) & F a", "a U (b U a)",
        "X (a & b)", "G WX a", "a U X b", "a & F b", "F a | !b",
        "!a U G b", "(a U b) W b", "true U F a", "G a R !b"}) {
    Formula f = parse(s, kAB);
    Network net = teacher_network(f, kAB);
    INFO("formula ", std::string(s));
    for (const Trace &tr : traces) {
      Activations acts = forward(net, tr, EvalMode::Hard);
      for (int t = 0; t < tr.length(); ++t) {
        bool want = evaluate(f, tr, t);
        CHECK((acts.act.back()[0][t] > 0.5) == want);
      }
      CHECK((predict(net, tr, EvalMode::Hard) > 0.5) == satisfies(f, tr));
    }
  }
}

TEST_CASE("teacher weights for the core operators are pinned") {
  Network u = teacher_network(parse("a U b", kAB), kAB);
  REQUIRE(u.num_layers() >= 1);
  const FilterWeights &fu = u.layers[0].filters[0];
  CHECK(fu.wp == std::vector<double>({1, 2}));
  CHECK(fu.wq == 1);
  CHECK(fu.bias == -1.5);
  CHECK(fu.out_base == 0);
  Network w = teacher_network(parse("a W b", kAB), kAB);
  CHECK(w.layers[0].filters[0].out_base == 1);
  Network g = teacher_network(parse("G a", kAB), kAB);
  const FilterWeights &fg = g.layers[0].filters[0];
  CHECK(fg.wp == std::vector<double>({1, 0}));
  CHECK(fg.wq == 1);
  CHECK(fg.bias == -1.5);
  CHECK(fg.out_base == 1);
  Network x = teacher_network(parse("X a", kAB), kAB);
  const FilterWeights &fx = x.layers[0].filters[0];
  CHECK(fx.wm == std::vector<double>({1, 0}));
  CHECK(fx.bias == -0.5);
  CHECK(x.qualitative == false);
}

TEST_CASE("conflicting next-step base requirements are rejected") {
  /* X a wants base(a)=0 while WX a wants base(a)=1 */
  CHECK_THROWS_AS(teacher_network(parse("X a & WX a", kAB), kAB),
                  std::invalid_argument);
  CHECK_THROWS_AS(teacher_network(parse("X a & X !a", kAB), kAB),
                  std::invalid_argument);
}

TEST_CASE("a zero network predicts an even coin") {
  Network net = make_network({2, 1}, 2, true);
  Trace t = oracle::trace_of(2, {1, 2, 3});
  CHECK(predict(net, t, EvalMode::Soft) == doctest::Approx(0.5));
  Dataset d = tiny_dataset(parse("F a", kAB), 10, 5, 3);
  CHECK(loss(net, d) == doctest::Approx(std::log(2.0)));
}

/* marks the flat-parameter slots holding metric weights; those are pinned
 * at zero in qualitative networks, so difference quotients must not probe
 * them there */
static std::vector<char> metric_weight_mask(const Network &net) {
  std::vector<char> mask(net.num_params(), 0);
  int off = net.num_inputs;
  int prev = net.num_inputs;
  for (const auto &layer : net.layers) {
    for (size_t i = 0; i < layer.filters.size(); ++i) {
      for (int j = 0; j < prev; ++j)
        mask[off + prev + j] = 1;
      off += 2 * prev + 3;
    }
    prev = (int)layer.filters.size();
  }
  return mask;
}

TEST_CASE("analytic gradients match central finite differences") {
  const double h = 1e-4;
  int checked = 0;
  for (uint64_t seed = 0; checked < 6 && seed < 40; ++seed) {
    Network net = random_network({2, 1}, 2, (seed % 2) == 0, seed);
    net.alpha = 0.15;
    net.beta = 1.5;
    /* rectifier and leak kinks make one-sided differences lie; skip draws
     * that sit on them */
    bool kinky = false;
    for (const auto &layer : net.layers)
      for (const auto &f : layer.filters)
        if (std::abs(f.wq) < 1e-3)
          kinky = true;
    if (kinky)
      continue;
    Dataset d = tiny_dataset(parse("a U b", kAB), 8, 5, seed + 50);
    std::vector<double> grad = gradients(net, d);
    std::vector<double> theta = net.params();
    std::vector<char> pinned = metric_weight_mask(net);
    REQUIRE((int)grad.size() == net.num_params());
    double worst = 0;
    for (size_t i = 0; i < theta.size(); ++i) {
      if (net.qualitative && pinned[i])
        continue;
      Network plus = net, minus = net;
      std::vector<double> tp = theta, tm = theta;
      tp[i] += h;
      tm[i] -= h;
      plus.set_params(tp);
      minus.set_params(tm);
      double num = (loss(plus, d) - loss(minus, d)) / (2 * h);
      /* the difference quotient carries ~1e-12 rounding noise; floor the
       * denominator above it so numerically-zero slots cannot fail */
      double denom = std::max({std::abs(num), std::abs(grad[i]), 1e-6});
      double rel = std::abs(num - grad[i]) / denom;
      if (std::abs(num) < 1e-8 && std::abs(grad[i]) < 1e-8)
        rel = 0;
      worst = std::max(worst, rel);
    }
    INFO("seed ", seed, " worst rel err ", worst);
    CHECK(worst < 1e-4);
    ++checked;
  }
  CHECK(checked == 6);
}

TEST_CASE("qualitative gradients never touch the metric weights") {
  Network net = random_network({2, 1}, 2, true, 5);
  for (const auto &layer : net.layers)
    for (const auto &f : layer.filters)
      for (double w : f.wm)
        CHECK(w == 0.0);
  Dataset d = tiny_dataset(parse("F a", kAB), 10, 5, 8);
  TrainConfig tc;
  tc.max_epochs = 20;
  tc.batch_size = 5;
  TrainResult res = train(net, d, tc);
  for (const auto &layer : res.net.layers)
    for (const auto &f : layer.filters)
      for (double w : f.wm)
        CHECK(w == 0.0);
}

TEST_CASE("training fits an easy target and logs deterministically") {
  Formula target = parse("F a", kAB);
  Dataset d = build_dataset(target, kAB, 25, 25, 8, {}, 6);
  Network init = random_network({1}, 2, true, 17);
  TrainConfig tc;
  tc.max_epochs = 800;
  tc.batch_size = 10;
  tc.seed = 4;
  TrainResult a = train(init, d, tc);
  CHECK(a.converged);
  CHECK(hard_accuracy(a.net, d) == 1.0);
  CHECK(a.epochs_run == (int)a.log.size());
  TrainResult b = train(init, d, tc);
  CHECK(training_log_csv(a.log) == training_log_csv(b.log));
  CHECK(a.net.params() == b.net.params());
  /* the log header names its columns */
  CHECK(training_log_csv(a.log).rfind("epoch,loss,soft_acc,hard_acc,alpha,beta\n",
                                      0) == 0);
}

TEST_CASE("the budget stops training between epochs") {
  Dataset d = tiny_dataset(parse("a U b", kAB), 40, 10, 2);
  Network init = random_network({3, 1}, 2, true, 3);
  TrainConfig tc;
  tc.max_epochs = 100000;
  tc.early_stop = false;
  tc.budget_seconds = 0.05;
  TrainResult res = train(init, d, tc);
  CHECK(res.budget_exhausted);
  CHECK(res.epochs_run < 100000);
}

TEST_CASE("constant predictors have textbook metrics") {
  Dataset d = tiny_dataset(parse("F a", kAB), 16, 6, 12);
  int positives = 0;
  for (const auto &lt : d.traces)
    positives += lt.label ? 1 : 0;
  Network yes = make_network({1}, 2, true);
  std::vector<double> p = yes.params();
  p[p.size() - 2] = 5.0; /* bias */
  yes.set_params(p);
  Metrics my = network_metrics(yes, d);
  CHECK(my.tp == positives);
  CHECK(my.recall == 1.0);
  CHECK(my.accuracy == doctest::Approx(positives / 16.0));
  Network no = make_network({1}, 2, true);
  p = no.params();
  p[p.size() - 2] = -5.0;
  no.set_params(p);
  Metrics mn = network_metrics(no, d);
  CHECK(mn.recall == 0.0);
  CHECK(mn.precision == 1.0); /* nothing predicted positive */
}

TEST_CASE("checkpoints round trip bit for bit") {
  Network net = random_network({3, 1}, 2, false, 99);
  net.alpha = 0.123456789;
  net.beta = 2.71828182845904523;
  Checkpoint c{net, 42, 1234567890123456789ull};
  std::stringstream buf;
  write_checkpoint(c, buf);
  Checkpoint back = read_checkpoint(buf);
  CHECK(back.net.params() == net.params());
  CHECK(back.net.architecture == net.architecture);
  CHECK(back.net.num_inputs == net.num_inputs);
  CHECK(back.net.qualitative == net.qualitative);
  CHECK(back.net.alpha == net.alpha);
  CHECK(back.net.beta == net.beta);
  CHECK(back.epoch == 42);
  CHECK(back.seed == c.seed);
  std::stringstream bad("{\"version\": 1}");
  CHECK_THROWS_AS(read_checkpoint(bad), std::runtime_error);
}

TEST_CASE("parameter vectors round trip through the flat layout") {
  Network net = random_network({3, 2, 1}, 3, false, 7);
  std::vector<double> p = net.params();
  CHECK((int)p.size() == net.num_params());
  Network other = make_network({3, 2, 1}, 3, false);
  other.set_params(p);
  CHECK(other.params() == p);
  CHECK_THROWS_AS(net.set_params(std::vector<double>(3, 0.0)),
                  std::invalid_argument);
}
