#pragma once

#include "ltlf/formula.hpp"
#include "ltlf/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ltlf {

/* One recurrent temporal filter. Output is computed backward in time:
 *   out[t] = act( sum_j wp[j]*in[j][t] + sum_j wm[j]*in[j][t+1]
 *               + rect(wq)*out[t+1] + bias )
 * where in[j][T] and out[T] are base values: the activation of the producing
 * sequence's base pre-activation (input_base for propositions, out_base for
 * filters). Soft mode: act = sigmoid with steepness beta, rect(x) =
 * max(x, alpha*x). Hard mode: act = step with act(x)=1 iff x>0, rect(x) =
 * max(0, x). */
struct FilterWeights {
  std::vector<double> wp; /* weights on the current step of each input */
  std::vector<double> wm; /* weights on the next step of each input */
  double wq = 0;          /* weight on the filter's own next output */
  double bias = 0;
  double out_base = 0; /* pre-activation of this filter's base value */
};

struct Layer {
  std::vector<FilterWeights> filters;
};

struct Network {
  std::vector<int> architecture; /* filters per layer; last entry is 1 */
  int num_inputs = 0;            /* propositions feeding the first layer */
  bool qualitative = true;       /* metric weights pinned at zero */
  std::vector<double> input_base; /* base pre-activation per proposition */
  std::vector<Layer> layers;
  double alpha = 0.21; /* rectifier negative slope, soft mode */
  double beta = 1.0;   /* sigmoid steepness, soft mode */

  int num_layers() const { return (int)layers.size(); }

  /* flat parameter vector: input_base, then per layer, per filter:
   * wp, wm, wq, bias, out_base */
  int num_params() const;
  std::vector<double> params() const;
  void set_params(const std::vector<double> &p);
};

/* zero-initialized network; architecture must end with one filter */
Network make_network(const std::vector<int> &architecture, int num_inputs,
                     bool qualitative);
/* all parameters uniform in [-1, 1] (metric weights zero when qualitative) */
Network random_network(const std::vector<int> &architecture, int num_inputs,
                       bool qualitative, uint64_t seed);

enum class EvalMode { Soft, Hard };

/* act[l][i][t] for l = 1..L, t in [0, T] with act[l][i][T] the activated
 * base value; act[0][j][t] holds the inputs and their base. Prediction is
 * the final filter's activation at t = 0. */
struct Activations {
  std::vector<std::vector<std::vector<double>>> act;
  double prediction = 0;
};

Activations forward(const Network &net, const Trace &trace, EvalMode mode);
double predict(const Network &net, const Trace &trace, EvalMode mode);

/* mean binary cross-entropy of soft predictions, clamped to
 * [1e-7, 1 - 1e-7] */
double loss(const Network &net, const Dataset &batch);

/* d loss / d params by reverse-mode differentiation through the recurrence;
 * metric-weight entries are zero for qualitative networks */
std::vector<double> gradients(const Network &net, const Dataset &batch);

/* fraction of traces whose hard-mode prediction matches the label */
double hard_accuracy(const Network &net, const Dataset &d);
Metrics network_metrics(const Network &net, const Dataset &d);

struct TrainConfig {
  double learning_rate = 0.005;
  int batch_size = 100;
  int max_epochs = 3000;
  double alpha0 = 0.21;
  double alpha_step = -7e-5; /* added per epoch, clamped at 0 */
  double beta0 = 1.0;
  double beta_step = 0.01; /* added per epoch */
  uint64_t seed = 0;       /* batch shuffling */
  bool early_stop = true;  /* stop at 100% hard training accuracy */
  double budget_seconds = 0; /* wall-clock cap, 0 = none, epoch granularity */
};

struct EpochLog {
  int epoch = 0;
  double loss = 0, soft_acc = 0, hard_acc = 0, alpha = 0, beta = 0;
};

struct TrainResult {
  Network net;
  std::vector<EpochLog> log;
  bool converged = false;        /* early stop fired */
  bool budget_exhausted = false; /* wall clock ended training */
  int epochs_run = 0;
};

/* mini-batch Adam on the flat parameter vector; per-epoch reshuffle from
 * cfg.seed; schedules alpha/beta linearly per epoch; deterministic */
TrainResult train(const Network &init, const Dataset &data,
                  const TrainConfig &cfg);

/* CSV: epoch,loss,soft_acc,hard_acc,alpha,beta */
std::string training_log_csv(const std::vector<EpochLog> &log);

/* Hand-set weights whose hard-mode output computes the formula exactly, one
 * filter per operator node (negations fold into the consumer's weights,
 * literal-only operands fold into biases, deep operands are lifted through
 * identity filters). Rejects shapes whose next-step operands need the same
 * proposition base to be both 0 and 1. */
Network teacher_network(const Formula &f, const PropositionSet &props);

struct Checkpoint {
  Network net;
  int epoch = 0;
  uint64_t seed = 0;
};

/* JSON checkpoint; read(write(c)) reproduces parameters bit-exactly */
void write_checkpoint(const Checkpoint &c, std::ostream &out);
Checkpoint read_checkpoint(std::istream &in);
void write_checkpoint_file(const Checkpoint &c, const std::string &path);
Checkpoint read_checkpoint_file(const std::string &path);

} // namespace ltlf
