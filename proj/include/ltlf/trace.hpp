#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlf/formula.hpp"

namespace ltlf {

/* Finite trace over up to 32 propositions; step bits are proposition
 * indices. Traces used for learning are nonempty. */
struct Trace {
  int num_props = 0;
  std::vector<uint32_t> steps;

  int length() const { return (int)steps.size(); }
  bool value(int t, int prop) const { return (steps[t] >> prop) & 1u; }
  void set(int t, int prop, bool v) {
    if (v)
      steps[t] |= (1u << prop);
    else
      steps[t] &= ~(1u << prop);
  }
  bool operator==(const Trace &o) const {
    return num_props == o.num_props && steps == o.steps;
  }
};

struct LabeledTrace {
  Trace trace;
  bool label = false;
  bool operator==(const LabeledTrace &o) const {
    return label == o.label && trace == o.trace;
  }
};

struct DatasetProvenance {
  std::string target;      // formula text the labels came from
  uint64_t seed = 0;       // dataset-level seed
  double noise = 0.0;      // label-flip rate applied
  int char_count = 0;      // leading traces that came from the char sample
  std::vector<int> flips;  // indices whose labels were inverted
  bool operator==(const DatasetProvenance &o) const {
    return target == o.target && seed == o.seed && noise == o.noise &&
           char_count == o.char_count && flips == o.flips;
  }
};

struct Dataset {
  PropositionSet props;
  std::vector<LabeledTrace> traces;
  DatasetProvenance provenance;

  int size() const { return (int)traces.size(); }
  bool operator==(const Dataset &o) const {
    return props == o.props && traces == o.traces && provenance == o.provenance;
  }
};

class dataset_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/* Fair-coin trace of the given length. */
Trace random_trace(const PropositionSet &props, int length, uint64_t seed);

/* Repeats the final assignment until the trace has target_len steps. */
Trace pad_stutter(const Trace &t, int target_len);

/* Builds a labeled dataset for a qualitative target:
 * the characteristic sample first (padded to `length`; over-long or empty
 * entries are dropped with a warning to stderr, per-class surplus is
 * subsampled), then rejection-sampled random traces until the dataset holds
 * exactly n_pos positives and n_neg negatives. Throws dataset_error when one
 * class cannot be filled: a class with zero hits in 1e6 draws is treated as
 * unreachable, one with hits may draw up to 1e8 times before giving up. */
Dataset build_dataset(const Formula &target, const PropositionSet &props,
                      int n_pos, int n_neg, int length,
                      const std::vector<LabeledTrace> &char_sample,
                      uint64_t seed);

/* Flips the labels of floor(rate*|d|) distinct uniformly chosen traces;
 * records the flip set in provenance. Same seed, same flips. */
Dataset inject_noise(const Dataset &d, double rate, uint64_t seed);

/* JSON-lines round trip. Header line:
 *   {"char_count":C,"flips":[...],"noise":R,"props":[...],"seed":S,"target":"..."}
 * then one {"label":0|1,"steps":[[b,...],...]} object per trace, bits in
 * header proposition order. read(write(d)) == d. */
void write_jsonl(const Dataset &d, std::ostream &out);
Dataset read_jsonl(std::istream &in);
void write_jsonl_file(const Dataset &d, const std::string &path);
Dataset read_jsonl_file(const std::string &path);

struct Metrics {
  double accuracy = 0, precision = 0, recall = 0;
  int tp = 0, tn = 0, fp = 0, fn = 0;
};

/* Accuracy of a formula against dataset labels (satisfies at t=0).
 * Empty denominators give precision/recall 1. */
Metrics formula_metrics(const Formula &f, const Dataset &d);

} // namespace ltlf
