#include "ltlf/trace.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace ltlf {

namespace {

uint32_t step_mask(int num_props) {
  return num_props >= 32 ? ~uint32_t(0) : (uint32_t(1) << num_props) - 1;
}

void check_props(const PropositionSet &props) {
  if (props.size() < 1 || props.size() > 30)
    throw std::invalid_argument("proposition count must be in [1, 30]");
}

} // namespace

Trace random_trace(const PropositionSet &props, int length, uint64_t seed) {
  check_props(props);
  if (length < 1)
    throw std::invalid_argument("trace length must be >= 1");
  std::mt19937_64 rng(seed);
  Trace t;
  t.num_props = props.size();
  t.steps.resize(length);
  uint32_t mask = step_mask(props.size());
  for (int i = 0; i < length; ++i)
    t.steps[i] = (uint32_t)rng() & mask;
  return t;
}

Trace pad_stutter(const Trace &t, int target_len) {
  if (t.length() < 1)
    throw std::invalid_argument("cannot pad an empty trace");
  if (t.length() > target_len)
    throw std::invalid_argument("trace longer than padding target");
  Trace out = t;
  out.steps.resize(target_len, t.steps.back());
  return out;
}

Dataset build_dataset(const Formula &target, const PropositionSet &props,
                      int n_pos, int n_neg, int length,
                      const std::vector<LabeledTrace> &char_sample,
                      uint64_t seed) {
  check_props(props);
  if (!target.valid())
    throw std::invalid_argument("invalid target formula");
  if (n_pos < 0 || n_neg < 0 || length < 1)
    throw std::invalid_argument("dataset shape out of range");
  if (!is_qualitative(target))
    throw std::invalid_argument(
        "dataset construction pads traces, which needs a qualitative target");

  std::mt19937_64 rng(seed);

  /* characteristic traces first, padded and relabel-checked */
  std::vector<LabeledTrace> kept;
  int dropped = 0;
  for (const auto &lt : char_sample) {
    if (lt.trace.length() < 1 || lt.trace.length() > length) {
      ++dropped;
      continue;
    }
    if (lt.trace.num_props != props.size())
      throw std::invalid_argument("characteristic trace width mismatch");
    Trace padded = pad_stutter(lt.trace, length);
    bool label = satisfies(target, padded);
    if (label != lt.label)
      throw dataset_error("characteristic sample label disagrees with target");
    kept.push_back({std::move(padded), label});
  }
  if (dropped > 0)
    std::cerr << "build_dataset: dropped " << dropped
              << " characteristic trace(s) outside length bounds\n";

  /* per-class surplus is subsampled uniformly, original order retained */
  auto subsample_class = [&](bool cls, int quota) {
    std::vector<int> idx;
    for (int i = 0; i < (int)kept.size(); ++i)
      if (kept[i].label == cls)
        idx.push_back(i);
    if ((int)idx.size() <= quota)
      return;
    for (int i = 0; i < quota; ++i) {
      int j = i + (int)(rng() % (uint64_t)(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    std::vector<char> keep_flag(kept.size(), 0);
    for (int i = 0; i < quota; ++i)
      keep_flag[idx[i]] = 1;
    std::vector<LabeledTrace> filtered;
    for (int i = 0; i < (int)kept.size(); ++i)
      if (kept[i].label != cls || keep_flag[i])
        filtered.push_back(std::move(kept[i]));
    kept = std::move(filtered);
  };
  subsample_class(true, n_pos);
  subsample_class(false, n_neg);

  Dataset d;
  d.props = props;
  d.traces = std::move(kept);
  int char_count = (int)d.traces.size();
  int have_pos = 0, have_neg = 0;
  for (const auto &lt : d.traces)
    (lt.label ? have_pos : have_neg)++;

  /* Rejection-sample the remainder.  A class that has never hit in a
   * million draws is treated as unreachable (p ≲ 1e-6) and aborted early;
   * a class with at least one hit is rare but fillable (a lone G-literal
   * at length 15 sits near p = 2^-15) and gets the long budget. */
  constexpr uint64_t kProbeBudget = 1000000;
  constexpr uint64_t kFullBudget = 100000000;
  uint64_t att_pos = 0, att_neg = 0, hit_pos = 0, hit_neg = 0;
  uint32_t mask = step_mask(props.size());
  Trace fresh;
  fresh.num_props = props.size();
  fresh.steps.resize(length);
  while (have_pos < n_pos || have_neg < n_neg) {
    if (have_pos < n_pos &&
        ++att_pos > (hit_pos ? kFullBudget : kProbeBudget))
      throw dataset_error("could not draw enough positive traces for " +
                          to_string(target));
    if (have_neg < n_neg &&
        ++att_neg > (hit_neg ? kFullBudget : kProbeBudget))
      throw dataset_error("could not draw enough negative traces for " +
                          to_string(target));
    for (int i = 0; i < length; ++i)
      fresh.steps[i] = (uint32_t)rng() & mask;
    bool label = satisfies(target, fresh);
    if (label) {
      ++hit_pos;
      if (have_pos < n_pos) {
        d.traces.push_back({fresh, true});
        ++have_pos;
      }
    } else {
      ++hit_neg;
      if (have_neg < n_neg) {
        d.traces.push_back({fresh, false});
        ++have_neg;
      }
    }
  }

  d.provenance.target = to_string(target);
  d.provenance.seed = seed;
  d.provenance.noise = 0.0;
  d.provenance.char_count = char_count;
  return d;
}

Dataset inject_noise(const Dataset &d, double rate, uint64_t seed) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("noise rate must be in [0, 1]");
  Dataset out = d;
  int k = (int)std::floor(rate * d.size());
  std::vector<int> idx(d.size());
  for (int i = 0; i < d.size(); ++i)
    idx[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    int j = i + (int)(rng() % (uint64_t)(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  for (int i : idx)
    out.traces[i].label = !out.traces[i].label;
  out.provenance.noise = rate;
  out.provenance.flips = idx;
  return out;
}

namespace {

using nlohmann::json;

json header_json(const Dataset &d) {
  json h;
  h["char_count"] = d.provenance.char_count;
  h["flips"] = d.provenance.flips;
  h["noise"] = d.provenance.noise;
  json names = json::array();
  for (int j = 0; j < d.props.size(); ++j)
    names.push_back(d.props.name(j));
  h["props"] = names;
  h["seed"] = d.provenance.seed;
  h["target"] = d.provenance.target;
  return h;
}

} // namespace

void write_jsonl(const Dataset &d, std::ostream &out) {
  out << header_json(d).dump() << '\n';
  for (const auto &lt : d.traces) {
    json row;
    row["label"] = lt.label ? 1 : 0;
    json steps = json::array();
    for (int t = 0; t < lt.trace.length(); ++t) {
      json bits = json::array();
      for (int j = 0; j < lt.trace.num_props; ++j)
        bits.push_back(lt.trace.value(t, j) ? 1 : 0);
      steps.push_back(std::move(bits));
    }
    row["steps"] = std::move(steps);
    out << row.dump() << '\n';
  }
  if (!out)
    throw dataset_error("dataset write failed");
}

Dataset read_jsonl(std::istream &in) {
  std::string line;
  if (!std::getline(in, line))
    throw dataset_error("dataset stream is empty");
  try {
    json h = json::parse(line);
    Dataset d;
    std::vector<std::string> names;
    for (const auto &n : h.at("props"))
      names.push_back(n.get<std::string>());
    d.props = PropositionSet(names);
    d.provenance.target = h.at("target").get<std::string>();
    d.provenance.seed = h.at("seed").get<uint64_t>();
    d.provenance.noise = h.at("noise").get<double>();
    d.provenance.char_count = h.at("char_count").get<int>();
    d.provenance.flips = h.at("flips").get<std::vector<int>>();
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      json row = json::parse(line);
      LabeledTrace lt;
      lt.label = row.at("label").get<int>() != 0;
      lt.trace.num_props = d.props.size();
      for (const auto &bits : row.at("steps")) {
        if ((int)bits.size() != d.props.size())
          throw dataset_error("trace width does not match header");
        uint32_t step = 0;
        for (int j = 0; j < d.props.size(); ++j)
          if (bits[j].get<int>() != 0)
            step |= uint32_t(1) << j;
        lt.trace.steps.push_back(step);
      }
      if (lt.trace.length() < 1)
        throw dataset_error("empty trace in dataset");
      d.traces.push_back(std::move(lt));
    }
    return d;
  } catch (const json::exception &e) {
    throw dataset_error(std::string("dataset parse failed: ") + e.what());
  }
}

void write_jsonl_file(const Dataset &d, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw dataset_error("cannot open " + path + " for writing");
  write_jsonl(d, out);
}

Dataset read_jsonl_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw dataset_error("cannot open " + path);
  return read_jsonl(in);
}

Metrics formula_metrics(const Formula &f, const Dataset &d) {
  if (d.size() == 0)
    throw std::invalid_argument("empty dataset");
  Metrics m;
  for (const auto &lt : d.traces) {
    bool pred = satisfies(f, lt.trace);
    if (pred && lt.label)
      ++m.tp;
    else if (pred && !lt.label)
      ++m.fp;
    else if (!pred && lt.label)
      ++m.fn;
    else
      ++m.tn;
  }
  m.accuracy = double(m.tp + m.tn) / double(d.size());
  m.precision = (m.tp + m.fp) > 0 ? double(m.tp) / double(m.tp + m.fp) : 1.0;
  m.recall = (m.tp + m.fn) > 0 ? double(m.tp) / double(m.tp + m.fn) : 1.0;
  return m;
}

} // namespace ltlf
