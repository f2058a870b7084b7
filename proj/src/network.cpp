#include "ltlf/network.hpp"

#include "ltlf/util.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ltlf {

namespace {

int input_width(const Network &n, int layer) {
  return layer == 0 ? n.num_inputs : (int)n.layers[layer - 1].filters.size();
}

void check_network(const Network &n) {
  if (n.num_inputs < 1)
    throw std::invalid_argument("network needs at least one input");
  if (n.layers.empty())
    throw std::invalid_argument("network needs at least one layer");
  if (n.layers.back().filters.size() != 1)
    throw std::invalid_argument("final layer must hold exactly one filter");
  if ((int)n.input_base.size() != n.num_inputs)
    throw std::invalid_argument("input base width mismatch");
  for (size_t l = 0; l < n.layers.size(); ++l) {
    int w = input_width(n, (int)l);
    if (n.layers[l].filters.empty())
      throw std::invalid_argument("empty layer");
    for (const auto &f : n.layers[l].filters)
      if ((int)f.wp.size() != w || (int)f.wm.size() != w)
        throw std::invalid_argument("filter width mismatch");
  }
}

} // namespace

int Network::num_params() const {
  int n = num_inputs;
  for (size_t l = 0; l < layers.size(); ++l) {
    int w = l == 0 ? num_inputs : (int)layers[l - 1].filters.size();
    n += (int)layers[l].filters.size() * (2 * w + 3);
  }
  return n;
}

std::vector<double> Network::params() const {
  std::vector<double> p;
  p.reserve(num_params());
  p.insert(p.end(), input_base.begin(), input_base.end());
  for (const auto &layer : layers)
    for (const auto &f : layer.filters) {
      p.insert(p.end(), f.wp.begin(), f.wp.end());
      p.insert(p.end(), f.wm.begin(), f.wm.end());
      p.push_back(f.wq);
      p.push_back(f.bias);
      p.push_back(f.out_base);
    }
  return p;
}

void Network::set_params(const std::vector<double> &p) {
  if ((int)p.size() != num_params())
    throw std::invalid_argument("parameter vector length mismatch");
  size_t k = 0;
  for (int j = 0; j < num_inputs; ++j)
    input_base[j] = p[k++];
  for (auto &layer : layers)
    for (auto &f : layer.filters) {
      for (auto &w : f.wp)
        w = p[k++];
      for (auto &w : f.wm)
        w = p[k++];
      f.wq = p[k++];
      f.bias = p[k++];
      f.out_base = p[k++];
    }
}

Network make_network(const std::vector<int> &architecture, int num_inputs,
                     bool qualitative) {
  if (architecture.empty())
    throw std::invalid_argument("architecture must name at least one layer");
  for (int w : architecture)
    if (w < 1)
      throw std::invalid_argument("layer widths must be positive");
  if (architecture.back() != 1)
    throw std::invalid_argument("architecture must end with a single filter");
  if (num_inputs < 1)
    throw std::invalid_argument("network needs at least one input");

  Network n;
  n.architecture = architecture;
  n.num_inputs = num_inputs;
  n.qualitative = qualitative;
  n.input_base.assign(num_inputs, 0.0);
  int prev = num_inputs;
  for (int width : architecture) {
    Layer layer;
    layer.filters.resize(width);
    for (auto &f : layer.filters) {
      f.wp.assign(prev, 0.0);
      f.wm.assign(prev, 0.0);
    }
    n.layers.push_back(std::move(layer));
    prev = width;
  }
  return n;
}

Network random_network(const std::vector<int> &architecture, int num_inputs,
                       bool qualitative, uint64_t seed) {
  Network n = make_network(architecture, num_inputs, qualitative);
  uint64_t state = seed;
  auto uniform = [&state] {
    /* 53-bit mantissa in [0,1), then stretched to [-1,1) */
    double u = double(splitmix64(state) >> 11) * 0x1.0p-53;
    state += 1;
    return 2.0 * u - 1.0;
  };
  std::vector<double> p(n.num_params());
  for (auto &x : p)
    x = uniform();
  n.set_params(p);
  if (qualitative)
    for (auto &layer : n.layers)
      for (auto &f : layer.filters)
        std::fill(f.wm.begin(), f.wm.end(), 0.0);
  return n;
}

namespace {

double activate(double pre, EvalMode mode, double beta) {
  return mode == EvalMode::Hard ? hard_step(pre) : sigmoid(pre, beta);
}

double rectify(double x, EvalMode mode, double alpha) {
  return mode == EvalMode::Hard ? std::max(0.0, x) : leaky(x, alpha);
}

} // namespace

Activations forward(const Network &net, const Trace &trace, EvalMode mode) {
  check_network(net);
  if (trace.num_props != net.num_inputs)
    throw std::invalid_argument("trace width does not match network inputs");
  if (trace.length() < 1)
    throw std::invalid_argument("cannot evaluate an empty trace");

  int T = trace.length();
  int L = net.num_layers();
  Activations out;
  out.act.resize(L + 1);

  out.act[0].assign(net.num_inputs, std::vector<double>(T + 1, 0.0));
  for (int j = 0; j < net.num_inputs; ++j) {
    for (int t = 0; t < T; ++t)
      out.act[0][j][t] = trace.value(t, j) ? 1.0 : 0.0;
    out.act[0][j][T] = activate(net.input_base[j], mode, net.beta);
  }

  for (int l = 1; l <= L; ++l) {
    const Layer &layer = net.layers[l - 1];
    int w = input_width(net, l - 1);
    out.act[l].assign(layer.filters.size(), std::vector<double>(T + 1, 0.0));
    for (size_t i = 0; i < layer.filters.size(); ++i) {
      const FilterWeights &f = layer.filters[i];
      auto &row = out.act[l][i];
      row[T] = activate(f.out_base, mode, net.beta);
      double rq = rectify(f.wq, mode, net.alpha);
      for (int t = T - 1; t >= 0; --t) {
        double pre = f.bias + rq * row[t + 1];
        for (int j = 0; j < w; ++j)
          pre += f.wp[j] * out.act[l - 1][j][t] +
                 f.wm[j] * out.act[l - 1][j][t + 1];
        row[t] = activate(pre, mode, net.beta);
      }
    }
  }
  out.prediction = out.act[L][0][0];
  return out;
}

double predict(const Network &net, const Trace &trace, EvalMode mode) {
  return forward(net, trace, mode).prediction;
}

namespace {

constexpr double kProbClamp = 1e-7;

double bce(double p, bool label) {
  double pc = std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
  return label ? -std::log(pc) : -std::log(1.0 - pc);
}

/* flat offsets into the parameter vector, matching params() order */
struct ParamLayout {
  std::vector<std::vector<int>> filter_off; /* [layer][filter] block start */
  int width_of(const Network &n, int l) const { return input_width(n, l); }

  explicit ParamLayout(const Network &n) {
    int off = n.num_inputs;
    filter_off.resize(n.num_layers());
    for (int l = 0; l < n.num_layers(); ++l) {
      int w = input_width(n, l);
      filter_off[l].resize(n.layers[l].filters.size());
      for (size_t i = 0; i < n.layers[l].filters.size(); ++i) {
        filter_off[l][i] = off;
        off += 2 * w + 3;
      }
    }
  }
};

/* adds one trace's loss gradient (unscaled) into grad; returns its loss */
double backprop_trace(const Network &net, const ParamLayout &layout,
                      const LabeledTrace &lt, std::vector<double> &grad) {
  Activations fwd = forward(net, lt.trace, EvalMode::Soft);
  int T = lt.trace.length();
  int L = net.num_layers();
  double p = fwd.prediction;
  double trace_loss = bce(p, lt.label);

  std::vector<std::vector<std::vector<double>>> adj(L + 1);
  for (int l = 0; l <= L; ++l)
    adj[l].assign(fwd.act[l].size(), std::vector<double>(T + 1, 0.0));

  double y = lt.label ? 1.0 : 0.0;
  if (p > kProbClamp && p < 1.0 - kProbClamp)
    adj[L][0][0] = (p - y) / (p * (1.0 - p));

  for (int l = L; l >= 1; --l) {
    const Layer &layer = net.layers[l - 1];
    int w = input_width(net, l - 1);
    for (size_t i = 0; i < layer.filters.size(); ++i) {
      const FilterWeights &f = layer.filters[i];
      int off = layout.filter_off[l - 1][i];
      double rq = leaky(f.wq, net.alpha);
      double drq = leaky_grad(f.wq, net.alpha);
      for (int t = 0; t < T; ++t) {
        double g = adj[l][i][t];
        if (g == 0.0)
          continue;
        double a = fwd.act[l][i][t];
        double dpre = g * net.beta * a * (1.0 - a);
        grad[off + 2 * w + 1] += dpre; /* bias */
        grad[off + 2 * w] += dpre * fwd.act[l][i][t + 1] * drq; /* wq */
        adj[l][i][t + 1] += dpre * rq;
        for (int j = 0; j < w; ++j) {
          grad[off + j] += dpre * fwd.act[l - 1][j][t];
          adj[l - 1][j][t] += dpre * f.wp[j];
          if (!net.qualitative) {
            grad[off + w + j] += dpre * fwd.act[l - 1][j][t + 1];
            adj[l - 1][j][t + 1] += dpre * f.wm[j];
          }
        }
      }
      double gT = adj[l][i][T];
      if (gT != 0.0) {
        double a = fwd.act[l][i][T];
        grad[off + 2 * w + 2] += gT * net.beta * a * (1.0 - a); /* out_base */
      }
    }
  }
  for (int j = 0; j < net.num_inputs; ++j) {
    double g = adj[0][j][T];
    if (g != 0.0) {
      double a = fwd.act[0][j][T];
      grad[j] += g * net.beta * a * (1.0 - a);
    }
  }
  return trace_loss;
}

} // namespace

double loss(const Network &net, const Dataset &batch) {
  if (batch.size() == 0)
    throw std::invalid_argument("empty dataset");
  double total = 0;
  for (const auto &lt : batch.traces)
    total += bce(predict(net, lt.trace, EvalMode::Soft), lt.label);
  return total / batch.size();
}

std::vector<double> gradients(const Network &net, const Dataset &batch) {
  if (batch.size() == 0)
    throw std::invalid_argument("empty dataset");
  check_network(net);
  ParamLayout layout(net);
  std::vector<double> grad(net.num_params(), 0.0);
  for (const auto &lt : batch.traces)
    backprop_trace(net, layout, lt, grad);
  for (auto &g : grad)
    g /= batch.size();
  return grad;
}

double hard_accuracy(const Network &net, const Dataset &d) {
  if (d.size() == 0)
    throw std::invalid_argument("empty dataset");
  int correct = 0;
  for (const auto &lt : d.traces)
    if ((predict(net, lt.trace, EvalMode::Hard) > 0.5) == lt.label)
      ++correct;
  return double(correct) / d.size();
}

Metrics network_metrics(const Network &net, const Dataset &d) {
  if (d.size() == 0)
    throw std::invalid_argument("empty dataset");
  Metrics m;
  for (const auto &lt : d.traces) {
    bool pred = predict(net, lt.trace, EvalMode::Hard) > 0.5;
    if (pred && lt.label)
      ++m.tp;
    else if (pred && !lt.label)
      ++m.fp;
    else if (!pred && lt.label)
      ++m.fn;
    else
      ++m.tn;
  }
  m.accuracy = double(m.tp + m.tn) / d.size();
  m.precision = (m.tp + m.fp) > 0 ? double(m.tp) / (m.tp + m.fp) : 1.0;
  m.recall = (m.tp + m.fn) > 0 ? double(m.tp) / (m.tp + m.fn) : 1.0;
  return m;
}

TrainResult train(const Network &init, const Dataset &data,
                  const TrainConfig &cfg) {
  check_network(init);
  if (data.size() == 0)
    throw std::invalid_argument("empty dataset");
  if (cfg.learning_rate <= 0 || cfg.batch_size < 1 || cfg.max_epochs < 0)
    throw std::invalid_argument("bad training configuration");

  TrainResult result;
  result.net = init;
  Network &net = result.net;
  ParamLayout layout(net);
  int P = net.num_params();
  std::vector<double> theta = net.params();
  std::vector<double> m(P, 0.0), v(P, 0.0);
  constexpr double b1 = 0.9, b2 = 0.999, adam_eps = 1e-8;
  long steps = 0;

  uint64_t rng_state = cfg.seed;
  auto next_u64 = [&rng_state] { return splitmix64(rng_state++); };
  std::vector<int> order(data.size());
  for (int i = 0; i < data.size(); ++i)
    order[i] = i;

  Stopwatch clock;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    net.alpha = std::max(0.0, cfg.alpha0 + epoch * cfg.alpha_step);
    net.beta = cfg.beta0 + epoch * cfg.beta_step;

    for (size_t i = 0; i + 1 < order.size(); ++i) {
      size_t j = i + (size_t)(next_u64() % (order.size() - i));
      std::swap(order[i], order[j]);
    }

    double epoch_loss = 0;
    for (int start = 0; start < data.size(); start += cfg.batch_size) {
      int end = std::min(data.size(), start + cfg.batch_size);
      std::vector<double> grad(P, 0.0);
      for (int k = start; k < end; ++k)
        epoch_loss += backprop_trace(net, layout, data.traces[order[k]], grad);
      double scale = 1.0 / (end - start);
      ++steps;
      double c1 = 1.0 - std::pow(b1, (double)steps);
      double c2 = 1.0 - std::pow(b2, (double)steps);
      for (int k = 0; k < P; ++k) {
        double g = grad[k] * scale;
        m[k] = b1 * m[k] + (1.0 - b1) * g;
        v[k] = b2 * v[k] + (1.0 - b2) * g * g;
        theta[k] -= cfg.learning_rate * (m[k] / c1) /
                    (std::sqrt(v[k] / c2) + adam_eps);
      }
      net.set_params(theta);
    }

    int soft_ok = 0, hard_ok = 0;
    for (const auto &lt : data.traces) {
      if ((predict(net, lt.trace, EvalMode::Soft) >= 0.5) == lt.label)
        ++soft_ok;
      if ((predict(net, lt.trace, EvalMode::Hard) > 0.5) == lt.label)
        ++hard_ok;
    }
    EpochLog row;
    row.epoch = epoch;
    row.loss = epoch_loss / data.size();
    row.soft_acc = double(soft_ok) / data.size();
    row.hard_acc = double(hard_ok) / data.size();
    row.alpha = net.alpha;
    row.beta = net.beta;
    result.log.push_back(row);
    result.epochs_run = epoch + 1;

    if (cfg.early_stop && hard_ok == data.size()) {
      result.converged = true;
      break;
    }
    if (cfg.budget_seconds > 0 && clock.seconds() >= cfg.budget_seconds) {
      result.budget_exhausted = true;
      break;
    }
  }
  return result;
}

std::string training_log_csv(const std::vector<EpochLog> &log) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,loss,soft_acc,hard_acc,alpha,beta\n";
  for (const auto &r : log)
    out << r.epoch << ',' << r.loss << ',' << r.soft_acc << ',' << r.hard_acc
        << ',' << r.alpha << ',' << r.beta << '\n';
  return out.str();
}

/* ---- teacher construction ---- */

namespace {

struct TeacherBuilder {
  const PropositionSet &props;

  struct BuildFilter {
    std::map<int, double> wp, wm;
    double wq = 0, bias = 0, out_base = 0;
  };
  std::vector<std::vector<BuildFilter>> grid;
  std::vector<int> prop_base; /* -1 free, else required step value */

  struct Producer {
    int layer = 0;
    int index = 0;
  };

  explicit TeacherBuilder(const PropositionSet &p)
      : props(p), prop_base(p.size(), -1) {}

  static bool is_literal(const Formula &f) {
    return f.op() == Op::True || f.op() == Op::False || f.op() == Op::Prop ||
           (f.op() == Op::Not && f.left().op() == Op::Prop);
  }

  int place(int layer, BuildFilter flt) {
    if ((int)grid.size() <= layer)
      grid.resize(layer + 1);
    grid[layer].push_back(std::move(flt));
    return (int)grid[layer].size() - 1;
  }

  /* identity filters copying a sequence up to the target layer */
  Producer lift(Producer p, int to_layer) {
    while (p.layer < to_layer) {
      BuildFilter id;
      id.wp[p.index] = 1.0;
      id.bias = -0.5;
      id.out_base = grid[p.layer][p.index].out_base > 0 ? 1.0 : 0.0;
      p = {p.layer + 1, place(p.layer + 1, std::move(id))};
    }
    return p;
  }

  /* a standalone sequence computing a literal, for next-step consumers */
  Producer literal_filter(const Formula &f, int layer, int base_step) {
    BuildFilter flt;
    flt.out_base = base_step;
    switch (f.op()) {
    case Op::True:
      flt.bias = 0.5;
      break;
    case Op::False:
      flt.bias = -0.5;
      break;
    case Op::Prop:
      flt.wp[f.prop_index()] = 1.0;
      flt.bias = -0.5;
      break;
    default: /* Not over a proposition */
      flt.wp[f.left().prop_index()] = -1.0;
      flt.bias = 0.5;
      break;
    }
    if (layer > 0) {
      /* literals read propositions: build at layer 0, then lift */
      int idx = place(0, std::move(flt));
      return lift({0, idx}, layer);
    }
    return {0, place(0, std::move(flt))};
  }

  /* folds an operand read at the current step into wp/bias with weight w */
  void fold_current(BuildFilter &flt, const Formula &o, double w,
                    Producer *prod) {
    if (prod) {
      flt.wp[prod->index] += w;
      return;
    }
    switch (o.op()) {
    case Op::True:
      flt.bias += w;
      break;
    case Op::False:
      break;
    case Op::Prop:
      flt.wp[o.prop_index()] += w;
      break;
    default:
      flt.wp[o.left().prop_index()] -= w;
      flt.bias += w;
      break;
    }
  }

  void require_prop_base(int prop, int value) {
    if (prop_base[prop] == -1) {
      prop_base[prop] = value;
      return;
    }
    if (prop_base[prop] != value)
      throw std::invalid_argument(
          "teacher network: proposition '" + props.name(prop) +
          "' would need base values 0 and 1 at once");
  }

  /* wp indices above layer 0 name filters, not propositions, so a literal
   * operand of a consumer placed higher up must be read through a lifted
   * copy; constants still fold into the bias at any layer */
  bool lift_literal(const Formula &o, bool compound, int layer,
                    Producer &prod) {
    if (compound || layer == 0 ||
        o.op() == Op::True || o.op() == Op::False)
      return compound;
    prod = literal_filter(o, layer - 1, 0);
    return true;
  }

  Producer build(const Formula &f) {
    switch (f.op()) {
    case Op::And:
    case Op::Or: {
      const Formula &l = f.left(), &r = f.right();
      Producer pl, pr;
      bool cl = !is_literal(l), cr = !is_literal(r);
      if (cl)
        pl = build(l);
      if (cr)
        pr = build(r);
      int layer = std::max(cl ? pl.layer + 1 : 0, cr ? pr.layer + 1 : 0);
      if (cl)
        pl = lift(pl, layer - 1);
      if (cr)
        pr = lift(pr, layer - 1);
      bool ul = lift_literal(l, cl, layer, pl);
      bool ur = lift_literal(r, cr, layer, pr);
      BuildFilter flt;
      flt.bias = f.op() == Op::And ? -1.5 : -0.5;
      flt.out_base = 0.0;
      fold_current(flt, l, 1.0, ul ? &pl : nullptr);
      fold_current(flt, r, 1.0, ur ? &pr : nullptr);
      return {layer, place(layer, std::move(flt))};
    }
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release: {
      const Formula &l = f.left(), &r = f.right();
      Producer pl, pr;
      bool cl = !is_literal(l), cr = !is_literal(r);
      if (cl)
        pl = build(l);
      if (cr)
        pr = build(r);
      int layer = std::max(cl ? pl.layer + 1 : 0, cr ? pr.layer + 1 : 0);
      if (cl)
        pl = lift(pl, layer - 1);
      if (cr)
        pr = lift(pr, layer - 1);
      bool ul = lift_literal(l, cl, layer, pl);
      bool ur = lift_literal(r, cr, layer, pr);
      BuildFilter flt;
      flt.wq = 1.0;
      flt.bias = f.op() == Op::Release ? -2.5 : -1.5;
      flt.out_base = f.op() == Op::Until ? 0.0 : 1.0;
      fold_current(flt, l, 1.0, ul ? &pl : nullptr);
      fold_current(flt, r, 2.0, ur ? &pr : nullptr);
      return {layer, place(layer, std::move(flt))};
    }
    case Op::Eventually:
    case Op::Globally: {
      const Formula &o = f.left();
      Producer po;
      bool co = !is_literal(o);
      if (co)
        po = build(o);
      int layer = co ? po.layer + 1 : 0;
      if (co)
        po = lift(po, layer - 1);
      BuildFilter flt;
      flt.wq = 1.0;
      flt.bias = f.op() == Op::Eventually ? -0.5 : -1.5;
      flt.out_base = f.op() == Op::Eventually ? 0.0 : 1.0;
      fold_current(flt, o, 1.0, co ? &po : nullptr);
      return {layer, place(layer, std::move(flt))};
    }
    case Op::Next:
    case Op::WeakNext: {
      const Formula &o = f.left();
      bool weak = f.op() == Op::WeakNext;
      BuildFilter flt;
      flt.bias = -0.5;
      flt.out_base = weak ? 1.0 : 0.0;
      if (o.op() == Op::Prop) {
        /* the virtual next value must make the operator's end step correct */
        require_prop_base(o.prop_index(), weak ? 1 : 0);
        flt.wm[o.prop_index()] = 1.0;
        return {0, place(0, std::move(flt))};
      }
      if (o.op() == Op::Not && o.left().op() == Op::Prop) {
        require_prop_base(o.left().prop_index(), weak ? 0 : 1);
        flt.wm[o.left().prop_index()] = -1.0;
        flt.bias = 0.5;
        return {0, place(0, std::move(flt))};
      }
      /* compound or constant operand: read a sequence whose base value
       * matches the end-of-trace truth this operator needs */
      Producer po;
      if (o.op() == Op::True || o.op() == Op::False) {
        po = literal_filter(o, 0, weak ? 1 : 0);
      } else {
        po = build(o);
        int natural = grid[po.layer][po.index].out_base > 0 ? 1 : 0;
        if (natural != (weak ? 1 : 0)) {
          BuildFilter id;
          id.wp[po.index] = 1.0;
          id.bias = -0.5;
          id.out_base = weak ? 1.0 : 0.0;
          po = {po.layer + 1, place(po.layer + 1, std::move(id))};
        }
      }
      int layer = po.layer + 1;
      flt.wm[po.index] = 1.0;
      return {layer, place(layer, std::move(flt))};
    }
    default:
      throw std::invalid_argument("teacher network: unsupported shape");
    }
  }
};

} // namespace

Network teacher_network(const Formula &f, const PropositionSet &props) {
  if (!f.valid())
    throw std::invalid_argument("invalid formula");
  Formula g = to_nnf(f);
  TeacherBuilder b(props);

  TeacherBuilder::Producer root;
  if (TeacherBuilder::is_literal(g))
    root = b.literal_filter(g, 0, 0);
  else
    root = b.build(g);
  root = b.lift(root, (int)b.grid.size() - 1);
  if (b.grid[root.layer].size() != 1) {
    /* the root must sit alone in the final layer; add one identity on top */
    TeacherBuilder::BuildFilter id;
    id.wp[root.index] = 1.0;
    id.bias = -0.5;
    id.out_base = b.grid[root.layer][root.index].out_base > 0 ? 1.0 : 0.0;
    root = {root.layer + 1, b.place(root.layer + 1, std::move(id))};
  }

  std::vector<int> arch;
  for (const auto &layer : b.grid)
    arch.push_back((int)layer.size());
  Network net = make_network(arch, props.size(), is_qualitative(g));
  for (int j = 0; j < props.size(); ++j)
    net.input_base[j] = b.prop_base[j] == 1 ? 1.0 : 0.0;
  for (size_t l = 0; l < b.grid.size(); ++l)
    for (size_t i = 0; i < b.grid[l].size(); ++i) {
      const auto &src = b.grid[l][i];
      FilterWeights &dst = net.layers[l].filters[i];
      for (auto [j, w] : src.wp)
        dst.wp[j] = w;
      for (auto [j, w] : src.wm)
        dst.wm[j] = w;
      dst.wq = src.wq;
      dst.bias = src.bias;
      dst.out_base = src.out_base;
    }
  return net;
}

/* ---- checkpointing ---- */

namespace {
using nlohmann::json;
}

void write_checkpoint(const Checkpoint &c, std::ostream &out) {
  json j;
  j["version"] = 1;
  j["architecture"] = c.net.architecture;
  j["num_inputs"] = c.net.num_inputs;
  j["qualitative"] = c.net.qualitative;
  j["alpha"] = c.net.alpha;
  j["beta"] = c.net.beta;
  j["epoch"] = c.epoch;
  j["seed"] = c.seed;
  j["params"] = c.net.params();
  out << j.dump(2) << '\n';
  if (!out)
    throw std::runtime_error("checkpoint write failed");
}

Checkpoint read_checkpoint(std::istream &in) {
  json j;
  try {
    in >> j;
    Checkpoint c;
    std::vector<int> arch = j.at("architecture").get<std::vector<int>>();
    c.net = make_network(arch, j.at("num_inputs").get<int>(),
                         j.at("qualitative").get<bool>());
    c.net.set_params(j.at("params").get<std::vector<double>>());
    c.net.alpha = j.at("alpha").get<double>();
    c.net.beta = j.at("beta").get<double>();
    c.epoch = j.at("epoch").get<int>();
    c.seed = j.at("seed").get<uint64_t>();
    return c;
  } catch (const json::exception &e) {
    throw std::runtime_error(std::string("checkpoint parse failed: ") +
                             e.what());
  }
}

void write_checkpoint_file(const Checkpoint &c, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path + " for writing");
  write_checkpoint(c, out);
}

Checkpoint read_checkpoint_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return read_checkpoint(in);
}

} // namespace ltlf
