#include "interdict/gnn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "interdict/kernels.hpp"
#include "interdict/rng.hpp"
#include "json.hpp"

namespace interdict {

namespace {

constexpr double kProbClamp = 1e-7;

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// ---------------------------------------------------------------------------
// MLP primitives

struct MlpCache {
  // acts[0] is the input; acts[i+1] the output of layer i (post-tanh on
  // hidden layers, affine on the last).
  std::vector<Matrix> acts;
};

Matrix mlp_forward(const Mlp& mlp, Matrix input, MlpCache* cache) {
  if (cache) cache->acts.push_back(input);
  Matrix cur = std::move(input);
  for (std::size_t li = 0; li < mlp.weights.size(); ++li) {
    const Matrix& w = mlp.weights[li];
    const auto& b = mlp.biases[li];
    Matrix next(cur.rows, w.rows);
    for (std::size_t r = 0; r < cur.rows; ++r)
      for (std::size_t o = 0; o < w.rows; ++o)
        next.at(r, o) = kernels::dot(cur.row_span(r), w.row_span(o)) + b[o];
    if (li + 1 < mlp.weights.size())
      for (double& x : next.data) x = std::tanh(x);
    cur = std::move(next);
    if (cache) cache->acts.push_back(cur);
  }
  return cur;
}

// Accumulates parameter gradients into `grad` (same shapes as `mlp`) and
// returns the gradient with respect to the input when requested.
Matrix mlp_backward(const Mlp& mlp, const MlpCache& cache, Matrix d_out, Mlp& grad,
                    bool want_dinput) {
  const std::size_t nlayers = mlp.weights.size();
  Matrix d_cur = std::move(d_out);
  for (std::size_t step = 0; step < nlayers; ++step) {
    const std::size_t li = nlayers - 1 - step;
    const Matrix& out_act = cache.acts[li + 1];
    const Matrix& in_act = cache.acts[li];
    if (li + 1 < nlayers)  // undo the tanh
      for (std::size_t idx = 0; idx < d_cur.data.size(); ++idx)
        d_cur.data[idx] *= 1.0 - out_act.data[idx] * out_act.data[idx];
    for (std::size_t r = 0; r < d_cur.rows; ++r)
      for (std::size_t o = 0; o < d_cur.cols; ++o) {
        double g = d_cur.at(r, o);
        if (g == 0.0) continue;
        grad.biases[li][o] += g;
        kernels::axpy(g, in_act.row_span(r), grad.weights[li].row_span(o));
      }
    if (li == 0 && !want_dinput) return {};
    Matrix d_in(in_act.rows, in_act.cols);
    for (std::size_t r = 0; r < d_cur.rows; ++r)
      for (std::size_t o = 0; o < d_cur.cols; ++o) {
        double g = d_cur.at(r, o);
        if (g != 0.0) kernels::axpy(g, mlp.weights[li].row_span(o), d_in.row_span(r));
      }
    d_cur = std::move(d_in);
  }
  return d_cur;
}

Mlp make_mlp(const std::vector<int>& dims, Rng& rng) {
  Mlp mlp;
  for (std::size_t li = 0; li + 1 < dims.size(); ++li) {
    const int in = dims[li], out = dims[li + 1];
    Matrix w(out, in);
    double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (double& x : w.data) x = rng.uniform(-limit, limit);
    mlp.weights.push_back(std::move(w));
    mlp.biases.emplace_back(out, 0.0);
  }
  return mlp;
}

Mlp zero_like(const Mlp& mlp) {
  Mlp z;
  for (const auto& w : mlp.weights) z.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : mlp.biases) z.biases.emplace_back(b.size(), 0.0);
  return z;
}

// Fixed enumeration of all trainable functions; the order defines the flat
// parameter layout and the checkpoint key names.
template <typename ModelT, typename Fn>
void for_each_mlp(ModelT& model, Fn fn) {
  const int p1 = model.config.dual_group_count + 1;
  for (int k = 0; k < p1; ++k) fn(model.encoders[k], "f_in_w" + std::to_string(k));
  fn(model.encoders[p1], std::string("f_in_v"));
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    auto& layer = model.layers[l];
    const std::string ln = std::to_string(l + 1);
    for (int k = 0; k < p1; ++k) fn(layer.message[k], "f" + ln + "_msg_w" + std::to_string(k));
    if (!model.config.shared_message_mlp)
      for (int k = 0; k < p1; ++k)
        fn(layer.message_rev[k], "f" + ln + "_msgrev_w" + std::to_string(k));
    fn(layer.update_con, "g" + ln + "_v");
    for (int k = 0; k < p1; ++k) fn(layer.update_var[k], "g" + ln + "_w" + std::to_string(k));
  }
  fn(model.readout, std::string("g_out"));
}

}  // namespace

void GnnConfig::validate() const {
  if (layers < 1) throw std::invalid_argument("gnn config: layers must be >= 1");
  if (embedding_dim < 1) throw std::invalid_argument("gnn config: embedding_dim must be >= 1");
  if (dual_group_count < 1)
    throw std::invalid_argument("gnn config: dual_group_count must be >= 1");
  if (random_feature_dim < 0)
    throw std::invalid_argument("gnn config: random_feature_dim must be >= 0");
  for (int h : mlp_hidden)
    if (h < 1) throw std::invalid_argument("gnn config: hidden widths must be >= 1");
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& w : weights) n += w.data.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

std::size_t GnnModel::parameter_count() const {
  std::size_t n = 0;
  for_each_mlp(*this, [&](const Mlp& mlp, const std::string&) { n += mlp.parameter_count(); });
  return n;
}

GnnModel init_model(const GnnConfig& cfg) {
  cfg.validate();
  GnnModel model;
  model.config = cfg;
  const int p1 = cfg.dual_group_count + 1;
  const int d = cfg.embedding_dim;

  auto dims = [&](int in, int out) {
    std::vector<int> v{in};
    v.insert(v.end(), cfg.mlp_hidden.begin(), cfg.mlp_hidden.end());
    v.push_back(out);
    return v;
  };

  Rng rng(cfg.seed);
  for (int k = 0; k < p1; ++k)
    model.encoders.push_back(make_mlp(dims(cfg.var_feature_dim(), d), rng));
  model.encoders.push_back(make_mlp(dims(cfg.con_feature_dim(), d), rng));
  for (int l = 0; l < cfg.layers; ++l) {
    GnnModel::MessageLayer layer;
    for (int k = 0; k < p1; ++k) layer.message.push_back(make_mlp(dims(2 * d + 1, d), rng));
    if (!cfg.shared_message_mlp)
      for (int k = 0; k < p1; ++k) layer.message_rev.push_back(make_mlp(dims(2 * d + 1, d), rng));
    layer.update_con = make_mlp(dims(2 * d, d), rng);
    for (int k = 0; k < p1; ++k) layer.update_var.push_back(make_mlp(dims(2 * d, d), rng));
    model.layers.push_back(std::move(layer));
  }
  model.readout = make_mlp({d, 1}, rng);  // affine; sigmoid lives in forward
  return model;
}

namespace {

Matrix normalize_columns(const Matrix& m) {
  Matrix out = m;
  for (std::size_t c = 0; c < m.cols; ++c) {
    double scale = 1.0;
    for (std::size_t r = 0; r < m.rows; ++r) scale = std::max(scale, std::abs(m.at(r, c)));
    if (scale > 1.0)
      for (std::size_t r = 0; r < m.rows; ++r) out.at(r, c) /= scale;
  }
  return out;
}

struct Trace {
  std::vector<std::vector<const MmilpEdge*>> edges_by_group;
  std::vector<MlpCache> encoder_caches;      // p+1 var groups then V
  std::vector<std::vector<Matrix>> var_emb;  // [layer 0..L][group]
  std::vector<Matrix> con_emb;               // [layer 0..L]
  struct LayerTrace {
    std::vector<MlpCache> message_caches;
    std::vector<Matrix> message_out;
    std::vector<MlpCache> message_rev_caches;
    std::vector<Matrix> message_rev_out;
    MlpCache update_con_cache;
    std::vector<MlpCache> update_var_caches;
  };
  std::vector<LayerTrace> layers;
  MlpCache readout_cache;
  Prediction probs;
};

Matrix concat_cols(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, a.cols + b.cols);
  for (std::size_t r = 0; r < a.rows; ++r) {
    std::copy(a.row(r), a.row(r) + a.cols, out.row(r));
    std::copy(b.row(r), b.row(r) + b.cols, out.row(r) + a.cols);
  }
  return out;
}

Trace run_forward(const GnnModel& model, const MmilpGraph& g) {
  const GnnConfig& cfg = model.config;
  const std::size_t p1 = static_cast<std::size_t>(cfg.dual_group_count) + 1;
  if (g.group_count() != p1)
    throw std::invalid_argument("forward: graph group count does not match the model");
  for (std::size_t k = 0; k < p1; ++k)
    if (g.var_features[k].cols != static_cast<std::size_t>(cfg.var_feature_dim()))
      throw std::invalid_argument("forward: variable feature dim mismatch");
  if (g.con_features.cols != static_cast<std::size_t>(cfg.con_feature_dim()))
    throw std::invalid_argument("forward: constraint feature dim mismatch");

  const int d = cfg.embedding_dim;
  Trace trace;
  trace.edges_by_group.resize(p1);
  for (const auto& e : g.edges) trace.edges_by_group[e.group].push_back(&e);

  // var_prev/con_prev below are references into these vectors; reserving
  // keeps them stable across the per-layer push_backs.
  trace.var_emb.reserve(static_cast<std::size_t>(cfg.layers) + 1);
  trace.con_emb.reserve(static_cast<std::size_t>(cfg.layers) + 1);

  // Layer 0: per-group encoders on the column-normalized raw features.
  trace.encoder_caches.resize(p1 + 1);
  trace.var_emb.emplace_back();
  for (std::size_t k = 0; k < p1; ++k)
    trace.var_emb[0].push_back(mlp_forward(model.encoders[k],
                                           normalize_columns(g.var_features[k]),
                                           &trace.encoder_caches[k]));
  trace.con_emb.push_back(mlp_forward(model.encoders[p1], normalize_columns(g.con_features),
                                      &trace.encoder_caches[p1]));

  for (int l = 0; l < cfg.layers; ++l) {
    const auto& layer = model.layers[l];
    Trace::LayerTrace lt;
    lt.message_caches.resize(p1);
    lt.message_rev_caches.resize(p1);
    lt.update_var_caches.resize(p1);

    const auto& var_prev = trace.var_emb[l];
    const Matrix& con_prev = trace.con_emb[l];

    Matrix agg_con(con_prev.rows, d);
    std::vector<Matrix> agg_var;
    for (std::size_t k = 0; k < p1; ++k) agg_var.emplace_back(var_prev[k].rows, d);

    for (std::size_t k = 0; k < p1; ++k) {
      const auto& edges = trace.edges_by_group[k];
      Matrix inputs(edges.size(), 2 * d + 1);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        double* row = inputs.row(e);
        std::copy(con_prev.row(edges[e]->constraint), con_prev.row(edges[e]->constraint) + d,
                  row);
        std::copy(var_prev[k].row(edges[e]->var), var_prev[k].row(edges[e]->var) + d, row + d);
        row[2 * d] = edges[e]->weight;
      }
      Matrix msgs = mlp_forward(layer.message[k], inputs, &lt.message_caches[k]);
      for (std::size_t e = 0; e < edges.size(); ++e)
        kernels::axpy(1.0, msgs.row_span(e), agg_con.row_span(edges[e]->constraint));
      const Matrix* var_msgs = &msgs;
      if (!cfg.shared_message_mlp) {
        lt.message_rev_out.push_back(
            mlp_forward(layer.message_rev[k], inputs, &lt.message_rev_caches[k]));
        var_msgs = &lt.message_rev_out.back();
      }
      for (std::size_t e = 0; e < edges.size(); ++e)
        kernels::axpy(1.0, var_msgs->row_span(e), agg_var[k].row_span(edges[e]->var));
      lt.message_out.push_back(std::move(msgs));
    }

    trace.con_emb.push_back(
        mlp_forward(layer.update_con, concat_cols(con_prev, agg_con), &lt.update_con_cache));
    trace.var_emb.emplace_back();
    for (std::size_t k = 0; k < p1; ++k)
      trace.var_emb.back().push_back(mlp_forward(
          layer.update_var[k], concat_cols(var_prev[k], agg_var[k]), &lt.update_var_caches[k]));
    trace.layers.push_back(std::move(lt));
  }

  Matrix logits =
      mlp_forward(model.readout, trace.var_emb.back()[0], &trace.readout_cache);
  trace.probs.resize(logits.rows);
  for (std::size_t i = 0; i < logits.rows; ++i) trace.probs[i] = sigmoid(logits.at(i, 0));
  return trace;
}

}  // namespace

Prediction forward(const GnnModel& model, const MmilpGraph& g) {
  return run_forward(model, g).probs;
}

double loss(const Prediction& pred, const BinaryVector& label) {
  if (pred.size() != label.size())
    throw std::invalid_argument("loss: prediction/label length mismatch");
  if (pred.empty()) throw std::invalid_argument("loss: empty prediction");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double p = clamp_prob(pred[i]);
    acc -= label[i] ? std::log(p) : std::log(1.0 - p);
  }
  return acc / static_cast<double>(pred.size());
}

GnnGradients backward(const GnnModel& model, const MmilpGraph& g, const BinaryVector& label) {
  const GnnConfig& cfg = model.config;
  const std::size_t p1 = static_cast<std::size_t>(cfg.dual_group_count) + 1;
  const int d = cfg.embedding_dim;

  Trace trace = run_forward(model, g);
  if (trace.probs.size() != label.size())
    throw std::invalid_argument("backward: label length mismatch");
  const double n0 = static_cast<double>(trace.probs.size());

  GnnModel grads;  // parameter-shaped accumulator
  grads.config = cfg;
  for (const auto& e : model.encoders) grads.encoders.push_back(zero_like(e));
  for (const auto& layer : model.layers) {
    GnnModel::MessageLayer zl;
    for (const auto& mlp : layer.message) zl.message.push_back(zero_like(mlp));
    for (const auto& mlp : layer.message_rev) zl.message_rev.push_back(zero_like(mlp));
    zl.update_con = zero_like(layer.update_con);
    for (const auto& mlp : layer.update_var) zl.update_var.push_back(zero_like(mlp));
    grads.layers.push_back(std::move(zl));
  }
  grads.readout = zero_like(model.readout);

  GnnGradients out;
  out.loss = loss(trace.probs, label);

  // d(mean BCE)/d(logit) = (sigmoid(logit) - y) / n0.
  Matrix d_logits(trace.probs.size(), 1);
  for (std::size_t i = 0; i < trace.probs.size(); ++i)
    d_logits.at(i, 0) = (trace.probs[i] - (label[i] ? 1.0 : 0.0)) / n0;

  std::vector<Matrix> d_var(p1);
  for (std::size_t k = 0; k < p1; ++k)
    d_var[k] = Matrix(trace.var_emb.back()[k].rows, d);
  d_var[0] = mlp_backward(model.readout, trace.readout_cache, std::move(d_logits),
                          grads.readout, true);
  Matrix d_con(trace.con_emb.back().rows, d);

  for (int l = cfg.layers - 1; l >= 0; --l) {
    const auto& layer = model.layers[l];
    auto& layer_grads = grads.layers[l];
    const auto& lt = trace.layers[l];

    std::vector<Matrix> d_prev_var;
    for (std::size_t k = 0; k < p1; ++k)
      d_prev_var.emplace_back(trace.var_emb[l][k].rows, d);
    Matrix d_prev_con(trace.con_emb[l].rows, d);

    // Update MLPs: gradient splits into own-embedding and aggregate halves.
    Matrix d_con_in = mlp_backward(layer.update_con, lt.update_con_cache, std::move(d_con),
                                   layer_grads.update_con, true);
    Matrix d_agg_con(d_prev_con.rows, d);
    for (std::size_t r = 0; r < d_con_in.rows; ++r) {
      kernels::axpy(1.0, {d_con_in.row(r), static_cast<std::size_t>(d)}, d_prev_con.row_span(r));
      std::copy(d_con_in.row(r) + d, d_con_in.row(r) + 2 * d, d_agg_con.row(r));
    }

    std::vector<Matrix> d_agg_var;
    for (std::size_t k = 0; k < p1; ++k) {
      Matrix d_var_in = mlp_backward(layer.update_var[k], lt.update_var_caches[k],
                                     std::move(d_var[k]), layer_grads.update_var[k], true);
      d_agg_var.emplace_back(d_prev_var[k].rows, d);
      for (std::size_t r = 0; r < d_var_in.rows; ++r) {
        kernels::axpy(1.0, {d_var_in.row(r), static_cast<std::size_t>(d)},
                      d_prev_var[k].row_span(r));
        std::copy(d_var_in.row(r) + d, d_var_in.row(r) + 2 * d, d_agg_var[k].row(r));
      }
    }

    // Messages: with a shared MLP the same output feeds both aggregates.
    for (std::size_t k = 0; k < p1; ++k) {
      const auto& edges = trace.edges_by_group[k];
      auto scatter_input_grad = [&](Matrix d_inputs) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
          kernels::axpy(1.0, {d_inputs.row(e), static_cast<std::size_t>(d)},
                        d_prev_con.row_span(edges[e]->constraint));
          kernels::axpy(1.0, {d_inputs.row(e) + d, static_cast<std::size_t>(d)},
                        d_prev_var[k].row_span(edges[e]->var));
          // the weight slot is an input constant; its gradient is dropped
        }
      };
      if (cfg.shared_message_mlp) {
        Matrix d_msgs(edges.size(), d);
        for (std::size_t e = 0; e < edges.size(); ++e) {
          kernels::axpy(1.0, d_agg_con.row_span(edges[e]->constraint), d_msgs.row_span(e));
          kernels::axpy(1.0, d_agg_var[k].row_span(edges[e]->var), d_msgs.row_span(e));
        }
        scatter_input_grad(mlp_backward(layer.message[k], lt.message_caches[k],
                                        std::move(d_msgs), layer_grads.message[k], true));
      } else {
        Matrix d_msgs(edges.size(), d);
        for (std::size_t e = 0; e < edges.size(); ++e)
          kernels::axpy(1.0, d_agg_con.row_span(edges[e]->constraint), d_msgs.row_span(e));
        scatter_input_grad(mlp_backward(layer.message[k], lt.message_caches[k],
                                        std::move(d_msgs), layer_grads.message[k], true));
        Matrix d_msgs_rev(edges.size(), d);
        for (std::size_t e = 0; e < edges.size(); ++e)
          kernels::axpy(1.0, d_agg_var[k].row_span(edges[e]->var), d_msgs_rev.row_span(e));
        scatter_input_grad(mlp_backward(layer.message_rev[k], lt.message_rev_caches[k],
                                        std::move(d_msgs_rev), layer_grads.message_rev[k],
                                        true));
      }
    }

    d_var = std::move(d_prev_var);
    d_con = std::move(d_prev_con);
  }

  for (std::size_t k = 0; k < p1; ++k)
    mlp_backward(model.encoders[k], trace.encoder_caches[k], std::move(d_var[k]),
                 grads.encoders[k], false);
  mlp_backward(model.encoders[p1], trace.encoder_caches[p1], std::move(d_con),
               grads.encoders[p1], false);

  out.flat = flatten_parameters(grads);
  return out;
}

std::vector<double> flatten_parameters(const GnnModel& model) {
  std::vector<double> flat;
  flat.reserve(model.parameter_count());
  for_each_mlp(model, [&](const Mlp& mlp, const std::string&) {
    for (std::size_t li = 0; li < mlp.weights.size(); ++li) {
      flat.insert(flat.end(), mlp.weights[li].data.begin(), mlp.weights[li].data.end());
      flat.insert(flat.end(), mlp.biases[li].begin(), mlp.biases[li].end());
    }
  });
  return flat;
}

void set_parameters(GnnModel& model, std::span<const double> flat) {
  if (flat.size() != model.parameter_count())
    throw std::invalid_argument("set_parameters: flat vector length mismatch");
  std::size_t cursor = 0;
  for_each_mlp(model, [&](Mlp& mlp, const std::string&) {
    for (std::size_t li = 0; li < mlp.weights.size(); ++li) {
      std::copy(flat.begin() + cursor, flat.begin() + cursor + mlp.weights[li].data.size(),
                mlp.weights[li].data.begin());
      cursor += mlp.weights[li].data.size();
      std::copy(flat.begin() + cursor, flat.begin() + cursor + mlp.biases[li].size(),
                mlp.biases[li].begin());
      cursor += mlp.biases[li].size();
    }
  });
}

TrainHistory train(GnnModel& model, const std::vector<LabeledGraph>& train_set,
                   const std::vector<LabeledGraph>& val_set, const TrainConfig& cfg) {
  if (train_set.empty()) throw std::invalid_argument("train: empty dataset");
  if (cfg.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
  if (cfg.epochs < 0) throw std::invalid_argument("train: negative epoch count");

  const std::size_t nparams = model.parameter_count();
  std::vector<double> params = flatten_parameters(model);
  if (model.adam.m.empty()) {
    model.adam.m.assign(nparams, 0.0);
    model.adam.v.assign(nparams, 0.0);
  } else if (model.adam.m.size() != nparams || model.adam.v.size() != nparams) {
    throw std::invalid_argument("train: adam state does not match the parameter count");
  }

  TrainHistory history;
  std::vector<double> grad(nparams);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < train_set.size();
         begin += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end =
          std::min(train_set.size(), begin + static_cast<std::size_t>(cfg.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = begin; i < end; ++i) {
        GnnGradients g = backward(model, train_set[i].graph, train_set[i].label);
        if (std::isnan(g.loss))
          throw std::runtime_error("train: NaN loss at epoch " + std::to_string(epoch) +
                                   ", instance " + std::to_string(i));
        epoch_loss += g.loss;
        kernels::axpy(1.0, g.flat, grad);
      }
      kernels::scale(1.0 / static_cast<double>(end - begin), grad);

      ++model.adam.step;
      const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(model.adam.step));
      const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(model.adam.step));
      for (std::size_t j = 0; j < nparams; ++j) {
        model.adam.m[j] = cfg.beta1 * model.adam.m[j] + (1.0 - cfg.beta1) * grad[j];
        model.adam.v[j] = cfg.beta2 * model.adam.v[j] + (1.0 - cfg.beta2) * grad[j] * grad[j];
        params[j] -= cfg.learning_rate * (model.adam.m[j] / bc1) /
                     (std::sqrt(model.adam.v[j] / bc2) + cfg.adam_eps);
      }
      set_parameters(model, params);
    }
    history.train_loss.push_back(epoch_loss / static_cast<double>(train_set.size()));

    if (!val_set.empty()) {
      double val_loss = 0.0;
      for (const auto& item : val_set) val_loss += loss(forward(model, item.graph), item.label);
      val_loss /= static_cast<double>(val_set.size());
      if (std::isnan(val_loss))
        throw std::runtime_error("train: NaN validation loss at epoch " + std::to_string(epoch));
      history.val_loss.push_back(val_loss);
    }
  }
  return history;
}

// ---------------------------------------------------------------------------
// Checkpoints

std::string save_model(const GnnModel& model) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["format_version"] = 1;
  j["config"] = {{"layers", model.config.layers},
                 {"embedding_dim", model.config.embedding_dim},
                 {"mlp_hidden", model.config.mlp_hidden},
                 {"random_feature_dim", model.config.random_feature_dim},
                 {"dual_group_count", model.config.dual_group_count},
                 {"shared_message_mlp", model.config.shared_message_mlp},
                 {"seed", model.config.seed}};
  ordered_json params = ordered_json::object();
  for_each_mlp(model, [&](const Mlp& mlp, const std::string& name) {
    ordered_json layers = ordered_json::array();
    for (std::size_t li = 0; li < mlp.weights.size(); ++li)
      layers.push_back({{"rows", mlp.weights[li].rows},
                        {"cols", mlp.weights[li].cols},
                        {"w", mlp.weights[li].data},
                        {"b", mlp.biases[li]}});
    params[name] = std::move(layers);
  });
  j["params"] = std::move(params);
  j["adam"] = {{"step", model.adam.step}, {"m", model.adam.m}, {"v", model.adam.v}};
  return j.dump();
}

GnnModel load_model(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format_version", -1) != 1)
    throw std::invalid_argument("unsupported checkpoint format_version");
  GnnConfig cfg;
  const auto& jc = j.at("config");
  cfg.layers = jc.at("layers").get<int>();
  cfg.embedding_dim = jc.at("embedding_dim").get<int>();
  cfg.mlp_hidden = jc.at("mlp_hidden").get<std::vector<int>>();
  cfg.random_feature_dim = jc.at("random_feature_dim").get<int>();
  cfg.dual_group_count = jc.at("dual_group_count").get<int>();
  cfg.shared_message_mlp = jc.at("shared_message_mlp").get<bool>();
  cfg.seed = jc.at("seed").get<std::uint64_t>();

  GnnModel model = init_model(cfg);
  const auto& params = j.at("params");
  for_each_mlp(model, [&](Mlp& mlp, const std::string& name) {
    const auto& layers = params.at(name);
    if (layers.size() != mlp.weights.size())
      throw std::invalid_argument("checkpoint: layer count mismatch in " + name);
    for (std::size_t li = 0; li < mlp.weights.size(); ++li) {
      const auto& layer = layers.at(li);
      if (layer.at("rows").get<std::size_t>() != mlp.weights[li].rows ||
          layer.at("cols").get<std::size_t>() != mlp.weights[li].cols)
        throw std::invalid_argument("checkpoint: shape mismatch in " + name);
      mlp.weights[li].data = layer.at("w").get<std::vector<double>>();
      mlp.biases[li] = layer.at("b").get<std::vector<double>>();
      if (mlp.weights[li].data.size() != mlp.weights[li].rows * mlp.weights[li].cols)
        throw std::invalid_argument("checkpoint: weight payload mismatch in " + name);
    }
  });
  model.adam.step = j.at("adam").at("step").get<std::int64_t>();
  model.adam.m = j.at("adam").at("m").get<std::vector<double>>();
  model.adam.v = j.at("adam").at("v").get<std::vector<double>>();
  return model;
}

std::string history_csv(const TrainHistory& history) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,train_loss,val_loss\n";
  for (std::size_t e = 0; e < history.train_loss.size(); ++e) {
    out << e << "," << history.train_loss[e] << ",";
    if (e < history.val_loss.size()) out << history.val_loss[e];
    out << "\n";
  }
  return out.str();
}

}  // namespace interdict
