#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "interdict/encoding.hpp"
#include "interdict/inner_solvers.hpp"
#include "interdict/matrix.hpp"

namespace interdict {

/// Per-W0-variable interdiction probability in [0,1], aligned to the source
/// instance's edge order.
using Prediction = std::vector<double>;

struct GnnConfig {
  int layers = 2;                      // message passing rounds L
  int embedding_dim = 16;              // d
  std::vector<int> mlp_hidden = {16};  // hidden widths shared by every trainable MLP
  int random_feature_dim = 0;          // r; must match the graphs fed in
  int dual_group_count = 1;            // p: 1 for SPI reductions, 2 for MFI
  bool shared_message_mlp = true;      // reuse f_l^{W_k} for both passing directions
  std::uint64_t seed = 0;

  int var_feature_dim() const { return kVarBaseFeatures + random_feature_dim; }
  int con_feature_dim() const { return kConBaseFeatures + random_feature_dim; }
  void validate() const;

  friend bool operator==(const GnnConfig&, const GnnConfig&) = default;
};

/// Affine layers with tanh on all but the last.
struct Mlp {
  std::vector<Matrix> weights;              // weights[i]: out x in
  std::vector<std::vector<double>> biases;  // biases[i]: out

  std::size_t parameter_count() const;

  friend bool operator==(const Mlp&, const Mlp&) = default;
};

struct AdamState {
  std::int64_t step = 0;
  std::vector<double> m, v;  // moments over the flat parameter vector

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// All trainable functions of the network: per-group input encoders, per
/// layer one message MLP per variable group plus constraint/variable update
/// MLPs, and the affine+sigmoid readout on W0.
struct GnnModel {
  struct MessageLayer {
    std::vector<Mlp> message;      // f_l^{W_k}, input [h_V, h_Wk, weight]
    std::vector<Mlp> message_rev;  // constraint->variable direction when not shared
    Mlp update_con;                // g_l^V, input [own embedding, aggregate]
    std::vector<Mlp> update_var;   // g_l^{W_k}

    friend bool operator==(const MessageLayer&, const MessageLayer&) = default;
  };

  GnnConfig config;
  std::vector<Mlp> encoders;  // W_0..W_p then V
  std::vector<MessageLayer> layers;
  Mlp readout;
  AdamState adam;

  std::size_t parameter_count() const;

  friend bool operator==(const GnnModel&, const GnnModel&) = default;
};

/// Deterministic Glorot-style initialization: weights uniform in
/// +-sqrt(6/(fan_in+fan_out)) drawn from `seed` in a fixed enumeration
/// order, biases zero.
GnnModel init_model(const GnnConfig& cfg);

/// Sum-aggregated message passing per the layer structure above. Raw
/// features are scaled per column by 1/max(1, column abs max) before the
/// encoders; the scaling is a function of the feature matrix only, so it
/// preserves permutation equivariance.
Prediction forward(const GnnModel& model, const MmilpGraph& g);

/// Mean binary cross-entropy with probabilities clamped to
/// [1e-7, 1 - 1e-7].
double loss(const Prediction& pred, const BinaryVector& label);

struct GnnGradients {
  double loss = 0.0;
  std::vector<double> flat;  // same layout as flatten_parameters
};

/// Exact reverse-mode gradients of loss(forward(model, g), label) with
/// respect to every parameter, from the recorded forward trace.
GnnGradients backward(const GnnModel& model, const MmilpGraph& g, const BinaryVector& label);

std::vector<double> flatten_parameters(const GnnModel& model);
void set_parameters(GnnModel& model, std::span<const double> flat);

struct TrainConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int epochs = 100;
  int batch_size = 8;
};

struct LabeledGraph {
  MmilpGraph graph;
  BinaryVector label;
};

struct TrainHistory {
  std::vector<double> train_loss;  // per-epoch mean over instances
  std::vector<double> val_loss;    // empty when no validation set is given
};

/// Adam with gradient accumulation over each batch; iteration order is the
/// dataset order, so runs are deterministic given the model seed. Throws
/// std::runtime_error on NaN loss.
TrainHistory train(GnnModel& model, const std::vector<LabeledGraph>& train_set,
                   const std::vector<LabeledGraph>& val_set, const TrainConfig& cfg);

// Versioned JSON checkpoint (config, per-function parameter arrays, Adam
// state). load_model(save_model(m)) == m bit-exactly.
std::string save_model(const GnnModel& model);
GnnModel load_model(const std::string& text);

std::string history_csv(const TrainHistory& history);

}  // namespace interdict
