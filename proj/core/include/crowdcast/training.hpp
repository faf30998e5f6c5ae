// Mean-daily-Brier loss over (question, day) aggregation targets, exact
// reverse-mode gradients, Adam, and the adaptive decay/reset training loop.
#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "crowdcast/features.hpp"
#include "crowdcast/model.hpp"

namespace crowdcast {

struct TrainConfig {
  double learning_rate = 1e-4;
  int batch_size = 256;
  int max_epochs = 100;
  double lr_decay_factor = 0.95;
  int lr_decay_patience = 5;   // stale epochs before each decay
  int reset_patience = 20;     // stale epochs before each weight reset
  double dropout_rate = 0.1;
  double validation_fraction = 0.15;  // share of training questions held out
  std::uint64_t seed = 0;
};

// One aggregation target: the model's output for `day` scored against the
// question's outcome.
struct BatchTarget {
  const QuestionInputs* inputs;
  Date day;
};

// Mean Brier (ordered on ordinal questions) of forward outputs over the
// batch; dropout off.
double loss(std::span<const BatchTarget> batch, const ModelParams& params);

struct ModelGrads {
  Eigen::MatrixXd w_key, w_value, w_anchor, w_out;
  Eigen::VectorXd b_out;
  Eigen::MatrixXd embeddings;

  static ModelGrads zeros(const ModelParams& params);
  void set_zero();
};

// Batch loss and exact gradients for every trainable tensor, including the
// embedding rows of forecasters appearing in the batch. Dropout masks are
// drawn from `dropout_rng` when provided (training); pass nullptr for
// deterministic gradients (verification, validation).
double loss_and_gradients(std::span<const BatchTarget> batch, const ModelParams& params,
                          ModelGrads& grads, Rng* dropout_rng = nullptr,
                          double dropout_rate = 0.0);

inline ModelGrads gradients(std::span<const BatchTarget> batch, const ModelParams& params) {
  ModelGrads g = ModelGrads::zeros(params);
  loss_and_gradients(batch, params, g);
  return g;
}

// Flat views over the trainable tensors and their gradients, in a fixed
// order; lets verification code address single coordinates.
struct TensorRef {
  std::string name;
  double* param;
  const double* grad;
  long size;
};
std::vector<TensorRef> tensor_refs(ModelParams& params, const ModelGrads& grads);

struct AdamState {
  double beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8;
  long step = 0;
  ModelGrads m, v;

  static AdamState init(const ModelParams& params);
};

// Standard bias-corrected Adam update.
void adam_step(ModelParams& params, const ModelGrads& grads, AdamState& state, double lr);

// Validation-loss schedule: after `decay_patience` consecutive epochs without
// a new minimum the learning rate is multiplied by `factor` (again every
// further `decay_patience` stale epochs); after `reset_patience` stale epochs
// the caller restores the best-validation snapshot.
class LrSchedule {
 public:
  LrSchedule(double lr, double factor, int decay_patience, int reset_patience);

  struct Action {
    bool new_best = false;
    bool decayed = false;
    bool reset = false;
  };
  Action observe(double validation_loss);

  double lr() const { return lr_; }
  double best() const { return best_; }

 private:
  double lr_, factor_;
  int decay_patience_, reset_patience_;
  double best_;
  int stale_ = 0;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double lr = 0.0;  // in effect after this epoch's schedule update
  bool reset = false;
};
using TrainingHistory = std::vector<EpochStats>;

struct TrainResult {
  ModelParams params;  // best-validation snapshot
  TrainingHistory history;
};

// Trains an anchor-attention model on the given questions of `index`.
// Questions are split into train/validation by seeded draw; each epoch
// shuffles (question, day) targets into batches. Returns the snapshot with
// the lowest validation loss.
TrainResult train(const TournamentIndex& index, std::span<const std::string> question_ids,
                  const WordVectorTable& words, ModelDims dims, const TrainConfig& cfg,
                  bool use_forecaster_ids = true);

}  // namespace crowdcast
