// Anchor-attention aggregator. The attention query is built from the
// question-text anchor and the aggregation-time embedding, never from the
// forecasts, so the aggregate is an order-invariant summary of the visible
// forecast set rather than a sequence model biased toward the last input.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crowdcast/domain.hpp"
#include "crowdcast/features.hpp"
#include "crowdcast/rng.hpp"
#include "crowdcast/scoring.hpp"

namespace crowdcast {

struct ModelDims {
  int d_embed = 300;  // word-vector and forecaster-embedding width
  int d_k = 64;       // key/value width
  int d_time = 64;    // sinusoidal time dims (the embedding adds 1 progress scalar)
  int n_categories = 0;
  int max_options = kMaxOptions;

  int d_features() const { return 4 + n_categories; }
  int d_in() const { return max_options + d_embed + d_features(); }
  int d_anchor_in() const { return d_embed + d_time + 1; }
};

struct ModelParams {
  ModelDims dims;
  Eigen::MatrixXd w_key;     // d_in x d_k
  Eigen::MatrixXd w_value;   // d_in x d_k
  Eigen::MatrixXd w_anchor;  // d_anchor_in x d_k
  Eigen::MatrixXd w_out;     // d_k x max_options
  Eigen::VectorXd b_out;     // max_options
  ForecasterEmbeddingTable embeddings;
  std::vector<std::string> categories;  // one-hot order used by the feature builder
  std::uint64_t seed = 0;
};

// Xavier-uniform weight matrices, zero output bias, uniform(-sqrt3, sqrt3)
// embeddings; fully determined by (dims, ids, categories, seed).
ModelParams init_params(const ModelDims& dims, std::vector<std::string> forecaster_ids,
                        std::vector<std::string> categories, std::uint64_t seed);

// One question's model inputs, rows in canonical (timestamp, forecaster id,
// probabilities) order so that any storage order of the same forecast set
// produces bitwise-identical aggregates.
struct QuestionInputs {
  const Question* question = nullptr;
  Eigen::MatrixXd static_features;    // m x (max_options + d_features): padded probs | engineered
  std::vector<int> embedding_rows;    // m
  std::vector<Timestamp> timestamps;  // m, nondecreasing
  Eigen::VectorXd anchor;             // d_embed
  bool anchor_all_unknown = false;
};

QuestionInputs build_question_inputs(const Question& q,
                                     std::span<const Forecast* const> forecasts,
                                     const WordVectorTable& words, const ModelParams& params,
                                     bool use_forecaster_ids = true);

// Key/value projections of every forecast row under fixed parameters,
// shareable across all aggregation days of the question.
struct QuestionProjection {
  Eigen::MatrixXd keys;        // m x d_k
  Eigen::MatrixXd values;      // m x d_k
  Eigen::MatrixXd embeddings;  // m x d_embed, the gathered trainable rows
};

QuestionProjection project_question(const QuestionInputs& in, const ModelParams& params);

// Softmax over scaled anchor-key dot products, max-stabilized. Throws on an
// empty key set.
Eigen::VectorXd alignment(const Eigen::VectorXd& anchor_query, const Eigen::MatrixXd& keys);

struct ForwardOptions {
  bool training = false;       // enables attention dropout
  double dropout_rate = 0.1;
  Rng* dropout_rng = nullptr;  // required when training
};

struct ForwardTrace {
  int visible = 0;
  Eigen::VectorXd alpha;         // final attention weights over visible forecasts
  Eigen::VectorXd alpha_raw;     // pre-dropout weights (equals alpha when not training)
  Eigen::VectorXd dropout_mask;  // empty when dropout was not applied
  Eigen::VectorXd anchor_input;  // [anchor; time embedding], d_anchor_in
  Eigen::VectorXd anchor_query;  // d_k
  Eigen::VectorXd context;       // d_k, pre-activation
  Eigen::VectorXd hidden;        // d_k, LeakyReLU(context)
  Eigen::VectorXd logits;        // max_options, after option masking
  Eigen::VectorXd padded_probs;  // max_options, padded options exactly 0
};

struct ForwardResult {
  ProbVector probs;
  ForwardTrace trace;
};

// Aggregated forecast for `day`: visible set is every forecast timestamped
// up to end of day. Throws std::invalid_argument when nothing is visible;
// callers substitute the uniform distribution.
ForwardResult forward_projected(const QuestionInputs& in, const QuestionProjection& proj,
                                Date day, const ModelParams& params,
                                const ForwardOptions& opt = {});
ForwardResult forward(const QuestionInputs& in, Date day, const ModelParams& params,
                      const ForwardOptions& opt = {});

// Pairs each visible forecast's attention weight with that forecast's own
// Brier score against the resolved outcome.
std::vector<AttentionBrierPair> attention_report(const Question& q, const QuestionInputs& in,
                                                 const ForwardTrace& trace);

// Pearson correlation over pooled (attention, Brier) pairs; nullopt when
// undefined (fewer than two pairs or zero variance).
std::optional<double> attention_correlation(std::span<const AttentionBrierPair> pairs);

}  // namespace crowdcast
