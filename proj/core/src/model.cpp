#include "crowdcast/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crowdcast {

namespace {

constexpr double kLeakySlope = 0.01;

Eigen::MatrixXd xavier_uniform(long rows, long cols, Rng rng) {
  double bound = std::sqrt(6.0 / double(rows + cols));
  Eigen::MatrixXd m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m(r, c) = rng.uniform(-bound, bound);
  return m;
}

Eigen::VectorXd stable_softmax(const Eigen::VectorXd& scores) {
  Eigen::VectorXd shifted = scores.array() - scores.maxCoeff();
  Eigen::VectorXd e = shifted.array().exp();
  return e / e.sum();
}

}  // namespace

ModelParams init_params(const ModelDims& dims, std::vector<std::string> forecaster_ids,
                        std::vector<std::string> categories, std::uint64_t seed) {
  ModelParams p;
  p.dims = dims;
  p.dims.n_categories = int(categories.size());
  p.seed = seed;
  Rng root(seed);
  p.w_key = xavier_uniform(p.dims.d_in(), dims.d_k, root.substream("w_key"));
  p.w_value = xavier_uniform(p.dims.d_in(), dims.d_k, root.substream("w_value"));
  p.w_anchor = xavier_uniform(p.dims.d_anchor_in(), dims.d_k, root.substream("w_anchor"));
  p.w_out = xavier_uniform(dims.d_k, dims.max_options, root.substream("w_out"));
  p.b_out = Eigen::VectorXd::Zero(dims.max_options);
  p.embeddings = ForecasterEmbeddingTable(std::move(forecaster_ids), dims.d_embed, seed);
  p.categories = std::move(categories);
  return p;
}

QuestionInputs build_question_inputs(const Question& q,
                                     std::span<const Forecast* const> forecasts,
                                     const WordVectorTable& words, const ModelParams& params,
                                     bool use_forecaster_ids) {
  if (words.dim != params.dims.d_embed)
    throw std::invalid_argument("word vector dimension " + std::to_string(words.dim) +
                                " does not match d_embed " +
                                std::to_string(params.dims.d_embed));

  // Canonical row order: (timestamp, forecaster id, probabilities). Rows that
  // compare equal are fully identical, so any storage order of the same
  // forecast multiset yields the same matrix.
  std::vector<const Forecast*> sorted(forecasts.begin(), forecasts.end());
  std::sort(sorted.begin(), sorted.end(), [](const Forecast* a, const Forecast* b) {
    if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
    if (a->forecaster_id != b->forecaster_id) return a->forecaster_id < b->forecaster_id;
    return a->probs < b->probs;
  });

  CategoryVocab vocab{params.categories};
  long m = long(sorted.size());
  QuestionInputs in;
  in.question = &q;
  in.static_features.resize(m, params.dims.max_options + params.dims.d_features());
  in.embedding_rows.resize(sorted.size());
  in.timestamps.resize(sorted.size());

  for (long i = 0; i < m; ++i) {
    const Forecast* f = sorted[i];
    // History: every forecast up to and including this one's timestamp.
    auto end = std::upper_bound(sorted.begin(), sorted.end(), f->timestamp,
                                [](Timestamp t, const Forecast* g) { return t < g->timestamp; });
    std::span<const Forecast* const> history(sorted.data(), std::size_t(end - sorted.begin()));
    ForecastFeatures feats = build_features(q, *f, history, params.embeddings, vocab);

    for (int k = 0; k < params.dims.max_options; ++k) in.static_features(i, k) = feats.padded_probs[k];
    for (std::size_t k = 0; k < feats.engineered.size(); ++k)
      in.static_features(i, params.dims.max_options + long(k)) = feats.engineered[k];
    in.embedding_rows[i] = use_forecaster_ids ? feats.embedding_row
                                              : ForecasterEmbeddingTable::unknown_row();
    in.timestamps[i] = f->timestamp;
  }

  AnchorVector anchor = question_anchor(q.text, words);
  in.anchor = anchor.values;
  in.anchor_all_unknown = anchor.all_unknown;
  return in;
}

QuestionProjection project_question(const QuestionInputs& in, const ModelParams& params) {
  const ModelDims& d = params.dims;
  long m = in.static_features.rows();
  QuestionProjection proj;
  proj.embeddings.resize(m, d.d_embed);
  for (long i = 0; i < m; ++i)
    proj.embeddings.row(i) = params.embeddings.matrix().row(in.embedding_rows[i]);

  // X = [probs | U | F] row blocks of W; the static parts bracket the
  // trainable embedding slice.
  auto probs = in.static_features.leftCols(d.max_options);
  auto feats = in.static_features.rightCols(d.d_features());
  proj.keys = probs * params.w_key.topRows(d.max_options) +
              proj.embeddings * params.w_key.middleRows(d.max_options, d.d_embed) +
              feats * params.w_key.bottomRows(d.d_features());
  proj.values = probs * params.w_value.topRows(d.max_options) +
                proj.embeddings * params.w_value.middleRows(d.max_options, d.d_embed) +
                feats * params.w_value.bottomRows(d.d_features());
  return proj;
}

Eigen::VectorXd alignment(const Eigen::VectorXd& anchor_query, const Eigen::MatrixXd& keys) {
  if (keys.rows() == 0) throw std::invalid_argument("alignment: empty key set");
  Eigen::VectorXd scores = keys * anchor_query / std::sqrt(double(keys.cols()));
  return stable_softmax(scores);
}

ForwardResult forward_projected(const QuestionInputs& in, const QuestionProjection& proj,
                                Date day, const ModelParams& params, const ForwardOptions& opt) {
  const Question& q = *in.question;
  const ModelDims& d = params.dims;
  if (day < q.open_date || day > q.close_date)
    throw std::invalid_argument("forward: day outside the question window");

  Timestamp cutoff = end_of_day(day);
  auto it = std::upper_bound(in.timestamps.begin(), in.timestamps.end(), cutoff);
  long visible = it - in.timestamps.begin();
  if (visible == 0) throw std::invalid_argument("forward: no visible forecasts");

  ForwardTrace trace;
  trace.visible = int(visible);
  trace.anchor_input.resize(d.d_anchor_in());
  trace.anchor_input << in.anchor,
      time_embedding(int(days_between(q.open_date, day)), int(q.duration_days()), d.d_time);
  trace.anchor_query = params.w_anchor.transpose() * trace.anchor_input;

  trace.alpha_raw = alignment(trace.anchor_query, proj.keys.topRows(visible));
  trace.alpha = trace.alpha_raw;
  if (opt.training && opt.dropout_rate > 0.0) {
    if (opt.dropout_rng == nullptr)
      throw std::invalid_argument("forward: training mode needs a dropout rng");
    Eigen::VectorXd mask(visible);
    for (long i = 0; i < visible; ++i)
      mask[i] = opt.dropout_rng->uniform() < opt.dropout_rate ? 0.0 : 1.0;
    double kept = (trace.alpha_raw.array() * mask.array()).sum();
    if (kept > 0.0) {  // dropping every forecast would leave nothing to renormalize
      trace.dropout_mask = mask;
      trace.alpha = (trace.alpha_raw.array() * mask.array()) / kept;
    }
  }

  trace.context = proj.values.topRows(visible).transpose() * trace.alpha;
  trace.hidden = trace.context.unaryExpr(
      [](double v) { return v > 0.0 ? v : kLeakySlope * v; });

  trace.logits = params.w_out.transpose() * trace.hidden + params.b_out;
  int n = q.option_count();
  for (int k = n; k < d.max_options; ++k)
    trace.logits[k] = -std::numeric_limits<double>::infinity();

  // Softmax over the valid options only; padded slots stay exactly zero.
  Eigen::VectorXd valid = stable_softmax(trace.logits.head(n));
  trace.padded_probs = Eigen::VectorXd::Zero(d.max_options);
  trace.padded_probs.head(n) = valid;

  ForwardResult result{ProbVector(std::vector<double>(valid.data(), valid.data() + n)),
                       std::move(trace)};
  return result;
}

ForwardResult forward(const QuestionInputs& in, Date day, const ModelParams& params,
                      const ForwardOptions& opt) {
  return forward_projected(in, project_question(in, params), day, params, opt);
}

std::vector<AttentionBrierPair> attention_report(const Question& q, const QuestionInputs& in,
                                                 const ForwardTrace& trace) {
  std::vector<AttentionBrierPair> pairs;
  pairs.reserve(std::size_t(trace.visible));
  int n = q.option_count();
  for (int i = 0; i < trace.visible; ++i) {
    std::vector<double> probs(n);
    for (int k = 0; k < n; ++k) probs[k] = in.static_features(i, k);
    pairs.push_back({q.id, trace.alpha[i], brier_for(q, probs)});
  }
  return pairs;
}

std::optional<double> attention_correlation(std::span<const AttentionBrierPair> pairs) {
  std::vector<double> a, b;
  a.reserve(pairs.size());
  b.reserve(pairs.size());
  for (const AttentionBrierPair& p : pairs) {
    a.push_back(p.attention);
    b.push_back(p.brier);
  }
  return pearson_r(a, b);
}

}  // namespace crowdcast
