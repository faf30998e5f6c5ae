// Input representations for the attention aggregator: question-text anchor
// embeddings, trainable forecaster embeddings, sinusoidal time embeddings,
// and engineered per-forecast features.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crowdcast/domain.hpp"

namespace crowdcast {

struct WordVectorTable {
  int dim = 0;
  std::map<std::string, Eigen::VectorXd> vectors;

  bool contains(const std::string& word) const { return vectors.count(word) > 0; }
};

// Text format: one record per line, "token v1 v2 ... vd"; an optional first
// header line "count dim". Duplicate tokens keep the first occurrence.
// Throws std::runtime_error with a line number on inconsistent dimensions.
WordVectorTable load_word_vectors(const std::string& path);

// Lowercase, split on non-alphanumeric runs.
std::vector<std::string> tokenize(const std::string& text);

struct AnchorVector {
  Eigen::VectorXd values;
  bool all_unknown = false;  // every token was out of vocabulary
};

// Bag-of-words average of in-vocabulary token vectors; zero vector with the
// warning flag set when nothing matched.
AnchorVector question_anchor(const std::string& text, const WordVectorTable& table);

// Trainable per-forecaster embedding rows plus one shared "unknown" row for
// ids never seen in training. Entries are i.i.d. uniform on (-sqrt3, sqrt3):
// zero mean, unit variance.
class ForecasterEmbeddingTable {
 public:
  ForecasterEmbeddingTable() = default;
  ForecasterEmbeddingTable(std::vector<std::string> ids, int d_embed, std::uint64_t seed);

  int row_of(const std::string& forecaster_id) const;  // unknown ids map to row 0
  static constexpr int unknown_row() { return 0; }

  Eigen::MatrixXd& matrix() { return rows_; }
  const Eigen::MatrixXd& matrix() const { return rows_; }
  const std::vector<std::string>& ids() const { return ids_; }
  int dim() const { return int(rows_.cols()); }

 private:
  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  Eigen::MatrixXd rows_;  // (ids.size() + 1) x d_embed; row 0 is the unknown row
};

inline ForecasterEmbeddingTable init_forecaster_embeddings(std::vector<std::string> ids,
                                                           int d_embed, std::uint64_t seed) {
  return {std::move(ids), d_embed, seed};
}

// d_time sinusoidal entries at the day index (sin/cos pairs over geometric
// wavelengths) followed by one linear-progress scalar; length d_time + 1.
Eigen::VectorXd time_embedding(int position, int duration, int d_time);

// Category one-hot vocabulary, fixed from training data.
struct CategoryVocab {
  std::vector<std::string> categories;  // sorted unique

  static CategoryVocab from_questions(std::span<const Question> questions);
  int index_of(const std::string& category) const;  // -1 when unknown
  int size() const { return int(categories.size()); }
};

constexpr int kMaxOptions = 5;

struct ForecastFeatures {
  std::array<double, kMaxOptions> padded_probs{};  // zero padding beyond the option count
  int embedding_row = 0;
  std::vector<double> engineered;  // count, running variance, option count, ordinal, category
};

// Engineered features use only forecasts with timestamp <= the forecast's
// own (the `history` span, which includes the forecast itself).
ForecastFeatures build_features(const Question& q, const Forecast& f,
                                std::span<const Forecast* const> history,
                                const ForecasterEmbeddingTable& embeddings,
                                const CategoryVocab& categories);

}  // namespace crowdcast
