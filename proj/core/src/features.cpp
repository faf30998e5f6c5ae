#include "crowdcast/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "crowdcast/rng.hpp"

namespace crowdcast {

WordVectorTable load_word_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word vector file: " + path);

  WordVectorTable table;
  std::string line;
  int line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string token;
    ss >> token;
    std::vector<double> values;
    double v;
    while (ss >> v) values.push_back(v);

    if (first_content_line) {
      first_content_line = false;
      // Header form "count dim": a numeric token followed by one value.
      if (values.size() == 1 && !token.empty() &&
          std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
        continue;
      }
    }
    if (values.empty())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": no vector values");
    if (table.dim == 0) table.dim = int(values.size());
    if (int(values.size()) != table.dim)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(table.dim) + " values, got " +
                               std::to_string(values.size()));
    if (table.contains(token)) continue;  // keep first occurrence
    table.vectors.emplace(token, Eigen::Map<Eigen::VectorXd>(values.data(), long(values.size())));
  }
  return table;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(char(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

AnchorVector question_anchor(const std::string& text, const WordVectorTable& table) {
  AnchorVector anchor;
  anchor.values = Eigen::VectorXd::Zero(table.dim);
  int matched = 0;
  for (const std::string& tok : tokenize(text)) {
    auto it = table.vectors.find(tok);
    if (it == table.vectors.end()) continue;
    anchor.values += it->second;
    ++matched;
  }
  if (matched == 0) {
    anchor.all_unknown = true;
  } else {
    anchor.values /= double(matched);
  }
  return anchor;
}

ForecasterEmbeddingTable::ForecasterEmbeddingTable(std::vector<std::string> ids, int d_embed,
                                                   std::uint64_t seed)
    : ids_(std::move(ids)) {
  if (d_embed < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], int(i) + 1);

  const double bound = std::sqrt(3.0);
  Rng rng = Rng(seed).substream("forecaster_embeddings");
  rows_.resize(long(ids_.size()) + 1, d_embed);
  for (long r = 0; r < rows_.rows(); ++r)
    for (long c = 0; c < rows_.cols(); ++c) rows_(r, c) = rng.uniform(-bound, bound);
}

int ForecasterEmbeddingTable::row_of(const std::string& forecaster_id) const {
  auto it = index_.find(forecaster_id);
  return it == index_.end() ? unknown_row() : it->second;
}

Eigen::VectorXd time_embedding(int position, int duration, int d_time) {
  if (position < 0 || position > duration)
    throw std::invalid_argument("time_embedding: position outside [0, duration]");
  Eigen::VectorXd out(d_time + 1);
  for (int i = 0; 2 * i < d_time; ++i) {
    double rate = std::pow(10000.0, 2.0 * i / double(d_time));
    out[2 * i] = std::sin(position / rate);
    if (2 * i + 1 < d_time) out[2 * i + 1] = std::cos(position / rate);
  }
  out[d_time] = double(position) / double(std::max(duration, 1));
  return out;
}

CategoryVocab CategoryVocab::from_questions(std::span<const Question> questions) {
  std::set<std::string> seen;
  for (const Question& q : questions) seen.insert(q.category);
  CategoryVocab vocab;
  vocab.categories.assign(seen.begin(), seen.end());
  return vocab;
}

int CategoryVocab::index_of(const std::string& category) const {
  auto it = std::lower_bound(categories.begin(), categories.end(), category);
  if (it == categories.end() || *it != category) return -1;
  return int(it - categories.begin());
}

ForecastFeatures build_features(const Question& q, const Forecast& f,
                                std::span<const Forecast* const> history,
                                const ForecasterEmbeddingTable& embeddings,
                                const CategoryVocab& categories) {
  ForecastFeatures out;
  int n = q.option_count();
  for (int k = 0; k < n && k < kMaxOptions; ++k) out.padded_probs[k] = f.probs[k];
  out.embedding_row = embeddings.row_of(f.forecaster_id);

  // Distinct forecasters and per-option dispersion among forecasts made up
  // to this forecast's own timestamp.
  std::set<std::string> distinct;
  std::vector<double> mean(n, 0.0);
  int count = 0;
  for (const Forecast* h : history) {
    distinct.insert(h->forecaster_id);
    for (int k = 0; k < n; ++k) mean[k] += h->probs[k];
    ++count;
  }
  double running_var = 0.0;
  if (count > 0) {
    for (double& m : mean) m /= double(count);
    double acc = 0.0;
    for (const Forecast* h : history)
      for (int k = 0; k < n; ++k) acc += (h->probs[k] - mean[k]) * (h->probs[k] - mean[k]);
    running_var = acc / double(count * n);
  }

  out.engineered.reserve(4 + categories.size());
  out.engineered.push_back(double(distinct.size()));
  out.engineered.push_back(running_var);
  out.engineered.push_back(double(n));
  out.engineered.push_back(q.is_ordinal ? 1.0 : 0.0);
  int cat = categories.index_of(q.category);
  for (int i = 0; i < categories.size(); ++i) out.engineered.push_back(i == cat ? 1.0 : 0.0);
  return out;
}

}  // namespace crowdcast
