// Brier-family scoring, tournament-level aggregate metrics, and the
// statistical evaluation battery (calibration, ROC/AUC, rank percentiles,
// time-progress profile, one-sided z test).
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdcast/domain.hpp"

namespace crowdcast {

// Probability vector over 2..5 answer options. Entries in [0,1], sum within
// 1e-6 of 1; checked at construction.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> values);
  static ProbVector uniform(int n_options);

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  int size() const { return int(values_.size()); }

 private:
  std::vector<double> values_;
};

// One-hot outcome vector.
class OutcomeVector {
 public:
  OutcomeVector(int n_options, int resolved_index);
  static OutcomeVector of(const Question& q) { return {q.option_count(), q.resolved_index}; }

  const std::vector<double>& values() const { return values_; }
  int resolved_index() const { return resolved_index_; }
  int size() const { return int(values_.size()); }

 private:
  std::vector<double> values_;
  int resolved_index_;
};

// Sum of squared per-option errors, in [0, 2].
double unordered_brier(std::span<const double> p, std::span<const double> o);

// Cumulative-probability variant for ordinal questions: rewards probability
// mass near the true option. Averages, over each of the n-1 interior splits,
// the squared error of the leading and trailing cumulative sums.
double ordered_brier(std::span<const double> p, std::span<const double> o);

// Ordered Brier when the question is ordinal, unordered otherwise, against
// the question's resolved outcome.
double brier_for(const Question& q, std::span<const double> p);

// One probability vector per active day of one question.
struct AggregatedSeries {
  std::string question_id;
  std::vector<ProbVector> daily;
};

// Mean daily Brier (MDB). Requires exactly one aggregate per active day.
double question_score(const AggregatedSeries& series, const Question& q);

// Mean of MDBs across questions (MMDB).
double mmdb(std::span<const double> per_question_scores);

struct ZTestResult {
  double z;
  double p;  // upper-tail standard normal probability
};

// Two-sample one-sided z: z = (mean_a - mean_b) / sqrt((var_a + var_b)/n).
// Zero pooled variance: equal means give z = 0; unequal means throw.
ZTestResult one_sided_z(double mean_a, double var_a, double mean_b, double var_b, int n);

double normal_cdf(double x);

struct ScoreSummary {
  double mean = 0.0;
  double variance = 0.0;  // sample variance, n-1 denominator
  double q25 = 0.0, q50 = 0.0, q75 = 0.0;
  int n = 0;
};

ScoreSummary score_summary(std::vector<double> scores);

// Linear-interpolation quantile (type 7) of an ascending-sorted sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct PredictionPair {
  double predicted;  // probability assigned to one option
  bool outcome;      // whether that option resolved true
};

struct CalibrationBin {
  double lo = 0.0, hi = 0.0;
  double frequency = 0.0;  // positives / count; 0 when count == 0
  int count = 0;
};

struct CalibrationBins {
  std::array<CalibrationBin, 10> bins{};
  int total = 0;
};

// 10 equal-width bins over [0,1]; the top bin includes 1.0.
CalibrationBins calibration(std::span<const PredictionPair> pairs);

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
  double auc = 0.0;
};

// Threshold-sweep ROC with trapezoidal AUC; tied scores share a threshold.
// Throws std::invalid_argument if only one class is present.
RocCurve roc_auc(std::span<const PredictionPair> pairs);

// Fraction of individuals with strictly lower (better) MDB than the
// aggregate. Ties count as not-better.
double rank_percentile(double aggregate_mdb, std::span<const double> individual_mdbs);

struct ProgressPoint {
  double progress;  // (day - open) / (close - open), in [0,1]
  double brier;
};

struct TimeProfile {
  std::array<double, 100> value{};
  std::array<int, 100> count{};  // raw points per bin, before smoothing
};

// Mean Brier per progress bin, empty bins filled from the nearest nonempty
// bin, then discrete Gaussian smoothing (sigma = 5 bins, kernel truncated at
// +-3 sigma and renormalized). Throws std::invalid_argument on empty input.
TimeProfile time_profile(std::span<const ProgressPoint> points);

// Pearson correlation; nullopt when fewer than two points or either series
// has zero variance.
std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y);

// One-sided p for observing correlation <= r under zero true correlation
// (normal approximation of the t statistic; adequate for large n).
double pearson_one_sided_p(double r, int n);

struct RankEntry {
  std::string question_id;
  double value;
};

struct AttentionBrierPair {
  std::string question_id;
  double attention;
  double brier;
};

// Everything cmd_evaluate reports for one aggregation method.
struct EvaluationReport {
  std::string method;
  double mmdb = 0.0;
  ScoreSummary summary{};  // over per-question MDBs
  std::vector<std::string> question_ids;
  std::vector<double> question_mdbs;
  std::vector<double> daily_briers;  // pooled per-day series
  CalibrationBins calibration{};
  RocCurve roc{};
  std::vector<RankEntry> rank_percentiles;
  TimeProfile time_profile{};
  // Attention aggregator only:
  std::vector<AttentionBrierPair> attention_pairs;
  std::optional<double> attention_brier_r;
};

}  // namespace crowdcast
