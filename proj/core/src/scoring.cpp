#include "crowdcast/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crowdcast {

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2 || values_.size() > 5)
    throw std::invalid_argument("probability vector needs 2..5 options, got " +
                                std::to_string(values_.size()));
  double sum = 0.0;
  for (double p : values_) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum));
}

ProbVector ProbVector::uniform(int n_options) {
  return ProbVector(std::vector<double>(n_options, 1.0 / n_options));
}

OutcomeVector::OutcomeVector(int n_options, int resolved_index)
    : values_(n_options, 0.0), resolved_index_(resolved_index) {
  if (n_options < 2 || n_options > 5) throw std::invalid_argument("outcome needs 2..5 options");
  if (resolved_index < 0 || resolved_index >= n_options)
    throw std::invalid_argument("resolved index out of range");
  values_[resolved_index] = 1.0;
}

double unordered_brier(std::span<const double> p, std::span<const double> o) {
  if (p.size() != o.size()) throw std::invalid_argument("brier: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = p[i] - o[i];
    sum += d * d;
  }
  return sum;
}

double ordered_brier(std::span<const double> p, std::span<const double> o) {
  if (p.size() != o.size()) throw std::invalid_argument("brier: length mismatch");
  std::size_t n = p.size();
  if (n < 2) throw std::invalid_argument("brier: need at least 2 options");
  double sum = 0.0;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    double head = 0.0, tail = 0.0;
    for (std::size_t j = 0; j < i; ++j) head += p[j] - o[j];
    for (std::size_t j = i - 1; j < n; ++j) tail += p[j] - o[j];
    sum += head * head + tail * tail;
  }
  return sum / double(n - 1);
}

double brier_for(const Question& q, std::span<const double> p) {
  OutcomeVector o = OutcomeVector::of(q);
  return q.is_ordinal ? ordered_brier(p, o.values()) : unordered_brier(p, o.values());
}

double question_score(const AggregatedSeries& series, const Question& q) {
  std::size_t n_days = active_days(q).size();
  if (series.daily.size() != n_days)
    throw std::invalid_argument("question_score: expected " + std::to_string(n_days) +
                                " daily aggregates, got " + std::to_string(series.daily.size()));
  double sum = 0.0;
  for (const ProbVector& p : series.daily) sum += brier_for(q, p.values());
  return sum / double(n_days);
}

double mmdb(std::span<const double> per_question_scores) {
  if (per_question_scores.empty()) throw std::invalid_argument("mmdb: empty score list");
  double sum = std::accumulate(per_question_scores.begin(), per_question_scores.end(), 0.0);
  return sum / double(per_question_scores.size());
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

ZTestResult one_sided_z(double mean_a, double var_a, double mean_b, double var_b, int n) {
  if (n < 2) throw std::invalid_argument("one_sided_z: n must be >= 2");
  if (var_a < 0.0 || var_b < 0.0) throw std::invalid_argument("one_sided_z: negative variance");
  double pooled = (var_a + var_b) / double(n);
  if (pooled == 0.0) {
    if (mean_a != mean_b)
      throw std::domain_error("one_sided_z: zero pooled variance with unequal means");
    return {0.0, 0.5};
  }
  double z = (mean_a - mean_b) / std::sqrt(pooled);
  return {z, 1.0 - normal_cdf(z)};
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  double h = q * double(sorted.size() - 1);
  std::size_t lo = std::size_t(h);
  if (lo >= sorted.size() - 1) return sorted.back();
  double frac = h - double(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ScoreSummary score_summary(std::vector<double> scores) {
  if (scores.empty()) throw std::invalid_argument("score_summary: empty score list");
  ScoreSummary s;
  s.n = int(scores.size());
  s.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / double(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : scores) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss / double(s.n - 1);
  }
  std::sort(scores.begin(), scores.end());
  s.q25 = quantile_sorted(scores, 0.25);
  s.q50 = quantile_sorted(scores, 0.50);
  s.q75 = quantile_sorted(scores, 0.75);
  return s;
}

CalibrationBins calibration(std::span<const PredictionPair> pairs) {
  CalibrationBins out;
  for (int b = 0; b < 10; ++b) {
    out.bins[b].lo = b / 10.0;
    out.bins[b].hi = (b + 1) / 10.0;
  }
  std::array<int, 10> positives{};
  for (const PredictionPair& pr : pairs) {
    if (!(pr.predicted >= 0.0 && pr.predicted <= 1.0))
      throw std::invalid_argument("calibration: probability outside [0,1]");
    int b = std::min(int(pr.predicted * 10.0), 9);
    out.bins[b].count += 1;
    if (pr.outcome) positives[b] += 1;
    out.total += 1;
  }
  for (int b = 0; b < 10; ++b) {
    if (out.bins[b].count > 0)
      out.bins[b].frequency = double(positives[b]) / double(out.bins[b].count);
  }
  return out;
}

RocCurve roc_auc(std::span<const PredictionPair> pairs) {
  long n_pos = 0, n_neg = 0;
  for (const PredictionPair& pr : pairs) (pr.outcome ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("roc_auc: need at least one positive and one negative");

  std::vector<PredictionPair> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PredictionPair& a, const PredictionPair& b) {
              return a.predicted > b.predicted;
            });

  RocCurve out;
  out.points.emplace_back(0.0, 0.0);
  long tp = 0, fp = 0;
  double auc = 0.0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    double score = sorted[i].predicted;
    while (i < sorted.size() && sorted[i].predicted == score) {
      (sorted[i].outcome ? tp : fp) += 1;
      ++i;
    }
    double fpr = double(fp) / double(n_neg);
    double tpr = double(tp) / double(n_pos);
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    out.points.emplace_back(fpr, tpr);
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  out.auc = auc;
  return out;
}

double rank_percentile(double aggregate_mdb, std::span<const double> individual_mdbs) {
  if (individual_mdbs.empty()) throw std::invalid_argument("rank_percentile: no individuals");
  long better = std::count_if(individual_mdbs.begin(), individual_mdbs.end(),
                              [&](double m) { return m < aggregate_mdb; });
  return double(better) / double(individual_mdbs.size());
}

TimeProfile time_profile(std::span<const ProgressPoint> points) {
  if (points.empty()) throw std::invalid_argument("time_profile: no data");
  constexpr int kBins = 100;
  std::array<double, kBins> sum{};
  TimeProfile out;
  for (const ProgressPoint& pt : points) {
    if (!(pt.progress >= 0.0 && pt.progress <= 1.0))
      throw std::invalid_argument("time_profile: progress outside [0,1]");
    int b = std::min(int(pt.progress * kBins), kBins - 1);
    sum[b] += pt.brier;
    out.count[b] += 1;
  }

  // Raw bin means; empty bins borrow the nearest nonempty value (ties toward
  // the lower bin) so smoothing sees no gaps.
  std::array<double, kBins> raw{};
  std::vector<int> nonempty;
  for (int b = 0; b < kBins; ++b) {
    if (out.count[b] > 0) {
      raw[b] = sum[b] / out.count[b];
      nonempty.push_back(b);
    }
  }
  for (int b = 0; b < kBins; ++b) {
    if (out.count[b] > 0) continue;
    int best = nonempty.front();
    for (int nb : nonempty) {
      if (std::abs(nb - b) < std::abs(best - b)) best = nb;
    }
    raw[b] = raw[best];
  }

  // Discrete Gaussian kernel, sigma = 5 bins, truncated at +-3 sigma and
  // renormalized over in-range neighbors (constant-preserving at the edges).
  constexpr double kSigma = 5.0;
  constexpr int kRadius = int(3 * kSigma);
  std::array<double, 2 * kRadius + 1> kernel{};
  for (int k = -kRadius; k <= kRadius; ++k)
    kernel[k + kRadius] = std::exp(-0.5 * (k / kSigma) * (k / kSigma));
  for (int b = 0; b < kBins; ++b) {
    double acc = 0.0, norm = 0.0;
    for (int k = -kRadius; k <= kRadius; ++k) {
      int j = b + k;
      if (j < 0 || j >= kBins) continue;
      acc += kernel[k + kRadius] * raw[j];
      norm += kernel[k + kRadius];
    }
    out.value[b] = acc / norm;
  }
  return out;
}

std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson_r: length mismatch");
  std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

double pearson_one_sided_p(double r, int n) {
  if (n < 3) return 0.5;
  r = std::clamp(r, -0.9999999, 0.9999999);
  double t = r * std::sqrt(double(n - 2) / (1.0 - r * r));
  return normal_cdf(t);
}

}  // namespace crowdcast
