#include "crowdcast/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crowdcast {

namespace {

constexpr double kProbClamp = 1e-6;     // keeps log-odds finite
constexpr double kWeightClamp = 0.01;   // floor on mean Brier before inversion

double clamp_prob(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

// Binary Karmarkar map, exact at the endpoints.
double extremize_binary(double p, double alpha) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double pa = std::pow(clamp_prob(p), alpha);
  double qa = std::pow(1.0 - clamp_prob(p), alpha);
  return pa / (pa + qa);
}

}  // namespace

std::string to_string(BaselineVariant v) {
  switch (v) {
    case BaselineVariant::M0: return "m0";
    case BaselineVariant::M1: return "m1";
    case BaselineVariant::M2: return "m2";
  }
  return "?";
}

BaselineVariant baseline_variant_from_string(const std::string& s) {
  if (s == "m0" || s == "M0") return BaselineVariant::M0;
  if (s == "m1" || s == "M1") return BaselineVariant::M1;
  if (s == "m2" || s == "M2") return BaselineVariant::M2;
  throw std::invalid_argument("unknown baseline variant: '" + s + "'");
}

BaselineConfig BaselineConfig::make(BaselineVariant v, double lambda, double gamma, double alpha) {
  BaselineConfig cfg;
  cfg.variant = v;
  cfg.decay_lambda = lambda;
  cfg.gamma = v == BaselineVariant::M2 ? gamma : 0.0;
  cfg.alpha = v == BaselineVariant::M0 ? 1.0 : alpha;
  return cfg;
}

double ForecasterWeights::weight(const std::string& forecaster_id) const {
  auto it = weights_.find(forecaster_id);
  return it == weights_.end() ? 1.0 : it->second;
}

void ForecasterWeights::set(const std::string& forecaster_id, double w) {
  weights_[forecaster_id] = w;
}

double decay_weight(Timestamp now, Timestamp forecast_time, double lambda) {
  if (forecast_time > now) throw std::invalid_argument("decay_weight: forecast in the future");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("decay_weight: lambda outside (0,1]");
  long age = days_between(day_of(forecast_time), day_of(now));
  return std::pow(lambda, double(age));
}

ForecasterWeights fit_weights(const Tournament& train) {
  TournamentIndex index(train);
  std::map<std::string, std::pair<double, int>> sums;  // id -> (brier sum, count)
  for (const Forecast& f : train.forecasts) {
    const Question& q = index.question(f.question_id);
    auto& [sum, count] = sums[f.forecaster_id];
    sum += brier_for(q, f.probs);
    count += 1;
  }
  ForecasterWeights w;
  for (const auto& [id, sc] : sums)
    w.set(id, 1.0 / std::max(sc.first / double(sc.second), kWeightClamp));
  return w;
}

ProbVector extremize(const ProbVector& p_bar, double alpha, bool is_ordinal) {
  if (alpha < 1.0) throw std::invalid_argument("extremize: alpha must be >= 1");
  if (alpha == 1.0) return p_bar;
  int a = p_bar.size();

  if (is_ordinal) {
    // Extremize the cumulative distribution with the binary transform, then
    // difference back to densities.
    std::vector<double> cum(a, 0.0);
    double run = 0.0;
    for (int k = 0; k < a; ++k) {
      run += p_bar[k];
      cum[k] = extremize_binary(std::min(run, 1.0), alpha);
    }
    cum[a - 1] = 1.0;
    std::vector<double> out(a);
    double prev = 0.0, sum = 0.0;
    for (int k = 0; k < a; ++k) {
      out[k] = std::max(cum[k] - prev, 0.0);
      prev = cum[k];
      sum += out[k];
    }
    for (double& p : out) p /= sum;
    return ProbVector(std::move(out));
  }

  // Per option: solve log(p'(a-1)/(1-p')) = alpha*log(p(a-1)/(1-p)), i.e.
  // scale the base-(a-1) odds exponent, then renormalize. 1/a stays fixed;
  // exact 0 and 1 map to themselves.
  std::vector<double> out(a);
  double sum = 0.0;
  for (int k = 0; k < a; ++k) {
    double p = p_bar[k];
    if (p <= 0.0) {
      out[k] = 0.0;
    } else if (p >= 1.0) {
      out[k] = 1.0;
    } else {
      double pc = clamp_prob(p);
      double odds = pc * double(a - 1) / (1.0 - pc);
      double scaled = std::pow(odds, alpha);
      out[k] = scaled / (scaled + double(a - 1));
    }
    sum += out[k];
  }
  for (double& p : out) p /= sum;
  return ProbVector(std::move(out));
}

ProbVector aggregate_baseline(std::span<const Forecast* const> forecasts, Timestamp now,
                              const BaselineConfig& cfg, const ForecasterWeights& weights,
                              bool is_ordinal) {
  std::vector<const Forecast*> pool(forecasts.begin(), forecasts.end());
  if (cfg.subset_latest) pool = latest_per_forecaster(pool);
  if (pool.empty()) throw std::invalid_argument("aggregate_baseline: no forecasts yet");

  std::size_t n = pool.front()->probs.size();
  std::vector<double> acc(n, 0.0);
  double total = 0.0;
  for (const Forecast* f : pool) {
    double w = decay_weight(now, f->timestamp, cfg.decay_lambda);
    if (cfg.gamma > 0.0) w *= std::pow(weights.weight(f->forecaster_id), cfg.gamma);
    for (std::size_t k = 0; k < n; ++k) acc[k] += w * f->probs[k];
    total += w;
  }
  for (double& p : acc) p = std::max(p / total, 0.0);
  double sum = std::accumulate(acc.begin(), acc.end(), 0.0);
  for (double& p : acc) p /= sum;

  ProbVector mean{std::move(acc)};
  if (cfg.variant == BaselineVariant::M0) return mean;
  return extremize(mean, cfg.alpha, is_ordinal);
}

AggregatedSeries baseline_series(const Question& q, std::span<const Forecast* const> sorted,
                                 const BaselineConfig& cfg, const ForecasterWeights& weights) {
  AggregatedSeries series;
  series.question_id = q.id;
  std::size_t visible = 0;
  for (Date day : active_days(q)) {
    Timestamp cutoff = end_of_day(day);
    while (visible < sorted.size() && sorted[visible]->timestamp <= cutoff) ++visible;
    if (visible == 0) {
      series.daily.push_back(ProbVector::uniform(q.option_count()));
    } else {
      series.daily.push_back(aggregate_baseline(sorted.subspan(0, visible), cutoff, cfg, weights,
                                                q.is_ordinal));
    }
  }
  return series;
}

BaselineConfig grid_search(const Tournament& train, BaselineVariant variant,
                           const BaselineGrids& grids) {
  if (grids.lambda.empty() || grids.gamma.empty() || grids.alpha.empty())
    throw std::invalid_argument("grid_search: empty grid");

  TournamentIndex index(train);
  ForecasterWeights weights =
      variant == BaselineVariant::M2 ? fit_weights(train) : ForecasterWeights{};

  std::vector<BaselineConfig> candidates;
  for (double lambda : grids.lambda) {
    std::vector<double> gammas = variant == BaselineVariant::M2 ? grids.gamma
                                                                : std::vector<double>{0.0};
    std::vector<double> alphas = variant == BaselineVariant::M0 ? std::vector<double>{1.0}
                                                                : grids.alpha;
    for (double gamma : gammas)
      for (double alpha : alphas)
        candidates.push_back(BaselineConfig::make(variant, lambda, gamma, alpha));
  }

  auto training_mmdb = [&](const BaselineConfig& cfg) {
    std::vector<double> scores;
    for (const Question& q : train.questions) {
      AggregatedSeries s = baseline_series(q, index.forecasts_of(q.id), cfg, weights);
      scores.push_back(question_score(s, q));
    }
    return mmdb(scores);
  };

  const BaselineConfig* best = nullptr;
  double best_score = 0.0;
  for (const BaselineConfig& cfg : candidates) {
    double score = training_mmdb(cfg);
    bool better = best == nullptr || score < best_score;
    if (!better && best != nullptr && score == best_score) {
      if (cfg.alpha != best->alpha) better = cfg.alpha < best->alpha;
      else if (cfg.decay_lambda != best->decay_lambda) better = cfg.decay_lambda > best->decay_lambda;
      else better = cfg.gamma < best->gamma;
    }
    if (better) {
      best = &cfg;
      best_score = score;
    }
  }
  return *best;
}

}  // namespace crowdcast
