// Linear baseline aggregators M0/M1/M2: temporal decay, inverse-Brier
// performance weights, log-odds extremization, and grid-search fitting.
#pragma once

#include <map>
#include <span>
#include <string>

#include "crowdcast/domain.hpp"
#include "crowdcast/scoring.hpp"

namespace crowdcast {

enum class BaselineVariant { M0, M1, M2 };

std::string to_string(BaselineVariant v);
BaselineVariant baseline_variant_from_string(const std::string& s);

struct BaselineConfig {
  BaselineVariant variant = BaselineVariant::M0;
  double decay_lambda = 1.0;  // (0, 1]
  double gamma = 0.0;         // >= 0; exponent on performance weights
  double alpha = 1.0;         // >= 1; extremization strength
  bool subset_latest = true;  // keep only each forecaster's most recent forecast

  // Applies the variant constraints: M0 forces gamma = 0 and alpha = 1,
  // M1 forces gamma = 0.
  static BaselineConfig make(BaselineVariant v, double lambda, double gamma, double alpha);
};

// Per-forecaster accuracy weights; unseen forecasters default to 1.
class ForecasterWeights {
 public:
  double weight(const std::string& forecaster_id) const;
  void set(const std::string& forecaster_id, double w);
  const std::map<std::string, double>& entries() const { return weights_; }

 private:
  std::map<std::string, double> weights_;
};

// lambda^(age in whole calendar days). Throws if the forecast postdates now.
double decay_weight(Timestamp now, Timestamp forecast_time, double lambda);

// w_i = 1 / max(mean training Brier of forecaster i, 0.01), ordered Brier on
// ordinal questions.
ForecasterWeights fit_weights(const Tournament& train);

// Log-odds extremization with base-(a-1) odds; alpha = 1 is the identity and
// the uniform distribution is a fixed point. Ordinal vectors extremize the
// cumulative probabilities with the binary transform instead.
ProbVector extremize(const ProbVector& p_bar, double alpha, bool is_ordinal);

// Decay- and weight^gamma-weighted mean of the (optionally latest-subset)
// forecasts, renormalized then extremized per the variant. Throws
// std::invalid_argument on an empty input; callers fall back to uniform.
ProbVector aggregate_baseline(std::span<const Forecast* const> forecasts, Timestamp now,
                              const BaselineConfig& cfg, const ForecasterWeights& weights,
                              bool is_ordinal);

struct BaselineGrids {
  std::vector<double> lambda{0.9, 0.95, 0.99, 1.0};
  std::vector<double> gamma{0.0, 0.5, 1.0, 2.0};
  std::vector<double> alpha{1.0, 1.5, 2.0, 2.5, 3.0};
};

// Exhaustive search minimizing training MMDB over the variant-constrained
// grid. Ties break toward smaller alpha, then larger lambda, then smaller
// gamma.
BaselineConfig grid_search(const Tournament& train, BaselineVariant variant,
                           const BaselineGrids& grids = {});

// Daily aggregated series for one question under a fitted baseline; days
// before the first forecast fall back to the uniform distribution.
AggregatedSeries baseline_series(const Question& q, std::span<const Forecast* const> sorted,
                                 const BaselineConfig& cfg, const ForecasterWeights& weights);

}  // namespace crowdcast
