// Canonical tournament data model: questions, forecasters, timestamped
// probability forecasts, validation, and time-ordered forecast access.
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "crowdcast/time_util.hpp"

namespace crowdcast {

enum class ForecasterKind { human, machine };

std::string to_string(ForecasterKind k);
ForecasterKind forecaster_kind_from_string(const std::string& s);

struct Question {
  std::string id;
  std::string text;
  std::vector<std::string> option_labels;  // 2..5 options
  bool is_ordinal = false;
  std::string category;
  Date open_date{};
  Date close_date{};
  int resolved_index = 0;

  int option_count() const { return int(option_labels.size()); }
  long duration_days() const { return days_between(open_date, close_date); }
};

struct Forecaster {
  std::string id;
  ForecasterKind kind = ForecasterKind::human;
};

struct Forecast {
  std::string question_id;
  std::string forecaster_id;
  Timestamp timestamp{};
  std::vector<double> probs;  // one entry per answer option, sums to 1
};

struct Tournament {
  std::vector<Question> questions;
  std::vector<Forecaster> forecasters;
  std::vector<Forecast> forecasts;
};

struct ValidationIssue {
  std::string locator;  // question id, forecaster id, or "forecast[i]"
  std::string message;
};
using ValidationReport = std::vector<ValidationIssue>;

// Reports every invariant violation in the tournament. Violations are data,
// not failures: an empty report means valid.
ValidationReport validate(const Tournament& t);

// All forecasts on question_id with timestamp <= cutoff, ascending by
// (timestamp, forecaster_id, insertion order). Throws std::invalid_argument
// on an unknown question id.
std::vector<Forecast> forecasts_before(const Tournament& t, const std::string& question_id,
                                       Timestamp cutoff);

// Inclusive daily sequence open_date..close_date; a question open for
// d calendar days of span has d+1 active days.
std::vector<Date> active_days(const Question& q);

// At most one forecast per forecaster: the one with the greatest timestamp
// (later insertion wins exact ties). Output ordered by (timestamp, id).
std::vector<Forecast> latest_per_forecaster(std::span<const Forecast> forecasts);
std::vector<const Forecast*> latest_per_forecaster(std::span<const Forecast* const> forecasts);

// Read-only lookup structure over an immutable tournament: per-question
// forecasts pre-sorted in the canonical order shared by every aggregator.
class TournamentIndex {
 public:
  explicit TournamentIndex(const Tournament& t);

  const Tournament& tournament() const { return *t_; }
  const Question& question(const std::string& id) const;      // throws on unknown id
  const Forecaster& forecaster(const std::string& id) const;  // throws on unknown id
  bool has_forecaster(const std::string& id) const;

  // Canonical (timestamp, forecaster_id, insertion) order.
  const std::vector<const Forecast*>& forecasts_of(const std::string& question_id) const;

  // Number of leading forecasts visible at end of `day`.
  int visible_count(const std::string& question_id, Date day) const;

  std::vector<std::string> question_ids() const;

 private:
  const Tournament* t_;
  std::map<std::string, const Question*> questions_;
  std::map<std::string, const Forecaster*> forecasters_;
  std::map<std::string, std::vector<const Forecast*>> by_question_;
  std::vector<const Forecast*> empty_;
};

}  // namespace crowdcast
