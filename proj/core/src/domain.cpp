#include "crowdcast/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace crowdcast {

std::string to_string(ForecasterKind k) {
  return k == ForecasterKind::human ? "human" : "machine";
}

ForecasterKind forecaster_kind_from_string(const std::string& s) {
  if (s == "human") return ForecasterKind::human;
  if (s == "machine") return ForecasterKind::machine;
  throw std::invalid_argument("unknown forecaster kind: '" + s + "'");
}

ValidationReport validate(const Tournament& t) {
  ValidationReport report;
  auto add = [&report](std::string locator, std::string message) {
    report.push_back({std::move(locator), std::move(message)});
  };

  std::unordered_map<std::string, const Question*> questions;
  for (const Question& q : t.questions) {
    if (!questions.emplace(q.id, &q).second) add(q.id, "duplicate question id");
    int n = q.option_count();
    if (n < 2 || n > 5) add(q.id, "option count " + std::to_string(n) + " outside 2..5");
    if (q.open_date > q.close_date) add(q.id, "open_date after close_date");
    if (q.resolved_index < 0 || q.resolved_index >= n)
      add(q.id, "resolved_index " + std::to_string(q.resolved_index) + " out of range");
  }

  std::set<std::string> forecaster_ids;
  for (const Forecaster& f : t.forecasters) {
    if (!forecaster_ids.insert(f.id).second) add(f.id, "duplicate forecaster id");
  }

  std::set<std::string> questions_with_forecasts;
  for (std::size_t i = 0; i < t.forecasts.size(); ++i) {
    const Forecast& f = t.forecasts[i];
    std::string loc = "forecast[" + std::to_string(i) + "]";
    auto qit = questions.find(f.question_id);
    if (qit == questions.end()) {
      add(loc, "references unknown question '" + f.question_id + "'");
      continue;
    }
    if (!forecaster_ids.count(f.forecaster_id))
      add(loc, "references unknown forecaster '" + f.forecaster_id + "'");
    const Question& q = *qit->second;
    questions_with_forecasts.insert(q.id);
    if (int(f.probs.size()) != q.option_count()) {
      add(loc, "probability vector length " + std::to_string(f.probs.size()) +
                   " does not match option count " + std::to_string(q.option_count()));
    } else {
      double sum = 0.0;
      bool in_range = true;
      for (double p : f.probs) {
        sum += p;
        if (p < 0.0 || p > 1.0) in_range = false;
      }
      if (!in_range) add(loc, "probability outside [0,1]");
      if (std::abs(sum - 1.0) > 1e-6)
        add(loc, "probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
    Date day = day_of(f.timestamp);
    if (day < q.open_date || day > q.close_date)
      add(loc, "timestamp " + format_timestamp(f.timestamp) + " outside question window");
  }

  for (const Question& q : t.questions) {
    if (!questions_with_forecasts.count(q.id)) add(q.id, "question has no forecasts");
  }
  return report;
}

namespace {

bool canonical_before(const Forecast& a, std::size_t ia, const Forecast& b, std::size_t ib) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  if (a.forecaster_id != b.forecaster_id) return a.forecaster_id < b.forecaster_id;
  return ia < ib;
}

}  // namespace

std::vector<Forecast> forecasts_before(const Tournament& t, const std::string& question_id,
                                       Timestamp cutoff) {
  bool known = std::any_of(t.questions.begin(), t.questions.end(),
                           [&](const Question& q) { return q.id == question_id; });
  if (!known) throw std::invalid_argument("unknown question id: '" + question_id + "'");

  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < t.forecasts.size(); ++i) {
    const Forecast& f = t.forecasts[i];
    if (f.question_id == question_id && f.timestamp <= cutoff) picked.push_back(i);
  }
  std::sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
    return canonical_before(t.forecasts[a], a, t.forecasts[b], b);
  });
  std::vector<Forecast> out;
  out.reserve(picked.size());
  for (std::size_t i : picked) out.push_back(t.forecasts[i]);
  return out;
}

std::vector<Date> active_days(const Question& q) {
  std::vector<Date> days;
  for (Date d = q.open_date; d <= q.close_date; d += std::chrono::days{1}) days.push_back(d);
  return days;
}

std::vector<const Forecast*> latest_per_forecaster(std::span<const Forecast* const> forecasts) {
  std::map<std::string, const Forecast*> latest;
  for (const Forecast* f : forecasts) {
    auto [it, inserted] = latest.emplace(f->forecaster_id, f);
    if (!inserted && f->timestamp >= it->second->timestamp) it->second = f;
  }
  std::vector<const Forecast*> out;
  out.reserve(latest.size());
  for (auto& [id, f] : latest) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Forecast* a, const Forecast* b) {
    if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
    return a->forecaster_id < b->forecaster_id;
  });
  return out;
}

std::vector<Forecast> latest_per_forecaster(std::span<const Forecast> forecasts) {
  std::vector<const Forecast*> refs;
  refs.reserve(forecasts.size());
  for (const Forecast& f : forecasts) refs.push_back(&f);
  std::vector<Forecast> out;
  for (const Forecast* f : latest_per_forecaster(refs)) out.push_back(*f);
  return out;
}

TournamentIndex::TournamentIndex(const Tournament& t) : t_(&t) {
  for (const Question& q : t.questions) questions_.emplace(q.id, &q);
  for (const Forecaster& f : t.forecasters) forecasters_.emplace(f.id, &f);

  std::map<std::string, std::vector<std::size_t>> picked;
  for (std::size_t i = 0; i < t.forecasts.size(); ++i)
    picked[t.forecasts[i].question_id].push_back(i);
  for (auto& [qid, idxs] : picked) {
    std::sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
      return canonical_before(t.forecasts[a], a, t.forecasts[b], b);
    });
    auto& dst = by_question_[qid];
    dst.reserve(idxs.size());
    for (std::size_t i : idxs) dst.push_back(&t.forecasts[i]);
  }
}

const Question& TournamentIndex::question(const std::string& id) const {
  auto it = questions_.find(id);
  if (it == questions_.end()) throw std::invalid_argument("unknown question id: '" + id + "'");
  return *it->second;
}

const Forecaster& TournamentIndex::forecaster(const std::string& id) const {
  auto it = forecasters_.find(id);
  if (it == forecasters_.end()) throw std::invalid_argument("unknown forecaster id: '" + id + "'");
  return *it->second;
}

bool TournamentIndex::has_forecaster(const std::string& id) const {
  return forecasters_.count(id) > 0;
}

const std::vector<const Forecast*>& TournamentIndex::forecasts_of(
    const std::string& question_id) const {
  auto it = by_question_.find(question_id);
  return it == by_question_.end() ? empty_ : it->second;
}

int TournamentIndex::visible_count(const std::string& question_id, Date day) const {
  const auto& sorted = forecasts_of(question_id);
  Timestamp cutoff = end_of_day(day);
  auto it = std::upper_bound(sorted.begin(), sorted.end(), cutoff,
                             [](Timestamp t, const Forecast* f) { return t < f->timestamp; });
  return int(it - sorted.begin());
}

std::vector<std::string> TournamentIndex::question_ids() const {
  std::vector<std::string> ids;
  ids.reserve(questions_.size());
  for (const auto& [id, q] : questions_) ids.push_back(id);
  return ids;
}

}  // namespace crowdcast
