// Calendar dates and second-resolution timestamps with ISO-8601 text forms.
#pragma once

#include <chrono>
#include <string>

namespace crowdcast {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

// "YYYY-MM-DD". Throws std::invalid_argument on malformed input.
Date parse_date(const std::string& s);
std::string format_date(Date d);

// "YYYY-MM-DD" or "YYYY-MM-DDThh:mm:ss" with optional trailing 'Z'.
Timestamp parse_timestamp(const std::string& s);
std::string format_timestamp(Timestamp t);

inline Date day_of(Timestamp t) {
  return std::chrono::floor<std::chrono::days>(t);
}

// Last representable second of day d. A forecast made any time on day d is
// visible to the aggregate for day d.
inline Timestamp end_of_day(Date d) {
  return Timestamp{d} + std::chrono::days{1} - std::chrono::seconds{1};
}

inline long days_between(Date from, Date to) {
  return (to - from).count();
}

}  // namespace crowdcast
