#include "crowdcast/time_util.hpp"

#include <cstdio>
#include <stdexcept>

namespace crowdcast {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& s) {
  throw std::invalid_argument(what + ": '" + s + "'");
}

}  // namespace

Date parse_date(const std::string& s) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) {
    bad("malformed date", s);
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                  std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) bad("invalid calendar date", s);
  return Date{ymd};
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

Timestamp parse_timestamp(const std::string& s) {
  int y = 0, m = 0, d = 0, hh = 0, mm = 0, ss = 0;
  char z = 0, tail = 0;
  int n = std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d%c%c", &y, &m, &d, &hh, &mm, &ss, &z, &tail);
  if (n == 3) return Timestamp{parse_date(s)};
  if (n != 6 && !(n == 7 && z == 'Z')) bad("malformed timestamp", s);
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 59) bad("invalid time of day", s);
  char datepart[16];
  std::snprintf(datepart, sizeof datepart, "%04d-%02d-%02d", y, m, d);
  return Timestamp{parse_date(datepart)} + std::chrono::hours{hh} + std::chrono::minutes{mm} +
         std::chrono::seconds{ss};
}

std::string format_timestamp(Timestamp t) {
  Date day = day_of(t);
  long sec = (t - Timestamp{day}).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02ld:%02ld:%02ldZ", format_date(day).c_str(), sec / 3600,
                (sec / 60) % 60, sec % 60);
  return buf;
}

}  // namespace crowdcast
