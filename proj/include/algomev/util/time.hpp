#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

namespace algomev {

// UTC calendar date "YYYY-MM-DD" of a unix timestamp (seconds).
inline std::string utc_date(std::int64_t unix_seconds) {
  using namespace std::chrono;
  const sys_seconds tp{seconds{unix_seconds}};
  const year_month_day ymd{floor<days>(tp)};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

// UTC calendar month "YYYY-MM".
inline std::string utc_month(std::int64_t unix_seconds) { return utc_date(unix_seconds).substr(0, 7); }

}  // namespace algomev
