// Copyright 2026 The mincal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mincal/civil.h"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace mincal {
namespace {

namespace chr = std::chrono;

chr::year_month_day Ymd(const CivilDate &d) {
  return chr::year_month_day{chr::year{d.year}, chr::month{static_cast<unsigned>(d.month)},
                             chr::day{static_cast<unsigned>(d.day)}};
}

bool ParseInt(std::string_view s, int &out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

bool CivilDate::valid() const {
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  return Ymd(*this).ok();
}

int CivilDate::weekday() const {
  return static_cast<int>(chr::weekday{chr::sys_days{Ymd(*this)}}.iso_encoding());
}

CivilDate CivilDate::AddDays(int n) const {
  chr::year_month_day ymd{chr::sys_days{Ymd(*this)} + chr::days{n}};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
          static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

std::string CivilDate::ToString() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<CivilDate> CivilDate::Parse(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  CivilDate d;
  if (!ParseInt(s.substr(0, 4), d.year) || !ParseInt(s.substr(5, 2), d.month) ||
      !ParseInt(s.substr(8, 2), d.day) || !d.valid())
    return std::nullopt;
  return d;
}

std::string CivilTime::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", hour, minute);
  return buf;
}

std::optional<CivilTime> CivilTime::Parse(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return std::nullopt;
  CivilTime t;
  if (!ParseInt(s.substr(0, 2), t.hour) || !ParseInt(s.substr(3, 2), t.minute) || !t.valid())
    return std::nullopt;
  return t;
}

}  // namespace mincal
