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

#ifndef MINCAL_CIVIL_H_
#define MINCAL_CIVIL_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace mincal {

// Proleptic Gregorian date.
struct CivilDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  bool valid() const;
  // ISO weekday, Monday = 1.
  int weekday() const;
  CivilDate AddDays(int n) const;
  std::string ToString() const;  // YYYY-MM-DD
  static std::optional<CivilDate> Parse(std::string_view s);

  auto operator<=>(const CivilDate &) const = default;
};

struct CivilTime {
  int hour = 0;
  int minute = 0;

  bool valid() const { return hour >= 0 && hour < 24 && minute >= 0 && minute < 60; }
  int minutes() const { return hour * 60 + minute; }
  std::string ToString() const;  // HH:MM
  static std::optional<CivilTime> Parse(std::string_view s);

  auto operator<=>(const CivilTime &) const = default;
};

}  // namespace mincal

#endif  // MINCAL_CIVIL_H_
