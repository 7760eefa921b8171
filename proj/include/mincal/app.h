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


// Application rules: how a domain slot frame becomes a calendar request.
// Loaded from app.kb:
//
//   (rename event_duration duration)     domain slot -> application name
//   (window 9 17)                        business hours for am/pm defaults
//   (format event_time hhmm)             hhmm | ampm
//   (format event_date iso)              iso | us
//   (requires schedule event_date event_time)
//   (default event_duration 60)

#ifndef MINCAL_APP_H_
#define MINCAL_APP_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mincal/avm.h"
#include "mincal/calendar.h"
#include "mincal/civil.h"
#include "mincal/domain.h"

namespace mincal {

class AppKbError : public std::runtime_error {
 public:
  AppKbError(int line, const std::string &what)
      : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : "") + what) {}
};

class InvalidHour : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pending entries other than missing slot names.
inline constexpr std::string_view kAmbiguousMeridiem = "ambiguous_meridiem";
inline constexpr std::string_view kEventRefChoice = "event_ref_choice";
inline constexpr std::string_view kEventNotFound = "event_not_found";

struct AppRules {
  std::map<std::string, std::string, std::less<>> rename;
  std::map<std::string, std::string, std::less<>> format;
  int window_lo = 9;
  int window_hi = 17;
  std::map<std::string, std::vector<std::string>, std::less<>> required;
  int default_duration = 60;
  std::map<std::string, std::string, std::less<>> bind;  // action -> operation

  static AppRules Load(std::string_view text);
  static AppRules LoadFile(const std::string &path);

  // Application name of a domain slot.
  std::string AppName(std::string_view slot) const;
  const std::vector<std::string> &Required(std::string_view action) const;
  // Throws AppKbError unless 0 <= lo < hi <= 23.
  void SetWindow(int lo, int hi);

  std::string FormatTime(const CivilTime &t) const;
  std::string FormatDate(const CivilDate &d) const;
};

// Parses "LO..HI". Absent on malformed input.
std::optional<std::pair<int, int>> ParseWindow(std::string_view text);

// Absent means the meridiem cannot be decided. Throws InvalidHour.
std::optional<CivilTime> ResolveTime(const AppRules &rules, const Avm &event_time,
                                     const std::optional<std::string> &part_of_day,
                                     const Ontology &ont);

// The frame with its time resolved, when that is possible: event_time
// becomes [ [ hour [ 17 ] ] [ minute 0 ] ]. Same frame otherwise.
SlotFrame ApplyDefaults(const AppRules &rules, const Ontology &ont, const SlotFrame &frame);

struct AppRequest {
  std::string action;  // schedule | move | cancel
  std::string operation;  // calendar operation bound to the action
  std::optional<std::string> name;
  std::optional<CivilDate> date;
  std::optional<CivilTime> time;
  std::optional<int> duration;
  std::optional<std::string> place;
  std::vector<std::string> participants;
  std::optional<CivilDate> new_date;
  std::optional<CivilTime> new_time;
  std::vector<std::string> event_ref;  // candidate event ids
  std::vector<std::string> pending;

  bool executable() const { return pending.empty(); }
  // Resolved parameters under their application names, formatted.
  std::vector<std::pair<std::string, std::string>> Params(const AppRules &rules) const;
};

// `events` is the calendar snapshot used to resolve references for move
// and cancel. Throws InvalidDate, InvalidHour.
AppRequest ToAppRequest(const AppRules &rules, const Ontology &ont, const SlotFrame &frame,
                        const CivilDate &today, const std::vector<CalendarEvent> &events);

}  // namespace mincal

#endif  // MINCAL_APP_H_
