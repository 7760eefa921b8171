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


// Event store behind the dialog: schedule, move, cancel and date-range
// queries, persisted as one line per event:
//
//   id|name|YYYY-MM-DD|HH:MM|duration_min|place|participant,participant

#ifndef MINCAL_CALENDAR_H_
#define MINCAL_CALENDAR_H_

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/civil.h"

namespace mincal {

struct CalendarEvent {
  std::string id;
  std::string name;
  CivilDate date;
  CivilTime time;
  int duration = 60;  // minutes
  std::string place;  // empty when unknown
  std::vector<std::string> participants;

  bool Overlaps(const CalendarEvent &other) const;
  bool operator==(const CalendarEvent &) const = default;
};

class CalendarError : public std::runtime_error {
 public:
  enum class Kind { kUnknownId, kInvalid, kStorage };
  CalendarError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ScheduleResult {
  CalendarEvent event;
  std::vector<std::string> warnings;  // one per overlapping event
};

// Not thread-safe; see SharedCalendar.
class EventStore {
 public:
  // `fields.id` is ignored; the store assigns e1, e2, ...
  ScheduleResult Schedule(CalendarEvent fields);
  CalendarEvent Move(const std::string &id, CivilDate date, CivilTime time);
  CalendarEvent Cancel(const std::string &id);
  const CalendarEvent *Get(const std::string &id) const;

  // Events with from <= date <= to, sorted by (date, time, id).
  std::vector<CalendarEvent> Query(CivilDate from, CivilDate to) const;
  std::vector<CalendarEvent> All() const;
  size_t size() const { return events_.size(); }

  std::string Serialize() const;
  static EventStore Deserialize(std::string_view text);
  // A missing file loads as an empty store.
  static EventStore Load(const std::string &path);
  // Writes a temporary file next to `path` and renames it over.
  void Save(const std::string &path) const;

  bool operator==(const EventStore &other) const { return events_ == other.events_; }

 private:
  void Insert(CalendarEvent e);

  std::map<std::string, CalendarEvent> events_;
  std::multimap<CivilDate, std::string> by_date_;
  int next_id_ = 1;
};

// A store shared between sessions: writes take the lock and persist when
// a path is set.
class SharedCalendar {
 public:
  SharedCalendar() = default;
  explicit SharedCalendar(std::string path);

  ScheduleResult Schedule(CalendarEvent fields);
  CalendarEvent Move(const std::string &id, CivilDate date, CivilTime time);
  CalendarEvent Cancel(const std::string &id);
  std::vector<CalendarEvent> Query(CivilDate from, CivilDate to) const;
  std::vector<CalendarEvent> All() const;

 private:
  void Persist() const;

  mutable std::mutex mu_;
  EventStore store_;
  std::string path_;
};

}  // namespace mincal

#endif  // MINCAL_CALENDAR_H_
