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


#include "mincal/calendar.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mincal {

namespace {

// '|', ',', '%' and line breaks are percent-escaped inside fields.
std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|' || c == ',' || c == '%' || c == '\n' || c == '\r') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", static_cast<unsigned char>(c));
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string Unescape(std::string_view s, int line) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size() || !std::isxdigit(static_cast<unsigned char>(s[i + 1])) ||
        !std::isxdigit(static_cast<unsigned char>(s[i + 2])))
      throw CalendarError(CalendarError::Kind::kStorage,
                          "line " + std::to_string(line) + ": bad escape");
    out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
    i += 2;
  }
  return out;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

void CheckEvent(const CalendarEvent &e) {
  if (!e.date.valid()) throw CalendarError(CalendarError::Kind::kInvalid, "invalid date " + e.date.ToString());
  if (!e.time.valid()) throw CalendarError(CalendarError::Kind::kInvalid, "invalid time");
  if (e.duration <= 0) throw CalendarError(CalendarError::Kind::kInvalid, "duration must be positive");
}

bool Before(const CalendarEvent &a, const CalendarEvent &b) {
  return std::tie(a.date, a.time, a.id) < std::tie(b.date, b.time, b.id);
}

}  // namespace

bool CalendarEvent::Overlaps(const CalendarEvent &o) const {
  if (date != o.date) return false;
  int a0 = time.minutes(), a1 = a0 + duration;
  int b0 = o.time.minutes(), b1 = b0 + o.duration;
  return a0 < b1 && b0 < a1;
}

void EventStore::Insert(CalendarEvent e) {
  by_date_.emplace(e.date, e.id);
  std::string id = e.id;
  events_.emplace(std::move(id), std::move(e));
}

ScheduleResult EventStore::Schedule(CalendarEvent fields) {
  CheckEvent(fields);
  fields.id = "e" + std::to_string(next_id_++);
  ScheduleResult r{fields, {}};
  for (const auto &other : Query(fields.date, fields.date)) {
    if (fields.Overlaps(other))
      r.warnings.push_back("overlaps " + other.name + " at " + other.time.ToString());
  }
  Insert(std::move(fields));
  return r;
}

const CalendarEvent *EventStore::Get(const std::string &id) const {
  auto it = events_.find(id);
  return it == events_.end() ? nullptr : &it->second;
}

CalendarEvent EventStore::Cancel(const std::string &id) {
  auto it = events_.find(id);
  if (it == events_.end()) throw CalendarError(CalendarError::Kind::kUnknownId, "unknown event " + id);
  auto [lo, hi] = by_date_.equal_range(it->second.date);
  for (auto d = lo; d != hi; ++d) {
    if (d->second == id) {
      by_date_.erase(d);
      break;
    }
  }
  CalendarEvent e = std::move(it->second);
  events_.erase(it);
  return e;
}

CalendarEvent EventStore::Move(const std::string &id, CivilDate date, CivilTime time) {
  const CalendarEvent *cur = Get(id);
  if (cur == nullptr) throw CalendarError(CalendarError::Kind::kUnknownId, "unknown event " + id);
  CalendarEvent e = *cur;
  e.date = date;
  e.time = time;
  CheckEvent(e);
  Cancel(id);
  Insert(e);
  return e;
}

std::vector<CalendarEvent> EventStore::Query(CivilDate from, CivilDate to) const {
  std::vector<CalendarEvent> out;
  if (to < from) return out;
  for (auto it = by_date_.lower_bound(from); it != by_date_.end() && it->first <= to; ++it)
    out.push_back(events_.at(it->second));
  std::sort(out.begin(), out.end(), Before);
  return out;
}

std::vector<CalendarEvent> EventStore::All() const {
  std::vector<CalendarEvent> out;
  for (const auto &[id, e] : events_) out.push_back(e);
  std::sort(out.begin(), out.end(), Before);
  return out;
}

std::string EventStore::Serialize() const {
  std::ostringstream os;
  for (const auto &e : All()) {
    os << Escape(e.id) << '|' << Escape(e.name) << '|' << e.date.ToString() << '|'
       << e.time.ToString() << '|' << e.duration << '|' << Escape(e.place) << '|';
    for (size_t i = 0; i < e.participants.size(); ++i)
      os << (i ? "," : "") << Escape(e.participants[i]);
    os << '\n';
  }
  return os.str();
}

EventStore EventStore::Deserialize(std::string_view text) {
  EventStore store;
  int line_no = 0;
  for (auto line : Split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto bad = [&](const std::string &what) {
      return CalendarError(CalendarError::Kind::kStorage,
                           "line " + std::to_string(line_no) + ": " + what);
    };
    auto f = Split(line, '|');
    if (f.size() != 7) throw bad("expected 7 fields");
    CalendarEvent e;
    e.id = Unescape(f[0], line_no);
    e.name = Unescape(f[1], line_no);
    auto d = CivilDate::Parse(f[2]);
    auto t = CivilTime::Parse(f[3]);
    if (!d || !d->valid()) throw bad("bad date");
    if (!t || !t->valid()) throw bad("bad time");
    e.date = *d;
    e.time = *t;
    try {
      e.duration = std::stoi(std::string(f[4]));
    } catch (const std::exception &) {
      throw bad("bad duration");
    }
    if (e.duration <= 0) throw bad("bad duration");
    e.place = Unescape(f[5], line_no);
    if (!f[6].empty()) {
      for (auto p : Split(f[6], ',')) e.participants.push_back(Unescape(p, line_no));
    }
    if (e.id.empty() || store.events_.count(e.id)) throw bad("missing or duplicate id");
    if (e.id.size() > 1 && e.id[0] == 'e' &&
        std::all_of(e.id.begin() + 1, e.id.end(), [](char c) { return c >= '0' && c <= '9'; }))
      store.next_id_ = std::max(store.next_id_, std::stoi(e.id.substr(1)) + 1);
    store.Insert(std::move(e));
  }
  return store;
}

EventStore EventStore::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return EventStore();
  std::ostringstream ss;
  ss << in.rdbuf();
  return Deserialize(ss.str());
}

void EventStore::Save(const std::string &path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CalendarError(CalendarError::Kind::kStorage, "cannot write " + tmp);
    out << Serialize();
    out.flush();
    if (!out) throw CalendarError(CalendarError::Kind::kStorage, "write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw CalendarError(CalendarError::Kind::kStorage, "cannot replace " + path);
}

SharedCalendar::SharedCalendar(std::string path)
    : store_(EventStore::Load(path)), path_(std::move(path)) {}

void SharedCalendar::Persist() const {
  if (!path_.empty()) store_.Save(path_);
}

ScheduleResult SharedCalendar::Schedule(CalendarEvent fields) {
  std::lock_guard lock(mu_);
  auto r = store_.Schedule(std::move(fields));
  Persist();
  return r;
}

CalendarEvent SharedCalendar::Move(const std::string &id, CivilDate date, CivilTime time) {
  std::lock_guard lock(mu_);
  auto e = store_.Move(id, date, time);
  Persist();
  return e;
}

CalendarEvent SharedCalendar::Cancel(const std::string &id) {
  std::lock_guard lock(mu_);
  auto e = store_.Cancel(id);
  Persist();
  return e;
}

std::vector<CalendarEvent> SharedCalendar::Query(CivilDate from, CivilDate to) const {
  std::lock_guard lock(mu_);
  return store_.Query(from, to);
}

std::vector<CalendarEvent> SharedCalendar::All() const {
  std::lock_guard lock(mu_);
  return store_.All();
}

}  // namespace mincal
