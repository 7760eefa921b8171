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


#include "mincal/app.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mincal/text.h"

namespace mincal {
namespace {

std::string Word(const SExpr &e, const char *what) {
  if (e.kind == SExpr::Kind::kSymbol || e.kind == SExpr::Kind::kString) return e.text;
  throw AppKbError(e.line, std::string("expected ") + what + ", got " + ToString(e));
}

int Int(const SExpr &e, const char *what) {
  if (e.kind != SExpr::Kind::kNumber) throw AppKbError(e.line, std::string("expected number for ") + what);
  return static_cast<int>(e.number);
}

const std::set<std::string, std::less<>> kTimeFormats = {"hhmm", "ampm"};
const std::set<std::string, std::less<>> kDateFormats = {"iso", "us"};

std::optional<int64_t> NumberAt(const Avm &a, std::string_view attr) {
  const Value *v = a.Find(attr);
  if (v == nullptr || !v->is<Number>()) return std::nullopt;
  return v->as<Number>().value;
}

std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// The reference "the meeting" names events whose name contains "meeting".
bool NameMatches(std::string_view ref, std::string_view name) {
  auto r = Words(ref);
  if (r.empty()) return false;
  auto n = Words(name);
  return std::find(n.begin(), n.end(), r.back()) != n.end();
}

// Whether an event's time fits what the user said, ambiguity included.
bool TimeMatches(const AppRules &rules, const Ontology &ont, const Avm &said,
                 const std::optional<std::string> &pod, const CivilTime &t) {
  auto resolved = ResolveTime(rules, said, pod, ont);
  if (resolved) return *resolved == t;
  const Avm *hour = said.Find("hour") ? said.Find("hour")->get_if<Avm>() : nullptr;
  auto h = hour ? NumberAt(*hour, "value") : std::nullopt;
  int minute = static_cast<int>(NumberAt(said, "minute").value_or(0));
  return h && (*h % 12) == (t.hour % 12) && minute == t.minute;
}

}  // namespace

AppRules AppRules::Load(std::string_view text) {
  std::vector<SExpr> forms;
  try {
    forms = ReadSExprs(text);
  } catch (const SyntaxError &e) {
    throw AppKbError(e.line(), e.what());
  }
  AppRules r;
  for (const auto &f : forms) {
    if (f.kind != SExpr::Kind::kList || f.items.empty() || f.items[0].kind != SExpr::Kind::kSymbol)
      throw AppKbError(f.line, "expected (rule ...)");
    const auto &a = f.items;
    const std::string &kind = a[0].text;
    auto need = [&](size_t n) {
      if (a.size() != n) throw AppKbError(f.line, "wrong arity for " + kind);
    };
    if (kind == "rename") {
      need(3);
      r.rename[Word(a[1], "slot")] = Word(a[2], "application name");
    } else if (kind == "window") {
      need(3);
      try {
        r.SetWindow(Int(a[1], "window start"), Int(a[2], "window end"));
      } catch (const AppKbError &e) {
        throw AppKbError(f.line, e.what());
      }
    } else if (kind == "format") {
      need(3);
      std::string slot = Word(a[1], "slot"), style = Word(a[2], "format");
      bool time = slot == "event_time" || slot == "new_time";
      bool date = slot == "event_date" || slot == "new_date";
      if ((time && !kTimeFormats.count(style)) || (date && !kDateFormats.count(style)) ||
          (!time && !date))
        throw AppKbError(f.line, "no format " + style + " for " + slot);
      r.format[slot] = style;
    } else if (kind == "requires") {
      if (a.size() < 2) throw AppKbError(f.line, "requires needs an action");
      auto &slots = r.required[Word(a[1], "action")];
      slots.clear();
      for (size_t i = 2; i < a.size(); ++i) slots.push_back(Word(a[i], "slot"));
    } else if (kind == "default") {
      need(3);
      if (Word(a[1], "slot") != "event_duration")
        throw AppKbError(f.line, "only event_duration has a default");
      r.default_duration = Int(a[2], "duration");
      if (r.default_duration <= 0) throw AppKbError(f.line, "duration must be positive");
    } else if (kind == "bind") {
      need(3);
      r.bind[Word(a[1], "action")] = Word(a[2], "operation");
    } else {
      throw AppKbError(f.line, "unknown rule " + kind);
    }
  }
  std::set<std::string> targets;
  for (const auto &[from, to] : r.rename) {
    if (!targets.insert(to).second) throw AppKbError(0, "two slots renamed to " + to);
  }
  return r;
}

AppRules AppRules::LoadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AppKbError(0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return Load(ss.str());
  } catch (const AppKbError &e) {
    throw AppKbError(0, path + ": " + e.what());
  }
}

void AppRules::SetWindow(int lo, int hi) {
  if (lo < 0 || hi > 23 || lo >= hi)
    throw AppKbError(0, "bad window " + std::to_string(lo) + ".." + std::to_string(hi));
  window_lo = lo;
  window_hi = hi;
}

std::string AppRules::AppName(std::string_view slot) const {
  auto it = rename.find(slot);
  return it == rename.end() ? std::string(slot) : it->second;
}

const std::vector<std::string> &AppRules::Required(std::string_view action) const {
  static const std::vector<std::string> kNone;
  auto it = required.find(action);
  return it == required.end() ? kNone : it->second;
}

std::string AppRules::FormatTime(const CivilTime &t) const {
  auto it = format.find("event_time");
  if (it != format.end() && it->second == "ampm") {
    int h = t.hour % 12 == 0 ? 12 : t.hour % 12;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%d:%02d %s", h, t.minute, t.hour < 12 ? "am" : "pm");
    return buf;
  }
  return t.ToString();
}

std::string AppRules::FormatDate(const CivilDate &d) const {
  auto it = format.find("event_date");
  if (it != format.end() && it->second == "us") {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d/%02d/%04d", d.month, d.day, d.year);
    return buf;
  }
  return d.ToString();
}

std::optional<std::pair<int, int>> ParseWindow(std::string_view text) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) return std::nullopt;
  auto num = [](std::string_view s) -> std::optional<int> {
    if (s.empty() || s.size() > 2) return std::nullopt;
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  };
  auto lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
  if (!lo || !hi) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

std::optional<CivilTime> ResolveTime(const AppRules &rules, const Avm &event_time,
                                     const std::optional<std::string> &part_of_day,
                                     const Ontology &ont) {
  const Value *hv = event_time.Find("hour");
  const Avm *hour = hv ? hv->get_if<Avm>() : nullptr;
  auto h = hour ? NumberAt(*hour, "value") : std::nullopt;
  if (!h) throw InvalidHour("time without an hour: " + ToBracket(event_time));
  int64_t minute = NumberAt(event_time, "minute").value_or(0);
  if (minute < 0 || minute > 59) throw InvalidHour("minute " + std::to_string(minute));
  const Value *mv = hour->Find("meridiem");
  std::string mer = mv && mv->is<Atom>() ? mv->as<Atom>().name : "";
  auto at = [&](int64_t hh) { return CivilTime{static_cast<int>(hh), static_cast<int>(minute)}; };

  if (mer.empty()) {
    if (*h < 0 || *h > 23) throw InvalidHour("hour " + std::to_string(*h));
    return at(*h);
  }
  if (*h < 1 || *h > 12) throw InvalidHour("hour " + std::to_string(*h) + " " + mer);
  if (mer == "am") return at(*h % 12);
  if (mer == "pm") return at(*h % 12 + 12);
  if (mer != "am_or_pm") throw InvalidHour("unknown meridiem " + mer);

  if (part_of_day) {
    if (const PartOfDayInfo *p = ont.PartOfDay(*part_of_day)) {
      if (p->meridiem == "pm") return at(*h < 12 ? *h + 12 : *h);
      return at(*h);
    }
  }
  int64_t a = *h % 12, b = a + 12;
  bool in_a = a >= rules.window_lo && a <= rules.window_hi;
  bool in_b = b >= rules.window_lo && b <= rules.window_hi;
  if (in_a == in_b) return std::nullopt;
  return at(in_a ? a : b);
}

SlotFrame ApplyDefaults(const AppRules &rules, const Ontology &ont, const SlotFrame &frame) {
  SlotFrame out = frame;
  auto fix = [&](std::optional<Avm> &slot) {
    if (!slot) return;
    auto t = ResolveTime(rules, *slot, frame.part_of_day, ont);
    if (!t) return;
    *slot = Avm{{"hour", Avm{{"value", t->hour}}}, {"minute", t->minute}};
  };
  fix(out.event_time);
  fix(out.new_time);
  return out;
}

std::vector<std::pair<std::string, std::string>> AppRequest::Params(const AppRules &rules) const {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](std::string_view slot, std::string value) {
    out.emplace_back(rules.AppName(slot), std::move(value));
  };
  if (!event_ref.empty() && event_ref.size() == 1) add("event_ref", event_ref[0]);
  if (name) add("event_name", *name);
  if (date) add("event_date", rules.FormatDate(*date));
  if (time) add("event_time", rules.FormatTime(*time));
  if (duration) add("event_duration", std::to_string(*duration));
  if (place) add("event_place", *place);
  if (!participants.empty()) {
    std::string joined;
    for (const auto &p : participants) joined += (joined.empty() ? "" : ", ") + p;
    add("participants", joined);
  }
  if (new_date) add("new_date", rules.FormatDate(*new_date));
  if (new_time) add("new_time", rules.FormatTime(*new_time));
  return out;
}

AppRequest ToAppRequest(const AppRules &rules, const Ontology &ont, const SlotFrame &frame,
                        const CivilDate &today, const std::vector<CalendarEvent> &events) {
  AppRequest r;
  r.action = frame.action_name;
  auto bound = rules.bind.find(r.action);
  r.operation = bound == rules.bind.end() ? r.action : bound->second;
  r.name = frame.event_name;
  r.place = frame.event_place;
  r.participants = frame.participants;
  if (frame.event_duration) r.duration = static_cast<int>(*frame.event_duration);
  else if (r.action == "schedule") r.duration = rules.default_duration;

  bool ambiguous = false;
  const auto &required = rules.Required(r.action);
  auto is_required = [&](std::string_view s) {
    return std::find(required.begin(), required.end(), s) != required.end();
  };
  bool referring = is_required("event_ref");

  if (frame.event_date) r.date = NormalizeDate(ont, *frame.event_date, today);
  if (frame.event_time) {
    r.time = ResolveTime(rules, *frame.event_time, frame.part_of_day, ont);
    // For a reference the time only narrows the search.
    if (!r.time && !referring) ambiguous = true;
  }
  if (frame.new_date) r.new_date = NormalizeDate(ont, *frame.new_date, today);
  if (frame.new_time) {
    r.new_time = ResolveTime(rules, *frame.new_time, frame.part_of_day, ont);
    if (!r.new_time) ambiguous = true;
  }

  std::vector<std::string> ref_problem;
  if (referring && r.name) {
    for (const auto &e : events) {
      if (!NameMatches(*r.name, e.name)) continue;
      if (r.date && e.date != *r.date) continue;
      if (frame.event_time && !TimeMatches(rules, ont, *frame.event_time, frame.part_of_day, e.time))
        continue;
      r.event_ref.push_back(e.id);
    }
    if (r.event_ref.empty()) {
      ref_problem.emplace_back(kEventNotFound);
    } else if (r.event_ref.size() > 1) {
      ref_problem.emplace_back(kEventRefChoice);
    } else {
      const CalendarEvent &e =
          *std::find_if(events.begin(), events.end(), [&](const CalendarEvent &x) { return x.id == r.event_ref[0]; });
      // Moving to a new day keeps the hour, and the other way round.
      if (r.action == "move") {
        if (r.new_date && !frame.new_time) r.new_time = e.time;
        if (r.new_time && !r.new_date) r.new_date = e.date;
      }
    }
  }

  for (const auto &slot : required) {
    bool missing;
    if (slot == "event_ref") missing = !r.name;
    else if (slot == "event_time") missing = !frame.event_time;
    else if (slot == "new_time") missing = !frame.new_time && !r.new_time;
    else if (slot == "new_date") missing = !frame.new_date && !r.new_date;
    else missing = !frame.Has(slot);
    if (missing) r.pending.push_back(slot);
  }
  if (ambiguous) r.pending.emplace_back(kAmbiguousMeridiem);
  for (auto &p : ref_problem) r.pending.push_back(std::move(p));
  return r;
}

}  // namespace mincal
