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

// Calendar-domain knowledge: the sort hierarchy and other background
// tables, the attachment filters, and the interpreter from parse messages
// to slot frames. Everything here loads from a facts file (calendar.kb):
//
//   (sort place thing)
//   (isa office place)
//   (month august 8 31 september)
//   (month february 2 28 march 29)        ; last field: leap-year days
//   (weekday monday 1)
//   (part_of_day evening pm 18 23)
//   (action arrange :maps schedule :object event)
//   (action meet :maps schedule :object person :role participant
//                :event_name "a meeting")
//   (forbid modify place person)

#ifndef MINCAL_DOMAIN_H_
#define MINCAL_DOMAIN_H_

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/avm.h"
#include "mincal/civil.h"

namespace mincal {

class KbError : public std::runtime_error {
 public:
  KbError(int line, const std::string &what)
      : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : "") + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct MonthInfo {
  std::string name;
  int index = 0;  // 1..12
  int days = 0;
  int leap_days = 0;  // 0 when the month never changes length
  std::string next;
};

struct PartOfDayInfo {
  std::string name;
  std::string meridiem;  // am | pm
  int lo = 0;            // representative window, 24-hour clock
  int hi = 0;
};

struct ActionInfo {
  std::string sem_type;
  std::string action;       // schedule | move | cancel
  std::string object_sort;  // selection restriction on the direct object
  std::string object_role = "event";  // event | participant
  std::string event_name;   // used when the object is not the event
};

struct FilterRule {
  std::string modifier;
  std::string head;
  bool operator==(const FilterRule &) const = default;
};

class Ontology {
 public:
  static Ontology Load(std::string_view text);
  static Ontology LoadFile(const std::string &path);

  bool IsSort(std::string_view s) const { return parent_.count(std::string(s)) > 0; }
  // True when `sort` equals `ancestor` or lies below it.
  bool Subsumes(std::string_view ancestor, std::string_view sort) const;
  // Sort of a value: an atom's declared sort (or the atom itself when it
  // names a sort), a term's head (time(hour) -> time). Absent if unknown.
  std::optional<std::string> SortOf(const Value &v) const;
  std::vector<std::string> Sorts() const;
  std::vector<std::string> RootSorts() const;

  const MonthInfo *Month(std::string_view name) const;
  const MonthInfo *MonthByIndex(int index) const;
  const std::vector<MonthInfo> &months() const { return months_; }
  std::optional<int> Weekday(std::string_view name) const;
  const std::map<std::string, int, std::less<>> &weekdays() const { return weekdays_; }
  const PartOfDayInfo *PartOfDay(std::string_view name) const;
  const std::vector<PartOfDayInfo> &parts_of_day() const { return parts_; }
  const ActionInfo *Action(std::string_view sem_type) const;
  const std::map<std::string, ActionInfo, std::less<>> &actions() const { return actions_; }
  const std::vector<FilterRule> &filter_rules() const { return rules_; }

 private:
  std::map<std::string, std::string, std::less<>> parent_;  // sort -> parent ("" at roots)
  std::map<std::string, std::string, std::less<>> isa_;     // word -> sort
  std::vector<MonthInfo> months_;
  std::map<std::string, int, std::less<>> weekdays_;
  std::vector<PartOfDayInfo> parts_;
  std::map<std::string, ActionInfo, std::less<>> actions_;
  std::vector<FilterRule> rules_;
};

enum class Verdict { kAllow, kVeto };

// The linguistic filters plus the object selection restriction. A
// disabled set allows everything.
class FilterSet {
 public:
  FilterSet() = default;  // disabled
  explicit FilterSet(std::shared_ptr<const Ontology> ont)
      : ont_(std::move(ont)), enabled_(ont_ != nullptr) {}

  bool enabled() const { return enabled_; }
  static FilterSet Disabled() { return FilterSet(); }

  // Veto iff a rule forbids (modifier, head) up to the sort hierarchy.
  // Unknown sorts allow.
  Verdict Check(std::string_view modifier_sort, std::string_view head_sort) const;
  // Value form used by the parser: sorts are taken with Ontology::SortOf.
  bool AllowsModifier(const Value &modifier, const Value &head) const;
  // Object selection: the noun's sort must fall under the object sort of
  // the expecting verb. Unknown verbs or sorts allow.
  bool Selects(const Value &noun, const Value &expect) const;

 private:
  std::shared_ptr<const Ontology> ont_;
  bool enabled_ = false;
};

// Slot frame produced by the domain interpreter.
struct SlotFrame {
  std::string action_name;
  std::optional<std::string> event_name;
  std::optional<Avm> event_date;   // {month, day} | {weekday} | {rel}
  std::optional<Avm> event_time;   // {hour {value, meridiem}, minute}
  std::optional<std::string> event_place;
  std::vector<std::string> participants;
  std::optional<int64_t> event_duration;  // minutes
  std::optional<std::string> part_of_day;
  std::optional<Avm> new_date;
  std::optional<Avm> new_time;

  // Slot name -> value, in display order; absent slots are skipped.
  std::vector<std::pair<std::string, Value>> Slots() const;
  Avm ToAvm() const;
  bool Has(std::string_view slot) const;

  bool operator==(const SlotFrame &) const = default;
};

// Bracketed frame, one slot per line.
std::string FormatSlots(const std::vector<std::pair<std::string, Value>> &slots);

class InterpretError : public std::runtime_error {
 public:
  enum class Kind { kUnknownAction, kMalformedMessage };
  InterpretError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// True for commands and indirect requests (messages interpret accepts).
bool IsActionMessage(const Avm &message);

SlotFrame Interpret(const Ontology &ont, const Avm &message);

// Routes one adjunct message (a pp_msg element) into the frame. Throws
// InterpretError on an unknown type or a conflicting value.
void ApplyAdjunct(const Ontology &ont, const Avm &pp, SlotFrame &frame);

// Adjuncts listed in a fragment message, in order.
std::vector<Avm> FragmentAdjuncts(const Avm &message);

class InvalidDate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CivilDate NormalizeDate(const Ontology &ont, const Avm &date, const CivilDate &today);

}  // namespace mincal

#endif  // MINCAL_DOMAIN_H_
