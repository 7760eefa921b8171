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


#include <set>

#include "doctest.h"
#include "mincal/app.h"
#include "mincal/parser.h"
#include "test_util.h"

using namespace mincal;
using mincal::testing::DataFile;
using mincal::testing::Shipped;

namespace {

const Ontology &Kb() { return Shipped()->ontology(); }

Avm Time(int h, const char *mer, int minute = 0) {
  Avm hour{{"value", Number{h}}};
  if (mer != nullptr) hour.Set("meridiem", Atom{mer});
  return Avm{{"hour", hour}, {"minute", Number{minute}}};
}

AppRules Window(int lo, int hi) {
  AppRules r;
  r.SetWindow(lo, hi);
  return r;
}

std::optional<int> Hour(const AppRules &r, int h, const char *mer,
                        std::optional<std::string> part = std::nullopt) {
  auto t = ResolveTime(r, Time(h, mer), part, Kb());
  if (!t) return std::nullopt;
  return t->hour;
}

SlotFrame Frame(const std::string &text) {
  auto rs = Shipped()->parser().Parse({}, text);
  REQUIRE(rs.size() == 1);
  return Interpret(Kb(), rs[0].message);
}

CalendarEvent Ev(std::string id, std::string name, CivilDate d, CivilTime t) {
  CalendarEvent e;
  e.id = std::move(id);
  e.name = std::move(name);
  e.date = d;
  e.time = t;
  return e;
}

const CivilDate kToday{1994, 6, 1};

}  // namespace

TEST_SUITE("app") {

TEST_CASE("shipped rules") {
  AppRules r = AppRules::LoadFile(DataFile("app.kb"));
  CHECK(r.window_lo == 9);
  CHECK(r.window_hi == 17);
  CHECK(r.AppName("event_duration") == "duration");
  CHECK(r.AppName("participants") == "participants");
  CHECK(r.Required("schedule") == std::vector<std::string>{"event_date", "event_time"});
  CHECK(r.Required("nothing").empty());
  CHECK(r.default_duration == 60);
  CHECK(r.bind.at("cancel") == "remove");
}

TEST_CASE("rule file errors") {
  CHECK_THROWS_AS(AppRules::Load("(window 17 9)"), AppKbError);
  CHECK_THROWS_AS(AppRules::Load("(window 9)"), AppKbError);
  CHECK_THROWS_AS(AppRules::Load("(format event_time sundial)"), AppKbError);
  CHECK_THROWS_AS(AppRules::Load("(default event_duration 0)"), AppKbError);
  CHECK_THROWS_AS(AppRules::Load("(rename a x) (rename b x)"), AppKbError);
  CHECK_THROWS_AS(AppRules::Load("(teleport)"), AppKbError);
  CHECK_THROWS_AS(AppRules::LoadFile(DataFile("missing.kb")), AppKbError);
  AppRules r;
  CHECK_THROWS_AS(r.SetWindow(5, 24), AppKbError);
  CHECK_THROWS_AS(r.SetWindow(5, 5), AppKbError);
}

TEST_CASE("window syntax") {
  CHECK(ParseWindow("9..17") == std::make_pair(9, 17));
  CHECK_FALSE(ParseWindow("9-17"));
  CHECK_FALSE(ParseWindow("..17"));
  CHECK_FALSE(ParseWindow("a..b"));
}

TEST_CASE("resolve time with the default window") {
  AppRules r = Window(9, 17);
  CHECK(Hour(r, 5, "am_or_pm") == 17);
  CHECK_FALSE(Hour(r, 8, "am_or_pm"));
  CHECK(Hour(r, 10, "am_or_pm") == 10);
  CHECK(Hour(r, 12, "am_or_pm") == 12);
  CHECK(Hour(r, 5, "am") == 5);
  CHECK(Hour(r, 12, "am") == 0);
  CHECK(Hour(r, 12, "pm") == 12);
  CHECK(Hour(r, 8, "pm") == 20);
  CHECK(Hour(r, 14, nullptr) == 14);
  CHECK(Hour(r, 8, "am_or_pm", "evening") == 20);
  CHECK(Hour(r, 8, "am_or_pm", "morning") == 8);
  CHECK_THROWS_AS(Hour(r, 13, "pm"), InvalidHour);
  CHECK_THROWS_AS(Hour(r, 24, nullptr), InvalidHour);
  CHECK_THROWS_AS(ResolveTime(r, Time(5, "am", 75), std::nullopt, Kb()), InvalidHour);
  CHECK_THROWS_AS(ResolveTime(r, Avm{}, std::nullopt, Kb()), InvalidHour);
}

TEST_CASE("windows satisfying 5 -> 17 and 8 -> ambiguous") {
  std::set<std::pair<int, int>> found, expected;
  for (int lo = 0; lo <= 23; ++lo)
    for (int hi = lo + 1; hi <= 23; ++hi) {
      AppRules r = Window(lo, hi);
      if (Hour(r, 5, "am_or_pm") == 17 && !Hour(r, 8, "am_or_pm")) found.insert({lo, hi});
    }
  for (int lo = 9; lo <= 17; ++lo)
    for (int hi = std::max(lo + 1, 17); hi <= 19; ++hi) expected.insert({lo, hi});
  for (int lo = 6; lo <= 8; ++lo)
    for (int hi = 20; hi <= 23; ++hi) expected.insert({lo, hi});
  CHECK(found == expected);
  CHECK(found.count({9, 17}) == 1);
}

TEST_CASE("part of day overrides the window and keeps hour mod 12") {
  AppRules r = Window(9, 17);
  for (int h = 1; h <= 12; ++h) {
    for (const char *part : {"morning", "afternoon", "evening"}) {
      CAPTURE(h);
      CAPTURE(part);
      auto got = Hour(r, h, "am_or_pm", std::string(part));
      REQUIRE(got);
      CHECK(*got >= 0);
      CHECK(*got <= 23);
      CHECK(*got % 12 == h % 12);
    }
  }
}

TEST_CASE("defaults fill the time") {
  AppRules r = AppRules::LoadFile(DataFile("app.kb"));
  SlotFrame f = Frame("I want you to arrange a conference in my office at 5");
  SlotFrame d = ApplyDefaults(r, Kb(), f);
  CHECK(ToBracket(*d.event_time) == "[ [ hour [ 17 ] ] [ minute 0 ] ]");
  SlotFrame amb = ApplyDefaults(r, Kb(), Frame("arrange a conference at 8"));
  CHECK(ToBracket(*amb.event_time) == "[ [ hour [ 8 am_or_pm ] ] [ minute 0 ] ]");
}

TEST_CASE("schedule request") {
  AppRules r = AppRules::LoadFile(DataFile("app.kb"));
  AppRequest q = ToAppRequest(r, Kb(), Frame("schedule a meeting with bob"), kToday, {});
  CHECK(q.operation == "add");
  CHECK(q.pending == std::vector<std::string>{"event_date", "event_time"});
  CHECK_FALSE(q.executable());
  CHECK(q.duration == 60);

  q = ToAppRequest(r, Kb(), Frame("organize a seminar on august 30th at 8"), kToday, {});
  CHECK(q.pending == std::vector<std::string>{std::string(kAmbiguousMeridiem)});

  q = ToAppRequest(r, Kb(), Frame("plan a dinner on august 30th at 8 pm"), kToday, {});
  REQUIRE(q.executable());
  auto params = q.Params(r);
  std::vector<std::pair<std::string, std::string>> want = {
      {"name", "a dinner"}, {"date", "1994-08-30"}, {"time", "20:00"}, {"duration", "60"}};
  CHECK(params == want);
}

TEST_CASE("references against a calendar") {
  AppRules r = AppRules::LoadFile(DataFile("app.kb"));
  std::vector<CalendarEvent> cal = {
      Ev("e1", "a meeting", {1994, 6, 3}, {10, 0}),
      Ev("e2", "a lunch", {1994, 6, 3}, {12, 0}),
      Ev("e3", "a meeting", {1994, 6, 6}, {15, 0}),
  };
  AppRequest q = ToAppRequest(r, Kb(), Frame("cancel the lunch"), kToday, cal);
  CHECK(q.executable());
  CHECK(q.event_ref == std::vector<std::string>{"e2"});
  CHECK(q.operation == "remove");

  q = ToAppRequest(r, Kb(), Frame("cancel the meeting"), kToday, cal);
  CHECK(q.pending == std::vector<std::string>{std::string(kEventRefChoice)});
  CHECK(q.event_ref.size() == 2);

  q = ToAppRequest(r, Kb(), Frame("cancel the meeting on friday"), kToday, cal);
  CHECK(q.event_ref == std::vector<std::string>{"e1"});

  q = ToAppRequest(r, Kb(), Frame("cancel the seminar"), kToday, cal);
  CHECK(q.pending == std::vector<std::string>{std::string(kEventNotFound)});

  q = ToAppRequest(r, Kb(), Frame("reschedule the lunch to 1 pm"), kToday, cal);
  REQUIRE(q.executable());
  CHECK(q.new_time == CivilTime{13, 0});
  CHECK(q.new_date == CivilDate{1994, 6, 3});

  q = ToAppRequest(r, Kb(), Frame("move the lunch to friday"), kToday, cal);
  CHECK(q.executable());
  CHECK(q.new_time == CivilTime{12, 0});
}

TEST_CASE("renaming only changes application names") {
  AppRules r = AppRules::Load("(rename event_duration length) (format event_time ampm)");
  AppRequest q;
  q.duration = 30;
  q.time = CivilTime{17, 5};
  auto params = q.Params(r);
  std::vector<std::pair<std::string, std::string>> want = {{"event_time", "5:05 pm"}, {"length", "30"}};
  CHECK(params == want);
  CHECK(AppRules::Load("(format event_date us)").FormatDate({1994, 8, 30}) == "08/30/1994");
}

TEST_CASE("invalid dates surface") {
  AppRules r = AppRules::LoadFile(DataFile("app.kb"));
  CHECK_THROWS_AS(ToAppRequest(r, Kb(), Frame("organize a seminar on april 31st"), kToday, {}),
                  InvalidDate);
}

}  // TEST_SUITE
