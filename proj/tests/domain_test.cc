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


#include "doctest.h"
#include "mincal/domain.h"
#include "mincal/parser.h"
#include "test_util.h"

using namespace mincal;
using mincal::testing::After;
using mincal::testing::DataFile;
using mincal::testing::Shipped;

namespace {

const Ontology &Kb() { return Shipped()->ontology(); }

SlotFrame InterpretOne(const std::string &text, const DiscourseContext &ctx = {}) {
  auto parses = Shipped()->parser().Parse(ctx, text);
  REQUIRE(parses.size() == 1);
  return Interpret(Kb(), parses[0].message);
}

Avm Date(const std::string &text) { return ReadBracket(text).as<Avm>(); }

bool ThrowsKb(const std::string &text) {
  try {
    Ontology::Load(text);
  } catch (const KbError &) {
    return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("domain") {

TEST_CASE("sort hierarchy") {
  const Ontology &o = Kb();
  CHECK(o.Subsumes("entity", "place"));
  CHECK(o.Subsumes("thing", "time"));
  CHECK(o.Subsumes("place", "place"));
  CHECK_FALSE(o.Subsumes("place", "entity"));
  CHECK(o.SortOf(Value("place")) == std::optional<std::string>("place"));
  CHECK(o.SortOf(Value("arrange")) == std::optional<std::string>("action"));
  CHECK(o.SortOf(Value(Term{"time", {Atom{"hour"}}})) == std::optional<std::string>("time"));
  CHECK_FALSE(o.SortOf(Value("zzz")).has_value());
  CHECK(o.RootSorts() == std::vector<std::string>{"thing"});
}

TEST_CASE("background tables") {
  const Ontology &o = Kb();
  REQUIRE(o.Month("february"));
  CHECK(o.Month("february")->days == 28);
  CHECK(o.Month("february")->leap_days == 29);
  CHECK(o.MonthByIndex(8)->name == "august");
  CHECK(o.Weekday("monday") == 1);
  CHECK(o.PartOfDay("evening")->meridiem == "pm");
  CHECK(o.Action("arrange")->action == "schedule");
  CHECK(o.Action("meet")->object_role == "participant");
}

TEST_CASE("filters veto by sort up the hierarchy") {
  FilterSet f(Shipped()->ontology_ptr());
  CHECK(f.Check("place", "person") == Verdict::kVeto);
  CHECK(f.Check("person", "action") == Verdict::kVeto);
  CHECK(f.Check("time", "place") == Verdict::kVeto);  // via temporal
  CHECK(f.Check("place", "event") == Verdict::kAllow);
  CHECK(f.Check("unknown", "person") == Verdict::kAllow);
  CHECK(FilterSet::Disabled().AllowsModifier(Value("place"), Value("person")));
  // Nouns are selected by their grammatical type.
  CHECK(f.Selects(Value("event"), Value("schedule")));
  CHECK_FALSE(f.Selects(Value("place"), Value("meet")));
  CHECK(f.Selects(Value("person"), Value("meet")));
  CHECK_FALSE(f.Selects(Value("person"), Value("schedule")));
}

TEST_CASE("knowledge base errors") {
  CHECK(ThrowsKb("(sort a b)"));                  // unknown parent
  CHECK(ThrowsKb("(sort a) (isa x zzz)"));        // unknown sort
  CHECK(ThrowsKb("(sort a) (forbid modify a b)"));
  CHECK(ThrowsKb("(sort a b) (sort b a)"));       // cycle
  CHECK(ThrowsKb("(frobnicate)"));
  CHECK(ThrowsKb("(sort a) (action x :object a)"));  // no :maps
  // The month table is required to be a full cycle.
  CHECK(ThrowsKb("(sort a) (month january 1 31 february)"));
  try {
    Ontology::Load("(sort thing)\n\n(bogus 1)");
    FAIL("loaded");
  } catch (const KbError &e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("interpretation of the indirect request") {
  SlotFrame f = InterpretOne("I want you to arrange a conference in my office at 5");
  CHECK(f.action_name == "schedule");
  CHECK(f.event_name == "a conference");
  CHECK(f.event_place == "my office");
  REQUIRE(f.event_time);
  CHECK(ToBracket(*f.event_time) == "[ [ hour [ 5 am_or_pm ] ] [ minute 0 ] ]");
  CHECK_FALSE(f.event_date);
}

TEST_CASE("interpretation examples") {
  SlotFrame f = InterpretOne("schedule a meeting with bob");
  CHECK(f.participants == std::vector<std::string>{"bob"});
  CHECK(f.event_name == "a meeting");

  f = InterpretOne("i want to meet my manager in the cafeteria");
  CHECK(f.action_name == "schedule");
  CHECK(f.participants == std::vector<std::string>{"my manager"});
  CHECK(f.event_place == "the cafeteria");

  f = InterpretOne("organize a seminar on august 30th");
  REQUIRE(f.event_date);
  CHECK(*f.event_date->Find("month") == Value("august"));
  CHECK(*f.event_date->Find("day") == Value(Number{30}));

  f = InterpretOne("book a party for two hours");
  CHECK(f.event_duration == 120);

  f = InterpretOne("cancel the meeting with bob");
  CHECK(f.action_name == "cancel");

  f = InterpretOne("move the meeting to 3 pm");
  CHECK(f.action_name == "move");
  REQUIRE(f.new_time);
  CHECK_FALSE(f.event_time);
}

TEST_CASE("conflicting adjuncts are rejected") {
  SlotFrame f;
  f.action_name = "schedule";
  auto frag = Shipped()->parser().Parse(After("sent(ques, wh_time)"), "at 5");
  REQUIRE(frag.size() == 1);
  auto adj = FragmentAdjuncts(frag[0].message);
  REQUIRE(adj.size() == 1);
  ApplyAdjunct(Kb(), adj[0], f);
  CHECK(f.event_time);
  auto frag7 = Shipped()->parser().Parse(After("sent(ques, wh_time)"), "at 7");
  REQUIRE(frag7.size() == 1);
  CHECK_THROWS_AS(ApplyAdjunct(Kb(), FragmentAdjuncts(frag7[0].message).at(0), f), InterpretError);
}

TEST_CASE("slot display order") {
  SlotFrame f = InterpretOne("I want you to arrange a conference in my office at 5");
  std::vector<std::string> names;
  for (const auto &[k, v] : f.Slots()) names.push_back(k);
  CHECK(names == std::vector<std::string>{"action_name", "event_name", "event_time", "event_place"});
  std::string shown = FormatSlots(f.Slots());
  CHECK(shown.rfind("[ [ action_name schedule ]\n", 0) == 0);
}

TEST_CASE("date normalization") {
  const Ontology &o = Kb();
  CivilDate today{1994, 6, 1};  // a Wednesday
  CHECK(NormalizeDate(o, Date("[ [ month august ] [ day 30 ] ]"), today) == CivilDate{1994, 8, 30});
  CHECK(NormalizeDate(o, Date("[ [ month may ] [ day 3 ] ]"), today) == CivilDate{1995, 5, 3});
  CHECK(NormalizeDate(o, Date("[ [ rel tomorrow ] ]"), today) == CivilDate{1994, 6, 2});
  CHECK(NormalizeDate(o, Date("[ [ weekday monday ] ]"), today) == CivilDate{1994, 6, 6});
  CHECK(NormalizeDate(o, Date("[ [ weekday wednesday ] ]"), today) == today);
  CHECK(NormalizeDate(o, Date("[ [ month february ] [ day 29 ] ]"), today) == CivilDate{1996, 2, 29});
  CHECK_THROWS_AS(NormalizeDate(o, Date("[ [ month april ] [ day 31 ] ]"), today), InvalidDate);
  CHECK_THROWS_AS(NormalizeDate(o, Date("[ [ month february ] [ day 29 ] [ year 1995 ] ]"), today),
                  InvalidDate);
}

TEST_CASE("shipped knowledge base loads") {
  CHECK_NOTHROW(Ontology::LoadFile(DataFile("calendar.kb")));
  CHECK_THROWS_AS(Ontology::LoadFile(DataFile("no-such.kb")), KbError);
}

}  // TEST_SUITE
