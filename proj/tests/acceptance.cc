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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "mincal/app.h"
#include "mincal/cli.h"
#include "mincal/dialog.h"
#include "mincal/enumerate.h"
#include "mincal/parser.h"
#include "test_util.h"

using namespace mincal;
using namespace mincal::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void Expect(bool cond, const std::string &what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

bool Run(const char *id, double budget_s, const std::function<Outcome()> &body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget_s > 0 && s > budget_s) {
    o.ok = false;
    if (o.detail.empty()) o.detail = "over time budget";
  }
  std::printf("%s %s (%.3fs)%s%s\n", id, o.ok ? "PASS" : "FAIL", s, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  return o.ok;
}

std::vector<std::string> Keys(const std::vector<ParseResult> &rs) {
  std::vector<std::string> out;
  for (const auto &r : rs) out.push_back(NameKey(r.construction) + " " + ToBracket(r.message));
  std::sort(out.begin(), out.end());
  return out;
}

CliConfig BaseConfig() {
  CliConfig c;
  c.runtime = ShippedOptions();
  c.today = CivilDate{1994, 6, 1};
  return c;
}

Outcome A1() {
  Outcome o;
  CliConfig c = BaseConfig();
  CliEnv env = OpenEnv(c);
  std::ostringstream out;
  int rc = CmdInterpret(c, env, "I want you to arrange a conference in my office at 5", out);
  const std::string s = out.str();
  o.Expect(rc == kExitOk, "exit code");
  o.Expect(s.find("[ action_name schedule ]") != std::string::npos, "action_name");
  o.Expect(s.find("[ event_name [ a conference ] ]") != std::string::npos, "event_name");
  o.Expect(s.find("[ event_place [ my office ] ]") != std::string::npos, "event_place");
  o.Expect(s.find("[ hour [ 5 am_or_pm ] ]") != std::string::npos, "raw hour");
  auto defaults = s.find("***With defaults:");
  o.Expect(defaults != std::string::npos, "no defaults block");
  if (defaults != std::string::npos)
    o.Expect(s.find("[ hour [ 17 ] ]", defaults) != std::string::npos, "defaulted hour");
  return o;
}

Outcome A2() {
  Outcome o;
  SharedCalendar cal;
  auto r = Replay(Shipped(), &cal, ReadFile(DataFile("transcripts/dialog1.txt")), {2000, 1, 1});
  o.Expect(r.ok(), r.first_failure() ? "line " + std::to_string(r.first_failure()->line) + " differs"
                                     : "replay");
  o.Expect(r.steps.size() == 4, "step count");
  auto events = cal.All();
  o.Expect(events.size() == 1, "one event");
  if (events.size() == 1) {
    const auto &e = events[0];
    o.Expect(e.date.month == 8 && e.date.day == 30, "date");
    o.Expect(e.time == CivilTime{20, 0}, "time");
    o.Expect(e.participants == std::vector<std::string>{"bob"}, "participants");
  }
  return o;
}

Outcome A3() {
  Outcome o;
  const Parser &on = Shipped(true)->parser();
  const Parser &off = Shipped(false)->parser();
  const Ontology &kb = Shipped()->ontology();
  auto a = on.Parse({}, "schedule a meeting with bob");
  o.Expect(a.size() == 1, "bob: " + std::to_string(a.size()) + " parses");
  if (a.size() == 1) {
    SlotFrame f = Interpret(kb, a[0].message);
    o.Expect(f.participants == std::vector<std::string>{"bob"}, "bob not a participant");
  }
  auto b = on.Parse({}, "i want to meet my manager in the cafeteria");
  o.Expect(b.size() == 1, "cafeteria: " + std::to_string(b.size()) + " parses");
  if (b.size() == 1) {
    SlotFrame f = Interpret(kb, b[0].message);
    o.Expect(f.event_place == "the cafeteria", "cafeteria not the place");
  }
  o.Expect(off.Parse({}, "schedule a meeting with bob").size() >= 2, "unfiltered bob");
  o.Expect(off.Parse({}, "i want to meet my manager in the cafeteria").size() >= 2,
           "unfiltered cafeteria");
  return o;
}

Outcome A4() {
  Outcome o;
  const Parser &p = Shipped()->parser();
  const char *s = "no, but i'll do it right away";
  for (const char *kind : {"wh_time", "wh_date", "wh_date_time", "meridiem_choice"}) {
    auto rs = p.Parse(After(std::string("sent(ques, ") + kind + ")"), s);
    o.Expect(rs.size() == 1, std::string("after ") + kind);
    if (rs.size() != 1) continue;
    const Value *tv = rs[0].message.Find("truth_value");
    o.Expect(tv && *tv == Value(Number{0}), "truth_value");
    // S's own message is spliced in.
    auto alone = p.Parse(After("sent(ques, wh_time)"), "i'll do it right away");
    o.Expect(alone.size() == 1, "S alone");
    if (alone.size() == 1)
      for (const auto &e : alone[0].message.entries())
        o.Expect(rs[0].message.Find(e.attr) && *rs[0].message.Find(e.attr) == e.value,
                 "S's " + e.attr + " missing");
  }
  o.Expect(p.Parse({}, s).empty(), "parses without a question");
  o.Expect(p.Parse(After("sent(cmnd, v.np)"), s).empty(), "parses after a command");
  return o;
}

Outcome A5() {
  Outcome o;
  const Parser &p = Shipped()->parser();
  const Ontology &kb = Shipped()->ontology();
  auto r = Enumerate(p, kb, {}, "sent(cmnd, v.np)", {2000, 8});
  std::set<std::string> distinct;
  size_t trips = 0;
  for (const auto &item : r.items) {
    distinct.insert(item.text);
    if (RoundTrips(p, kb, {}, item)) ++trips;
  }
  o.Expect(distinct.size() >= 1000, std::to_string(distinct.size()) + " strings");
  o.Expect(trips == r.items.size(),
           std::to_string(trips) + "/" + std::to_string(r.items.size()) + " round-trip");
  return o;
}

Outcome A6() {
  Outcome o;
  auto corpus = Corpus();
  o.Expect(corpus.size() >= 50, "corpus too small");
  for (bool filters : {true, false}) {
    const Parser &p = Shipped(filters)->parser();
    for (const auto &line : corpus) {
      auto toks = TokenizeUtterance(line.text);
      o.Expect(toks.size() <= 8, "too long: " + line.text);
      o.Expect(Keys(p.Parse(line.ctx, toks)) == Keys(p.OracleParse(line.ctx, toks)),
               "differs: " + line.text);
    }
  }
  return o;
}

Outcome A7() {
  Outcome o;
  RuntimeOptions opts = ShippedOptions();
  opts.window = std::make_pair(9, 17);
  auto rt = Runtime::Load(opts);
  const Ontology &kb = rt->ontology();
  auto t = [](int h) {
    return Avm{{"hour", Avm{{"value", Number{h}}, {"meridiem", "am_or_pm"}}}, {"minute", Number{0}}};
  };
  auto five = ResolveTime(rt->rules(), t(5), std::nullopt, kb);
  o.Expect(five && *five == CivilTime{17, 0}, "5 -> 17:00");
  o.Expect(!ResolveTime(rt->rules(), t(8), std::nullopt, kb), "8 -> ambiguous");
  for (int h = 1; h <= 12; ++h) {
    for (const char *part : {"morning", "afternoon", "evening"}) {
      auto r = ResolveTime(rt->rules(), t(h), std::string(part), kb);
      std::string where = std::to_string(h) + " " + part;
      o.Expect(r.has_value() && r->valid(), where + " invalid");
      if (r) o.Expect(r->hour % 12 == h % 12, where + " changed the hour");
    }
  }
  return o;
}

Outcome A8() {
  Outcome o;
  auto digest = [](const std::string &path) { return std::hash<std::string>{}(ReadFile(path)); };
  const std::string cg = DataFile("calendar.cg"), kb = DataFile("calendar.kb");
  const size_t cg0 = digest(cg), kb0 = digest(kb);

  std::string app = ReadFile(DataFile("app.kb"));
  auto swap = [&](const std::string &from, const std::string &to) {
    auto at = app.find(from);
    o.Expect(at != std::string::npos, "app.kb lacks " + from);
    if (at != std::string::npos) app.replace(at, from.size(), to);
  };
  swap("(rename event_duration duration)", "(rename event_duration length)");
  swap("(window 9 17)", "(window 6 18)");
  auto tmp = std::filesystem::temp_directory_path() /
             ("mincal-app-" + std::to_string(::getpid()) + ".kb");
  {
    std::ofstream out(tmp);
    out << app;
  }
  RuntimeOptions opts = ShippedOptions();
  opts.app_kb_path = tmp.string();
  auto edited = Runtime::Load(opts);
  std::filesystem::remove(tmp);

  // Same utterance, two rule files.
  auto request = [](const Runtime &rt, const std::string &text) {
    auto rs = rt.parser().Parse({}, text);
    if (rs.size() != 1) throw std::runtime_error("no single parse: " + text);
    SlotFrame f = Interpret(rt.ontology(), rs[0].message);
    return ToAppRequest(rt.rules(), rt.ontology(), f, {1994, 6, 1}, {});
  };
  const std::string text = "book a party on august 30th at 7 for two hours";
  AppRequest before = request(*Shipped(), text), after = request(*edited, text);
  auto has = [](const AppRequest &r, const AppRules &rules, const std::string &k, const std::string &v) {
    for (const auto &[name, value] : r.Params(rules))
      if (name == k && value == v) return true;
    return false;
  };
  o.Expect(has(before, Shipped()->rules(), "duration", "120"), "shipped duration name");
  o.Expect(has(after, edited->rules(), "length", "120"), "renamed duration");
  o.Expect(!has(after, edited->rules(), "duration", "120"), "old name still used");
  // 7 is ambiguous in 9..17 and morning in 6..18.
  o.Expect(!before.time && !before.executable(), "shipped window");
  o.Expect(after.time == CivilTime{7, 0} && after.executable(), "edited window");
  o.Expect(digest(cg) == cg0 && digest(kb) == kb0, "grammar or domain file changed");
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= Run("A1", 1.0, A1);
  ok &= Run("A2", 1.0, A2);
  ok &= Run("A3", 0, A3);
  ok &= Run("A4", 0, A4);
  ok &= Run("A5", 60.0, A5);
  ok &= Run("A6", 30.0, A6);
  ok &= Run("A7", 0, A7);
  ok &= Run("A8", 0, A8);
  return ok ? 0 : 1;
}
