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


#include <algorithm>

#include "doctest.h"
#include "mincal/parser.h"
#include "test_util.h"

using namespace mincal;
using mincal::testing::After;
using mincal::testing::Corpus;
using mincal::testing::Shipped;

namespace {

std::vector<std::string> Keys(const std::vector<ParseResult> &rs) {
  std::vector<std::string> out;
  for (const auto &r : rs) out.push_back(ToBracket(Value(r.construction)) + " " + ToBracket(r.message));
  std::sort(out.begin(), out.end());
  return out;
}

const Parser &P(bool filters = true) { return Shipped(filters)->parser(); }

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("tokenizer") {
  auto toks = Surfaces(TokenizeUtterance("No, but I'll do it at 10:30!"));
  CHECK(toks == std::vector<std::string>{"no", ",", "but", "i'll", "do", "it", "at", "10", ":",
                                         "30", "!"});
  CHECK(TokenizeUtterance("   ").empty());
  auto pos = TokenizeUtterance("a b");
  CHECK(pos[1].position == 1);
}

TEST_CASE("indirect request message") {
  auto rs = P().Parse({}, "I want you to arrange a conference in my office at 5");
  REQUIRE(rs.size() == 1);
  const Avm &m = rs[0].message;
  CHECK(ToBracket(Value(rs[0].construction)) == "sent(assrt, svoc)");
  REQUIRE(m.Find("den"));
  CHECK(ToBracket(*m.Find("den")) == "want(other_agent)");
  auto act = Resolve(m, Path{"", {"action", "den"}});
  REQUIRE(act);
  CHECK(*act == Value("arrange"));
  auto pps = Resolve(m, Path{"", {"action", "action_object", "mods", "pp_msg"}});
  REQUIRE(pps);
  auto &items = pps->as<List>().items;
  REQUIRE(items.size() == 2);
  CHECK(*items[0].as<Avm>().Find("prep") == Value("at"));
  CHECK(*items[1].as<Avm>().Find("prep") == Value("in"));
  CHECK(P(false).Parse({}, "I want you to arrange a conference in my office at 5").size() > 1);
}

TEST_CASE("filters leave one attachment") {
  CHECK(P().Parse({}, "schedule a meeting with bob").size() == 1);
  CHECK(P().Parse({}, "i want to meet my manager in the cafeteria").size() == 1);
  CHECK(P(false).Parse({}, "schedule a meeting with bob").size() >= 2);
  CHECK(P(false).Parse({}, "i want to meet my manager in the cafeteria").size() >= 2);
}

TEST_CASE("question context gates answers") {
  const char *s = "no, but i'll do it right away";
  CHECK(P().Parse({}, s).empty());
  auto rs = P().Parse(After("sent(ques, wh_time)"), s);
  REQUIRE(rs.size() == 1);
  CHECK(*rs[0].message.Find("truth_value") == Value(Number{0}));
  CHECK(P().Parse(After("sent(cmnd, v.np)"), s).empty());
  CHECK(P().Parse({}, "yes").empty());
  CHECK(P().Parse(After("sent(ques, confirm_change)"), "yes").size() == 1);
}

TEST_CASE("language context gates lexemes") {
  DiscourseContext ctx;
  ctx.lang_code = "french";
  CHECK(P().Parse(ctx, "schedule a meeting").empty());
  ctx = {};
  ctx.lang_channel = "speech";
  CHECK(P().Parse(ctx, "schedule a meeting").empty());
}

TEST_CASE("no parse") {
  CHECK(P().Parse({}, "blarg").empty());
  CHECK(P().Parse({}, "").empty());
  CHECK(P().Parse({}, "schedule").empty());
  CHECK(P().Parse({}, "schedule a appointment").empty());
  CHECK(P().Parse({}, "schedule an appointment").size() == 1);
}

TEST_CASE("chart agrees with the exhaustive oracle") {
  auto corpus = Corpus();
  CHECK(corpus.size() >= 50);
  for (bool filters : {true, false}) {
    for (const auto &line : corpus) {
      auto toks = TokenizeUtterance(line.text);
      CAPTURE(line.text);
      CAPTURE(filters);
      CHECK(toks.size() <= 8);
      CHECK(Keys(P(filters).Parse(line.ctx, toks)) == Keys(P(filters).OracleParse(line.ctx, toks)));
    }
  }
}

TEST_CASE("filtered parses are a subset of unfiltered ones") {
  for (const auto &line : Corpus()) {
    auto with = Keys(P(true).Parse(line.ctx, line.text));
    auto without = Keys(P(false).Parse(line.ctx, line.text));
    CAPTURE(line.text);
    CHECK(std::includes(without.begin(), without.end(), with.begin(), with.end()));
  }
}

TEST_CASE("parsing is deterministic") {
  const char *s = "I want you to arrange a conference in my office at 5";
  auto a = P(false).Parse({}, s);
  auto b = P(false).Parse({}, s);
  CHECK(a == b);
}

TEST_CASE("trace and stats") {
  std::vector<TraceEntry> trace;
  ParseStats stats;
  auto rs = P().Parse({}, TokenizeUtterance("schedule a meeting"), &trace, &stats);
  REQUIRE(rs.size() == 1);
  CHECK(stats.edges > 0);
  CHECK(stats.completions > 0);
  bool whole = std::any_of(trace.begin(), trace.end(), [](const TraceEntry &t) {
    return t.start == 0 && t.end == 3 && t.construction == "sent(cmnd, v.np)";
  });
  CHECK(whole);
}

}  // TEST_SUITE
