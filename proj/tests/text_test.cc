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


#include <random>

#include "doctest.h"
#include "mincal/avm.h"
#include "mincal/text.h"

using namespace mincal;

namespace {

Value RandomValue(std::mt19937 &rng, int depth) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  static const char *atoms[] = {"office", "am_or_pm", "a conference", "my office", "v.np", "x-y"};
  static const char *attrs[] = {"den", "type", "mods", "hour", "pp_msg", "value"};
  switch (depth > 0 ? pick(7) : pick(4)) {
    case 0: return Atom{atoms[pick(6)]};
    case 1: return Number{pick(40) - 5};
    case 2: return Term{"sent", {Atom{"ques"}, Atom{atoms[pick(2)]}}};
    case 3: return Term{"time", {Atom{"hour"}}};
    case 4: {
      List l;
      for (int i = pick(3); i > 0; --i) l.items.push_back(RandomValue(rng, depth - 1));
      return l;
    }
    case 5: return Avm{{"value", pick(13)}, {"meridiem", "am_or_pm"}};
    default: {
      Avm a;
      for (int i = 1 + pick(3); i > 0; --i) a.Set(attrs[pick(6)], RandomValue(rng, depth - 1));
      return a;
    }
  }
}

}  // namespace

TEST_SUITE("text") {

TEST_CASE("bracket style for hours and phrases") {
  Avm t{{"hour", Avm{{"value", 5}, {"meridiem", "am_or_pm"}}}, {"minute", 0}};
  CHECK(ToBracket(t) == "[ [ hour [ 5 am_or_pm ] ] [ minute 0 ] ]");
  CHECK(ToBracket(Avm{{"hour", Avm{{"value", 17}}}}) == "[ [ hour [ 17 ] ] ]");
  CHECK(ToBracket(Value(Atom{"a conference"})) == "[ a conference ]");
  CHECK(ToBracket(Value(Term{"sent", {Atom{"ques"}, Wildcard{}}})) == "sent(ques, *)");
}

TEST_CASE("read back the bracketed form") {
  Value v = ReadBracket("[ [ event_place [ my office ] ] [ event_time [ [ minute 0 ] [ hour [ 5 am_or_pm ] ] ] ] ]");
  auto *a = v.get_if<Avm>();
  REQUIRE(a);
  CHECK(*a->Find("event_place") == Value(Atom{"my office"}));
  CHECK(*Resolve(*a, Path{"", {"event_time", "hour", "value"}}) == Value(5));
  CHECK_THROWS_AS(ReadBracket("[ [ den office ]"), SyntaxError);
}

TEST_CASE("property: ReadBracket inverts ToBracket") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Value v = RandomValue(rng, 3);
    std::string s = ToBracket(v);
    Value back = ReadBracket(s);
    CHECK_MESSAGE(back == v, s);
    CHECK(ReadBracket(ToBracketPretty(v, 20)) == v);
  }
}

TEST_CASE("tokenizer keeps line numbers and comments out") {
  auto toks = Tokenize("(lexeme \"i'll\" pro(i_will) ; trailing\n :message ((den speaker)))");
  REQUIRE(!toks.empty());
  bool saw_comment = false;
  int max_line = 0;
  for (const auto &t : toks) {
    if (t.text.find("trailing") != std::string::npos) saw_comment = true;
    max_line = std::max(max_line, t.line);
  }
  CHECK_FALSE(saw_comment);
  CHECK(max_line == 2);
}

}  // TEST_SUITE
