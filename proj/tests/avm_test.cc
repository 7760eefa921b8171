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

// Small random ground AVMs over a shared vocabulary, so merges collide.
class RandomAvm {
 public:
  explicit RandomAvm(uint32_t seed) : rng_(seed) {}

  Value Leaf() {
    switch (Pick(4)) {
      case 0: return Atom{kAtoms[Pick(4)]};
      case 1: return Number{static_cast<int64_t>(Pick(5))};
      case 2: return Term{"time", {Atom{Pick(2) ? "hour" : "part_of_day"}}};
      default: return List{{Atom{kAtoms[Pick(4)]}, Number{static_cast<int64_t>(Pick(3))}}};
    }
  }

  Avm Make(int depth) {
    Avm a;
    int n = 1 + Pick(3);
    for (int i = 0; i < n; ++i) {
      std::string attr = kAttrs[Pick(5)];
      if (depth > 0 && Pick(3) == 0) a.Set(attr, Make(depth - 1));
      else a.Set(attr, Leaf());
    }
    return a;
  }

 private:
  int Pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  static constexpr const char *kAtoms[] = {"office", "bob", "meeting", "a conference"};
  static constexpr const char *kAttrs[] = {"den", "type", "mods", "hour", "det"};
  std::mt19937 rng_;
};

bool MergeOk(const Avm &a, const Avm &b, Avm &out) {
  try {
    out = Merge(a, b);
    return true;
  } catch (const MergeConflict &) {
    return false;
  }
}

}  // namespace

TEST_SUITE("avm") {

TEST_CASE("resolve follows attribute paths") {
  Avm m{{"den", Avm{{"hour", Avm{{"value", 5}, {"meridiem", "am_or_pm"}}}, {"minute", 0}}}};
  auto v = Resolve(m, Path{"", {"den", "hour", "value"}});
  REQUIRE(v);
  CHECK(*v == Value(5));
  CHECK_FALSE(Resolve(m, Path{"", {"den", "second"}}));
  CHECK_FALSE(Resolve(m, Path{"", {"den", "minute", "x"}}));
}

TEST_CASE("bindings resolve rooted paths and report unbound roots") {
  Bindings b{{"V", Avm{{"M", Avm{{"sem_type", "arrange"}}}}}};
  CHECK(*Resolve(b, Path{"V", {"M", "sem_type"}}) == Value("arrange"));
  CHECK_THROWS_AS(Resolve(b, Path{"NP", {"M"}}), UnboundVariable);
}

TEST_CASE("match: wildcards, variables and term patterns") {
  Value sent_ques = Term{"sent", {Atom{"ques"}, Atom{"wh_time"}}};
  CHECK(Match(Term{"sent", {Atom{"ques"}, Wildcard{}}}, sent_ques));
  CHECK_FALSE(Match(Term{"sent", {Atom{"cmnd"}, Wildcard{}}}, sent_ques));

  Avm pattern{{"x", Var{"X"}}, {"y", Var{"X"}}};
  CHECK(Match(pattern, Avm{{"x", 1}, {"y", 1}, {"z", 3}}));
  CHECK_FALSE(Match(pattern, Avm{{"x", 1}, {"y", 2}}));
  auto b = Match(Avm{{"den", Var{"D"}}}, Avm{{"den", "office"}});
  REQUIRE(b);
  CHECK((*b)["D"] == Value("office"));
}

TEST_CASE("merge unions and reports conflicts with their path") {
  Avm a{{"truth_value", 0}};
  Avm s{{"agent", "speaker"}, {"den", Term{"do", {Atom{"it"}}}}};
  Avm m = Merge(a, s);
  CHECK(m.size() == 3);
  try {
    Merge(Avm{{"mods", Avm{{"det", "a"}}}}, Avm{{"mods", Avm{{"det", "my"}}}});
    FAIL("expected a conflict");
  } catch (const MergeConflict &e) {
    CHECK(e.path().attrs == std::vector<std::string>{"mods", "det"});
  }
}

TEST_CASE("overlay lets the second argument win") {
  Avm base{{"cat", "verb"}, {"v_type", "action_verb"}};
  Avm over{{"v_type", "mental_verb"}, {"sem_type", "want"}};
  Avm o = Overlay(base, over);
  CHECK(*o.Find("v_type") == Value("mental_verb"));
  CHECK(*o.Find("cat") == Value("verb"));
}

TEST_CASE("substitute fills variables and paths") {
  Bindings b{{"T", Avm{{"M", Avm{{"value", 8}}}}}};
  Value tmpl = Avm{{"hour", PathRef{Path{"T", {"M", "value"}}}}};
  CHECK(Substitute(tmpl, b) == Value(Avm{{"hour", 8}}));
  CHECK_THROWS_AS(Substitute(Value(Var{"Q"}), b), UnboundVariable);
}

TEST_CASE("hour value shape") {
  CHECK(IsHourValue(Avm{{"value", 5}, {"meridiem", "am_or_pm"}}));
  CHECK(IsHourValue(Avm{{"value", 17}}));
  CHECK_FALSE(IsHourValue(Avm{{"value", "five"}}));
  CHECK_FALSE(IsHourValue(Avm{{"value", 5}, {"minute", 0}}));
}

TEST_CASE("property: merge laws on random matrices") {
  RandomAvm gen(20260101);
  int merged = 0;
  for (int i = 0; i < 400; ++i) {
    Avm a = gen.Make(2), b = gen.Make(2);
    CHECK(Value(a).IsGround());
    CHECK(Match(Value(a), Value(a)));
    Avm aa;
    REQUIRE(MergeOk(a, a, aa));
    CHECK(aa == a);
    Avm ab, ba;
    bool ok1 = MergeOk(a, b, ab), ok2 = MergeOk(b, a, ba);
    CHECK(ok1 == ok2);
    if (ok1) {
      ++merged;
      CHECK(ab == ba);
      // Each side subsumes the merge.
      CHECK(Match(Value(a), Value(ab)));
      CHECK(Match(Value(b), Value(ab)));
    }
    Avm o = Overlay(a, b);
    CHECK(Match(Value(b), Value(o)));
  }
  CHECK(merged > 50);
}

}  // TEST_SUITE
