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
#include "mincal/enumerate.h"
#include "test_util.h"

using namespace mincal;
using mincal::testing::Shipped;

namespace {

EnumerateResult Run(std::string_view root, size_t limit, int depth = 8) {
  return Enumerate(Shipped()->parser(), Shipped()->ontology(), {}, root, {limit, depth});
}

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("joining tokens") {
  CHECK(JoinTokens({"schedule", "a", "meeting", "!"}) == "schedule a meeting!");
  CHECK(JoinTokens({"at", "5", ":", "30"}) == "at 5:30");
  CHECK(JoinTokens({"no", ",", "but"}) == "no, but");
  CHECK(JoinTokens({}).empty());
}

TEST_CASE("limits") {
  auto r = Run("sent(cmnd, v.np)", 1);
  REQUIRE(r.items.size() == 1);
  CHECK(RoundTrips(Shipped()->parser(), Shipped()->ontology(), {}, r.items[0]));
  CHECK(Run("sent(cmnd, v.np)", 0).items.empty());
}

TEST_CASE("unknown roots") {
  CHECK_THROWS_AS(Run("sent(cmnd, nothing)", 5), UnknownConstruction);
  CHECK_THROWS_AS(Run("gibberish(", 5), UnknownConstruction);
}

TEST_CASE("generated strings parse back") {
  auto r = Run("sent(cmnd, v.np)", 300);
  CHECK(r.items.size() == 300);
  std::set<std::string> texts;
  for (const auto &item : r.items) {
    CAPTURE(item.text);
    CHECK(texts.insert(item.text).second);
    CHECK(RoundTrips(Shipped()->parser(), Shipped()->ontology(), {}, item));
    CHECK(item.text.find("a a") == std::string::npos);
  }
  CHECK(r.uninterpretable == 0);
}

TEST_CASE("other roots") {
  auto r = Run("sent(cmnd, v.np.pps)", 300);
  CHECK(r.items.size() == 300);
  for (const auto &item : r.items) {
    CAPTURE(item.text);
    CHECK(RoundTrips(Shipped()->parser(), Shipped()->ontology(), {}, item));
  }
}

TEST_CASE("a string whose frame differs does not round-trip") {
  auto r = Run("sent(cmnd, v.np)", 1);
  REQUIRE(r.items.size() == 1);
  EnumeratedItem bad = r.items[0];
  bad.frame.event_place = "the moon";
  CHECK_FALSE(RoundTrips(Shipped()->parser(), Shipped()->ontology(), {}, bad));
  bad = r.items[0];
  bad.text = "blarg";
  CHECK_FALSE(RoundTrips(Shipped()->parser(), Shipped()->ontology(), {}, bad));
}

}  // TEST_SUITE
