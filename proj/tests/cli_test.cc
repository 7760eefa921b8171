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


#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mincal/cli.h"
#include "test_util.h"

using namespace mincal;
using mincal::testing::DataFile;
using mincal::testing::ShippedOptions;

namespace {

CliConfig Config() {
  CliConfig c;
  c.runtime = ShippedOptions();
  c.today = CivilDate{1994, 6, 1};
  return c;
}

// Exit status of the installed tool, output discarded.
int Tool(const std::string &args) {
  std::string cmd = std::string("\"") + MINCAL_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string Data(const std::string &f) { return "\"" + DataFile(f) + "\""; }

std::string Flags() {
  return "--grammar " + Data("calendar.cg") + " --kb " + Data("calendar.kb") + " --app-kb " +
         Data("app.kb") + " ";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("interpret prints the frame and the defaulted frame") {
  CliConfig c = Config();
  CliEnv env = OpenEnv(c);
  std::ostringstream out;
  CHECK(CmdInterpret(c, env, "I want you to arrange a conference in my office at 5", out) == kExitOk);
  const std::string want =
      "***Slots:\n"
      "[ [ action_name schedule ]\n"
      "  [ event_name [ a conference ] ]\n"
      "  [ event_time [ [ hour [ 5 am_or_pm ] ] [ minute 0 ] ] ]\n"
      "  [ event_place [ my office ] ] ]\n"
      "***With defaults:\n"
      "[ [ action_name schedule ]\n"
      "  [ event_name [ a conference ] ]\n"
      "  [ event_time [ [ hour [ 17 ] ] [ minute 0 ] ] ]\n"
      "  [ event_place [ my office ] ] ]\n"
      "pending: event_date\n";
  CHECK(out.str() == want);
}

TEST_CASE("machine output is JSON") {
  CliConfig c = Config();
  c.format = OutputFormat::kMachine;
  CliEnv env = OpenEnv(c);
  std::ostringstream out;
  CHECK(CmdInterpret(c, env, "schedule a meeting with bob", out) == kExitOk);
  auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("slots").at("participants") == nlohmann::json::array({"bob"}));
}

TEST_CASE("parse exit codes and context") {
  CliConfig c = Config();
  CliEnv env = OpenEnv(c);
  std::ostringstream out;
  CHECK(CmdParse(c, env, "blarg", out) == kExitNoParse);
  CHECK(CmdParse(c, env, "no, but i'll do it right away", out) == kExitNoParse);
  c.p_utter = ReadBracket("sent(ques, wh_time)").as<Term>();
  std::ostringstream out2;
  CHECK(CmdParse(c, env, "no, but i'll do it right away", out2) == kExitOk);
  CHECK(out2.str().find("truth_value 0") != std::string::npos);
}

TEST_CASE("replay and enumerate") {
  CliConfig c = Config();
  CliEnv env = OpenEnv(c);
  std::ostringstream out, err;
  CHECK(CmdReplay(c, env, DataFile("transcripts/dialog1.txt"), out, err) == kExitOk);
  std::ostringstream eo, ee;
  CHECK(CmdEnumerate(c, env, "sent(cmnd, v.np)", 5, 8, true, eo, ee) == kExitOk);
  CHECK(CmdEnumerate(c, env, "sent(cmnd, zzz)", 5, 8, false, eo, ee) == kExitUsage);
}

TEST_CASE("repl") {
  CliConfig c = Config();
  CliEnv env = OpenEnv(c);
  std::istringstream in("Schedule a meeting with Bob!\nOn August 30th.\nAt 8.\nIn the evening.\n:calendar\n:quit\n");
  std::ostringstream out;
  CHECK(CmdRepl(c, env, in, out) == kExitOk);
  CHECK(out.str().find("Morning or afternoon?") != std::string::npos);
  CHECK(out.str().find("1994-08-30") != std::string::npos);
}

TEST_CASE("bad data files") {
  CliConfig c = Config();
  c.runtime.kb_path = DataFile("no-such.kb");
  CHECK_THROWS_AS(OpenEnv(c), DataError);
}

TEST_CASE("tool exit codes") {
  CHECK(Tool(Flags() + "interpret \"schedule a meeting with bob\"") == 0);
  CHECK(Tool(Flags() + "parse blarg") == 1);
  CHECK(Tool(Flags() + "--window 17..9 interpret \"schedule a meeting\"") == 2);
  CHECK(Tool(Flags() + "--window nine interpret \"schedule a meeting\"") == 2);
  CHECK(Tool(Flags() + "enumerate \"sent(cmnd, zzz)\"") == 2);
  CHECK(Tool(Flags() + "frobnicate") == 2);
  CHECK(Tool("--kb /nonexistent/calendar.kb interpret hello") == 3);
  CHECK(Tool(Flags() + "--today 1994-06-01 replay " + Data("transcripts/dialog1.txt")) == 0);
  CHECK(Tool(Flags() + "--after \"sent(ques, wh_time)\" parse \"no, but i'll do it right away\"") == 0);
}

}  // TEST_SUITE
