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


// Command implementations behind the mincal tool. Each writes to the given
// streams and returns the process exit code.

#ifndef MINCAL_CLI_H_
#define MINCAL_CLI_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "mincal/calendar.h"
#include "mincal/civil.h"
#include "mincal/context.h"
#include "mincal/runtime.h"

namespace mincal {

enum ExitCode { kExitOk = 0, kExitNoParse = 1, kExitUsage = 2, kExitData = 3 };

enum class OutputFormat { kBracket, kMachine };

struct CliConfig {
  RuntimeOptions runtime;
  std::string store_path;  // empty: in-memory calendar
  bool trace = false;
  OutputFormat format = OutputFormat::kBracket;
  CivilDate today;
  std::optional<Term> p_utter;  // previous utterance, for parse/interpret
};

struct CliEnv {
  std::shared_ptr<const Runtime> runtime;
  std::unique_ptr<SharedCalendar> calendar;
};

// Throws DataError or CalendarError.
CliEnv OpenEnv(const CliConfig &config);

DiscourseContext ContextFor(const CliConfig &config);

int CmdParse(const CliConfig &config, const CliEnv &env, const std::string &sentence,
             std::ostream &out);
int CmdInterpret(const CliConfig &config, const CliEnv &env, const std::string &sentence,
                 std::ostream &out);
int CmdReplay(const CliConfig &config, const CliEnv &env, const std::string &path,
              std::ostream &out, std::ostream &err);
int CmdEnumerate(const CliConfig &config, const CliEnv &env, const std::string &root, size_t limit,
                 int depth, bool check, std::ostream &out, std::ostream &err);
int CmdRepl(const CliConfig &config, const CliEnv &env, std::istream &in, std::ostream &out);

}  // namespace mincal

#endif  // MINCAL_CLI_H_
