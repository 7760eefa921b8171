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


#include "mincal/cli.h"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "mincal/app.h"
#include "mincal/dialog.h"
#include "mincal/enumerate.h"
#include "mincal/json_io.h"
#include "mincal/parser.h"
#include "mincal/text.h"

namespace mincal {

using nlohmann::json;

CliEnv OpenEnv(const CliConfig &config) {
  CliEnv env;
  env.runtime = Runtime::Load(config.runtime);
  env.calendar = std::make_unique<SharedCalendar>(config.store_path);
  return env;
}

DiscourseContext ContextFor(const CliConfig &config) {
  DiscourseContext ctx;
  ctx.p_utter = config.p_utter;
  return ctx;
}

namespace {

void PrintTrace(const std::vector<TraceEntry> &trace, std::ostream &out) {
  for (const auto &t : trace)
    out << "; " << t.construction << " [" << t.start << "," << t.end << ") " << ToBracket(t.message) << "\n";
}

std::vector<ParseResult> ParseWithTrace(const CliConfig &config, const CliEnv &env,
                                        const std::string &sentence, std::ostream &out) {
  std::vector<TraceEntry> trace;
  auto parses = env.runtime->parser().Parse(ContextFor(config), TokenizeUtterance(sentence),
                                            config.trace ? &trace : nullptr);
  if (config.trace) PrintTrace(trace, out);
  return parses;
}

std::string JoinWords(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

int CmdParse(const CliConfig &config, const CliEnv &env, const std::string &sentence,
             std::ostream &out) {
  auto parses = ParseWithTrace(config, env, sentence, out);
  bool first = true;
  for (const auto &p : parses) {
    if (config.format == OutputFormat::kMachine) {
      out << json{{"construction", NameKey(p.construction)}, {"message", ToJson(p.message)}}.dump()
          << "\n";
      continue;
    }
    if (!first) out << "\n";
    first = false;
    out << NameKey(p.construction) << "\n" << ToBracketPretty(Value{p.message}) << "\n";
  }
  return parses.empty() ? kExitNoParse : kExitOk;
}

int CmdInterpret(const CliConfig &config, const CliEnv &env, const std::string &sentence,
                 std::ostream &out) {
  const Runtime &rt = *env.runtime;
  auto parses = ParseWithTrace(config, env, sentence, out);
  std::set<std::string> shown;
  int frames = 0;
  for (const auto &p : parses) {
    if (!IsActionMessage(p.message)) continue;
    SlotFrame frame;
    try {
      frame = Interpret(rt.ontology(), p.message);
    } catch (const InterpretError &e) {
      if (config.trace) out << "; " << NameKey(p.construction) << ": " << e.what() << "\n";
      continue;
    }
    std::string key = ToBracket(frame.ToAvm());
    if (!shown.insert(key).second) continue;
    SlotFrame defaulted = ApplyDefaults(rt.rules(), rt.ontology(), frame);
    std::vector<std::string> pending;
    std::string problem;
    try {
      pending = ToAppRequest(rt.rules(), rt.ontology(), frame, config.today, env.calendar->All()).pending;
    } catch (const std::exception &e) {
      problem = e.what();
    }
    if (config.format == OutputFormat::kMachine) {
      json j{{"construction", NameKey(p.construction)},
             {"slots", FrameToJson(frame)},
             {"defaults", defaulted == frame ? json(nullptr) : FrameToJson(defaulted)},
             {"pending", pending}};
      if (!problem.empty()) j["error"] = problem;
      out << j.dump() << "\n";
    } else {
      if (frames > 0) out << "\n";
      out << "***Slots:\n" << FormatSlots(frame.Slots()) << "\n";
      if (!(defaulted == frame)) out << "***With defaults:\n" << FormatSlots(defaulted.Slots()) << "\n";
      if (!pending.empty()) out << "pending: " << JoinWords(pending) << "\n";
      if (!problem.empty()) out << "error: " << problem << "\n";
    }
    ++frames;
  }
  return frames == 0 ? kExitNoParse : kExitOk;
}

int CmdReplay(const CliConfig &config, const CliEnv &env, const std::string &path,
              std::ostream &out, std::ostream &err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot read " << path << "\n";
    return kExitData;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto result = Replay(env.runtime, env.calendar.get(), ss.str(), config.today);
  for (const auto &s : result.steps) {
    if (config.format == OutputFormat::kMachine) {
      out << json{{"line", s.line},
                  {"user", s.user},
                  {"expected", s.expected ? json(*s.expected) : json(nullptr)},
                  {"actual", s.actual},
                  {"ok", s.ok()}}
                 .dump()
          << "\n";
      continue;
    }
    out << (s.ok() ? "ok   " : "FAIL ") << "line " << s.line << ": U: " << s.user << "\n";
    out << "     S: " << s.actual << "\n";
    if (!s.ok()) out << "     expected: " << *s.expected << "\n";
  }
  if (const ReplayStep *f = result.first_failure()) {
    err << "first difference at line " << f->line << "\n";
    return kExitNoParse;
  }
  return kExitOk;
}

int CmdEnumerate(const CliConfig &config, const CliEnv &env, const std::string &root, size_t limit,
                 int depth, bool check, std::ostream &out, std::ostream &err) {
  const Runtime &rt = *env.runtime;
  DiscourseContext ctx = ContextFor(config);
  EnumerateResult result;
  try {
    result = Enumerate(rt.parser(), rt.ontology(), ctx, root, {limit, depth});
  } catch (const UnknownConstruction &e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  size_t ok = 0;
  for (const auto &item : result.items) {
    bool rt_ok = !check || RoundTrips(rt.parser(), rt.ontology(), ctx, item);
    ok += rt_ok;
    if (config.format == OutputFormat::kMachine) {
      json j{{"text", item.text}, {"slots", FrameToJson(item.frame)}};
      if (check) j["round_trip"] = rt_ok;
      out << j.dump() << "\n";
    } else {
      out << item.text << (rt_ok ? "" : "\t; does not round-trip") << "\n";
    }
  }
  err << result.items.size() << " distinct strings, depth " << result.depth;
  if (check) err << ", " << ok << " round-trip";
  if (result.uninterpretable) err << ", " << result.uninterpretable << " uninterpretable skipped";
  err << "\n";
  if (result.items.empty()) return kExitNoParse;
  return ok == result.items.size() ? kExitOk : kExitNoParse;
}

int CmdRepl(const CliConfig &config, const CliEnv &env, std::istream &in, std::ostream &out) {
  Session session(env.runtime, env.calendar.get(), config.today);
  bool trace = config.trace;
  std::string line;
  while (true) {
    out << "U: " << std::flush;
    if (!std::getline(in, line)) break;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line == ":quit") break;
    if (line == ":trace") {
      trace = !trace;
      out << "; trace " << (trace ? "on" : "off") << "\n";
      continue;
    }
    if (line == ":calendar") {
      auto events = env.calendar->All();
      if (events.empty()) out << "; calendar is empty\n";
      for (const auto &e : events) {
        out << "; " << e.id << " " << e.date.ToString() << " " << e.time.ToString() << " " << e.name;
        if (!e.place.empty()) out << " in " << e.place;
        if (!e.participants.empty()) out << " with " << JoinWords(e.participants);
        out << " (" << e.duration << " min)\n";
      }
      continue;
    }
    DialogTurn turn = session.HandleUtterance(line);
    if (trace)
      for (const auto &t : turn.trace) out << "; " << t << "\n";
    if (config.format == OutputFormat::kMachine)
      out << TurnToJson(turn).dump() << "\n";
    else
      out << "S: " << turn.reply << "\n";
  }
  return kExitOk;
}

}  // namespace mincal
