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


// mincal: parse, interpret, converse, replay, enumerate, serve.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mincal/app.h"
#include "mincal/cli.h"
#include "mincal/service.h"
#include "mincal/text.h"

using namespace mincal;

namespace {

std::string Joined(const std::vector<std::string> &words) {
  std::string out;
  for (const auto &w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Construction-grammar calendar assistant"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  config.runtime.grammar_path = DefaultDataPath("calendar.cg");
  config.runtime.kb_path = DefaultDataPath("calendar.kb");
  config.runtime.app_kb_path = DefaultDataPath("app.kb");
  std::string window, today, format = "bracket", p_utter;
  bool no_filters = false;

  app.add_option("--grammar", config.runtime.grammar_path, "Grammar file")->envname("MINCAL_GRAMMAR");
  app.add_option("--kb", config.runtime.kb_path, "Domain knowledge base")->envname("MINCAL_KB");
  app.add_option("--app-kb", config.runtime.app_kb_path, "Application rules")->envname("MINCAL_APP_KB");
  app.add_option("--store", config.store_path, "Calendar file (default: in memory)")->envname("MINCAL_STORE");
  app.add_option("--window", window, "Business hours LO..HI")->envname("MINCAL_WINDOW");
  app.add_flag("--no-filters", no_filters, "Disable the attachment filters")->envname("MINCAL_NO_FILTERS");
  app.add_flag("--trace", config.trace, "Show parser and dialog trace")->envname("MINCAL_TRACE");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"bracket", "machine"}))
      ->envname("MINCAL_FORMAT");
  app.add_option("--today", today, "Date to use as today (YYYY-MM-DD)")->envname("MINCAL_TODAY");
  app.add_option("--after", p_utter, "Previous utterance, e.g. \"sent(ques, wh_time)\"")
      ->envname("MINCAL_AFTER");

  std::vector<std::string> words;
  auto *parse = app.add_subcommand("parse", "Print the messages of every parse");
  parse->add_option("sentence", words, "Sentence")->required();
  auto *interpret = app.add_subcommand("interpret", "Print slot frames");
  interpret->add_option("sentence", words, "Sentence")->required();
  auto *repl = app.add_subcommand("repl", "Interactive dialog (:quit, :calendar, :trace)");
  std::string transcript;
  auto *replay = app.add_subcommand("replay", "Replay a U:/S: transcript");
  replay->add_option("transcript", transcript, "Transcript file")->required();
  std::string root = "sent(cmnd, v.np)";
  size_t limit = 2000;
  int depth = 8;
  bool check = false;
  auto *enumerate = app.add_subcommand("enumerate", "Generate surface strings from a construction");
  enumerate->add_option("root", root, "Root construction")->capture_default_str();
  enumerate->add_option("--limit", limit, "Maximum strings")->capture_default_str();
  enumerate->add_option("--depth", depth, "Maximum derivation depth")->capture_default_str();
  enumerate->add_flag("--check", check, "Check every string round-trips");
  std::string host = "127.0.0.1";
  int port = 8080;
  auto *serve = app.add_subcommand("serve", "HTTP session API");
  serve->add_option("--host", host)->envname("MINCAL_HOST")->capture_default_str();
  serve->add_option("--port", port)->envname("MINCAL_PORT")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  config.runtime.filters = !no_filters;
  config.format = format == "machine" ? OutputFormat::kMachine : OutputFormat::kBracket;
  if (!window.empty()) {
    auto w = ParseWindow(window);
    if (!w || w->first < 0 || w->second > 23 || w->first >= w->second) {
      std::cerr << "--window: expected LO..HI with 0 <= LO < HI <= 23\n";
      return kExitUsage;
    }
    config.runtime.window = w;
  }
  if (today.empty()) {
    config.today = SystemToday();
  } else if (auto d = CivilDate::Parse(today); d && d->valid()) {
    config.today = *d;
  } else {
    std::cerr << "--today: expected YYYY-MM-DD\n";
    return kExitUsage;
  }
  if (!p_utter.empty()) {
    try {
      Value v = ReadBracket(p_utter);
      if (!v.is<Term>()) throw SyntaxError(1, "not a term");
      config.p_utter = v.as<Term>();
    } catch (const std::exception &e) {
      std::cerr << "--after: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  CliEnv env;
  try {
    env = OpenEnv(config);
  } catch (const std::exception &e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  }

  try {
    if (*parse) return CmdParse(config, env, Joined(words), std::cout);
    if (*interpret) return CmdInterpret(config, env, Joined(words), std::cout);
    if (*repl) return CmdRepl(config, env, std::cin, std::cout);
    if (*replay) return CmdReplay(config, env, transcript, std::cout, std::cerr);
    if (*enumerate) return CmdEnumerate(config, env, root, limit, depth, check, std::cout, std::cerr);
    if (*serve) {
      Service service(env.runtime, env.calendar.get(), [d = config.today, fixed = !today.empty()] {
        return fixed ? d : SystemToday();
      });
      if (!service.Bind(host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return kExitUsage;
      }
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      return service.Run() ? kExitOk : kExitData;
    }
  } catch (const CalendarError &e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
