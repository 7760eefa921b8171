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


// Surface forms generated from a construction, running the same checks
// the parser runs. Used to measure paraphrase coverage: every string must
// parse back to the frame it was generated with.

#ifndef MINCAL_ENUMERATE_H_
#define MINCAL_ENUMERATE_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/avm.h"
#include "mincal/context.h"
#include "mincal/domain.h"
#include "mincal/parser.h"

namespace mincal {

class UnknownConstruction : public std::runtime_error {
 public:
  explicit UnknownConstruction(const std::string &name)
      : std::runtime_error("unknown construction " + name) {}
};

struct EnumerateOptions {
  size_t limit = 2000;
  int max_depth = 8;  // derivation depth; a lexeme has depth 1
};

struct EnumeratedItem {
  std::string text;
  Avm message;
  SlotFrame frame;
};

struct EnumerateResult {
  std::vector<EnumeratedItem> items;  // distinct texts, shallow first
  size_t uninterpretable = 0;         // generated but rejected by the interpreter
  int depth = 0;                      // deepest level explored
};

// Throws UnknownConstruction.
EnumerateResult Enumerate(const Parser &parser, const Ontology &ont, const DiscourseContext &ctx,
                          std::string_view root, const EnumerateOptions &options = {});

// Parses the item's text and checks every reading interprets to its frame.
bool RoundTrips(const Parser &parser, const Ontology &ont, const DiscourseContext &ctx,
                const EnumeratedItem &item);

// Tokens joined for display: "at 5:30", "schedule a meeting!".
std::string JoinTokens(const std::vector<std::string> &tokens);

}  // namespace mincal

#endif  // MINCAL_ENUMERATE_H_
