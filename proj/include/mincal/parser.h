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

// Left-to-right chart parser over a construction grammar. Parsing returns
// the messages of complete root constituents (heads sent and fragment);
// structure is not kept past the point where a constituent's message is
// built.

#ifndef MINCAL_PARSER_H_
#define MINCAL_PARSER_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/avm.h"
#include "mincal/context.h"
#include "mincal/domain.h"
#include "mincal/grammar.h"

namespace mincal {

namespace internal {
class Engine;
}

struct WordToken {
  std::string surface;
  int position = 0;
};

// Lowercases, splits on whitespace, keeps runs of letters, digits and
// apostrophes together ("i'll", "30th") and makes every other character a
// token of its own.
std::vector<WordToken> TokenizeUtterance(std::string_view text);
std::vector<std::string> Surfaces(const std::vector<WordToken> &tokens);

struct ParseResult {
  Term construction;
  Avm message;
  bool operator==(const ParseResult &) const = default;
};

// A completed constituent, recorded when tracing.
struct TraceEntry {
  std::string construction;
  int start = 0;
  int end = 0;
  Avm message;
};

struct ParseStats {
  size_t edges = 0;
  size_t predictions = 0;
  size_t completions = 0;
};

class Parser {
 public:
  // The grammar must outlive the parser.
  Parser(const Grammar &g, FilterSet filters);
  ~Parser();
  Parser(Parser &&) noexcept;
  Parser &operator=(Parser &&) noexcept;

  std::vector<ParseResult> Parse(const DiscourseContext &ctx, const std::vector<WordToken> &tokens,
                                 std::vector<TraceEntry> *trace = nullptr,
                                 ParseStats *stats = nullptr) const;
  std::vector<ParseResult> Parse(const DiscourseContext &ctx, std::string_view text) const;
  size_t ParseCount(const DiscourseContext &ctx, const std::vector<WordToken> &tokens) const;

  // Exhaustive recursive enumeration with the same checks. Meant for
  // inputs of at most a handful of tokens.
  std::vector<ParseResult> OracleParse(const DiscourseContext &ctx,
                                       const std::vector<WordToken> &tokens) const;

  const Grammar &grammar() const;
  const FilterSet &filters() const;
  const internal::Engine &engine() const { return *engine_; }

 private:
  std::unique_ptr<internal::Engine> engine_;
};

}  // namespace mincal

#endif  // MINCAL_PARSER_H_
