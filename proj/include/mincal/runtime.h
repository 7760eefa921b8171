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


// Everything loaded from the data files, shared read-only by sessions.

#ifndef MINCAL_RUNTIME_H_
#define MINCAL_RUNTIME_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "mincal/app.h"
#include "mincal/domain.h"
#include "mincal/grammar.h"
#include "mincal/parser.h"

namespace mincal {

struct RuntimeOptions {
  std::string grammar_path;
  std::string kb_path;
  std::string app_kb_path;
  bool filters = true;
  std::optional<std::pair<int, int>> window;  // overrides app.kb
};

// Any data file failing to load or validate.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Runtime {
 public:
  static std::shared_ptr<const Runtime> Load(const RuntimeOptions &options);
  static std::shared_ptr<const Runtime> FromParts(Grammar grammar, Ontology ontology, AppRules rules,
                                                  bool filters = true);

  Runtime(const Runtime &) = delete;
  Runtime &operator=(const Runtime &) = delete;

  const Grammar &grammar() const { return grammar_; }
  const Ontology &ontology() const { return *ontology_; }
  std::shared_ptr<const Ontology> ontology_ptr() const { return ontology_; }
  const AppRules &rules() const { return rules_; }
  const Parser &parser() const { return *parser_; }

 private:
  Runtime(Grammar grammar, std::shared_ptr<const Ontology> ontology, AppRules rules, bool filters);

  Grammar grammar_;
  std::shared_ptr<const Ontology> ontology_;
  AppRules rules_;
  std::unique_ptr<Parser> parser_;  // refers to grammar_
};

// Default data file locations: $MINCAL_DATA_DIR, else the source tree's data/.
std::string DefaultDataPath(const std::string &file);

}  // namespace mincal

#endif  // MINCAL_RUNTIME_H_
