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


#include "mincal/runtime.h"

#include <cstdlib>

namespace mincal {

Runtime::Runtime(Grammar grammar, std::shared_ptr<const Ontology> ontology, AppRules rules,
                 bool filters)
    : grammar_(std::move(grammar)), ontology_(std::move(ontology)), rules_(std::move(rules)) {
  parser_ = std::make_unique<Parser>(grammar_, filters ? FilterSet(ontology_) : FilterSet::Disabled());
}

std::shared_ptr<const Runtime> Runtime::FromParts(Grammar grammar, Ontology ontology, AppRules rules,
                                                  bool filters) {
  return std::shared_ptr<const Runtime>(
      new Runtime(std::move(grammar), std::make_shared<const Ontology>(std::move(ontology)),
                  std::move(rules), filters));
}

std::shared_ptr<const Runtime> Runtime::Load(const RuntimeOptions &o) {
  Grammar g;
  Ontology ont;
  AppRules rules;
  try {
    g = Grammar::LoadFile(o.grammar_path);
  } catch (const std::exception &e) {
    throw DataError("grammar " + o.grammar_path + ": " + e.what());
  }
  try {
    ont = Ontology::LoadFile(o.kb_path);
  } catch (const std::exception &e) {
    throw DataError("kb " + o.kb_path + ": " + e.what());
  }
  try {
    rules = AppRules::LoadFile(o.app_kb_path);
    if (o.window) rules.SetWindow(o.window->first, o.window->second);
  } catch (const std::exception &e) {
    throw DataError("app kb " + o.app_kb_path + ": " + e.what());
  }
  return FromParts(std::move(g), std::move(ont), std::move(rules), o.filters);
}

std::string DefaultDataPath(const std::string &file) {
  if (const char *dir = std::getenv("MINCAL_DATA_DIR"); dir != nullptr && *dir)
    return std::string(dir) + "/" + file;
#ifdef MINCAL_DEFAULT_DATA_DIR
  return std::string(MINCAL_DEFAULT_DATA_DIR) + "/" + file;
#else
  return "data/" + file;
#endif
}

}  // namespace mincal
