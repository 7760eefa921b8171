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

// Internal: per-construction precomputation and the checks shared by the
// chart parser, the brute-force oracle and the generator. Keeping one copy
// of the checks is what makes the oracle comparison meaningful.

#ifndef MINCAL_SRC_ENGINE_H_
#define MINCAL_SRC_ENGINE_H_

#include <optional>
#include <string>
#include <vector>

#include "mincal/avm.h"
#include "mincal/context.h"
#include "mincal/domain.h"
#include "mincal/grammar.h"

namespace mincal::internal {

struct SortCheckRef {
  const SortCheck *check = nullptr;
  bool select = false;  // selection restriction rather than a modifier filter
};

struct ElementPlan {
  bool var = false;
  bool optional = false;
  std::string text;                 // literal token or variable name
  const Value *category = nullptr;  // cons_n pattern
  std::vector<size_t> admitted;     // constructions the pattern admits
  std::vector<const FeatureEquation *> equations;  // other than cons_n
  std::vector<const InheritedDecl *> inherited;
  std::vector<SortCheckRef> checks;  // run once this element is bound
};

struct ConsPlan {
  std::vector<ElementPlan> elems;
  std::vector<SortCheckRef> inh_checks;  // depend on INH only
  bool root = false;
};

class Engine {
 public:
  Engine(const Grammar &g, FilterSet filters);

  const Grammar &grammar() const { return *g_; }
  const FilterSet &filters() const { return filters_; }
  const ConsPlan &plan(size_t i) const { return plans_[i]; }
  const std::vector<size_t> &roots() const { return roots_; }

  // Context constraints plus INH-only sort checks: may construction `i`
  // start under inherited environment `env`?
  bool Admissible(size_t i, const Avm &ctx_view, const Avm &env) const;

  // Inherited environment for the element at `pos`, given the bindings so
  // far (INH included). Unresolvable attributes are left out.
  Avm ChildEnv(size_t i, size_t pos, const Bindings &b) const;

  // Binds element `pos` to a constituent and runs the element's checks.
  bool Bind(size_t i, size_t pos, const Term &child, const Avm &child_msg, Bindings &b) const;

  // Message of a complete instance; absent when the template fails.
  std::optional<Avm> BuildMessage(size_t i, const Bindings &b) const;

 private:
  bool RunChecks(const std::vector<SortCheckRef> &checks, const Bindings &b) const;

  const Grammar *g_;
  FilterSet filters_;
  std::vector<ConsPlan> plans_;
  std::vector<size_t> roots_;
};

}  // namespace mincal::internal

#endif  // MINCAL_SRC_ENGINE_H_
