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

#include "engine.h"

#include <algorithm>
#include <set>

namespace mincal::internal {
namespace {

const std::set<std::string, std::less<>> kRootHeads = {"sent", "fragment"};

bool IsConsN(const Path &p) { return p.attrs.size() == 1 && p.attrs[0] == "cons_n"; }

std::optional<Value> Eval(const Value &expr, const Bindings &b) {
  try {
    if (auto *ref = expr.get_if<PathRef>()) return Resolve(b, ref->path);
    return Substitute(expr, b);
  } catch (const AvmError &) {
    return std::nullopt;
  }
}

}  // namespace

Engine::Engine(const Grammar &g, FilterSet filters) : g_(&g), filters_(std::move(filters)) {
  plans_.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    const Construction &c = g.at(i);
    ConsPlan &p = plans_[i];
    if (c.abstract) continue;
    p.root = kRootHeads.count(c.head()) > 0;
    for (const auto &el : c.struc) {
      ElementPlan e;
      e.var = el.is_var();
      e.optional = el.optional;
      e.text = el.text;
      if (e.var) {
        e.category = c.CategoryOf(el.text);
        e.admitted = g.Admitted(*e.category);
        for (const auto &eq : c.equations)
          if (eq.lhs.root == el.text && !IsConsN(eq.lhs)) e.equations.push_back(&eq);
        for (const auto &d : c.inherited)
          if (d.target == el.text) e.inherited.push_back(&d);
      }
      p.elems.push_back(std::move(e));
    }
    auto place = [&](const SortCheck &chk, bool select) {
      int last = -1;
      for (const Path *path : {&chk.first, &chk.second}) {
        if (path->root == kInheritedVar) continue;
        last = std::max(last, c.PositionOf(path->root));
      }
      SortCheckRef ref{&chk, select};
      if (last < 0) p.inh_checks.push_back(ref);
      else p.elems[last].checks.push_back(ref);
    };
    for (const auto &chk : c.filters) place(chk, false);
    for (const auto &chk : c.selects) place(chk, true);
    if (p.root) roots_.push_back(i);
  }
}

bool Engine::RunChecks(const std::vector<SortCheckRef> &checks, const Bindings &b) const {
  if (!filters_.enabled()) return true;
  for (const auto &ref : checks) {
    std::optional<Value> a, h;
    try {
      a = Resolve(b, ref.check->first);
      h = Resolve(b, ref.check->second);
    } catch (const AvmError &) {
      return false;
    }
    if (!a || !h) continue;  // nothing to check against
    bool ok = ref.select ? filters_.Selects(*a, *h) : filters_.AllowsModifier(*a, *h);
    if (!ok) return false;
  }
  return true;
}

bool Engine::Admissible(size_t i, const Avm &ctx_view, const Avm &env) const {
  const Construction &c = g_->at(i);
  if (c.abstract || !ContextHolds(c, ctx_view)) return false;
  const ConsPlan &p = plans_[i];
  if (p.inh_checks.empty()) return true;
  Bindings b{{std::string(kInheritedVar), env}};
  return RunChecks(p.inh_checks, b);
}

Avm Engine::ChildEnv(size_t i, size_t pos, const Bindings &b) const {
  Avm env;
  for (const InheritedDecl *d : plans_[i].elems[pos].inherited) {
    if (auto v = Eval(d->expr, b)) env.Set(d->attr, *v);
  }
  return env;
}

bool Engine::Bind(size_t i, size_t pos, const Term &child, const Avm &child_msg,
                  Bindings &b) const {
  const ElementPlan &e = plans_[i].elems[pos];
  if (!CategoryMatches(*e.category, child)) return false;
  b[e.text] = Avm{{"cons_n", child}, {"M", child_msg}};
  for (const FeatureEquation *eq : e.equations) {
    auto v = Resolve(b, eq->lhs);
    if (auto *ref = eq->rhs.get_if<PathRef>()) {
      // Agreement: checked only when both sides carry the feature.
      auto other = Resolve(b, ref->path);
      if (v && other && !(*v == *other)) return false;
      continue;
    }
    if (!v || !Match(eq->rhs, *v)) return false;
  }
  return RunChecks(e.checks, b);
}

std::optional<Avm> Engine::BuildMessage(size_t i, const Bindings &b) const {
  const Construction &c = g_->at(i);
  try {
    Avm msg = EvaluateTemplate(c.message, b);
    if (const Avm *def = g_->DefaultMessage(c.head())) msg = Overlay(*def, msg);
    if (!Value(msg).IsGround()) return std::nullopt;
    return msg;
  } catch (const AvmError &) {
    return std::nullopt;
  }
}

}  // namespace mincal::internal
