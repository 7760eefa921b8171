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


#include "mincal/enumerate.h"

#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "engine.h"
#include "mincal/text.h"

namespace mincal {

using internal::ConsPlan;
using internal::ElementPlan;
using internal::Engine;

namespace {

bool IsPunct(const std::string &t) {
  return t.size() == 1 && !std::isalnum(static_cast<unsigned char>(t[0])) && t[0] != '\'';
}

// Yields (tokens, message) for instances of a construction; a false return
// from the sink stops everything.
class Generator {
 public:
  using Sink = std::function<bool(const std::vector<std::string> &, const Avm &)>;

  Generator(const Engine &eng, const Avm &view) : eng_(eng), view_(view) {}

  bool Gen(size_t c, const Avm &env, int depth, const Sink &sink) {
    if (depth < 1 || !eng_.Admissible(c, view_, env)) return true;
    // Remember what yields nothing; a filtered-out adjunct list would
    // otherwise be rebuilt for every choice made to its left.
    std::string key = std::to_string(c) + '|' + std::to_string(depth) + '|' + ToBracket(env);
    if (barren_.count(key)) return true;
    bool yielded = false;
    std::vector<std::string> toks;
    Bindings b{{std::string(kInheritedVar), env}};
    bool go = Expand(c, 0, depth, toks, b, [&](const std::vector<std::string> &t, const Avm &m) {
      yielded = true;
      return sink(t, m);
    });
    if (go && !yielded) barren_.insert(std::move(key));
    return go;
  }

 private:
  bool Expand(size_t c, size_t k, int depth, std::vector<std::string> &toks, const Bindings &b,
              const Sink &sink) {
    const ConsPlan &plan = eng_.plan(c);
    if (k == plan.elems.size()) {
      auto m = eng_.BuildMessage(c, b);
      return !m || sink(toks, *m);
    }
    const ElementPlan &el = plan.elems[k];
    if (!el.var) {
      if (el.optional && !Expand(c, k + 1, depth, toks, b, sink)) return false;
      toks.push_back(el.text);
      bool go = Expand(c, k + 1, depth, toks, b, sink);
      toks.pop_back();
      return go;
    }
    for (size_t j = k + 1; j < plan.elems.size(); ++j) {
      if (!plan.elems[j].var || !EnvReady(plan.elems[j], b)) continue;
      if (!Fertile(c, j, eng_.ChildEnv(c, j, b), depth - 1)) return true;
    }
    Avm env = eng_.ChildEnv(c, k, b);
    for (size_t d : el.admitted) {
      const Term &name = eng_.grammar().at(d).name;
      bool go = Gen(d, env, depth - 1, [&](const std::vector<std::string> &sub, const Avm &m) {
        Bindings nb = b;
        if (!eng_.Bind(c, k, name, m, nb)) return true;
        size_t mark = toks.size();
        toks.insert(toks.end(), sub.begin(), sub.end());
        bool more = Expand(c, k + 1, depth, toks, nb, sink);
        toks.resize(mark);
        return more;
      });
      if (!go) return false;
    }
    return true;
  }

  static void Roots(const Value &v, std::vector<std::string> &out) {
    if (auto *ref = v.get_if<PathRef>()) {
      out.push_back(ref->path.root);
    } else if (auto *a = v.get_if<Avm>()) {
      for (const auto &e : a->entries()) Roots(e.value, out);
    } else if (auto *l = v.get_if<List>()) {
      for (const auto &item : l->items) Roots(item, out);
    }
  }

  // Every inherited attribute of the element can be computed from `b`.
  static bool EnvReady(const ElementPlan &el, const Bindings &b) {
    std::vector<std::string> roots;
    for (const InheritedDecl *d : el.inherited) Roots(d->expr, roots);
    for (const auto &r : roots)
      if (!b.count(r)) return false;
    return true;
  }

  // Some construction admitted at element j yields at least one instance.
  bool Fertile(size_t c, size_t j, const Avm &env, int depth) {
    std::string key = std::to_string(c) + '.' + std::to_string(j) + '|' + std::to_string(depth) +
                      '|' + ToBracket(env);
    if (auto it = fertile_.find(key); it != fertile_.end()) return it->second;
    bool found = false;
    for (size_t d : eng_.plan(c).elems[j].admitted) {
      Gen(d, env, depth, [&](const std::vector<std::string> &, const Avm &) {
        found = true;
        return false;
      });
      if (found) break;
    }
    fertile_.emplace(std::move(key), found);
    return found;
  }

  const Engine &eng_;
  const Avm &view_;
  std::set<std::string> barren_;
  std::map<std::string, bool> fertile_;
};

}  // namespace

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  bool glue = true;
  for (const auto &t : tokens) {
    if (!glue && !IsPunct(t)) out += ' ';
    out += t;
    glue = t == ":";
  }
  return out;
}

EnumerateResult Enumerate(const Parser &parser, const Ontology &ont, const DiscourseContext &ctx,
                          std::string_view root, const EnumerateOptions &options) {
  const Grammar &g = parser.grammar();
  auto idx = g.Find(root);
  if (!idx || g.at(*idx).abstract) throw UnknownConstruction(std::string(root));
  EnumerateResult result;
  if (options.limit == 0) return result;
  Avm view = ctx.ToAvm();
  Generator gen(parser.engine(), view);
  std::set<std::string> seen, rejected;
  for (int depth = 1; depth <= options.max_depth; ++depth) {
    result.depth = depth;
    bool go = gen.Gen(*idx, Avm{}, depth, [&](const std::vector<std::string> &toks, const Avm &m) {
      std::string text = JoinTokens(toks);
      if (seen.count(text)) return true;
      try {
        SlotFrame f = Interpret(ont, m);
        seen.insert(text);
        result.items.push_back({std::move(text), m, std::move(f)});
      } catch (const InterpretError &) {
        if (rejected.insert(text).second) ++result.uninterpretable;
        return true;
      }
      return result.items.size() < options.limit;
    });
    if (!go) break;
  }
  return result;
}

bool RoundTrips(const Parser &parser, const Ontology &ont, const DiscourseContext &ctx,
                const EnumeratedItem &item) {
  auto parses = parser.Parse(ctx, item.text);
  if (parses.empty()) return false;
  for (const auto &p : parses) {
    try {
      if (!(Interpret(ont, p.message) == item.frame)) return false;
    } catch (const InterpretError &) {
      return false;
    }
  }
  return true;
}

}  // namespace mincal
