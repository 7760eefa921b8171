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

#include "mincal/parser.h"

#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "engine.h"
#include "mincal/text.h"

namespace mincal {

using internal::ConsPlan;
using internal::ElementPlan;
using internal::Engine;

std::vector<WordToken> TokenizeUtterance(std::string_view text) {
  std::vector<WordToken> out;
  auto word_char = [](unsigned char c) { return std::isalnum(c) || c == '\''; };
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::string tok;
    if (word_char(c)) {
      while (i < text.size() && word_char(static_cast<unsigned char>(text[i])))
        tok += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i++])));
    } else {
      tok = std::string(1, text[i++]);
    }
    out.push_back(WordToken{std::move(tok), static_cast<int>(out.size())});
  }
  return out;
}

std::vector<std::string> Surfaces(const std::vector<WordToken> &tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) out.push_back(t.surface);
  return out;
}

namespace {

std::string BindingsKey(const Bindings &b) {
  std::string key;
  for (const auto &[k, v] : b) {
    key += k;
    key += '=';
    key += ToBracket(v);
    key += ';';
  }
  return key;
}

const Avm &EnvOf(const Bindings &b) {
  static const Avm kEmpty;
  auto it = b.find(std::string(kInheritedVar));
  if (it == b.end()) return kEmpty;
  auto *a = it->second.get_if<Avm>();
  return a ? *a : kEmpty;
}

struct Edge {
  size_t cons = 0;
  int start = 0;
  size_t dot = 0;
  Bindings b;  // includes INH
  std::optional<Avm> want_env;
  std::optional<Avm> message;
};

class Chart {
 public:
  Chart(const Engine &eng, const Avm &view, const std::vector<std::string> &toks,
        std::vector<TraceEntry> *trace, ParseStats *stats)
      : eng_(eng), view_(view), toks_(toks), trace_(trace), stats_(stats),
        edges_(toks.size() + 1), keys_(toks.size() + 1) {}

  std::vector<ParseResult> Run() {
    const int n = static_cast<int>(toks_.size());
    if (n == 0) return {};
    Avm root_env;
    for (size_t r : eng_.roots()) {
      if (!eng_.Admissible(r, view_, root_env)) continue;
      Add(Edge{r, 0, 0, {{std::string(kInheritedVar), root_env}}, {}, {}}, 0);
    }
    for (int j = 0; j <= n; ++j) {
      for (size_t idx = 0; idx < edges_[j].size(); ++idx) Process(j, idx);
    }
    std::vector<ParseResult> out;
    for (const Edge &e : edges_[n]) {
      if (!e.message || e.start != 0 || !eng_.plan(e.cons).root || !EnvOf(e.b).empty()) continue;
      out.push_back(ParseResult{eng_.grammar().at(e.cons).name, *e.message});
    }
    return out;
  }

 private:
  void Add(Edge e, int j) {
    const ConsPlan &plan = eng_.plan(e.cons);
    if (e.dot == plan.elems.size()) {
      e.message = eng_.BuildMessage(e.cons, e.b);
      if (!e.message) return;
    } else if (plan.elems[e.dot].var) {
      e.want_env = eng_.ChildEnv(e.cons, e.dot, e.b);
    }
    std::string key = std::to_string(e.cons) + '|' + std::to_string(e.start) + '|' +
                      std::to_string(e.dot) + '|' + BindingsKey(e.b);
    if (!keys_[j].insert(std::move(key)).second) return;
    if (stats_) ++stats_->edges;
    if (e.message && trace_) {
      trace_->push_back(TraceEntry{NameKey(eng_.grammar().at(e.cons).name), e.start, j, *e.message});
    }
    edges_[j].push_back(std::move(e));
  }

  void Process(int j, size_t idx) {
    const int n = static_cast<int>(toks_.size());
    // Copy: Add() may grow edges_[j].
    Edge e = edges_[j][idx];
    const ConsPlan &plan = eng_.plan(e.cons);
    if (e.message) {
      if (stats_) ++stats_->completions;
      const Term &name = eng_.grammar().at(e.cons).name;
      const Avm &env = EnvOf(e.b);
      auto &parents = edges_[e.start];
      for (size_t k = 0; k < parents.size(); ++k) {
        const Edge &p = parents[k];
        if (!p.want_env || !(*p.want_env == env)) continue;
        Bindings b = p.b;
        if (!eng_.Bind(p.cons, p.dot, name, *e.message, b)) continue;
        Add(Edge{p.cons, p.start, p.dot + 1, std::move(b), {}, {}}, j);
      }
      return;
    }
    const ElementPlan &el = plan.elems[e.dot];
    if (!el.var) {
      if (j < n && toks_[j] == el.text) Add(Edge{e.cons, e.start, e.dot + 1, e.b, {}, {}}, j + 1);
      if (el.optional) Add(Edge{e.cons, e.start, e.dot + 1, e.b, {}, {}}, j);
      return;
    }
    const Avm &env = *e.want_env;
    for (size_t d : el.admitted) {
      const Construction &c = eng_.grammar().at(d);
      if (c.lexical() && (j >= n || toks_[j] != c.struc[0].text)) continue;
      if (!eng_.Admissible(d, view_, env)) continue;
      if (stats_) ++stats_->predictions;
      Add(Edge{d, j, 0, {{std::string(kInheritedVar), env}}, {}, {}}, j);
    }
  }

  const Engine &eng_;
  const Avm &view_;
  const std::vector<std::string> &toks_;
  std::vector<TraceEntry> *trace_;
  ParseStats *stats_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::unordered_set<std::string>> keys_;
};

// Exhaustive top-down enumeration of span decompositions.
class Oracle {
 public:
  Oracle(const Engine &eng, const Avm &view, const std::vector<std::string> &toks)
      : eng_(eng), view_(view), toks_(toks) {}

  std::vector<ParseResult> Run() {
    std::vector<ParseResult> out;
    const int n = static_cast<int>(toks_.size());
    if (n == 0) return out;
    Avm env;
    for (size_t r : eng_.roots()) {
      if (!eng_.Admissible(r, view_, env)) continue;
      for (const Avm &m : Instances(r, 0, n, env, /*distinct_messages=*/false))
        out.push_back(ParseResult{eng_.grammar().at(r).name, m});
    }
    return out;
  }

 private:
  // Messages of construction c over [i, j). With distinct_messages the
  // result is a set; otherwise one message per distinct binding tuple.
  std::vector<Avm> Instances(size_t c, int i, int j, const Avm &env, bool distinct_messages) {
    std::vector<Bindings> tuples;
    Bindings b{{std::string(kInheritedVar), env}};
    Expand(c, 0, i, j, b, tuples);
    std::set<std::string> seen_tuples, seen_msgs;
    std::vector<Avm> out;
    for (const auto &t : tuples) {
      if (!seen_tuples.insert(BindingsKey(t)).second) continue;
      auto m = eng_.BuildMessage(c, t);
      if (!m) continue;
      if (distinct_messages && !seen_msgs.insert(ToBracket(*m)).second) continue;
      out.push_back(std::move(*m));
    }
    return out;
  }

  const std::vector<Avm> &Derive(size_t c, int i, int j, const Avm &env) {
    std::string key = std::to_string(c) + '|' + std::to_string(i) + '|' + std::to_string(j) +
                      '|' + ToBracket(env);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    static const std::vector<Avm> kNone;
    if (!active_.insert(key).second) {
      ++cycle_cuts_;  // a unary cycle over one span; cut it here
      return kNone;
    }
    size_t cuts_before = cycle_cuts_;
    std::vector<Avm> result = Instances(c, i, j, env, /*distinct_messages=*/true);
    active_.erase(key);
    if (cycle_cuts_ != cuts_before) {
      scratch_.push_back(std::move(result));
      return scratch_.back();
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  void Expand(size_t c, size_t k, int pos, int j, const Bindings &b, std::vector<Bindings> &out) {
    const ConsPlan &plan = eng_.plan(c);
    if (k == plan.elems.size()) {
      if (pos == j) out.push_back(b);
      return;
    }
    const ElementPlan &el = plan.elems[k];
    if (!el.var) {
      if (pos < j && toks_[pos] == el.text) Expand(c, k + 1, pos + 1, j, b, out);
      if (el.optional) Expand(c, k + 1, pos, j, b, out);
      return;
    }
    Avm env = eng_.ChildEnv(c, k, b);
    for (size_t d : el.admitted) {
      if (!eng_.Admissible(d, view_, env)) continue;
      const Term &name = eng_.grammar().at(d).name;
      for (int end = pos + 1; end <= j; ++end) {
        // Copy: Derive may rehash memo_.
        std::vector<Avm> msgs = Derive(d, pos, end, env);
        for (const Avm &m : msgs) {
          Bindings nb = b;
          if (!eng_.Bind(c, k, name, m, nb)) continue;
          Expand(c, k + 1, end, j, nb, out);
        }
      }
    }
  }

  const Engine &eng_;
  const Avm &view_;
  const std::vector<std::string> &toks_;
  std::map<std::string, std::vector<Avm>> memo_;
  std::set<std::string> active_;
  std::deque<std::vector<Avm>> scratch_;
  size_t cycle_cuts_ = 0;
};

}  // namespace

Parser::Parser(const Grammar &g, FilterSet filters)
    : engine_(std::make_unique<Engine>(g, std::move(filters))) {}
Parser::~Parser() = default;
Parser::Parser(Parser &&) noexcept = default;
Parser &Parser::operator=(Parser &&) noexcept = default;

const Grammar &Parser::grammar() const { return engine_->grammar(); }
const FilterSet &Parser::filters() const { return engine_->filters(); }

std::vector<ParseResult> Parser::Parse(const DiscourseContext &ctx,
                                       const std::vector<WordToken> &tokens,
                                       std::vector<TraceEntry> *trace, ParseStats *stats) const {
  Avm view = ctx.ToAvm();
  std::vector<std::string> toks = Surfaces(tokens);
  return Chart(*engine_, view, toks, trace, stats).Run();
}

std::vector<ParseResult> Parser::Parse(const DiscourseContext &ctx, std::string_view text) const {
  return Parse(ctx, TokenizeUtterance(text));
}

size_t Parser::ParseCount(const DiscourseContext &ctx, const std::vector<WordToken> &tokens) const {
  return Parse(ctx, tokens).size();
}

std::vector<ParseResult> Parser::OracleParse(const DiscourseContext &ctx,
                                             const std::vector<WordToken> &tokens) const {
  Avm view = ctx.ToAvm();
  std::vector<std::string> toks = Surfaces(tokens);
  return Oracle(*engine_, view, toks).Run();
}

}  // namespace mincal
