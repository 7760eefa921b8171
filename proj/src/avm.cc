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

#include "mincal/avm.h"

#include <algorithm>

namespace mincal {

std::string Path::ToString() const {
  std::string out = "<";
  bool first = true;
  if (rooted()) {
    out += root;
    first = false;
  }
  for (const auto &a : attrs) {
    if (!first) out += ' ';
    out += a;
    first = false;
  }
  out += '>';
  return out;
}

Avm::Avm(std::initializer_list<Entry> entries) {
  for (const auto &e : entries) Set(e.attr, e.value);
}

const Value *Avm::Find(std::string_view attr) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), attr,
      [](const Entry &e, std::string_view a) { return e.attr < a; });
  if (it == entries_.end() || it->attr != attr) return nullptr;
  return &it->value;
}

Value *Avm::Find(std::string_view attr) {
  return const_cast<Value *>(std::as_const(*this).Find(attr));
}

void Avm::Set(std::string attr, Value value) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), attr,
      [](const Entry &e, const std::string &a) { return e.attr < a; });
  if (it != entries_.end() && it->attr == attr) {
    it->value = std::move(value);
  } else {
    entries_.insert(it, Entry{std::move(attr), std::move(value)});
  }
}

bool Avm::Erase(std::string_view attr) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), attr,
      [](const Entry &e, std::string_view a) { return e.attr < a; });
  if (it == entries_.end() || it->attr != attr) return false;
  entries_.erase(it);
  return true;
}

bool Avm::operator==(const Avm &other) const {
  return entries_ == other.entries_;
}

bool Entry::operator==(const Entry &other) const {
  return attr == other.attr && value == other.value;
}

bool operator==(const Term &a, const Term &b) {
  return a.head == b.head && a.args == b.args;
}

bool operator==(const List &a, const List &b) { return a.items == b.items; }

bool Value::operator==(const Value &other) const {
  if (v_.index() != other.v_.index()) return false;
  return std::visit(
      [&](const auto &lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T &rhs = std::get<T>(other.v_);
        if constexpr (std::is_same_v<T, Atom>) return lhs.name == rhs.name;
        if constexpr (std::is_same_v<T, Number>) return lhs.value == rhs.value;
        if constexpr (std::is_same_v<T, Var>) return lhs.name == rhs.name;
        if constexpr (std::is_same_v<T, Wildcard>) return true;
        if constexpr (std::is_same_v<T, PathRef>) return lhs.path == rhs.path;
        if constexpr (std::is_same_v<T, Avm> || std::is_same_v<T, List> ||
                      std::is_same_v<T, Term>)
          return lhs == rhs;
      },
      v_);
}

bool Value::IsGround() const {
  if (is<Var>() || is<Wildcard>() || is<PathRef>()) return false;
  if (auto *avm = get_if<Avm>()) {
    return std::all_of(avm->entries().begin(), avm->entries().end(),
                       [](const Entry &e) { return e.value.IsGround(); });
  }
  if (auto *list = get_if<List>()) {
    return std::all_of(list->items.begin(), list->items.end(),
                       [](const Value &v) { return v.IsGround(); });
  }
  if (auto *term = get_if<Term>()) {
    return std::all_of(term->args.begin(), term->args.end(),
                       [](const Value &v) { return v.IsGround(); });
  }
  return true;
}

std::optional<Value> Resolve(const Value &root,
                             std::span<const std::string> attrs) {
  const Value *cur = &root;
  for (const auto &attr : attrs) {
    auto *avm = cur->get_if<Avm>();
    if (avm == nullptr) return std::nullopt;
    cur = avm->Find(attr);
    if (cur == nullptr) return std::nullopt;
  }
  return *cur;
}

std::optional<Value> Resolve(const Avm &avm, const Path &path) {
  if (path.rooted()) throw UnboundVariable(path.root);
  // Avoid copying the whole tree for the first step.
  if (path.attrs.empty()) return Value(avm);
  const Value *first = avm.Find(path.attrs.front());
  if (first == nullptr) return std::nullopt;
  return Resolve(*first, std::span(path.attrs).subspan(1));
}

std::optional<Value> Resolve(const Bindings &bindings, const Path &path) {
  if (!path.rooted()) return std::nullopt;
  auto it = bindings.find(path.root);
  if (it == bindings.end()) throw UnboundVariable(path.root);
  return Resolve(it->second, path.attrs);
}

namespace {

bool MatchList(const std::vector<Value> &pattern, size_t pi,
               const std::vector<Value> &subject, size_t si,
               Bindings &bindings) {
  if (pi == pattern.size()) return true;
  for (size_t k = si; k + (pattern.size() - pi) <= subject.size(); ++k) {
    Bindings trial = bindings;
    if (Match(pattern[pi], subject[k], trial) &&
        MatchList(pattern, pi + 1, subject, k + 1, trial)) {
      bindings = std::move(trial);
      return true;
    }
  }
  return false;
}

}  // namespace

bool Match(const Value &pattern, const Value &subject, Bindings &bindings) {
  if (pattern.is<Wildcard>()) return true;
  if (auto *var = pattern.get_if<Var>()) {
    auto it = bindings.find(var->name);
    if (it != bindings.end()) return it->second == subject;
    bindings.emplace(var->name, subject);
    return true;
  }
  if (auto *atom = pattern.get_if<Atom>()) {
    auto *s = subject.get_if<Atom>();
    return s != nullptr && s->name == atom->name;
  }
  if (auto *num = pattern.get_if<Number>()) {
    auto *s = subject.get_if<Number>();
    return s != nullptr && s->value == num->value;
  }
  if (auto *term = pattern.get_if<Term>()) {
    auto *s = subject.get_if<Term>();
    if (s == nullptr || s->head != term->head ||
        s->args.size() != term->args.size())
      return false;
    for (size_t i = 0; i < term->args.size(); ++i) {
      if (!Match(term->args[i], s->args[i], bindings)) return false;
    }
    return true;
  }
  if (auto *avm = pattern.get_if<Avm>()) {
    auto *s = subject.get_if<Avm>();
    if (s == nullptr) return false;
    for (const auto &e : avm->entries()) {
      const Value *sv = s->Find(e.attr);
      if (sv == nullptr || !Match(e.value, *sv, bindings)) return false;
    }
    return true;
  }
  if (auto *list = pattern.get_if<List>()) {
    auto *s = subject.get_if<List>();
    if (s == nullptr) return false;
    return MatchList(list->items, 0, s->items, 0, bindings);
  }
  return false;  // PathRef never matches
}

std::optional<Bindings> Match(const Value &pattern, const Value &subject) {
  Bindings b;
  if (!Match(pattern, subject, b)) return std::nullopt;
  return b;
}

namespace {

Avm MergeAt(const Avm &base, const Avm &over, Path &at, bool override) {
  Avm out = base;
  for (const auto &e : over.entries()) {
    Value *existing = out.Find(e.attr);
    if (existing == nullptr) {
      out.Set(e.attr, e.value);
      continue;
    }
    at.attrs.push_back(e.attr);
    auto *lhs = existing->get_if<Avm>();
    auto *rhs = e.value.get_if<Avm>();
    if (lhs != nullptr && rhs != nullptr) {
      *existing = MergeAt(*lhs, *rhs, at, override);
    } else if (override) {
      *existing = e.value;
    } else if (!(*existing == e.value)) {
      throw MergeConflict(at);
    }
    at.attrs.pop_back();
  }
  return out;
}

}  // namespace

Avm Merge(const Avm &base, const Avm &overlay) {
  Path at;
  return MergeAt(base, overlay, at, false);
}

Avm Overlay(const Avm &base, const Avm &over) {
  Path at;
  return MergeAt(base, over, at, true);
}

Value Substitute(const Value &tmpl, const Bindings &bindings) {
  if (auto *var = tmpl.get_if<Var>()) {
    auto it = bindings.find(var->name);
    if (it == bindings.end()) throw UnboundVariable(var->name);
    return it->second;
  }
  if (auto *ref = tmpl.get_if<PathRef>()) {
    if (!ref->path.rooted()) throw UnresolvedPath(ref->path);
    auto v = Resolve(bindings, ref->path);
    if (!v) throw UnresolvedPath(ref->path);
    return *v;
  }
  if (auto *avm = tmpl.get_if<Avm>()) return Substitute(*avm, bindings);
  if (auto *list = tmpl.get_if<List>()) {
    List out;
    out.items.reserve(list->items.size());
    for (const auto &v : list->items) out.items.push_back(Substitute(v, bindings));
    return out;
  }
  if (auto *term = tmpl.get_if<Term>()) {
    Term out{term->head, {}};
    for (const auto &v : term->args) out.args.push_back(Substitute(v, bindings));
    return out;
  }
  return tmpl;
}

Avm Substitute(const Avm &tmpl, const Bindings &bindings) {
  Avm out;
  for (const auto &e : tmpl.entries()) {
    out.Set(e.attr, Substitute(e.value, bindings));
  }
  return out;
}

bool IsHourValue(const Avm &avm) {
  const Value *v = avm.Find("value");
  if (v == nullptr || !v->is<Number>()) return false;
  if (avm.size() == 1) return true;
  const Value *m = avm.Find("meridiem");
  return avm.size() == 2 && m != nullptr && m->is<Atom>();
}

}  // namespace mincal
