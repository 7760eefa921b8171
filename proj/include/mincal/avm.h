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

// Attribute-value matrices. Every message, context and slot value in the
// system is a Value; an Avm is a tree-shaped map from attribute names to
// Values.

#ifndef MINCAL_AVM_H_
#define MINCAL_AVM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mincal {

class Value;

struct Atom {
  std::string name;
};

struct Number {
  int64_t value = 0;
};

// Uppercase pattern variable (V, NP, S).
struct Var {
  std::string name;
};

// Matches any ground value. Patterns only.
struct Wildcard {};

// Constructor term: sent(cmnd, v.np), want(other_agent), time(hour).
struct Term {
  std::string head;
  std::vector<Value> args;
};

struct List {
  std::vector<Value> items;
};

// Attribute path, optionally rooted at a variable: <V M v_type>.
struct Path {
  std::string root;  // empty when unrooted
  std::vector<std::string> attrs;

  bool rooted() const { return !root.empty(); }
  std::string ToString() const;
  bool operator==(const Path &other) const = default;
};

struct PathRef {
  Path path;
};

struct Entry;

class Avm {
 public:
  Avm() = default;
  Avm(std::initializer_list<Entry> entries);

  // Returns nullptr when the attribute is absent.
  const Value *Find(std::string_view attr) const;
  Value *Find(std::string_view attr);
  bool Has(std::string_view attr) const { return Find(attr) != nullptr; }

  // Inserts or replaces.
  void Set(std::string attr, Value value);
  bool Erase(std::string_view attr);

  const std::vector<Entry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  bool operator==(const Avm &other) const;

 private:
  // Sorted by attribute name; names are unique.
  std::vector<Entry> entries_;
};

class Value {
 public:
  using Variant =
      std::variant<Atom, Number, Avm, List, Var, Wildcard, Term, PathRef>;

  Value() : v_(Avm{}) {}
  Value(Atom a) : v_(std::move(a)) {}
  Value(Number n) : v_(n) {}
  Value(Avm a) : v_(std::move(a)) {}
  Value(List l) : v_(std::move(l)) {}
  Value(Var v) : v_(std::move(v)) {}
  Value(Wildcard w) : v_(w) {}
  Value(Term t) : v_(std::move(t)) {}
  Value(PathRef p) : v_(std::move(p)) {}

  // Convenience: bare symbols and integers.
  Value(const char *atom) : v_(Atom{atom}) {}
  Value(std::string atom) : v_(Atom{std::move(atom)}) {}
  Value(int n) : v_(Number{n}) {}
  Value(int64_t n) : v_(Number{n}) {}

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }
  template <typename T>
  const T &as() const {
    return std::get<T>(v_);
  }
  template <typename T>
  T &as() {
    return std::get<T>(v_);
  }
  template <typename T>
  const T *get_if() const {
    return std::get_if<T>(&v_);
  }

  const Variant &variant() const { return v_; }

  bool IsAtom(std::string_view name) const {
    auto *a = get_if<Atom>();
    return a != nullptr && a->name == name;
  }

  // True when the value holds no Var, Wildcard or PathRef anywhere.
  bool IsGround() const;

  bool operator==(const Value &other) const;

 private:
  Variant v_;
};

struct Entry {
  std::string attr;
  Value value;
  bool operator==(const Entry &other) const;
};

bool operator==(const Term &a, const Term &b);
bool operator==(const List &a, const List &b);

using Bindings = std::map<std::string, Value>;

// Errors raised by substitute and merge.
class AvmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public AvmError {
 public:
  explicit UnboundVariable(std::string var)
      : AvmError("unbound variable " + var), var_(std::move(var)) {}
  const std::string &var() const { return var_; }

 private:
  std::string var_;
};

class UnresolvedPath : public AvmError {
 public:
  explicit UnresolvedPath(Path path)
      : AvmError("unresolvable path " + path.ToString()),
        path_(std::move(path)) {}
  const Path &path() const { return path_; }

 private:
  Path path_;
};

class MergeConflict : public AvmError {
 public:
  explicit MergeConflict(Path path)
      : AvmError("merge conflict at " + path.ToString()),
        path_(std::move(path)) {}
  const Path &path() const { return path_; }

 private:
  Path path_;
};

// Successive attribute lookup. Absent if any step is missing or lands on a
// non-Avm value.
std::optional<Value> Resolve(const Value &root,
                             std::span<const std::string> attrs);
std::optional<Value> Resolve(const Avm &avm, const Path &path);

// Resolves a variable-rooted path against bindings. Throws UnboundVariable
// when the root is not bound.
std::optional<Value> Resolve(const Bindings &bindings, const Path &path);

// Pattern subsumption. Subject attributes not named by the pattern are
// ignored; lists match as an order-preserving subsequence.
std::optional<Bindings> Match(const Value &pattern, const Value &subject);
bool Match(const Value &pattern, const Value &subject, Bindings &bindings);

// Recursive union of two ground AVMs. Throws MergeConflict.
Avm Merge(const Avm &base, const Avm &overlay);

// Like Merge, but leaves of `over` replace leaves of `base`.
Avm Overlay(const Avm &base, const Avm &over);

// Replaces Vars and rooted PathRefs using `bindings`. Unrooted PathRefs are
// resolved against nothing and are an error.
Value Substitute(const Value &tmpl, const Bindings &bindings);
Avm Substitute(const Avm &tmpl, const Bindings &bindings);

// Hour values are Avms {value: N, meridiem: m}; this recognizes the shape.
bool IsHourValue(const Avm &avm);

}  // namespace mincal

#endif  // MINCAL_AVM_H_
