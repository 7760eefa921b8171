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

// Constructions and the grammar that holds them.
//
// A construction pairs a name (a constructor term such as sent(cmnd, v.np))
// with a context (constraints on the discourse state), a vehicle (the
// constituent structure plus feature equations over the constituents) and a
// message template. Grammar files use one s-expression per construction:
//
//   (construction sent(cmnd, v.np)
//     :context ((<hr attends> sr))
//     :vehicle ((V NP)
//               (<V cons_n> verb)
//               (<V M v_type> action_verb)
//               (<NP cons_n> np))
//     :inh ((NP expect <V M sem_type>))
//     :syn (sem_cat a_type a_obj agent)
//     :message ((sem_cat command) (a_type <V M sem_type>) (a_obj <NP M>)
//               (agent hr)))
//
//   (lexeme "cancel" verb(cancel)
//     :context ((<lang_code> english) (<lang_channel> text))
//     :message ((cat verb) (sem_type delete) (v_type action_verb)))
//
//   (abstract verb :message ((cat verb) (v_type action_verb)))
//
// Inside a construction, variable V is bound to [ [ cons_n name ] [ M msg ] ]
// for the constituent filling V, and INH to the inherited attributes the
// construction received from its parent.

#ifndef MINCAL_GRAMMAR_H_
#define MINCAL_GRAMMAR_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/avm.h"
#include "mincal/context.h"

namespace mincal {

inline constexpr std::string_view kInheritedVar = "INH";

struct StrucElement {
  enum class Kind { kLiteral, kVar };
  Kind kind = Kind::kLiteral;
  std::string text;  // token or variable name
  bool optional = false;

  bool is_var() const { return kind == Kind::kVar; }
  bool operator==(const StrucElement &) const = default;
};

// <V M v_type> = action_verb. The right-hand side is a pattern.
struct FeatureEquation {
  Path lhs;
  Value rhs;
  bool operator==(const FeatureEquation &) const = default;
};

// <p_utter cons_n> = sent(ques, *). Paths are unrooted and resolve against
// the discourse context.
struct ContextConstraint {
  Path lhs;
  Value rhs;
  bool operator==(const ContextConstraint &) const = default;
};

// (NP expect <V M sem_type>): element NP inherits attribute `expect`.
struct InheritedDecl {
  std::string target;
  std::string attr;
  Value expr;
  bool operator==(const InheritedDecl &) const = default;
};

// A pair of paths whose values are checked against the domain filter set:
// (modifier, head) for attachments, (noun, expectation) for selection.
struct SortCheck {
  Path first;
  Path second;
  bool operator==(const SortCheck &) const = default;
};

// Message template node.
struct TemplateNode {
  enum class Kind {
    kValue,   // ground value, Var or PathRef
    kAvm,     // entries; splice and :set entries are flagged
    kMaybe,   // (:maybe <path>) - entry omitted when the path is absent
    kAppend,  // (:append <path> item) - list at path (or empty) plus item
    kPrepend, // (:prepend <path> item) - item, then the list at path
    kList,    // (:list a b ...)
  };
  struct Item {
    enum class Op { kEntry, kSplice, kSet };
    Op op = Op::kEntry;
    std::string attr;   // empty for splice
    Path path;          // splice source
    std::vector<TemplateNode> value;  // exactly one for entries
    bool operator==(const Item &) const = default;
  };

  Kind kind = Kind::kAvm;
  Value value;
  Path path;
  std::vector<Item> items;           // kAvm
  std::vector<TemplateNode> elems;   // kList; the item for kAppend/kPrepend

  bool operator==(const TemplateNode &) const = default;
};

struct Construction {
  Term name;
  bool abstract = false;
  std::vector<ContextConstraint> context;
  std::vector<StrucElement> struc;
  std::vector<FeatureEquation> equations;
  std::vector<InheritedDecl> inherited;
  std::vector<std::string> synthesized;
  std::vector<SortCheck> filters;
  std::vector<SortCheck> selects;
  TemplateNode message;
  int line = 0;

  const std::string &head() const { return name.head; }
  // Struc is exactly one non-optional literal token.
  bool lexical() const;
  // Index of the struc element holding `var`, or -1.
  int PositionOf(std::string_view var) const;
  // The cons_n pattern for the element holding `var`.
  const Value *CategoryOf(std::string_view var) const;

  bool operator==(const Construction &other) const;
};

std::string NameKey(const Term &name);

// True when a cons_n pattern admits a construction named `name`. A bare
// atom names a head (verb admits verb(cancel)); a term is matched.
bool CategoryMatches(const Value &pattern, const Term &name);

class GrammarError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kDuplicate, kDanglingVariable, kDanglingCategory,
                    kInvalid, kIo };
  GrammarError(Kind kind, int line, const std::string &what)
      : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : "") + what),
        kind_(kind), line_(line) {}
  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

struct LAttributedViolation {
  std::string construction;
  std::string attribute;
  std::string dependency;
};

class Grammar {
 public:
  Grammar() = default;

  // Parses and validates grammar text. Throws GrammarError.
  static Grammar Load(std::string_view source);
  static Grammar LoadFile(const std::string &path);

  const std::vector<Construction> &constructions() const { return cons_; }
  const Construction &at(size_t i) const { return cons_[i]; }
  size_t size() const { return cons_.size(); }
  std::optional<size_t> Find(const Term &name) const;
  std::optional<size_t> Find(std::string_view name_text) const;

  // Concrete constructions with this head, in file order.
  const std::vector<size_t> &ByHead(std::string_view head) const;
  // Lexical constructions for a surface token.
  const std::vector<size_t> &ByToken(std::string_view token) const;
  // Concrete constructions whose name a cons_n pattern admits.
  std::vector<size_t> Admitted(const Value &pattern) const;

  // Default message of an abstract construction, if declared.
  const Avm *DefaultMessage(std::string_view head) const;

  // Attribute classification: message attributes declared synthesized, and
  // attributes this construction hands down to each element.
  const std::vector<std::string> &Synthesized(size_t i) const {
    return cons_[i].synthesized;
  }
  std::vector<std::string> Inherited(size_t i) const;

  size_t LexicalCount() const;
  size_t ProductionCount() const;  // constructions with a variable in struc

  // Grammar text that loads back to an equal grammar.
  std::string Serialize() const;

  bool operator==(const Grammar &other) const { return cons_ == other.cons_; }

 private:
  void Add(Construction c);
  void BuildIndexes();
  void Validate() const;

  std::vector<Construction> cons_;
  std::map<std::string, size_t, std::less<>> by_name_;
  std::map<std::string, std::vector<size_t>, std::less<>> by_head_;
  std::map<std::string, std::vector<size_t>, std::less<>> by_token_;
  std::map<std::string, Avm, std::less<>> defaults_;
};

// Evaluates a message template. Throws AvmError (unbound variable,
// unresolvable path, merge conflict).
Avm EvaluateTemplate(const TemplateNode &tmpl, const Bindings &bindings);

// True when every context constraint of `c` holds in the context view.
bool ContextHolds(const Construction &c, const Avm &context);

// Every inherited attribute of element i depends only on the parent's
// inherited attributes (INH) or on elements left of i; every declared
// synthesized attribute is defined by the message.
std::vector<LAttributedViolation> ValidateLAttributed(const Grammar &g);

// Lexical constructions for `token` whose context holds in ctx, with their
// ground messages (defaults of the abstract head applied).
std::vector<std::pair<const Construction *, Avm>> LexicalCandidates(
    const Grammar &g, std::string_view token, const DiscourseContext &ctx);

}  // namespace mincal

#endif  // MINCAL_GRAMMAR_H_
