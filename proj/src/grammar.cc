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

#include "mincal/grammar.h"

#include <fstream>
#include <set>
#include <sstream>

#include "mincal/text.h"

namespace mincal {
namespace {

using Kind = GrammarError::Kind;

const std::set<std::string, std::less<>> kDiscourseSymbols = {
    "hr", "sr", "p_utter", "lang_code", "lang_channel"};

[[noreturn]] void Fail(Kind kind, int line, const std::string &what) {
  throw GrammarError(kind, line, what);
}

Path ExpectPath(const SExpr &e, const char *what) {
  if (e.kind != SExpr::Kind::kPath) Fail(Kind::kSyntax, e.line, std::string("expected path in ") + what);
  return e.path;
}

Value ExpectValue(const SExpr &e) {
  try {
    return SExprToValue(e);
  } catch (const SyntaxError &err) {
    Fail(Kind::kSyntax, e.line, err.what());
  }
}

TemplateNode ParseTemplateValue(const SExpr &e);

TemplateNode ParseTemplateAvm(const SExpr &e) {
  if (e.kind != SExpr::Kind::kList) Fail(Kind::kSyntax, e.line, "expected message entries");
  TemplateNode node;
  node.kind = TemplateNode::Kind::kAvm;
  for (const auto &item : e.items) {
    if (item.kind != SExpr::Kind::kList || item.items.empty())
      Fail(Kind::kSyntax, item.line, "expected (attribute value)");
    TemplateNode::Item it;
    const SExpr &first = item.items[0];
    if (first.IsKeyword("splice")) {
      if (item.items.size() != 2) Fail(Kind::kSyntax, item.line, "(:splice <path>)");
      it.op = TemplateNode::Item::Op::kSplice;
      it.path = ExpectPath(item.items[1], ":splice");
    } else if (first.IsKeyword("set")) {
      if (item.items.size() != 3 || item.items[1].kind != SExpr::Kind::kSymbol)
        Fail(Kind::kSyntax, item.line, "(:set attribute value)");
      it.op = TemplateNode::Item::Op::kSet;
      it.attr = item.items[1].text;
      it.value.push_back(ParseTemplateValue(item.items[2]));
    } else {
      if (item.items.size() != 2 || first.kind != SExpr::Kind::kSymbol)
        Fail(Kind::kSyntax, item.line, "expected (attribute value)");
      it.attr = first.text;
      it.value.push_back(ParseTemplateValue(item.items[1]));
    }
    node.items.push_back(std::move(it));
  }
  return node;
}

TemplateNode ParseTemplateValue(const SExpr &e) {
  TemplateNode node;
  if (e.kind != SExpr::Kind::kList) {
    node.kind = TemplateNode::Kind::kValue;
    node.value = ExpectValue(e);
    return node;
  }
  if (!e.items.empty() && e.items[0].kind == SExpr::Kind::kKeyword) {
    const std::string &op = e.items[0].text;
    if (op == "maybe") {
      if (e.items.size() != 2) Fail(Kind::kSyntax, e.line, "(:maybe <path>)");
      node.kind = TemplateNode::Kind::kMaybe;
      node.path = ExpectPath(e.items[1], ":maybe");
      return node;
    }
    if (op == "append" || op == "prepend") {
      if (e.items.size() != 3) Fail(Kind::kSyntax, e.line, "(:" + op + " <path> item)");
      node.kind = op == "append" ? TemplateNode::Kind::kAppend : TemplateNode::Kind::kPrepend;
      node.path = ExpectPath(e.items[1], op.c_str());
      node.elems.push_back(ParseTemplateValue(e.items[2]));
      return node;
    }
    if (op == "list") {
      node.kind = TemplateNode::Kind::kList;
      for (size_t i = 1; i < e.items.size(); ++i)
        node.elems.push_back(ParseTemplateValue(e.items[i]));
      return node;
    }
    Fail(Kind::kSyntax, e.line, "unknown template operator :" + op);
  }
  return ParseTemplateAvm(e);
}

std::vector<StrucElement> ParseStruc(const SExpr &e) {
  if (e.kind != SExpr::Kind::kList) Fail(Kind::kSyntax, e.line, "expected struc list");
  std::vector<StrucElement> out;
  for (const auto &x : e.items) {
    StrucElement el;
    if (x.kind == SExpr::Kind::kString || x.kind == SExpr::Kind::kSymbol) {
      el.text = x.text;
    } else if (x.kind == SExpr::Kind::kVar) {
      el.kind = StrucElement::Kind::kVar;
      el.text = x.text;
    } else if (x.kind == SExpr::Kind::kList && x.items.size() == 2 &&
               x.items[0].IsKeyword("opt") &&
               (x.items[1].kind == SExpr::Kind::kString ||
                x.items[1].kind == SExpr::Kind::kSymbol)) {
      el.text = x.items[1].text;
      el.optional = true;
    } else {
      Fail(Kind::kSyntax, x.line, "bad struc element " + ToString(x));
    }
    out.push_back(std::move(el));
  }
  return out;
}

std::vector<SortCheck> ParseChecks(const SExpr &e, const char *what) {
  std::vector<SortCheck> out;
  if (e.kind != SExpr::Kind::kList) Fail(Kind::kSyntax, e.line, std::string("expected list after ") + what);
  for (const auto &x : e.items) {
    if (x.kind != SExpr::Kind::kList || x.items.size() != 2)
      Fail(Kind::kSyntax, x.line, std::string("expected (<path> <path>) in ") + what);
    out.push_back(SortCheck{ExpectPath(x.items[0], what), ExpectPath(x.items[1], what)});
  }
  return out;
}

Term ParseName(const SExpr &e) {
  if (e.kind == SExpr::Kind::kSymbol) return Term{e.text, {}};
  if (e.kind == SExpr::Kind::kTerm) {
    Value v = ExpectValue(e);
    return v.as<Term>();
  }
  Fail(Kind::kSyntax, e.line, "expected construction name, got " + ToString(e));
}

Construction ParseForm(const SExpr &form) {
  if (form.kind != SExpr::Kind::kList || form.items.empty() ||
      form.items[0].kind != SExpr::Kind::kSymbol)
    Fail(Kind::kSyntax, form.line, "expected (construction ...), (lexeme ...) or (abstract ...)");
  const std::string &kind = form.items[0].text;
  Construction c;
  c.line = form.line;
  size_t i = 1;
  if (kind == "lexeme") {
    if (form.items.size() < 3 || (form.items[1].kind != SExpr::Kind::kString &&
                                  form.items[1].kind != SExpr::Kind::kSymbol))
      Fail(Kind::kSyntax, form.line, "(lexeme \"surface\" name ...)");
    c.struc.push_back(StrucElement{StrucElement::Kind::kLiteral, form.items[1].text, false});
    c.name = ParseName(form.items[2]);
    i = 3;
  } else if (kind == "construction" || kind == "abstract") {
    if (form.items.size() < 2) Fail(Kind::kSyntax, form.line, "missing construction name");
    c.name = ParseName(form.items[1]);
    c.abstract = kind == "abstract";
    i = 2;
  } else {
    Fail(Kind::kSyntax, form.line, "unknown form " + kind);
  }
  bool have_message = false;
  for (; i < form.items.size(); i += 2) {
    const SExpr &kw = form.items[i];
    if (kw.kind != SExpr::Kind::kKeyword || i + 1 >= form.items.size())
      Fail(Kind::kSyntax, kw.line, "expected :keyword value");
    const SExpr &val = form.items[i + 1];
    if (kw.text == "context") {
      if (val.kind != SExpr::Kind::kList) Fail(Kind::kSyntax, val.line, "expected constraint list");
      for (const auto &x : val.items) {
        if (x.kind != SExpr::Kind::kList || x.items.size() != 2)
          Fail(Kind::kSyntax, x.line, "expected (<path> value) in :context");
        c.context.push_back(ContextConstraint{ExpectPath(x.items[0], ":context"),
                                              ExpectValue(x.items[1])});
      }
    } else if (kw.text == "vehicle") {
      if (kind == "lexeme") Fail(Kind::kSyntax, val.line, "lexeme has an implicit vehicle");
      if (val.kind != SExpr::Kind::kList || val.items.empty())
        Fail(Kind::kSyntax, val.line, "expected ((struc ...) equations ...)");
      c.struc = ParseStruc(val.items[0]);
      for (size_t k = 1; k < val.items.size(); ++k) {
        const SExpr &eq = val.items[k];
        if (eq.kind != SExpr::Kind::kList || eq.items.size() != 2)
          Fail(Kind::kSyntax, eq.line, "expected (<path> pattern) equation");
        c.equations.push_back(FeatureEquation{ExpectPath(eq.items[0], "equation"),
                                              ExpectValue(eq.items[1])});
      }
    } else if (kw.text == "inh") {
      if (val.kind != SExpr::Kind::kList) Fail(Kind::kSyntax, val.line, "expected :inh list");
      for (const auto &x : val.items) {
        if (x.kind != SExpr::Kind::kList || x.items.size() != 3 ||
            x.items[0].kind != SExpr::Kind::kVar || x.items[1].kind != SExpr::Kind::kSymbol)
          Fail(Kind::kSyntax, x.line, "expected (VAR attribute expr) in :inh");
        c.inherited.push_back(InheritedDecl{x.items[0].text, x.items[1].text,
                                            ExpectValue(x.items[2])});
      }
    } else if (kw.text == "syn") {
      if (val.kind != SExpr::Kind::kList) Fail(Kind::kSyntax, val.line, "expected :syn list");
      for (const auto &x : val.items) {
        if (x.kind != SExpr::Kind::kSymbol) Fail(Kind::kSyntax, x.line, "expected attribute in :syn");
        c.synthesized.push_back(x.text);
      }
    } else if (kw.text == "filter") {
      c.filters = ParseChecks(val, ":filter");
    } else if (kw.text == "select") {
      c.selects = ParseChecks(val, ":select");
    } else if (kw.text == "message") {
      c.message = ParseTemplateAvm(val);
      have_message = true;
    } else {
      Fail(Kind::kSyntax, kw.line, "unknown keyword :" + kw.text);
    }
  }
  if (!have_message) c.message.kind = TemplateNode::Kind::kAvm;
  return c;
}

// Collects variable roots used by a value or template.
void VarsOf(const Value &v, std::set<std::string> &out) {
  if (auto *var = v.get_if<Var>()) out.insert(var->name);
  if (auto *ref = v.get_if<PathRef>()) {
    if (ref->path.rooted()) out.insert(ref->path.root);
  }
  if (auto *avm = v.get_if<Avm>())
    for (const auto &e : avm->entries()) VarsOf(e.value, out);
  if (auto *list = v.get_if<List>())
    for (const auto &x : list->items) VarsOf(x, out);
  if (auto *term = v.get_if<Term>())
    for (const auto &x : term->args) VarsOf(x, out);
}

void VarsOf(const TemplateNode &t, std::set<std::string> &out) {
  switch (t.kind) {
    case TemplateNode::Kind::kValue:
      VarsOf(t.value, out);
      break;
    case TemplateNode::Kind::kMaybe:
    case TemplateNode::Kind::kAppend:
    case TemplateNode::Kind::kPrepend:
      if (t.path.rooted()) out.insert(t.path.root);
      for (const auto &x : t.elems) VarsOf(x, out);
      break;
    case TemplateNode::Kind::kList:
      for (const auto &x : t.elems) VarsOf(x, out);
      break;
    case TemplateNode::Kind::kAvm:
      for (const auto &it : t.items) {
        if (it.op == TemplateNode::Item::Op::kSplice && it.path.rooted())
          out.insert(it.path.root);
        for (const auto &x : it.value) VarsOf(x, out);
      }
      break;
  }
}

std::string ValueToDsl(const Value &v) {
  return std::visit(
      [&](const auto &x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atom>) {
          if (IsSymbolText(x.name) && !IsUpperVarName(x.name)) return x.name;
          std::string q = "\"";
          for (char c : x.name) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
          }
          return q + "\"";
        } else if constexpr (std::is_same_v<T, Number>) {
          return std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, Wildcard>) {
          return "*";
        } else if constexpr (std::is_same_v<T, PathRef>) {
          return x.path.ToString();
        } else if constexpr (std::is_same_v<T, Term>) {
          std::string s = x.head + "(";
          for (size_t i = 0; i < x.args.size(); ++i) {
            if (i) s += ", ";
            s += ValueToDsl(x.args[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, List>) {
          std::string s = "(:list";
          for (const auto &item : x.items) s += " " + ValueToDsl(item);
          return s + ")";
        } else {
          std::string s = "(";
          bool first = true;
          for (const auto &e : x.entries()) {
            if (!first) s += ' ';
            first = false;
            s += "(" + e.attr + " " + ValueToDsl(e.value) + ")";
          }
          return s + ")";
        }
      },
      v.variant());
}

std::string NameToDsl(const Term &t) {
  if (t.args.empty()) return t.head;
  return ValueToDsl(Value(t));
}

std::string TemplateToDsl(const TemplateNode &t) {
  switch (t.kind) {
    case TemplateNode::Kind::kValue:
      return ValueToDsl(t.value);
    case TemplateNode::Kind::kMaybe:
      return "(:maybe " + t.path.ToString() + ")";
    case TemplateNode::Kind::kAppend:
      return "(:append " + t.path.ToString() + " " + TemplateToDsl(t.elems[0]) + ")";
    case TemplateNode::Kind::kPrepend:
      return "(:prepend " + t.path.ToString() + " " + TemplateToDsl(t.elems[0]) + ")";
    case TemplateNode::Kind::kList: {
      std::string s = "(:list";
      for (const auto &x : t.elems) s += " " + TemplateToDsl(x);
      return s + ")";
    }
    case TemplateNode::Kind::kAvm: {
      std::string s = "(";
      for (size_t i = 0; i < t.items.size(); ++i) {
        const auto &it = t.items[i];
        if (i) s += ' ';
        switch (it.op) {
          case TemplateNode::Item::Op::kSplice:
            s += "(:splice " + it.path.ToString() + ")";
            break;
          case TemplateNode::Item::Op::kSet:
            s += "(:set " + it.attr + " " + TemplateToDsl(it.value[0]) + ")";
            break;
          case TemplateNode::Item::Op::kEntry:
            s += "(" + it.attr + " " + TemplateToDsl(it.value[0]) + ")";
            break;
        }
      }
      return s + ")";
    }
  }
  return "";
}

std::string PathDsl(const Path &p) { return p.ToString(); }

std::string LiteralDsl(const std::string &s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

Value ResolvePathIn(const Bindings &b, const Path &p) {
  auto v = Resolve(b, p);
  if (!v) throw UnresolvedPath(p);
  return *v;
}

Value EvalNode(const TemplateNode &t, const Bindings &b);

std::optional<Value> EvalOptional(const TemplateNode &t, const Bindings &b) {
  if (t.kind == TemplateNode::Kind::kMaybe) return Resolve(b, t.path);
  return EvalNode(t, b);
}

Value EvalNode(const TemplateNode &t, const Bindings &b) {
  switch (t.kind) {
    case TemplateNode::Kind::kValue:
      return Substitute(t.value, b);
    case TemplateNode::Kind::kMaybe:
      return ResolvePathIn(b, t.path);
    case TemplateNode::Kind::kAppend:
    case TemplateNode::Kind::kPrepend: {
      List out;
      if (auto existing = Resolve(b, t.path)) {
        if (auto *l = existing->get_if<List>()) {
          out = *l;
        } else {
          throw UnresolvedPath(t.path);
        }
      }
      Value item = EvalNode(t.elems[0], b);
      if (t.kind == TemplateNode::Kind::kAppend) out.items.push_back(std::move(item));
      else out.items.insert(out.items.begin(), std::move(item));
      return out;
    }
    case TemplateNode::Kind::kList: {
      List out;
      for (const auto &x : t.elems) out.items.push_back(EvalNode(x, b));
      return out;
    }
    case TemplateNode::Kind::kAvm: {
      Avm out;
      for (const auto &it : t.items) {
        switch (it.op) {
          case TemplateNode::Item::Op::kSplice: {
            Value v = ResolvePathIn(b, it.path);
            auto *avm = v.get_if<Avm>();
            if (avm == nullptr) throw UnresolvedPath(it.path);
            out = Merge(out, *avm);
            break;
          }
          case TemplateNode::Item::Op::kSet: {
            auto v = EvalOptional(it.value[0], b);
            if (v) out = Overlay(out, Avm{{it.attr, *v}});
            break;
          }
          case TemplateNode::Item::Op::kEntry: {
            auto v = EvalOptional(it.value[0], b);
            if (v) out = Merge(out, Avm{{it.attr, *v}});
            break;
          }
        }
      }
      return out;
    }
  }
  return Value();
}

}  // namespace

std::string NameKey(const Term &name) { return ToBracket(Value(name)); }

bool CategoryMatches(const Value &pattern, const Term &name) {
  if (pattern.is<Wildcard>()) return true;
  if (auto *a = pattern.get_if<Atom>()) return a->name == name.head;
  if (pattern.is<Term>()) return Match(pattern, Value(name)).has_value();
  return false;
}

bool Construction::lexical() const {
  return struc.size() == 1 && !struc[0].is_var() && !struc[0].optional;
}

int Construction::PositionOf(std::string_view var) const {
  for (size_t i = 0; i < struc.size(); ++i) {
    if (struc[i].is_var() && struc[i].text == var) return static_cast<int>(i);
  }
  return -1;
}

const Value *Construction::CategoryOf(std::string_view var) const {
  for (const auto &eq : equations) {
    if (eq.lhs.root == var && eq.lhs.attrs.size() == 1 && eq.lhs.attrs[0] == "cons_n")
      return &eq.rhs;
  }
  return nullptr;
}

bool Construction::operator==(const Construction &o) const {
  return name == o.name && abstract == o.abstract && context == o.context &&
         struc == o.struc && equations == o.equations && inherited == o.inherited &&
         synthesized == o.synthesized && filters == o.filters && selects == o.selects &&
         message == o.message;
}

Avm EvaluateTemplate(const TemplateNode &tmpl, const Bindings &bindings) {
  Value v = EvalNode(tmpl, bindings);
  auto *avm = v.get_if<Avm>();
  if (avm == nullptr) throw AvmError("message template is not a matrix");
  return *avm;
}

bool ContextHolds(const Construction &c, const Avm &context) {
  for (const auto &cc : c.context) {
    auto v = Resolve(context, cc.lhs);
    if (!v || !Match(cc.rhs, *v)) return false;
  }
  return true;
}

Grammar Grammar::Load(std::string_view source) {
  std::vector<SExpr> forms;
  try {
    forms = ReadSExprs(source);
  } catch (const SyntaxError &e) {
    throw GrammarError(Kind::kSyntax, e.line(), e.what());
  }
  Grammar g;
  for (const auto &f : forms) g.Add(ParseForm(f));
  g.BuildIndexes();
  g.Validate();
  return g;
}

Grammar Grammar::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw GrammarError(Kind::kIo, 0, "cannot read grammar file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Load(ss.str());
}

void Grammar::Add(Construction c) {
  std::string key = NameKey(c.name);
  if (by_name_.count(key))
    Fail(Kind::kDuplicate, c.line, "duplicate construction " + key);
  by_name_.emplace(key, cons_.size());
  cons_.push_back(std::move(c));
}

void Grammar::BuildIndexes() {
  by_head_.clear();
  by_token_.clear();
  defaults_.clear();
  for (size_t i = 0; i < cons_.size(); ++i) {
    const auto &c = cons_[i];
    if (c.abstract) {
      try {
        defaults_[c.head()] = EvaluateTemplate(c.message, {});
      } catch (const AvmError &e) {
        Fail(Kind::kInvalid, c.line, "abstract " + c.head() + ": " + e.what());
      }
      continue;
    }
    by_head_[c.head()].push_back(i);
    if (c.lexical()) by_token_[c.struc[0].text].push_back(i);
  }
}

void Grammar::Validate() const {
  for (const auto &c : cons_) {
    const std::string name = NameKey(c.name);
    if (c.abstract) continue;
    if (c.struc.empty()) Fail(Kind::kInvalid, c.line, name + ": empty struc");
    bool required = false;
    std::set<std::string> vars;
    for (const auto &el : c.struc) {
      if (!el.optional) required = true;
      if (el.is_var() && !vars.insert(el.text).second)
        Fail(Kind::kInvalid, c.line, name + ": variable " + el.text + " repeated in struc");
      if (el.is_var() && el.text == kInheritedVar)
        Fail(Kind::kInvalid, c.line, name + ": INH is reserved");
    }
    if (!required) Fail(Kind::kInvalid, c.line, name + ": struc has no required element");
    for (const auto &cc : c.context) {
      if (cc.lhs.rooted() || cc.lhs.attrs.empty() ||
          !kDiscourseSymbols.count(cc.lhs.attrs[0]))
        Fail(Kind::kInvalid, c.line,
             name + ": context path " + cc.lhs.ToString() + " is not rooted at a discourse symbol");
    }
    for (const auto &eq : c.equations) {
      if (!eq.lhs.rooted() || !vars.count(eq.lhs.root))
        Fail(Kind::kDanglingVariable, c.line,
             name + ": equation " + eq.lhs.ToString() + " is not rooted at a struc variable");
      // Agreement with an element to the left.
      if (auto *ref = eq.rhs.get_if<PathRef>()) {
        if (!ref->path.rooted() || !vars.count(ref->path.root) ||
            c.PositionOf(ref->path.root) >= c.PositionOf(eq.lhs.root))
          Fail(Kind::kDanglingVariable, c.line,
               name + ": agreement " + ref->path.ToString() + " must name an element left of " +
                   eq.lhs.root);
      }
    }
    for (const auto &v : vars) {
      const Value *cat = c.CategoryOf(v);
      if (cat == nullptr)
        Fail(Kind::kInvalid, c.line, name + ": variable " + v + " has no cons_n equation");
      std::string head;
      if (auto *a = cat->get_if<Atom>()) head = a->name;
      if (auto *t = cat->get_if<Term>()) head = t->head;
      if (!head.empty() && !by_head_.count(head))
        Fail(Kind::kDanglingCategory, c.line, name + ": no construction with head " + head);
    }
    auto known = [&](const std::string &v) { return vars.count(v) || v == kInheritedVar; };
    std::set<std::string> used;
    VarsOf(c.message, used);
    for (const auto &d : c.inherited) {
      if (!vars.count(d.target))
        Fail(Kind::kDanglingVariable, c.line, name + ": :inh target " + d.target + " not in struc");
      VarsOf(d.expr, used);
    }
    for (const auto &chk : c.filters) {
      used.insert(chk.first.root);
      used.insert(chk.second.root);
    }
    for (const auto &chk : c.selects) {
      used.insert(chk.first.root);
      used.insert(chk.second.root);
    }
    used.erase("");
    for (const auto &v : used) {
      if (!known(v))
        Fail(Kind::kDanglingVariable, c.line, name + ": variable " + v + " is not in struc");
    }
  }
}

std::optional<size_t> Grammar::Find(const Term &name) const {
  return Find(NameKey(name));
}

std::optional<size_t> Grammar::Find(std::string_view name_text) const {
  auto it = by_name_.find(name_text);
  if (it == by_name_.end()) {
    // Accept unnormalized spellings such as "sent(cmnd,v.np)".
    try {
      Value v = ReadBracket(name_text);
      if (auto *t = v.get_if<Term>()) {
        it = by_name_.find(NameKey(*t));
      } else if (auto *a = v.get_if<Atom>()) {
        it = by_name_.find(NameKey(Term{a->name, {}}));
      }
    } catch (const SyntaxError &) {
    }
    if (it == by_name_.end()) return std::nullopt;
  }
  return it->second;
}

const std::vector<size_t> &Grammar::ByHead(std::string_view head) const {
  static const std::vector<size_t> kEmpty;
  auto it = by_head_.find(head);
  return it == by_head_.end() ? kEmpty : it->second;
}

const std::vector<size_t> &Grammar::ByToken(std::string_view token) const {
  static const std::vector<size_t> kEmpty;
  auto it = by_token_.find(token);
  return it == by_token_.end() ? kEmpty : it->second;
}

std::vector<size_t> Grammar::Admitted(const Value &pattern) const {
  std::vector<size_t> out;
  auto admit = [&](const std::vector<size_t> &ids) {
    for (size_t i : ids)
      if (CategoryMatches(pattern, cons_[i].name)) out.push_back(i);
  };
  if (auto *a = pattern.get_if<Atom>()) {
    admit(ByHead(a->name));
  } else if (auto *t = pattern.get_if<Term>()) {
    admit(ByHead(t->head));
  } else if (pattern.is<Wildcard>()) {
    for (size_t i = 0; i < cons_.size(); ++i)
      if (!cons_[i].abstract) out.push_back(i);
  }
  return out;
}

const Avm *Grammar::DefaultMessage(std::string_view head) const {
  auto it = defaults_.find(head);
  return it == defaults_.end() ? nullptr : &it->second;
}

std::vector<std::string> Grammar::Inherited(size_t i) const {
  std::set<std::string> attrs;
  for (const auto &d : cons_[i].inherited) attrs.insert(d.attr);
  return {attrs.begin(), attrs.end()};
}

size_t Grammar::LexicalCount() const {
  size_t n = 0;
  for (const auto &c : cons_) n += (!c.abstract && c.lexical()) ? 1 : 0;
  return n;
}

size_t Grammar::ProductionCount() const {
  size_t n = 0;
  for (const auto &c : cons_) {
    if (c.abstract) continue;
    for (const auto &el : c.struc) {
      if (el.is_var()) {
        ++n;
        break;
      }
    }
  }
  return n;
}

std::string Grammar::Serialize() const {
  std::string out;
  for (const auto &c : cons_) {
    if (c.abstract) {
      out += "(abstract " + NameToDsl(c.name);
    } else if (c.lexical() && c.equations.empty() && c.inherited.empty() &&
               c.filters.empty() && c.selects.empty()) {
      out += "(lexeme " + LiteralDsl(c.struc[0].text) + " " + NameToDsl(c.name);
    } else {
      out += "(construction " + NameToDsl(c.name);
      out += "\n  :vehicle ((";
      for (size_t i = 0; i < c.struc.size(); ++i) {
        const auto &el = c.struc[i];
        if (i) out += ' ';
        if (el.is_var()) {
          out += el.text;
        } else if (el.optional) {
          out += "(:opt " + LiteralDsl(el.text) + ")";
        } else {
          out += LiteralDsl(el.text);
        }
      }
      out += ")";
      for (const auto &eq : c.equations)
        out += " (" + PathDsl(eq.lhs) + " " + ValueToDsl(eq.rhs) + ")";
      out += ")";
    }
    if (!c.context.empty()) {
      out += "\n  :context (";
      for (size_t i = 0; i < c.context.size(); ++i) {
        if (i) out += ' ';
        out += "(" + PathDsl(c.context[i].lhs) + " " + ValueToDsl(c.context[i].rhs) + ")";
      }
      out += ")";
    }
    if (!c.inherited.empty()) {
      out += "\n  :inh (";
      for (size_t i = 0; i < c.inherited.size(); ++i) {
        const auto &d = c.inherited[i];
        if (i) out += ' ';
        out += "(" + d.target + " " + d.attr + " " + ValueToDsl(d.expr) + ")";
      }
      out += ")";
    }
    if (!c.synthesized.empty()) {
      out += "\n  :syn (";
      for (size_t i = 0; i < c.synthesized.size(); ++i) {
        if (i) out += ' ';
        out += c.synthesized[i];
      }
      out += ")";
    }
    auto checks = [&](const char *kw, const std::vector<SortCheck> &v) {
      if (v.empty()) return;
      out += std::string("\n  :") + kw + " (";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += "(" + PathDsl(v[i].first) + " " + PathDsl(v[i].second) + ")";
      }
      out += ")";
    };
    checks("filter", c.filters);
    checks("select", c.selects);
    out += "\n  :message " + TemplateToDsl(c.message) + ")\n";
  }
  return out;
}

std::vector<LAttributedViolation> ValidateLAttributed(const Grammar &g) {
  std::vector<LAttributedViolation> out;
  for (const auto &c : g.constructions()) {
    if (c.abstract) continue;
    const std::string name = NameKey(c.name);
    for (const auto &d : c.inherited) {
      int target = c.PositionOf(d.target);
      std::set<std::string> deps;
      VarsOf(d.expr, deps);
      for (const auto &dep : deps) {
        if (dep == kInheritedVar) continue;
        int pos = c.PositionOf(dep);
        if (pos < 0 || pos >= target) {
          out.push_back({name, d.target + "." + d.attr, dep});
        }
      }
    }
    bool spliced = false;
    std::set<std::string> defined;
    for (const auto &it : c.message.items) {
      if (it.op == TemplateNode::Item::Op::kSplice) spliced = true;
      else defined.insert(it.attr);
    }
    for (const auto &attr : c.synthesized) {
      if (!spliced && !defined.count(attr)) out.push_back({name, attr, "undefined"});
    }
  }
  return out;
}

std::vector<std::pair<const Construction *, Avm>> LexicalCandidates(
    const Grammar &g, std::string_view token, const DiscourseContext &ctx) {
  std::vector<std::pair<const Construction *, Avm>> out;
  Avm view = ctx.ToAvm();
  for (size_t i : g.ByToken(token)) {
    const Construction &c = g.at(i);
    if (!ContextHolds(c, view)) continue;
    Avm msg = EvaluateTemplate(c.message, {});
    if (const Avm *def = g.DefaultMessage(c.head())) msg = Overlay(*def, msg);
    out.emplace_back(&c, std::move(msg));
  }
  return out;
}

}  // namespace mincal
