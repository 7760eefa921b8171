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

#include "mincal/text.h"

#include <cctype>
#include <charconv>

namespace mincal {
namespace {

bool IsSymbolChar(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '.': case ':': case '\'': case '-': case '+': case '/':
    case '&': case '@': case '#': case '$': case '%': case '^': case '~':
    case '!': case '=': case '|':
      return true;
    default:
      return false;
  }
}

bool IsNumberText(std::string_view s) {
  size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

int64_t ParseNumber(const Token &t) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw SyntaxError(t.line, "bad number '" + t.text + "'");
  return v;
}

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

bool IsSymbolText(std::string_view s) {
  if (s.empty() || IsNumberText(s) || s[0] == ':') return false;
  for (char c : s) {
    if (!IsSymbolChar(c)) return false;
  }
  return true;
}

bool IsUpperVarName(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!(std::isupper(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  }
  return true;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  bool space = true;
  size_t i = 0;
  auto push = [&](TokenKind k, std::string s) {
    out.push_back(Token{k, std::move(s), line, space});
    space = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      space = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      space = true;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
      space = true;
      continue;
    }
    switch (c) {
      case '(': push(TokenKind::kLParen, "("); ++i; continue;
      case ')': push(TokenKind::kRParen, ")"); ++i; continue;
      case '[': push(TokenKind::kLBracket, "["); ++i; continue;
      case ']': push(TokenKind::kRBracket, "]"); ++i; continue;
      case '{': push(TokenKind::kLBrace, "{"); ++i; continue;
      case '}': push(TokenKind::kRBrace, "}"); ++i; continue;
      case '<': push(TokenKind::kLAngle, "<"); ++i; continue;
      case '>': push(TokenKind::kRAngle, ">"); ++i; continue;
      case ',': push(TokenKind::kComma, ","); ++i; continue;
      case '*': push(TokenKind::kStar, "*"); ++i; continue;
      default: break;
    }
    if (c == '"') {
      std::string s;
      int start_line = line;
      ++i;
      while (true) {
        if (i >= text.size()) throw SyntaxError(start_line, "unterminated string");
        char d = text[i++];
        if (d == '"') break;
        if (d == '\\' && i < text.size()) d = text[i++];
        if (d == '\n') ++line;
        s += d;
      }
      out.push_back(Token{TokenKind::kString, std::move(s), start_line, space});
      space = false;
      continue;
    }
    if (c == '?' && i + 1 < text.size() && IsSymbolChar(text[i + 1])) {
      size_t j = i + 1;
      while (j < text.size() && IsSymbolChar(text[j])) ++j;
      push(TokenKind::kQVar, std::string(text.substr(i + 1, j - i - 1)));
      i = j;
      continue;
    }
    if (IsSymbolChar(c)) {
      size_t j = i;
      while (j < text.size() && IsSymbolChar(text[j])) ++j;
      std::string s(text.substr(i, j - i));
      i = j;
      if (IsNumberText(s)) {
        push(TokenKind::kNumber, std::move(s));
      } else if (s.size() > 1 && s[0] == ':') {
        push(TokenKind::kKeyword, s.substr(1));
      } else {
        push(TokenKind::kSymbol, std::move(s));
      }
      continue;
    }
    throw SyntaxError(line, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{TokenKind::kEnd, "", line, true});
  return out;
}

namespace {

class SExprReader {
 public:
  explicit SExprReader(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<SExpr> ReadAll() {
    std::vector<SExpr> out;
    while (peek().kind != TokenKind::kEnd) out.push_back(Read());
    return out;
  }

 private:
  const Token &peek(size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token &next() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  SExpr Read() {
    const Token &t = next();
    SExpr e;
    e.line = t.line;
    switch (t.kind) {
      case TokenKind::kLParen:
        e.kind = SExpr::Kind::kList;
        while (peek().kind != TokenKind::kRParen) {
          if (peek().kind == TokenKind::kEnd)
            throw SyntaxError(t.line, "unbalanced '('");
          e.items.push_back(Read());
        }
        next();
        return e;
      case TokenKind::kLAngle:
        e.kind = SExpr::Kind::kPath;
        while (peek().kind != TokenKind::kRAngle) {
          const Token &a = next();
          if (a.kind != TokenKind::kSymbol)
            throw SyntaxError(a.line, "expected attribute name in path");
          if (e.path.attrs.empty() && !e.path.rooted() && IsUpperVarName(a.text) &&
              a.text != "M") {
            e.path.root = a.text;
          } else {
            e.path.attrs.push_back(a.text);
          }
        }
        next();
        if (!e.path.rooted() && e.path.attrs.empty())
          throw SyntaxError(t.line, "empty path");
        return e;
      case TokenKind::kString:
        e.kind = SExpr::Kind::kString;
        e.text = t.text;
        return e;
      case TokenKind::kNumber:
        e.kind = SExpr::Kind::kNumber;
        e.number = ParseNumber(t);
        return e;
      case TokenKind::kKeyword:
        e.kind = SExpr::Kind::kKeyword;
        e.text = t.text;
        return e;
      case TokenKind::kStar:
        e.kind = SExpr::Kind::kStar;
        return e;
      case TokenKind::kQVar:
        e.kind = SExpr::Kind::kVar;
        e.text = t.text;
        return e;
      case TokenKind::kSymbol:
        if (peek().kind == TokenKind::kLParen && !peek().space_before) {
          next();
          e.kind = SExpr::Kind::kTerm;
          e.text = t.text;
          if (peek().kind != TokenKind::kRParen) {
            while (true) {
              e.items.push_back(Read());
              if (peek().kind == TokenKind::kComma) {
                next();
                continue;
              }
              break;
            }
          }
          if (next().kind != TokenKind::kRParen)
            throw SyntaxError(t.line, "expected ')' closing term " + t.text);
          return e;
        }
        e.kind = IsUpperVarName(t.text) ? SExpr::Kind::kVar : SExpr::Kind::kSymbol;
        e.text = t.text;
        return e;
      default:
        throw SyntaxError(t.line, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<SExpr> ReadSExprs(std::string_view text) {
  return SExprReader(Tokenize(text)).ReadAll();
}

std::string ToString(const SExpr &e) {
  switch (e.kind) {
    case SExpr::Kind::kList: {
      std::string out = "(";
      for (size_t i = 0; i < e.items.size(); ++i) {
        if (i) out += ' ';
        out += ToString(e.items[i]);
      }
      return out + ")";
    }
    case SExpr::Kind::kSymbol: return e.text;
    case SExpr::Kind::kString: return Quote(e.text);
    case SExpr::Kind::kNumber: return std::to_string(e.number);
    case SExpr::Kind::kKeyword: return ":" + e.text;
    case SExpr::Kind::kStar: return "*";
    case SExpr::Kind::kVar: return e.text;
    case SExpr::Kind::kPath: return e.path.ToString();
    case SExpr::Kind::kTerm: {
      std::string out = e.text + "(";
      for (size_t i = 0; i < e.items.size(); ++i) {
        if (i) out += ", ";
        out += ToString(e.items[i]);
      }
      return out + ")";
    }
  }
  return "";
}

Value SExprToValue(const SExpr &e) {
  switch (e.kind) {
    case SExpr::Kind::kSymbol:
    case SExpr::Kind::kString:
      return Atom{e.text};
    case SExpr::Kind::kNumber:
      return Number{e.number};
    case SExpr::Kind::kStar:
      return Wildcard{};
    case SExpr::Kind::kVar:
      return Var{e.text};
    case SExpr::Kind::kPath:
      return PathRef{e.path};
    case SExpr::Kind::kTerm: {
      Term t{e.text, {}};
      for (const auto &a : e.items) t.args.push_back(SExprToValue(a));
      return t;
    }
    case SExpr::Kind::kKeyword:
      throw SyntaxError(e.line, "keyword :" + e.text + " is not a value");
    case SExpr::Kind::kList: {
      // ((attr value) ...) is an Avm; (:list a b) is a List.
      if (!e.items.empty() && e.items[0].IsKeyword("list")) {
        List l;
        for (size_t i = 1; i < e.items.size(); ++i)
          l.items.push_back(SExprToValue(e.items[i]));
        return l;
      }
      Avm avm;
      for (const auto &entry : e.items) {
        if (entry.kind != SExpr::Kind::kList || entry.items.size() != 2 ||
            entry.items[0].kind != SExpr::Kind::kSymbol)
          throw SyntaxError(entry.line, "expected (attribute value)");
        avm.Set(entry.items[0].text, SExprToValue(entry.items[1]));
      }
      return avm;
    }
  }
  return Value();
}

// ---------------------------------------------------------------------------
// Bracketed display form.

namespace {

bool IsWordList(std::string_view s) {
  // "a conference": two or more symbol words, the first not numeric.
  size_t words = 0;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = s.find(' ', i);
    if (j == std::string_view::npos) j = s.size();
    if (j == i) return false;  // double or leading space
    if (!IsSymbolText(s.substr(i, j - i))) return false;
    ++words;
    i = j + 1;
    if (j + 1 == s.size()) return false;  // trailing space
  }
  return words >= 2;
}

void PrintAtom(const std::string &name, std::string &out) {
  if (IsSymbolText(name) && name[0] != '?') {
    out += name;
  } else if (IsWordList(name)) {
    out += "[ " + name + " ]";
  } else {
    out += Quote(name);
  }
}

void Print(const Value &v, std::string &out) {
  std::visit(
      [&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atom>) {
          PrintAtom(x.name, out);
        } else if constexpr (std::is_same_v<T, Number>) {
          out += std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, Avm>) {
          if (x.empty()) {
            out += "[ ]";
          } else if (IsHourValue(x)) {
            out += "[ " + std::to_string(x.Find("value")->template as<Number>().value);
            if (const Value *m = x.Find("meridiem")) {
              out += ' ';
              Print(*m, out);
            }
            out += " ]";
          } else {
            out += "[";
            for (const auto &e : x.entries()) {
              out += " [ ";
              PrintAtom(e.attr, out);
              out += ' ';
              Print(e.value, out);
              out += " ]";
            }
            out += " ]";
          }
        } else if constexpr (std::is_same_v<T, List>) {
          out += "{";
          for (const auto &item : x.items) {
            out += ' ';
            Print(item, out);
          }
          out += " }";
        } else if constexpr (std::is_same_v<T, Var>) {
          out += "?" + x.name;
        } else if constexpr (std::is_same_v<T, Wildcard>) {
          out += "*";
        } else if constexpr (std::is_same_v<T, Term>) {
          out += x.head + "(";
          for (size_t i = 0; i < x.args.size(); ++i) {
            if (i) out += ", ";
            Print(x.args[i], out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, PathRef>) {
          out += x.path.ToString();
        }
      },
      v.variant());
}

void PrintPretty(const Value &v, int col, int width, std::string &out) {
  std::string flat = ToBracket(v);
  auto *avm = v.get_if<Avm>();
  if (static_cast<int>(flat.size()) + col <= width || avm == nullptr ||
      avm->empty() || IsHourValue(*avm)) {
    out += flat;
    return;
  }
  out += "[ ";
  bool first = true;
  for (const auto &e : avm->entries()) {
    if (!first) {
      out += '\n';
      out.append(col + 2, ' ');
    }
    first = false;
    std::string head = "[ ";
    PrintAtom(e.attr, head);
    head += ' ';
    out += head;
    PrintPretty(e.value, col + 2 + static_cast<int>(head.size()), width, out);
    out += " ]";
  }
  out += " ]";
}

class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : toks_(Tokenize(text)) {}

  Value ReadTop() {
    Value v = ReadValue();
    if (peek().kind != TokenKind::kEnd)
      throw SyntaxError(peek().line, "trailing input '" + peek().text + "'");
    return v;
  }

 private:
  const Token &peek(size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token &next() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  void Expect(TokenKind k, const char *what) {
    if (peek().kind != k) throw SyntaxError(peek().line, std::string("expected ") + what);
    next();
  }

  Value ReadValue() {
    const Token &t = next();
    switch (t.kind) {
      case TokenKind::kLBracket: return ReadGroup(t.line);
      case TokenKind::kLBrace: {
        List l;
        while (peek().kind != TokenKind::kRBrace) {
          if (peek().kind == TokenKind::kEnd) throw SyntaxError(t.line, "unbalanced '{'");
          l.items.push_back(ReadValue());
        }
        next();
        return l;
      }
      case TokenKind::kString: return Atom{t.text};
      case TokenKind::kNumber: return Number{ParseNumber(t)};
      case TokenKind::kQVar: return Var{t.text};
      case TokenKind::kStar: return Wildcard{};
      case TokenKind::kLAngle: {
        Path p;
        while (peek().kind != TokenKind::kRAngle) {
          const Token &a = next();
          if (a.kind != TokenKind::kSymbol) throw SyntaxError(a.line, "bad path");
          if (p.attrs.empty() && !p.rooted() && IsUpperVarName(a.text) && a.text != "M")
            p.root = a.text;
          else
            p.attrs.push_back(a.text);
        }
        next();
        return PathRef{std::move(p)};
      }
      case TokenKind::kSymbol: {
        if (peek().kind == TokenKind::kLParen && !peek().space_before) {
          next();
          Term term{t.text, {}};
          if (peek().kind != TokenKind::kRParen) {
            while (true) {
              term.args.push_back(ReadValue());
              if (peek().kind != TokenKind::kComma) break;
              next();
            }
          }
          Expect(TokenKind::kRParen, "')'");
          return term;
        }
        return Atom{t.text};
      }
      default:
        throw SyntaxError(t.line, "unexpected '" + t.text + "'");
    }
  }

  // After '['.
  Value ReadGroup(int line) {
    const Token &first = peek();
    if (first.kind == TokenKind::kRBracket) {
      next();
      return Avm{};
    }
    if (first.kind == TokenKind::kNumber) {
      Avm hour;
      hour.Set("value", Number{ParseNumber(next())});
      if (peek().kind != TokenKind::kRBracket) hour.Set("meridiem", ReadValue());
      Expect(TokenKind::kRBracket, "']' after hour value");
      return hour;
    }
    if (first.kind == TokenKind::kSymbol) {
      std::string words;
      while (peek().kind == TokenKind::kSymbol) {
        if (!words.empty()) words += ' ';
        words += next().text;
      }
      Expect(TokenKind::kRBracket, "']' after words");
      return Atom{words};
    }
    if (first.kind == TokenKind::kLBracket) {
      Avm avm;
      while (peek().kind == TokenKind::kLBracket) {
        next();
        const Token &attr = next();
        if (attr.kind != TokenKind::kSymbol && attr.kind != TokenKind::kString)
          throw SyntaxError(attr.line, "expected attribute name");
        std::string name = attr.text;
        Value v = ReadValue();
        Expect(TokenKind::kRBracket, "']' closing entry");
        avm.Set(std::move(name), std::move(v));
      }
      Expect(TokenKind::kRBracket, "']' closing matrix");
      return avm;
    }
    throw SyntaxError(line, "unexpected '" + first.text + "' in group");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

std::string ToBracket(const Value &v) {
  std::string out;
  Print(v, out);
  return out;
}

std::string ToBracket(const Avm &avm) { return ToBracket(Value(avm)); }

std::string ToBracketPretty(const Value &v, int width) {
  std::string out;
  PrintPretty(v, 0, width, out);
  return out;
}

Value ReadBracket(std::string_view text) { return BracketReader(text).ReadTop(); }

}  // namespace mincal
