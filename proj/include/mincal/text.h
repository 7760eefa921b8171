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

// Textual forms shared by the grammar DSL, the knowledge-base files and the
// bracketed AVM display:
//
//   [ [ hour [ 5 am_or_pm ] ] [ minute 0 ] ]     Avm with two entries
//   [ 5 am_or_pm ]                               hour value {value, meridiem}
//   [ a conference ]                             multiword atom
//   { a b c }                                    list
//   sent(ques, *)                                constructor term
//   ?X  <V M sem_type>                           variable, path

#ifndef MINCAL_TEXT_H_
#define MINCAL_TEXT_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mincal/avm.h"

namespace mincal {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class TokenKind {
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLBrace,
  kRBrace,
  kLAngle,
  kRAngle,
  kComma,
  kString,
  kNumber,
  kSymbol,
  kKeyword,  // :context
  kQVar,     // ?X
  kStar,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  bool space_before = true;
};

// Splits text into tokens. `;` starts a comment running to end of line.
std::vector<Token> Tokenize(std::string_view text);

// True for bare words that print without quoting.
bool IsSymbolText(std::string_view s);
bool IsUpperVarName(std::string_view s);

// Generic s-expression tree used by the grammar and KB loaders.
struct SExpr {
  enum class Kind { kList, kSymbol, kString, kNumber, kKeyword, kStar, kVar,
                    kTerm, kPath };
  Kind kind = Kind::kList;
  std::string text;           // symbol/string/keyword/var name, term head
  int64_t number = 0;
  std::vector<SExpr> items;   // list elements or term arguments
  Path path;                  // kPath
  int line = 1;

  bool IsSymbol(std::string_view s) const {
    return kind == Kind::kSymbol && text == s;
  }
  bool IsKeyword(std::string_view s) const {
    return kind == Kind::kKeyword && text == s;
  }
};

// Reads a sequence of top-level forms. In this dialect an all-uppercase
// symbol is a variable.
std::vector<SExpr> ReadSExprs(std::string_view text);

std::string ToString(const SExpr &e);

// Converts a leaf or term s-expression into a Value.
Value SExprToValue(const SExpr &e);

// Single-line bracketed form. Read(ToBracket(v)) == v for every value.
std::string ToBracket(const Value &v);
std::string ToBracket(const Avm &avm);

// Multi-line layout of the same syntax, one entry per line once the
// single-line form gets wide.
std::string ToBracketPretty(const Value &v, int width = 64);

// Parses the bracketed form. Throws SyntaxError.
Value ReadBracket(std::string_view text);

}  // namespace mincal

#endif  // MINCAL_TEXT_H_
