/*
 * Copyright 2026 The tvr Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "tvr/sql/lexer.h"

#include <array>
#include <cctype>

#include "tvr/strings.h"

namespace tvr::sql {

namespace {

constexpr std::array kReserved = {
    "SELECT", "FROM",  "WHERE",     "GROUP", "BY",         "AS",   "AND",   "EMIT",  "STREAM",
    "AFTER",  "WATERMARK", "DELAY", "TABLE", "DESCRIPTOR", "NULL", "TRUE",  "FALSE",
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (at_end()) {
        out.push_back(Token{TokenKind::End, "", 0, {}, {}, here()});
        return out;
      }
      out.push_back(next());
      fold_typed_literal(out);
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(size_t k = 0) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }
  SourcePos here() const { return {line_, col_}; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '-' && peek(1) == '-') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token make(TokenKind kind, SourcePos pos, std::string text) {
    Token t;
    t.kind = kind;
    t.pos = pos;
    t.text = std::move(text);
    return t;
  }

  Token next() {
    SourcePos pos = here();
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
      std::string word(text_.substr(start, i_ - start));
      if (is_reserved(word)) return make(TokenKind::Keyword, pos, to_upper(word));
      return make(TokenKind::Identifier, pos, word);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      Token t = make(TokenKind::Integer, pos, std::string(text_.substr(start, i_ - start)));
      try {
        t.integer = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw ParseError("integer literal out of range", pos);
      }
      return t;
    }
    if (c == '\'') {
      advance();
      std::string value;
      while (true) {
        if (at_end()) throw ParseError("unterminated string literal", pos);
        if (peek() == '\'') {
          if (peek(1) == '\'') {
            value += '\'';
            advance();
            advance();
            continue;
          }
          advance();
          break;
        }
        value += peek();
        advance();
      }
      return make(TokenKind::String, pos, value);
    }
    auto single = [&](TokenKind kind, int len) {
      std::string s(text_.substr(i_, len));
      for (int k = 0; k < len; ++k) advance();
      return make(kind, pos, s);
    };
    switch (c) {
      case '(': return single(TokenKind::LParen, 1);
      case ')': return single(TokenKind::RParen, 1);
      case ',': return single(TokenKind::Comma, 1);
      case ';': return single(TokenKind::Semicolon, 1);
      case '.': return single(TokenKind::Dot, 1);
      case '*': return single(TokenKind::Star, 1);
      case '+': return single(TokenKind::Plus, 1);
      case '-': return single(TokenKind::Minus, 1);
      case '=': return peek(1) == '>' ? single(TokenKind::Arrow, 2) : single(TokenKind::Eq, 1);
      case '<': return peek(1) == '=' ? single(TokenKind::Le, 2) : single(TokenKind::Lt, 1);
      case '>': return peek(1) == '=' ? single(TokenKind::Ge, 2) : single(TokenKind::Gt, 1);
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  // Collapses `INTERVAL '<n>' <unit>` and `TIMESTAMP '<H:MM>'` into one token.
  void fold_typed_literal(std::vector<Token>& out) {
    Token& head = out.back();
    if (head.kind != TokenKind::Identifier) return;
    bool interval = iequals(head.text, "INTERVAL");
    bool timestamp = iequals(head.text, "TIMESTAMP");
    if (!interval && !timestamp) return;
    size_t save_i = i_;
    int save_line = line_, save_col = col_;
    skip_space();
    if (peek() != '\'') {
      if (interval) throw ParseError("INTERVAL expects a quoted quantity", here());
      i_ = save_i;
      line_ = save_line;
      col_ = save_col;
      return;
    }
    Token literal = next();
    if (timestamp) {
      auto t = parse_time(literal.text);
      if (!t) throw ParseError("malformed TIMESTAMP literal '" + literal.text + "'", literal.pos);
      head.kind = TokenKind::TimestampLiteral;
      head.timestamp = *t;
      head.text = literal.text;
      return;
    }
    int64_t amount = 0;
    try {
      size_t used = 0;
      amount = std::stoll(literal.text, &used);
      if (used != literal.text.size() || amount < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("malformed INTERVAL quantity '" + literal.text + "'", literal.pos);
    }
    skip_space();
    SourcePos unit_pos = here();
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
      throw ParseError("INTERVAL expects a unit", unit_pos);
    }
    Token unit = next();
    int64_t scale = 0;
    if (iequals(unit.text, "MINUTE") || iequals(unit.text, "MINUTES")) {
      scale = 1;
    } else if (iequals(unit.text, "HOUR") || iequals(unit.text, "HOURS")) {
      scale = 60;
    } else {
      throw ParseError("unsupported INTERVAL unit '" + unit.text + "'", unit_pos);
    }
    head.kind = TokenKind::Interval;
    head.interval = Duration::minutes(amount * scale);
    head.text = "INTERVAL '" + literal.text + "' " + to_upper(unit.text);
  }

  std::string_view text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Integer: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::Interval: return "interval";
    case TokenKind::TimestampLiteral: return "timestamp";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Arrow: return "'=>'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Eq: return "'='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

bool is_reserved(std::string_view word) {
  for (const char* kw : kReserved) {
    if (iequals(word, kw)) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace tvr::sql
