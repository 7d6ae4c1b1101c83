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
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvr/error.h"
#include "tvr/time.h"

namespace tvr::sql {

enum class TokenKind {
  Identifier,
  Keyword,
  Integer,
  String,
  Interval,   // INTERVAL '<n>' MINUTE[S] | HOUR[S]
  TimestampLiteral,  // TIMESTAMP 'H:MM'
  LParen,
  RParen,
  Comma,
  Semicolon,
  Arrow,
  Dot,
  Star,
  Eq,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  End,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // spelling as written; keywords upper-cased
  int64_t integer = 0;
  Duration interval;
  Timestamp timestamp;
  SourcePos pos;

  bool is_keyword(std::string_view kw) const { return kind == TokenKind::Keyword && text == kw; }
};

bool is_reserved(std::string_view word);

/// Splits SQL text into tokens, always terminated by an End token.
/// `--` starts a line comment. Throws ParseError on unterminated strings,
/// malformed INTERVAL/TIMESTAMP literals and unknown characters.
std::vector<Token> tokenize(std::string_view text);

}  // namespace tvr::sql
