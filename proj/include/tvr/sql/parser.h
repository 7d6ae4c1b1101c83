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

#include <string>
#include <string_view>
#include <vector>

#include "tvr/sql/ast.h"
#include "tvr/sql/lexer.h"

namespace tvr::sql {

/// Recursive-descent parser for one query, optionally terminated by `;`.
/// Throws ParseError with the position of the offending token.
Query parse_query(const std::vector<Token>& tokens);

/// tokenize() followed by parse_query().
Query parse_query(std::string_view text);

/// Canonical single-line rendering; parse_query(print_query(q)) == q.
std::string print_query(const Query& q);
std::string print_expr(const Expr& e);

}  // namespace tvr::sql
