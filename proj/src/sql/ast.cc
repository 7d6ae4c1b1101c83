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
#include "tvr/sql/ast.h"

namespace tvr::sql {

std::string_view op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: return "=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::And: return "AND";
  }
  return "?";
}

std::string_view agg_name(AggFunc f) {
  switch (f) {
    case AggFunc::Max: return "MAX";
    case AggFunc::Min: return "MIN";
    case AggFunc::Sum: return "SUM";
    case AggFunc::Count: return "COUNT";
  }
  return "?";
}

Expr Expr::column(std::string qualifier, std::string name, SourcePos pos) {
  Expr e;
  e.kind = Kind::Column;
  e.qualifier = std::move(qualifier);
  e.name = std::move(name);
  e.pos = pos;
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs, SourcePos pos) {
  Expr e;
  e.kind = Kind::Binary;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.pos = pos;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Column: return a.qualifier == b.qualifier && a.name == b.name;
    case Expr::Kind::Integer: return a.integer == b.integer;
    case Expr::Kind::String: return a.name == b.name;
    case Expr::Kind::Interval: return a.interval == b.interval;
    case Expr::Kind::Timestamp: return a.timestamp == b.timestamp;
    case Expr::Kind::Boolean: return a.boolean == b.boolean;
    case Expr::Kind::Null: return true;
    case Expr::Kind::Binary: return a.op == b.op && a.args == b.args;
    case Expr::Kind::Aggregate: return a.agg == b.agg && a.star == b.star && a.args == b.args;
  }
  return false;
}

bool operator==(const FromItem& a, const FromItem& b) {
  if (a.kind != b.kind || a.name != b.name || a.alias != b.alias || a.args != b.args) return false;
  if (!a.subquery || !b.subquery) return a.subquery == b.subquery;
  return *a.subquery == *b.subquery;
}

}  // namespace tvr::sql
