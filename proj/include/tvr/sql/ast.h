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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tvr/error.h"
#include "tvr/time.h"

namespace tvr::sql {

enum class BinaryOp { Eq, Lt, Le, Gt, Ge, Add, Sub, And };
enum class AggFunc { Max, Min, Sum, Count };

std::string_view op_text(BinaryOp op);
std::string_view agg_name(AggFunc f);

struct Expr {
  enum class Kind { Column, Integer, String, Interval, Timestamp, Boolean, Null, Binary, Aggregate };

  Kind kind = Kind::Null;
  std::string qualifier;  // Column: optional table alias
  std::string name;       // Column: column name; String: text
  int64_t integer = 0;
  Duration interval;
  Timestamp timestamp;
  bool boolean = false;
  BinaryOp op = BinaryOp::Eq;
  AggFunc agg = AggFunc::Max;
  bool star = false;  // COUNT(*)
  std::vector<Expr> args;
  SourcePos pos;

  static Expr column(std::string qualifier, std::string name, SourcePos pos = {});
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs, SourcePos pos = {});

  // Structural equality; positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct EmitSpec {
  bool stream = false;
  bool after_watermark = false;
  std::optional<Duration> delay;
  friend bool operator==(const EmitSpec&, const EmitSpec&) = default;
};

struct Query;

struct TvfArg {
  enum class Kind { Table, Descriptor, Expr };
  std::string name;  // empty for positional arguments
  Kind kind = Kind::Expr;
  std::string ident;  // Table: source name; Descriptor: column name
  Expr expr;
  SourcePos pos;
  friend bool operator==(const TvfArg& a, const TvfArg& b) {
    return a.name == b.name && a.kind == b.kind && a.ident == b.ident && a.expr == b.expr;
  }
};

struct FromItem {
  enum class Kind { Table, Subquery, Tvf };
  Kind kind = Kind::Table;
  std::string name;  // Table: source; Tvf: function name
  std::string alias;
  std::shared_ptr<const Query> subquery;
  std::vector<TvfArg> args;
  SourcePos pos;
  friend bool operator==(const FromItem& a, const FromItem& b);
};

struct SelectItem {
  bool star = false;      // `*` or `q.*`
  std::string qualifier;  // for `q.*`
  Expr expr;
  std::string alias;
  SourcePos pos;
  friend bool operator==(const SelectItem& a, const SelectItem& b) {
    return a.star == b.star && a.qualifier == b.qualifier && a.expr == b.expr && a.alias == b.alias;
  }
};

struct Query {
  std::vector<SelectItem> select;
  std::vector<FromItem> from;
  std::optional<Expr> where;
  std::vector<Expr> group_by;
  std::optional<EmitSpec> emit;  // top level only
  SourcePos pos;
  friend bool operator==(const Query& a, const Query& b) {
    return a.select == b.select && a.from == b.from && a.where == b.where &&
           a.group_by == b.group_by && a.emit == b.emit;
  }
};

}  // namespace tvr::sql
