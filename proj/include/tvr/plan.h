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
#include <set>
#include <string>
#include <vector>

#include "tvr/schema.h"
#include "tvr/sql/ast.h"
#include "tvr/windowing.h"

namespace tvr {

/// A typed, resolved scalar expression over the columns of one input row.
struct BoundExpr {
  enum class Kind { Column, Literal, Binary };
  Kind kind = Kind::Literal;
  size_t column = 0;
  Value literal;
  sql::BinaryOp op = sql::BinaryOp::Eq;
  std::vector<BoundExpr> operands;
  ValueKind type = ValueKind::Null;

  static BoundExpr column_ref(size_t index, ValueKind type);
  static BoundExpr constant(Value v);

  friend bool operator==(const BoundExpr&, const BoundExpr&) = default;
};

/// Evaluates with SQL three-valued logic: NULL operands yield NULL, except
/// that FALSE AND NULL is FALSE.
Value evaluate(const BoundExpr& expr, const Row& row);

/// Filter/join predicates keep a row only when they evaluate to TRUE.
bool is_true(const Value& v);

struct AggregateCall {
  sql::AggFunc func = sql::AggFunc::Max;
  std::optional<size_t> arg;  // nullopt for COUNT(*)
  friend bool operator==(const AggregateCall&, const AggregateCall&) = default;
};

/// A non-key output of an Aggregate: either an aggregate call or a column
/// functionally determined by a key (the other bound of the same window).
struct AggregateOutput {
  bool carried = false;
  size_t column = 0;  // carried: input column
  AggregateCall call;
  friend bool operator==(const AggregateOutput&, const AggregateOutput&) = default;
};

enum class PlanKind { Scan, WindowTvf, Filter, Project, Join, Aggregate };

struct PlanNode;
using PlanPtr = std::shared_ptr<const PlanNode>;

struct PlanNode {
  PlanKind kind = PlanKind::Scan;
  Schema schema;  // output schema, including event-time flags
  std::vector<PlanPtr> inputs;

  std::string source;              // Scan: lower-cased source name
  WindowSpec window;               // WindowTvf
  BoundExpr predicate;             // Filter, Join
  std::vector<BoundExpr> exprs;    // Project
  std::vector<size_t> group_keys;  // Aggregate: input columns, output first
  std::vector<AggregateOutput> aggregate_outputs;  // Aggregate: after keys
};

/// Lower-cased names of every source a plan scans.
std::set<std::string> referenced_sources(const PlanNode& plan);

/// Deterministic indented rendering of a plan tree.
std::string explain(const PlanNode& plan);

}  // namespace tvr
