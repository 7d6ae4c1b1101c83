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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvr/value.h"

namespace tvr {

/// Display hint for a column; `Dollar` renders integers as `$N`.
enum class ColumnFormat : uint8_t { Plain, Dollar };

/// Whether a column is the start or end bound of a window TVF's interval.
enum class WindowRole : uint8_t { None, Start, End };

/// Identifies the source watermark an event-time column is aligned with.
struct WatermarkRef {
  std::string source;  // lower-cased
  std::string column;  // lower-cased
  friend auto operator<=>(const WatermarkRef&, const WatermarkRef&) = default;
};

std::string to_string(const WatermarkRef& ref);

struct ColumnDef {
  std::string name;  // display spelling
  ValueKind kind = ValueKind::Null;
  bool is_event_time = false;
  ColumnFormat format = ColumnFormat::Plain;
  // Set on every event-time column; the watermark that bounds its values.
  std::optional<WatermarkRef> watermark;
  WindowRole window_role = WindowRole::None;
  // Distinguishes interval columns produced by different TVF calls.
  int window_id = -1;

  friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

struct Schema {
  std::vector<ColumnDef> columns;
  bool bounded = false;

  size_t arity() const { return columns.size(); }

  /// Case-insensitive lookup of the first column named `name`.
  std::optional<size_t> find(std::string_view name) const;

  /// Checks the source-schema invariants: unique names and event-time
  /// columns of kind TIMESTAMP. Throws ValidationError.
  void validate() const;

  std::vector<size_t> event_time_columns() const;

  /// Columns identifying "the same event-time window" for versioning:
  /// event-time window bounds when present, otherwise every event-time
  /// column. Empty means a single global key.
  std::vector<size_t> window_key_columns() const;

  friend bool operator==(const Schema&, const Schema&) = default;
};

using Row = std::vector<Value>;

/// Arity matches and every value has its column's kind or is NULL.
bool row_conforms(const Schema& schema, const Row& row);

/// A single instant of a time-varying relation. Rows form a bag.
struct Relation {
  Schema schema;
  std::vector<Row> rows;

  /// Rows in the engine's total value order.
  std::vector<Row> sorted_rows() const;
};

/// Multiset equality.
bool bag_equal(std::vector<Row> a, std::vector<Row> b);

/// True when every row of `sub` occurs in `super` at least as often.
bool bag_contains(std::vector<Row> super, std::vector<Row> sub);

}  // namespace tvr
