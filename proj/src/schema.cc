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
#include "tvr/schema.h"

#include <algorithm>
#include <set>

#include "tvr/error.h"
#include "tvr/strings.h"

namespace tvr {

std::string to_string(const WatermarkRef& ref) { return ref.source + "." + ref.column; }

std::optional<size_t> Schema::find(std::string_view name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (iequals(columns[i].name, name)) return i;
  }
  return std::nullopt;
}

void Schema::validate() const {
  std::set<std::string> seen;
  for (const auto& col : columns) {
    if (!seen.insert(to_lower(col.name)).second) {
      throw ValidationError("duplicate column '" + col.name + "'");
    }
    if (col.is_event_time && col.kind != ValueKind::Timestamp) {
      throw ValidationError("EVENTTIME requires TIMESTAMP (column '" + col.name + "')");
    }
  }
}

std::vector<size_t> Schema::event_time_columns() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].is_event_time) out.push_back(i);
  }
  return out;
}

std::vector<size_t> Schema::window_key_columns() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].is_event_time && columns[i].window_role != WindowRole::None) out.push_back(i);
  }
  return out.empty() ? event_time_columns() : out;
}

bool row_conforms(const Schema& schema, const Row& row) {
  if (row.size() != schema.arity()) return false;
  for (size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_null() && row[i].kind() != schema.columns[i].kind) return false;
  }
  return true;
}

std::vector<Row> Relation::sorted_rows() const {
  auto out = rows;
  std::sort(out.begin(), out.end());
  return out;
}

bool bag_equal(std::vector<Row> a, std::vector<Row> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool bag_contains(std::vector<Row> super, std::vector<Row> sub) {
  std::sort(super.begin(), super.end());
  std::sort(sub.begin(), sub.end());
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace tvr
