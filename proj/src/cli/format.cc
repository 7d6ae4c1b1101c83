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
#include "tvr/cli/format.h"

#include <algorithm>
#include <sstream>

namespace tvr::cli {

std::string display_value(const Value& value, const ColumnDef& col) {
  switch (value.kind()) {
    case ValueKind::Null: return "";
    case ValueKind::Integer:
      return (col.format == ColumnFormat::Dollar ? "$" : "") + std::to_string(value.as_integer());
    case ValueKind::Text: return value.as_text();
    case ValueKind::Timestamp: return format_time(value.as_timestamp());
    case ValueKind::Duration: return "INTERVAL '" + std::to_string(value.as_duration().count()) + "' MINUTE";
    case ValueKind::Boolean: return value.as_boolean() ? "TRUE" : "FALSE";
  }
  return "";
}

namespace {

using Grid = std::vector<std::vector<std::string>>;

std::string render(const std::vector<std::string>& header, const Grid& cells, bool open_ended) {
  std::vector<size_t> widths;
  for (const auto& h : header) widths.push_back(h.size());
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  size_t total = 1;
  for (size_t w : widths) total += w + 3;
  std::string border(total, '-');
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    out << '|';
    for (size_t i = 0; i < row.size(); ++i) {
      out << ' ' << row[i] << std::string(widths[i] - row[i].size(), ' ') << " |";
    }
    out << '\n';
  };
  out << border << '\n';
  line(header);
  out << border << '\n';
  for (const auto& row : cells) line(row);
  out << (open_ended ? std::string("...") : border) << '\n';
  return out.str();
}

std::vector<std::string> header_of(const Schema& schema) {
  std::vector<std::string> out;
  for (const auto& c : schema.columns) out.push_back(c.name);
  return out;
}

std::vector<std::string> cells_of(const Schema& schema, const Row& row) {
  std::vector<std::string> out;
  for (size_t i = 0; i < row.size(); ++i) out.push_back(display_value(row[i], schema.columns[i]));
  return out;
}

}  // namespace

std::string format_table(const Relation& relation) {
  Grid cells;
  for (const auto& row : relation.sorted_rows()) cells.push_back(cells_of(relation.schema, row));
  return render(header_of(relation.schema), cells, false);
}

std::string format_changelog(std::span<const ChangelogRow> rows, const Schema& schema,
                             bool open_ended) {
  auto header = header_of(schema);
  header.insert(header.end(), {"undo", "ptime", "ver"});
  Grid cells;
  for (const auto& change : rows) {
    auto row = cells_of(schema, change.row);
    row.push_back(change.undo ? "undo" : "");
    row.push_back(format_time(change.ptime));
    row.push_back(std::to_string(change.ver));
    cells.push_back(std::move(row));
  }
  return render(header, cells, open_ended);
}

}  // namespace tvr::cli
