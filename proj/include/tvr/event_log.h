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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tvr/changelog.h"
#include "tvr/schema.h"
#include "tvr/time.h"
#include "tvr/watermark.h"

namespace tvr {

struct InsertOp {
  Row row;
};
struct DeleteOp {
  Row row;
};
struct WatermarkOp {
  std::string column;  // lower-cased event-time column name
  Timestamp value;
};

struct LogEntry {
  Timestamp ptime;
  std::variant<InsertOp, DeleteOp, WatermarkOp> payload;
  int line = 0;  // 1-based source line, 0 when synthesized
};

/// A processing-time ordered record of changes to one source.
struct SourceLog {
  std::string name;
  Schema schema;
  std::vector<LogEntry> entries;
};

class Catalog {
 public:
  /// Throws ValidationError on a duplicate (case-insensitive) name.
  void add(SourceLog log);
  /// Replaces the entries of an already declared source.
  void set_entries(std::string_view name, std::vector<LogEntry> entries);

  const SourceLog* find(std::string_view name) const;
  const SourceLog& get(std::string_view name) const;
  const std::map<std::string, SourceLog>& sources() const { return sources_; }
  bool empty() const { return sources_.empty(); }

  /// Latest ptime across all logs, BOTTOM when every log is empty.
  Timestamp max_ptime() const;

 private:
  std::map<std::string, SourceLog> sources_;  // keyed by lower-cased name
};

/// Parses `CREATE STREAM|TABLE name (col TYPE [EVENTTIME] [FORMAT '$'], ...);`
/// statements into sources with empty logs.
Catalog parse_schema_ddl(std::string_view text);

/// Parses a log in the `<H:MM> INSERT (...)` / `<H:MM> WM [col] -> <H:MM>`
/// line format. Ordering and watermark monotonicity are verified, never
/// repaired. Throws ParseError naming the offending line.
SourceLog parse_log(std::string_view text, const std::string& name, const Schema& schema);

/// Parses one positional value for `col`.
Value parse_log_value(std::string_view token, const ColumnDef& col);

/// Renders a value so that parse_log_value() reads it back.
std::string format_log_value(const Value& value, const ColumnDef& col);

/// A row together with the processing time it became visible.
struct TimedRow {
  Row row;
  Timestamp arrival;
  friend bool operator==(const TimedRow&, const TimedRow&) = default;
};

/// Rows inserted at or before `ptime` minus matching deletes. A delete
/// retracts the earliest surviving occurrence.
std::vector<TimedRow> timed_snapshot(const SourceLog& log, Timestamp ptime);

Relation snapshot(const SourceLog& log, Timestamp ptime);

/// Every watermark advance of the log, keyed by (log name, column). All
/// event-time columns are declared even when they never advance.
WatermarkState watermark_state(const SourceLog& log);

/// One `<ptime> INSERT|DELETE (...)` line per change.
std::string serialize_changelog(std::span<const ChangelogRow> rows, const Schema& schema);

}  // namespace tvr
