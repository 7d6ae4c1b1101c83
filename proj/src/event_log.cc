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
#include "tvr/event_log.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "tvr/error.h"
#include "tvr/sql/lexer.h"
#include "tvr/strings.h"

namespace tvr {

void Catalog::add(SourceLog log) {
  auto key = to_lower(log.name);
  if (sources_.contains(key)) throw ValidationError("duplicate source '" + log.name + "'");
  sources_.emplace(std::move(key), std::move(log));
}

void Catalog::set_entries(std::string_view name, std::vector<LogEntry> entries) {
  auto it = sources_.find(to_lower(name));
  if (it == sources_.end()) throw ValidationError("unknown source '" + std::string(name) + "'");
  it->second.entries = std::move(entries);
}

const SourceLog* Catalog::find(std::string_view name) const {
  auto it = sources_.find(to_lower(name));
  return it == sources_.end() ? nullptr : &it->second;
}

const SourceLog& Catalog::get(std::string_view name) const {
  if (const auto* log = find(name)) return *log;
  throw ValidationError("unknown table '" + std::string(name) + "'");
}

Timestamp Catalog::max_ptime() const {
  Timestamp out = Timestamp::bottom();
  for (const auto& [_, log] : sources_) {
    if (!log.entries.empty()) out = std::max(out, log.entries.back().ptime);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DDL

namespace {

using sql::Token;
using sql::TokenKind;

class DdlParser {
 public:
  explicit DdlParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Catalog run() {
    Catalog catalog;
    while (cur().kind != TokenKind::End) {
      if (cur().kind == TokenKind::Semicolon) {
        ++i_;
        continue;
      }
      SourcePos stmt_pos = cur().pos;
      SourceLog log = statement();
      try {
        catalog.add(std::move(log));
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), stmt_pos);
      }
    }
    return catalog;
  }

 private:
  const Token& cur() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur().pos); }

  bool word(std::string_view w) const {
    return (cur().kind == TokenKind::Identifier || cur().kind == TokenKind::Keyword) &&
           iequals(cur().text, w);
  }

  void expect_word(std::string_view w) {
    if (!word(w)) fail("expected " + std::string(w));
    ++i_;
  }

  void expect(TokenKind kind) {
    if (cur().kind != kind) {
      fail("expected " + std::string(sql::token_kind_name(kind)) + " but found " +
           std::string(sql::token_kind_name(cur().kind)));
    }
    ++i_;
  }

  std::string identifier() {
    if (cur().kind != TokenKind::Identifier) fail("expected identifier");
    return toks_[i_++].text;
  }

  SourceLog statement() {
    expect_word("CREATE");
    bool bounded;
    if (word("STREAM")) {
      bounded = false;
    } else if (word("TABLE")) {
      bounded = true;
    } else {
      fail("expected STREAM or TABLE");
    }
    ++i_;
    SourceLog log;
    log.name = identifier();
    log.schema.bounded = bounded;
    expect(TokenKind::LParen);
    while (true) {
      log.schema.columns.push_back(column(log.name, log.schema));
      if (cur().kind == TokenKind::Comma) {
        ++i_;
        continue;
      }
      break;
    }
    expect(TokenKind::RParen);
    if (cur().kind != TokenKind::End) expect(TokenKind::Semicolon);
    return log;
  }

  ColumnDef column(const std::string& source, const Schema& so_far) {
    SourcePos pos = cur().pos;
    ColumnDef col;
    col.name = identifier();
    if (so_far.find(col.name)) throw ParseError("duplicate column '" + col.name + "'", pos);
    if (cur().kind != TokenKind::Identifier) fail("expected column type");
    std::string type = to_upper(toks_[i_++].text);
    if (type == "TIMESTAMP") {
      col.kind = ValueKind::Timestamp;
    } else if (type == "INT" || type == "INTEGER" || type == "BIGINT") {
      col.kind = ValueKind::Integer;
    } else if (type == "STRING" || type == "VARCHAR" || type == "TEXT") {
      col.kind = ValueKind::Text;
    } else if (type == "BOOLEAN" || type == "BOOL") {
      col.kind = ValueKind::Boolean;
    } else if (type == "INTERVAL") {
      col.kind = ValueKind::Duration;
    } else {
      throw ParseError("unknown column type '" + type + "'", toks_[i_ - 1].pos);
    }
    while (true) {
      if (word("EVENTTIME")) {
        if (col.kind != ValueKind::Timestamp) fail("EVENTTIME requires TIMESTAMP");
        ++i_;
        col.is_event_time = true;
        col.watermark = WatermarkRef{to_lower(source), to_lower(col.name)};
      } else if (word("FORMAT")) {
        ++i_;
        if (cur().kind != TokenKind::String || cur().text != "$") fail("only FORMAT '$' is supported");
        if (col.kind != ValueKind::Integer) fail("FORMAT '$' requires INT");
        ++i_;
        col.format = ColumnFormat::Dollar;
      } else {
        break;
      }
    }
    return col;
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

Catalog parse_schema_ddl(std::string_view text) { return DdlParser(sql::tokenize(text)).run(); }

// ---------------------------------------------------------------------------
// Values

namespace {

std::optional<int64_t> parse_int(std::string_view s) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  if (iequals(s, "NULL") || s.front() == '\'' || s.front() == '$') return true;
  if (parse_time(s) || parse_int(s)) return true;
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) || c == ',' || c == '(' || c == ')' || c == '#';
  });
}

}  // namespace

Value parse_log_value(std::string_view token, const ColumnDef& col) {
  token = trim(token);
  if (iequals(token, "NULL")) {
    if (col.is_event_time) throw Error("NULL in event-time column '" + col.name + "'");
    return Value::null();
  }
  auto bad = [&]() -> Error {
    return Error("cannot parse '" + std::string(token) + "' as " +
                 std::string(kind_name(col.kind)) + " for column '" + col.name + "'");
  };
  switch (col.kind) {
    case ValueKind::Integer: {
      auto digits = token;
      if (!digits.empty() && digits.front() == '$') digits.remove_prefix(1);
      auto v = parse_int(digits);
      if (!v) throw bad();
      return Value::integer(*v);
    }
    case ValueKind::Timestamp: {
      auto t = parse_time(token);
      if (!t) throw bad();
      return Value::timestamp(*t);
    }
    case ValueKind::Duration: {
      auto v = parse_int(token);
      if (!v || *v < 0) throw bad();
      return Value::duration(Duration::minutes(*v));
    }
    case ValueKind::Boolean:
      if (iequals(token, "TRUE")) return Value::boolean(true);
      if (iequals(token, "FALSE")) return Value::boolean(false);
      throw bad();
    case ValueKind::Text: {
      if (token.size() >= 2 && token.front() == '\'' && token.back() == '\'') {
        std::string out;
        auto body = token.substr(1, token.size() - 2);
        for (size_t i = 0; i < body.size(); ++i) {
          out += body[i];
          if (body[i] == '\'' && i + 1 < body.size() && body[i + 1] == '\'') ++i;
        }
        return Value::text(out);
      }
      if (token.empty()) throw bad();
      return Value::text(std::string(token));
    }
    case ValueKind::Null: break;
  }
  throw bad();
}

std::string format_log_value(const Value& value, const ColumnDef& col) {
  switch (value.kind()) {
    case ValueKind::Null: return "NULL";
    case ValueKind::Integer:
      return (col.format == ColumnFormat::Dollar ? "$" : "") + std::to_string(value.as_integer());
    case ValueKind::Timestamp: return format_time(value.as_timestamp());
    case ValueKind::Duration: return std::to_string(value.as_duration().count());
    case ValueKind::Boolean: return value.as_boolean() ? "TRUE" : "FALSE";
    case ValueKind::Text: {
      const auto& s = value.as_text();
      if (!needs_quotes(s)) return s;
      std::string out = "'";
      for (char c : s) {
        out += c;
        if (c == '\'') out += '\'';
      }
      return out + "'";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Logs

namespace {

// Splits "(a, 'b, c', d)" contents on top-level commas.
std::vector<std::string_view> split_values(std::string_view body) {
  std::vector<std::string_view> out;
  size_t start = 0;
  bool quoted = false;
  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '\'') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(trim(body.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (quoted) throw Error("unterminated quoted value");
  out.push_back(trim(body.substr(start)));
  return out;
}

Row parse_tuple(std::string_view rest, const Schema& schema) {
  rest = trim(rest);
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
    throw Error("expected parenthesized tuple");
  }
  auto body = trim(rest.substr(1, rest.size() - 2));
  std::vector<std::string_view> parts;
  if (!body.empty()) parts = split_values(body);
  if (parts.size() != schema.arity()) {
    throw Error("arity mismatch: expected " + std::to_string(schema.arity()) + " values, got " +
                std::to_string(parts.size()));
  }
  Row row;
  row.reserve(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) row.push_back(parse_log_value(parts[i], schema.columns[i]));
  return row;
}

std::string_view take_word(std::string_view& s) {
  s = trim(s);
  size_t end = 0;
  while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
  auto w = s.substr(0, end);
  s.remove_prefix(end);
  return w;
}

}  // namespace

SourceLog parse_log(std::string_view text, const std::string& name, const Schema& schema) {
  SourceLog log{name, schema, {}};
  std::map<std::string, WatermarkEntry> last_wm;
  auto event_cols = schema.event_time_columns();
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError(msg, SourcePos{line_no, 1});
    };
    try {
      auto rest = line;
      auto time_word = take_word(rest);
      auto ptime = parse_time(time_word);
      if (!ptime) throw fail("malformed processing time '" + std::string(time_word) + "'");
      if (!log.entries.empty() && *ptime < log.entries.back().ptime) {
        throw fail("out-of-order processing time " + format_time(*ptime));
      }
      auto op = take_word(rest);
      LogEntry entry;
      entry.ptime = *ptime;
      entry.line = line_no;
      if (iequals(op, "INSERT")) {
        entry.payload = InsertOp{parse_tuple(rest, schema)};
      } else if (iequals(op, "DELETE")) {
        entry.payload = DeleteOp{parse_tuple(rest, schema)};
      } else if (iequals(op, "WM")) {
        auto next = take_word(rest);
        std::string column;
        if (next != "->") {
          column = to_lower(next);
          auto idx = schema.find(column);
          if (!idx || !schema.columns[*idx].is_event_time) {
            throw fail("WM names '" + std::string(next) + "', which is not an event-time column");
          }
          next = take_word(rest);
        } else {
          if (event_cols.size() != 1) {
            throw fail("WM without a column requires exactly one event-time column");
          }
          column = to_lower(schema.columns[event_cols.front()].name);
        }
        if (next != "->") throw fail("expected '->' in WM line");
        auto value_word = take_word(rest);
        auto value = parse_time(value_word);
        if (!value || !trim(rest).empty()) throw fail("malformed watermark value");
        auto [it, fresh] = last_wm.try_emplace(column, WatermarkEntry{*ptime, *value});
        if (!fresh) {
          if (*value <= it->second.value) {
            throw fail("non-monotone watermark " + format_time(*value) + " after " +
                       format_time(it->second.value));
          }
          if (*ptime <= it->second.ptime) {
            throw fail("two watermark advances for '" + column + "' at " + format_time(*ptime));
          }
          it->second = {*ptime, *value};
        }
        entry.payload = WatermarkOp{column, *value};
      } else {
        throw fail("expected INSERT, DELETE or WM");
      }
      log.entries.push_back(std::move(entry));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  return log;
}

std::vector<TimedRow> timed_snapshot(const SourceLog& log, Timestamp ptime) {
  std::vector<TimedRow> rows;
  for (const auto& entry : log.entries) {
    if (entry.ptime > ptime) break;
    if (const auto* ins = std::get_if<InsertOp>(&entry.payload)) {
      rows.push_back({ins->row, entry.ptime});
    } else if (const auto* del = std::get_if<DeleteOp>(&entry.payload)) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const TimedRow& r) { return r.row == del->row; });
      if (it == rows.end()) {
        throw RetractionUnderflow("DELETE on line " + std::to_string(entry.line) +
                                  " has no matching row in " + log.name);
      }
      rows.erase(it);
    }
  }
  return rows;
}

Relation snapshot(const SourceLog& log, Timestamp ptime) {
  Relation rel{log.schema, {}};
  for (auto& r : timed_snapshot(log, ptime)) rel.rows.push_back(std::move(r.row));
  return rel;
}

WatermarkState watermark_state(const SourceLog& log) {
  WatermarkState state;
  auto source = to_lower(log.name);
  for (size_t i : log.schema.event_time_columns()) {
    state.declare({source, to_lower(log.schema.columns[i].name)});
  }
  for (const auto& entry : log.entries) {
    if (const auto* wm = std::get_if<WatermarkOp>(&entry.payload)) {
      state.advance({source, wm->column}, entry.ptime, wm->value);
    }
  }
  return state;
}

std::string serialize_changelog(std::span<const ChangelogRow> rows, const Schema& schema) {
  std::ostringstream out;
  for (const auto& change : rows) {
    out << format_time(change.ptime) << (change.undo ? " DELETE (" : " INSERT (");
    for (size_t i = 0; i < change.row.size(); ++i) {
      if (i) out << ", ";
      out << format_log_value(change.row[i], schema.columns[i]);
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace tvr
