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
#include "tvr/cli/session.h"

#include <fstream>
#include <sstream>

#include "tvr/cli/format.h"
#include "tvr/error.h"
#include "tvr/sql/parser.h"
#include "tvr/strings.h"

namespace tvr::cli {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

Timestamp time_arg(const std::string& text) {
  auto t = parse_time(text);
  if (!t) throw Error("malformed time '" + text + "', expected H:MM");
  return *t;
}

std::string with_prefix(std::string_view file, const Error& e) {
  return std::string(file) + ": " + e.diagnostic().substr(7);
}

}  // namespace

void load_catalog(Session& session, const std::filesystem::path& schema_file,
                  const std::vector<std::pair<std::string, std::filesystem::path>>& logs) {
  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_absolute() ? p : session.base_dir / p;
  };
  Catalog catalog;
  try {
    catalog = parse_schema_ddl(read_file(resolve(schema_file)));
  } catch (const ParseError& e) {
    throw Error(with_prefix(schema_file.filename().string(), e));
  }
  for (const auto& [name, path] : logs) {
    const SourceLog* source = catalog.find(name);
    if (!source) throw Error("unknown source '" + name + "'");
    try {
      auto log = parse_log(read_file(resolve(path)), source->name, source->schema);
      catalog.set_entries(name, std::move(log.entries));
    } catch (const ParseError& e) {
      throw Error(with_prefix(path.filename().string(), e));
    }
  }
  session.catalog = std::move(catalog);
  session.cursor = session.catalog.max_ptime();
  session.last_stream.reset();
  session.last_changelog.clear();
}

std::string prompt(const Session& session) {
  return session.cursor.is_bottom() ? "> " : format_time(session.cursor) + "> ";
}

namespace {

CommandResult dot_command(Session& session, std::string_view line) {
  auto args = words(line);
  const std::string cmd = to_lower(args[0]);
  CommandResult res;
  if (cmd == ".quit" || cmd == ".exit") {
    res.quit = true;
    return res;
  }
  if (cmd == ".at") {
    if (args.size() != 2) throw Error("usage: .at H:MM");
    session.cursor = time_arg(args[1]);
    return res;
  }
  if (cmd == ".load") {
    if (args.size() < 2) throw Error("usage: .load <schema.sql> <name>=<file.log> ...");
    std::vector<std::pair<std::string, std::filesystem::path>> logs;
    for (size_t i = 2; i < args.size(); ++i) {
      auto eq = args[i].find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == args[i].size()) {
        throw Error("expected <name>=<file.log>, got '" + args[i] + "'");
      }
      logs.emplace_back(args[i].substr(0, eq), args[i].substr(eq + 1));
    }
    load_catalog(session, args[1], logs);
    std::ostringstream out;
    out << "loaded " << session.catalog.sources().size() << " source(s)";
    size_t entries = 0;
    for (const auto& [_, log] : session.catalog.sources()) entries += log.entries.size();
    out << ", " << entries << " log entries\n";
    res.out = out.str();
    return res;
  }
  if (cmd == ".tail") {
    if (args.size() != 3) throw Error("usage: .tail <from H:MM> <to H:MM>");
    if (!session.last_stream) throw Error("no STREAM query prepared");
    Timestamp from = time_arg(args[1]);
    Timestamp to = time_arg(args[2]);
    if (to < from) throw Error(".tail range ends before it starts");
    const auto& q = *session.last_stream;
    auto ctx = EvalContext::at(session.catalog, session.cursor);
    auto rows = eval_stream(*q.plan, q.emit, ctx, from, to, session.policy);
    res.out = format_changelog(rows, q.plan->schema);
    session.last_changelog = std::move(rows);
    session.last_changelog_schema = q.plan->schema;
    return res;
  }
  if (cmd == ".capture") {
    if (args.size() != 2) throw Error("usage: .capture <file>");
    std::filesystem::path path = args[1];
    if (!path.is_absolute()) path = session.base_dir / path;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + args[1] + "'");
    out << serialize_changelog(session.last_changelog, session.last_changelog_schema);
    res.out = "captured " + std::to_string(session.last_changelog.size()) + " changelog row(s)\n";
    return res;
  }
  throw Error("unknown command '" + args[0] + "'");
}

CommandResult sql_command(Session& session, std::string_view text) {
  auto query = sql::parse_query(text);
  auto validated = sql::validate(query, session.catalog);
  auto ctx = EvalContext::at(session.catalog, session.cursor);
  CommandResult res;
  if (validated.emit.stream) {
    auto rows = eval_stream(*validated.plan, validated.emit, ctx, Timestamp::bottom(), session.cursor,
                            session.policy);
    res.out = format_changelog(rows, validated.plan->schema, /*open_ended=*/true);
    session.last_changelog = std::move(rows);
    session.last_changelog_schema = validated.plan->schema;
    session.last_stream = std::move(validated);
  } else {
    res.out = format_table(eval_table(*validated.plan, validated.emit, ctx, session.policy));
  }
  return res;
}

}  // namespace

CommandResult run_command(Session& session, std::string_view line) {
  auto text = trim(line);
  CommandResult res;
  if (text.empty()) return res;
  // Commands mutate a copy that replaces the session only on success.
  Session scratch = session;
  try {
    res = text.front() == '.' ? dot_command(scratch, text) : sql_command(scratch, text);
  } catch (const Error& e) {
    res.err = e.diagnostic() + "\n";
    return res;
  } catch (const std::exception& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }
  session = std::move(scratch);
  return res;
}

std::vector<std::string> split_commands(std::string_view script) {
  std::vector<std::string> out;
  std::string pending;
  std::istringstream in{std::string(script)};
  std::string raw;
  while (std::getline(in, raw)) {
    auto line = trim(raw);
    if (pending.empty()) {
      if (line.empty() || line.starts_with("--")) continue;
      if (line.front() == '.') {
        out.emplace_back(line);
        continue;
      }
    }
    if (!pending.empty()) pending += '\n';
    pending += std::string(raw.substr(0, raw.find_last_not_of(" \t\r") + 1));
    if (!line.empty() && line.back() == ';') {
      out.push_back(std::move(pending));
      pending.clear();
    }
  }
  if (!trim(pending).empty()) out.push_back(std::move(pending));
  return out;
}

std::string run_transcript(Session& session, std::string_view script) {
  std::ostringstream out;
  for (const auto& cmd : split_commands(script)) {
    std::string p = prompt(session);
    std::istringstream lines(cmd);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
      out << (first ? p : std::string(p.size(), ' ')) << line << '\n';
      first = false;
    }
    auto res = run_command(session, cmd);
    out << res.out << res.err;
    if (res.quit) break;
  }
  return out.str();
}

ScriptReport run_script(const std::filesystem::path& script_file,
                        const std::filesystem::path& expected_file, Session session) {
  ScriptReport report;
  std::string script;
  std::string expected;
  try {
    script = read_file(script_file);
    expected = read_file(expected_file);
  } catch (const Error& e) {
    report.status = 2;
    report.message = e.what();
    return report;
  }
  session.base_dir = script_file.parent_path().empty() ? "." : script_file.parent_path();
  report.actual = run_transcript(session, script);
  if (report.actual == expected) {
    report.message = "transcript matches " + expected_file.filename().string();
    return report;
  }
  report.status = 1;
  std::istringstream a(report.actual), e(expected);
  std::string la, le;
  int line = 1;
  while (true) {
    bool ha = static_cast<bool>(std::getline(a, la));
    bool he = static_cast<bool>(std::getline(e, le));
    if (!ha && !he) break;
    if (!ha || !he || la != le) {
      report.message = "first divergence at line " + std::to_string(line) + "\n  expected: " +
                       (he ? le : "<end of file>") + "\n  actual:   " + (ha ? la : "<end of file>");
      return report;
    }
    ++line;
  }
  report.message = "transcripts differ in trailing bytes";
  return report;
}

}  // namespace tvr::cli
