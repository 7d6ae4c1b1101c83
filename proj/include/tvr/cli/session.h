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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvr/changelog.h"
#include "tvr/event_log.h"
#include "tvr/executor.h"
#include "tvr/sql/validator.h"

namespace tvr::cli {

struct Session {
  Catalog catalog;
  Timestamp cursor = Timestamp::bottom();
  std::filesystem::path base_dir = ".";  // relative paths resolve here
  ExecutionPolicy policy = ExecutionPolicy::Parallel;

  std::optional<sql::ValidatedQuery> last_stream;  // most recent EMIT STREAM query
  std::vector<ChangelogRow> last_changelog;
  Schema last_changelog_schema;
};

struct CommandResult {
  std::string out;
  std::string err;  // single-line diagnostics
  bool quit = false;
};

/// Loads a DDL file plus `name=path` logs into a fresh catalog and moves
/// the cursor to the end of the loaded logs. Throws on any failure and
/// leaves the session untouched.
void load_catalog(Session& session, const std::filesystem::path& schema_file,
                  const std::vector<std::pair<std::string, std::filesystem::path>>& logs);

/// Executes one dot-command or one complete SQL statement. A failed
/// command leaves the session unchanged.
CommandResult run_command(Session& session, std::string_view line);

/// `8:21> `, or `> ` before anything is loaded.
std::string prompt(const Session& session);

/// Splits a script into commands: dot-commands take one line, SQL runs
/// until a line ending in `;`. Blank lines and `--` comment lines between
/// commands are skipped.
std::vector<std::string> split_commands(std::string_view script);

/// Runs every command of `script` and returns the transcript: each
/// command echoed after the prompt, followed by its output and diagnostics.
std::string run_transcript(Session& session, std::string_view script);

struct ScriptReport {
  int status = 0;  // 0 match, 1 mismatch, 2 missing files
  std::string message;
  std::string actual;
};

/// Runs `script_file` (relative paths resolve next to it) and compares
/// the transcript byte-for-byte with `expected_file`.
ScriptReport run_script(const std::filesystem::path& script_file,
                        const std::filesystem::path& expected_file, Session session = {});

}  // namespace tvr::cli
