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
// tvr: interactive shell and golden-transcript runner.

#include <unistd.h>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tvr/cli/session.h"
#include "tvr/error.h"
#include "tvr/strings.h"

namespace {

int repl(tvr::cli::Session& session) {
  const bool interactive = isatty(STDIN_FILENO) != 0;
  std::string pending;
  std::string line;
  while (true) {
    if (interactive) {
      std::cout << (pending.empty() ? tvr::cli::prompt(session) : std::string("...> ")) << std::flush;
    }
    if (!std::getline(std::cin, line)) break;
    auto trimmed = tvr::trim(line);
    if (pending.empty()) {
      if (trimmed.empty() || trimmed.starts_with("--")) continue;
      if (trimmed.front() != '.') {
        pending = line;
      } else {
        auto res = tvr::cli::run_command(session, trimmed);
        std::cout << res.out;
        std::cerr << res.err;
        if (res.quit) return 0;
        continue;
      }
    } else {
      pending += '\n' + line;
    }
    if (!trimmed.empty() && trimmed.back() == ';') {
      auto res = tvr::cli::run_command(session, pending);
      pending.clear();
      std::cout << res.out;
      std::cerr << res.err;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming SQL over time-varying relations"};
  std::string schema;
  std::vector<std::string> logs;
  std::string script;
  std::string expect;
  std::string at;
  bool serial = false;
  app.add_option("--schema", schema, "schema DDL file (CREATE STREAM|TABLE ...)");
  app.add_option("--log", logs, "NAME=FILE event log for a declared source");
  app.add_option("--script", script, "run a command script instead of the interactive shell");
  app.add_option("--expect", expect, "golden transcript to compare the script output against")
      ->needs("--script");
  app.add_option("--at", at, "initial processing-time cursor (H:MM)");
  app.add_flag("--serial", serial, "use the serial reference evaluator");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  tvr::cli::Session session;
  session.policy = serial ? tvr::ExecutionPolicy::Serial : tvr::ExecutionPolicy::Parallel;
  try {
    if (!schema.empty()) {
      std::vector<std::pair<std::string, std::filesystem::path>> named;
      for (const auto& spec : logs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw tvr::Error("--log expects NAME=FILE");
        named.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
      }
      tvr::cli::load_catalog(session, schema, named);
    } else if (!logs.empty()) {
      throw tvr::Error("--log requires --schema");
    }
    if (!at.empty()) {
      auto t = tvr::parse_time(at);
      if (!t) throw tvr::Error("malformed --at time '" + at + "'");
      session.cursor = *t;
    }
  } catch (const tvr::Error& e) {
    std::cerr << e.diagnostic() << '\n';
    return 2;
  }

  if (!script.empty() && !expect.empty()) {
    auto report = tvr::cli::run_script(script, expect, std::move(session));
    (report.status == 0 ? std::cout : std::cerr) << report.message << '\n';
    return report.status;
  }
  if (!script.empty()) {
    std::ifstream in(script, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open '" << script << "'\n";
      return 2;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto dir = std::filesystem::path(script).parent_path();
    session.base_dir = dir.empty() ? "." : dir;
    std::cout << tvr::cli::run_transcript(session, text);
    return 0;
  }
  return repl(session);
}
