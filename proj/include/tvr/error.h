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

#include <optional>
#include <stdexcept>
#include <string>

namespace tvr {

struct SourcePos {
  int line = 0;
  int col = 0;
};

/// Base of every error the engine raises. Carries an optional source
/// position so front-ends can print `error: <msg> at line L, col C`.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string message, std::optional<SourcePos> pos = {})
      : std::runtime_error(std::move(message)), pos_(pos) {}

  const std::optional<SourcePos>& pos() const { return pos_; }

  std::string diagnostic() const {
    std::string out = "error: ";
    out += what();
    if (pos_) {
      out += " at line " + std::to_string(pos_->line) + ", col " +
             std::to_string(pos_->col);
    }
    return out;
  }

 private:
  std::optional<SourcePos> pos_;
};

/// Lexing and parsing failures (SQL, DDL and log files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Name resolution, typing and streaming-restriction failures.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A DELETE or undo with no matching row in the bag.
class RetractionUnderflow : public Error {
 public:
  explicit RetractionUnderflow(std::string detail = {})
      : Error(detail.empty() ? "retraction underflow"
                             : "retraction underflow: " + detail) {}
};

/// Broken internal contract (planner bug, schema mismatch).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tvr
