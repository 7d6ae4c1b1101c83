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
#include "tvr/value.h"

#include "tvr/error.h"

namespace tvr {

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Null: return "NULL";
    case ValueKind::Integer: return "INT";
    case ValueKind::Text: return "STRING";
    case ValueKind::Timestamp: return "TIMESTAMP";
    case ValueKind::Duration: return "INTERVAL";
    case ValueKind::Boolean: return "BOOLEAN";
  }
  return "?";
}

std::optional<std::strong_ordering> sql_compare(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return std::nullopt;
  if (a.kind() != b.kind()) {
    throw InternalError("comparison between " + std::string(kind_name(a.kind())) + " and " +
                        std::string(kind_name(b.kind())));
  }
  return a <=> b;
}

}  // namespace tvr
