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

#include <span>
#include <string>

#include "tvr/changelog.h"
#include "tvr/schema.h"

namespace tvr::cli {

/// Cell text: H:MM timestamps, `$N` for dollar columns, empty for NULL.
std::string display_value(const Value& value, const ColumnDef& col);

/// ASCII table with rows in value order; empty relations print the header
/// between borders.
std::string format_table(const Relation& relation);

/// Changelog table with trailing undo/ptime/ver columns, rows in emission
/// order. An open-ended changelog ends with a `...` line instead of the
/// bottom border.
std::string format_changelog(std::span<const ChangelogRow> rows, const Schema& schema,
                             bool open_ended = false);

}  // namespace tvr::cli
