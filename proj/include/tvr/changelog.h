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

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "tvr/schema.h"
#include "tvr/time.h"

namespace tvr {

/// One row of a stream changelog: the payload plus retraction flag, the
/// processing time it was materialized at and its per-window revision.
struct ChangelogRow {
  Row row;
  bool undo = false;
  Timestamp ptime;
  uint64_t ver = 0;
  friend bool operator==(const ChangelogRow&, const ChangelogRow&) = default;
};

/// Revision counters per window key, owned by one evaluation.
class VerState {
 public:
  uint64_t next(const Row& key) { return counters_[key]++; }
  uint64_t peek(const Row& key) const;
  void set(const Row& key, uint64_t value) { counters_[key] = value; }

 private:
  std::map<Row, uint64_t> counters_;
};

/// Projection of `row` onto Schema::window_key_columns().
Row window_key_of(const Schema& schema, const Row& row);

/// Changelog turning `old_rel` into `new_rel` at `ptime`. Retractions come
/// first, then insertions; each group is ordered by window key and then by
/// row value. Versions are drawn from `vers` in emission order.
std::vector<ChangelogRow> relation_diff(const Relation& old_rel, const Relation& new_rel,
                                        Timestamp ptime, VerState& vers);

/// Replays every row with ptime <= upto onto the empty bag. Throws
/// RetractionUnderflow when an undo has no matching row.
Relation changelog_fold(std::span<const ChangelogRow> rows, Timestamp upto, const Schema& schema);

}  // namespace tvr
