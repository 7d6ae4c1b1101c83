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
#include "tvr/changelog.h"

#include <algorithm>
#include <tuple>

#include "tvr/error.h"

namespace tvr {

uint64_t VerState::peek(const Row& key) const {
  auto it = counters_.find(key);
  return it == counters_.end() ? 0 : it->second;
}

Row window_key_of(const Schema& schema, const Row& row) {
  Row key;
  for (size_t i : schema.window_key_columns()) key.push_back(row[i]);
  return key;
}

namespace {

// Rows of `a` not matched by an occurrence in `b` (both sorted).
std::vector<Row> sorted_bag_minus(const std::vector<Row>& a, const std::vector<Row>& b) {
  std::vector<Row> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void order_by_key(std::vector<std::pair<Row, Row>>& keyed) {
  std::sort(keyed.begin(), keyed.end());
}

}  // namespace

std::vector<ChangelogRow> relation_diff(const Relation& old_rel, const Relation& new_rel,
                                        Timestamp ptime, VerState& vers) {
  if (!(old_rel.schema.columns.size() == new_rel.schema.columns.size())) {
    throw InternalError("relation_diff over mismatched schemas");
  }
  for (size_t i = 0; i < old_rel.schema.columns.size(); ++i) {
    if (old_rel.schema.columns[i].kind != new_rel.schema.columns[i].kind) {
      throw InternalError("relation_diff over mismatched schemas");
    }
  }
  const Schema& schema = new_rel.schema;
  for (const Relation* rel : {&old_rel, &new_rel}) {
    for (const Row& r : rel->rows) {
      if (!row_conforms(schema, r)) throw InternalError("relation_diff row does not match schema");
    }
  }
  auto before = old_rel.sorted_rows();
  auto after = new_rel.sorted_rows();

  std::vector<std::pair<Row, Row>> removed;
  std::vector<std::pair<Row, Row>> added;
  for (auto& r : sorted_bag_minus(before, after)) removed.emplace_back(window_key_of(schema, r), r);
  for (auto& r : sorted_bag_minus(after, before)) added.emplace_back(window_key_of(schema, r), r);
  order_by_key(removed);
  order_by_key(added);

  std::vector<ChangelogRow> out;
  out.reserve(removed.size() + added.size());
  for (auto& [key, row] : removed) out.push_back({std::move(row), true, ptime, vers.next(key)});
  for (auto& [key, row] : added) out.push_back({std::move(row), false, ptime, vers.next(key)});
  return out;
}

Relation changelog_fold(std::span<const ChangelogRow> rows, Timestamp upto, const Schema& schema) {
  Relation rel{schema, {}};
  for (const auto& change : rows) {
    if (change.ptime > upto) continue;
    if (!change.undo) {
      rel.rows.push_back(change.row);
      continue;
    }
    auto it = std::find(rel.rows.begin(), rel.rows.end(), change.row);
    if (it == rel.rows.end()) throw RetractionUnderflow("changelog undo of absent row");
    rel.rows.erase(it);
  }
  return rel;
}

}  // namespace tvr
