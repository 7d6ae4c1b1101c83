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
#include <vector>

#include "tvr/schema.h"
#include "tvr/time.h"

namespace tvr {

struct WatermarkEntry {
  Timestamp ptime;  // processing time the advance was observed
  Timestamp value;  // event time the input is complete up to
  friend bool operator==(const WatermarkEntry&, const WatermarkEntry&) = default;
};

/// Per event-time column, the monotone step function from processing time
/// to event time. Columns must be declared before they can be queried.
class WatermarkState {
 public:
  void declare(const WatermarkRef& ref);

  /// Appends an advance. Both ptime and value must strictly increase for the
  /// column; throws ValidationError otherwise.
  void advance(const WatermarkRef& ref, Timestamp ptime, Timestamp value);

  bool contains(const WatermarkRef& ref) const { return entries_.contains(ref); }

  /// Throws ValidationError for undeclared columns.
  const std::vector<WatermarkEntry>& entries(const WatermarkRef& ref) const;

  /// Adds every column of `other`; columns must not already be declared.
  void merge(const WatermarkState& other);

  const std::map<WatermarkRef, std::vector<WatermarkEntry>>& columns() const { return entries_; }

  friend bool operator==(const WatermarkState&, const WatermarkState&) = default;

 private:
  std::map<WatermarkRef, std::vector<WatermarkEntry>> entries_;
};

/// Value of the latest advance with entry.ptime <= ptime, BOTTOM if none.
Timestamp watermark_at(const WatermarkState& state, const WatermarkRef& ref, Timestamp ptime);

/// A grouping keyed at `key` is complete once the watermark reaches it.
bool is_complete(Timestamp key, Timestamp watermark);

}  // namespace tvr
