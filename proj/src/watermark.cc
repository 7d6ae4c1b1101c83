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
#include "tvr/watermark.h"

#include <algorithm>
#include <stdexcept>

#include "tvr/error.h"

namespace tvr {

void WatermarkState::declare(const WatermarkRef& ref) { entries_.try_emplace(ref); }

void WatermarkState::advance(const WatermarkRef& ref, Timestamp ptime, Timestamp value) {
  auto it = entries_.find(ref);
  if (it == entries_.end()) throw ValidationError("unknown event-time column " + to_string(ref));
  auto& list = it->second;
  if (!list.empty()) {
    if (ptime <= list.back().ptime) {
      throw ValidationError("watermark for " + to_string(ref) + " must advance in processing time");
    }
    if (value <= list.back().value) {
      throw ValidationError("non-monotone watermark for " + to_string(ref) + ": " +
                            format_time(value) + " after " + format_time(list.back().value));
    }
  }
  list.push_back({ptime, value});
}

const std::vector<WatermarkEntry>& WatermarkState::entries(const WatermarkRef& ref) const {
  auto it = entries_.find(ref);
  if (it == entries_.end()) throw ValidationError("unknown event-time column " + to_string(ref));
  return it->second;
}

void WatermarkState::merge(const WatermarkState& other) {
  for (const auto& [ref, list] : other.entries_) {
    if (!entries_.emplace(ref, list).second) {
      throw InternalError("watermark column declared twice: " + to_string(ref));
    }
  }
}

Timestamp watermark_at(const WatermarkState& state, const WatermarkRef& ref, Timestamp ptime) {
  const auto& list = state.entries(ref);
  auto it = std::upper_bound(list.begin(), list.end(), ptime,
                             [](Timestamp p, const WatermarkEntry& e) { return p < e.ptime; });
  if (it == list.begin()) return Timestamp::bottom();
  return std::prev(it)->value;
}

bool is_complete(Timestamp key, Timestamp watermark) {
  if (key.is_bottom()) throw std::invalid_argument("completeness key must be finite");
  return key <= watermark;
}

}  // namespace tvr
