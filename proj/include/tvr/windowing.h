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

#include <string>
#include <vector>

#include "tvr/schema.h"
#include "tvr/time.h"

namespace tvr {

enum class WindowKind { Tumble, Hop };

struct WindowSpec {
  WindowKind kind = WindowKind::Tumble;
  size_t timecol = 0;  // index into the input schema
  Duration dur;
  Duration hopsize;  // Hop only
  Duration offset;
  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

/// Right-open event-time interval [start, end).
struct Window {
  Timestamp start;
  Timestamp end;
  friend auto operator<=>(const Window&, const Window&) = default;
};

/// The unique window of width `dur` (aligned to `offset`) containing `t`.
/// Throws std::invalid_argument for BOTTOM or a zero width.
Window tumble_assign(Timestamp t, Duration dur, Duration offset = {});

/// Every window offset + k*hopsize of width `dur` containing `t`, by
/// increasing start. Empty when `t` falls in a gap (hopsize > dur).
std::vector<Window> hop_assign(Timestamp t, Duration dur, Duration hopsize, Duration offset = {});

/// [wstart, wend] ++ input columns. Both bounds are event-time columns
/// aligned with the watermark of the time column. `window_id` tags them so
/// later operators can tell bounds of different TVF calls apart.
Schema window_output_schema(const Schema& input, const WindowSpec& spec, int window_id = 0);

/// Applies Tumble or Hop row by row. Throws ValidationError when the time
/// column is not an event-time column.
Relation apply_window_tvf(const Relation& input, const WindowSpec& spec);

}  // namespace tvr
