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
#include "tvr/windowing.h"

#include <stdexcept>

#include "tvr/error.h"

namespace tvr {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_finite(Timestamp t) {
  if (t.is_bottom()) throw std::invalid_argument("window assignment of BOTTOM");
}

}  // namespace

Window tumble_assign(Timestamp t, Duration dur, Duration offset) {
  check_finite(t);
  if (dur.count() <= 0) throw std::invalid_argument("window duration must be positive");
  int64_t k = floor_div(t.minutes() - offset.count(), dur.count());
  auto start = Timestamp::at(offset.count() + k * dur.count());
  return {start, start + dur};
}

std::vector<Window> hop_assign(Timestamp t, Duration dur, Duration hopsize, Duration offset) {
  check_finite(t);
  if (dur.count() <= 0 || hopsize.count() <= 0) {
    throw std::invalid_argument("window duration and hop size must be positive");
  }
  int64_t rel = t.minutes() - offset.count();
  // start <= t  <=>  k <= floor(rel / hop);  t < start + dur  <=>  k > floor((rel - dur) / hop)
  int64_t k_hi = floor_div(rel, hopsize.count());
  int64_t k_lo = floor_div(rel - dur.count(), hopsize.count()) + 1;
  std::vector<Window> out;
  for (int64_t k = k_lo; k <= k_hi; ++k) {
    auto start = Timestamp::at(offset.count() + k * hopsize.count());
    out.push_back({start, start + dur});
  }
  return out;
}

Schema window_output_schema(const Schema& input, const WindowSpec& spec, int window_id) {
  if (spec.timecol >= input.arity() || !input.columns[spec.timecol].is_event_time) {
    throw ValidationError("window time column must be a watermarked event-time column");
  }
  const auto& timecol = input.columns[spec.timecol];
  Schema out;
  out.bounded = input.bounded;
  ColumnDef start{"wstart", ValueKind::Timestamp, true, ColumnFormat::Plain, timecol.watermark,
                  WindowRole::Start, window_id};
  ColumnDef end = start;
  end.name = "wend";
  end.window_role = WindowRole::End;
  out.columns.push_back(std::move(start));
  out.columns.push_back(std::move(end));
  out.columns.insert(out.columns.end(), input.columns.begin(), input.columns.end());
  return out;
}

Relation apply_window_tvf(const Relation& input, const WindowSpec& spec) {
  Relation out{window_output_schema(input.schema, spec), {}};
  for (const auto& row : input.rows) {
    const Value& tv = row[spec.timecol];
    if (tv.is_null()) throw Error("NULL event timestamp in window input");
    Timestamp t = tv.as_timestamp();
    auto emit = [&](const Window& w) {
      Row r;
      r.reserve(row.size() + 2);
      r.push_back(Value::timestamp(w.start));
      r.push_back(Value::timestamp(w.end));
      r.insert(r.end(), row.begin(), row.end());
      out.rows.push_back(std::move(r));
    };
    if (spec.kind == WindowKind::Tumble) {
      emit(tumble_assign(t, spec.dur, spec.offset));
    } else {
      for (const auto& w : hop_assign(t, spec.dur, spec.hopsize, spec.offset)) emit(w);
    }
  }
  return out;
}

}  // namespace tvr
