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

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace tvr {

/// Non-negative span of time in whole minutes.
class Duration {
 public:
  constexpr Duration() = default;

  /// Throws std::invalid_argument for negative spans.
  static Duration minutes(int64_t m);

  constexpr int64_t count() const { return minutes_; }

  friend constexpr auto operator<=>(Duration, Duration) = default;
  friend Duration operator+(Duration a, Duration b) { return minutes(a.minutes_ + b.minutes_); }

 private:
  constexpr explicit Duration(int64_t m) : minutes_(m) {}
  int64_t minutes_ = 0;
};

/// A point on the shared event/processing time line, in minutes since
/// midnight of day 0. BOTTOM sorts below every finite instant.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  static constexpr Timestamp at(int64_t minutes) { return Timestamp(minutes); }
  static constexpr Timestamp hm(int64_t hours, int64_t minutes) {
    return Timestamp(hours * 60 + minutes);
  }
  static constexpr Timestamp bottom() { return Timestamp(kBottom); }

  constexpr bool is_bottom() const { return minutes_ == kBottom; }
  constexpr int64_t minutes() const { return minutes_; }

  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

  // Arithmetic is only defined on finite instants; BOTTOM throws.
  Timestamp operator+(Duration d) const;
  Timestamp operator-(Duration d) const;

 private:
  static constexpr int64_t kBottom = std::numeric_limits<int64_t>::min();
  constexpr explicit Timestamp(int64_t m) : minutes_(m) {}
  int64_t minutes_ = kBottom;
};

/// `H:MM`, hours unpadded; negative instants get a leading `-`.
std::string format_time(Timestamp t);

/// Accepts `H:MM` and `HH:MM` (optionally negative). Minutes must be two
/// digits in 00..59.
std::optional<Timestamp> parse_time(std::string_view text);

}  // namespace tvr
