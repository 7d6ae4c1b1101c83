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
#include "tvr/time.h"

#include <charconv>
#include <stdexcept>

namespace tvr {

Duration Duration::minutes(int64_t m) {
  if (m < 0) throw std::invalid_argument("negative duration");
  return Duration(m);
}

Timestamp Timestamp::operator+(Duration d) const {
  if (is_bottom()) throw std::domain_error("arithmetic on BOTTOM timestamp");
  return Timestamp(minutes_ + d.count());
}

Timestamp Timestamp::operator-(Duration d) const {
  if (is_bottom()) throw std::domain_error("arithmetic on BOTTOM timestamp");
  return Timestamp(minutes_ - d.count());
}

std::string format_time(Timestamp t) {
  if (t.is_bottom()) return "BOTTOM";
  int64_t m = t.minutes();
  std::string out;
  if (m < 0) {
    out = "-";
    m = -m;
  }
  out += std::to_string(m / 60);
  out += ':';
  int64_t mm = m % 60;
  if (mm < 10) out += '0';
  out += std::to_string(mm);
  return out;
}

std::optional<Timestamp> parse_time(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  auto hours_text = text.substr(0, colon);
  auto minutes_text = text.substr(colon + 1);
  if (minutes_text.size() != 2) return std::nullopt;
  int64_t hours = 0;
  int64_t minutes = 0;
  auto [hp, hec] = std::from_chars(hours_text.data(), hours_text.data() + hours_text.size(), hours);
  if (hec != std::errc() || hp != hours_text.data() + hours_text.size()) return std::nullopt;
  auto [mp, mec] =
      std::from_chars(minutes_text.data(), minutes_text.data() + minutes_text.size(), minutes);
  if (mec != std::errc() || mp != minutes_text.data() + minutes_text.size()) return std::nullopt;
  if (hours < 0 || minutes < 0 || minutes > 59) return std::nullopt;
  int64_t total = hours * 60 + minutes;
  return Timestamp::at(negative ? -total : total);
}

}  // namespace tvr
