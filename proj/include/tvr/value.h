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
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tvr/time.h"

namespace tvr {

// Order matches the alternatives of Value's variant.
enum class ValueKind : uint8_t { Null, Integer, Text, Timestamp, Duration, Boolean };

std::string_view kind_name(ValueKind kind);

class Value {
 public:
  Value() = default;
  static Value null() { return Value(); }
  static Value integer(int64_t v) { return Value(Data(std::in_place_index<1>, v)); }
  static Value text(std::string v) { return Value(Data(std::in_place_index<2>, std::move(v))); }
  static Value timestamp(Timestamp v) { return Value(Data(std::in_place_index<3>, v)); }
  static Value duration(Duration v) { return Value(Data(std::in_place_index<4>, v)); }
  static Value boolean(bool v) { return Value(Data(std::in_place_index<5>, v)); }

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
  bool is_null() const { return data_.index() == 0; }

  int64_t as_integer() const { return std::get<1>(data_); }
  const std::string& as_text() const { return std::get<2>(data_); }
  Timestamp as_timestamp() const { return std::get<3>(data_); }
  Duration as_duration() const { return std::get<4>(data_); }
  bool as_boolean() const { return std::get<5>(data_); }

  /// Total order used for bags, grouping and deterministic output: by kind
  /// first, then by value. Null sorts first.
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    return a.data_ <=> b.data_;
  }
  friend bool operator==(const Value& a, const Value& b) = default;

 private:
  using Data = std::variant<std::monostate, int64_t, std::string, Timestamp, Duration, bool>;
  explicit Value(Data d) : data_(std::move(d)) {}
  Data data_;
};

/// SQL comparison of two values of the same kind. Returns nullopt when
/// either side is NULL (unknown). Mixed kinds are a planner bug.
std::optional<std::strong_ordering> sql_compare(const Value& a, const Value& b);

}  // namespace tvr
