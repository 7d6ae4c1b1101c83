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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_support.h"
#include "tvr/executor.h"

namespace tvr {
namespace {

std::vector<Timestamp> entry_ptimes(const Catalog& cat) {
  std::set<Timestamp> s;
  for (const auto& [_, log] : cat.sources())
    for (const auto& e : log.entries) s.insert(e.ptime);
  return {s.begin(), s.end()};
}

TEST(Parallel, StepViewsMatchSerial) {
  std::mt19937 rng(101);
  for (int iter = 0; iter < 50; ++iter) {
    Catalog cat = testing::bid_catalog(testing::random_bid_log(rng, 60, 6));
    auto q = testing::compile(testing::kQ7, cat);
    auto ctx = EvalContext::at(cat, cat.max_ptime());
    auto steps = entry_ptimes(cat);
    auto serial = compute_step_views(*q.plan, cat, ctx.watermarks, steps, ExecutionPolicy::Serial);
    auto parallel = compute_step_views(*q.plan, cat, ctx.watermarks, steps, ExecutionPolicy::Parallel);
    ASSERT_EQ(serial.size(), steps.size());
    ASSERT_EQ(parallel.size(), steps.size());
    for (size_t i = 0; i < steps.size(); ++i) {
      ASSERT_EQ(serial[i].schema, parallel[i].schema);
      ASSERT_EQ(serial[i].sorted_rows(), parallel[i].sorted_rows());
    }
  }
}

TEST(Parallel, ChangelogsMatchSerial) {
  std::mt19937 rng(103);
  const std::vector<std::string> clauses = {
      " EMIT STREAM", " EMIT STREAM AFTER WATERMARK", " EMIT STREAM AFTER DELAY INTERVAL '5' MINUTES",
      " EMIT STREAM AFTER DELAY INTERVAL '2' MINUTES AND AFTER WATERMARK"};
  for (int iter = 0; iter < 30; ++iter) {
    Catalog cat = testing::bid_catalog(testing::random_bid_log(rng, 60, 6));
    auto ctx = EvalContext::at(cat, cat.max_ptime());
    for (const auto& c : clauses) {
      auto q = testing::compile(std::string(testing::kQ7) + c, cat);
      auto a = eval_stream(*q.plan, q.emit, ctx, Timestamp::bottom(), Timestamp::at(5000),
                           ExecutionPolicy::Serial);
      auto b = eval_stream(*q.plan, q.emit, ctx, Timestamp::bottom(), Timestamp::at(5000),
                           ExecutionPolicy::Parallel);
      ASSERT_EQ(a, b) << c;
    }
  }
}

TEST(Parallel, EmptyStepList) {
  Catalog cat = testing::bid_catalog();
  auto q = testing::compile(testing::kQ7, cat);
  auto ctx = EvalContext::at(cat, cat.max_ptime());
  EXPECT_TRUE(compute_step_views(*q.plan, cat, ctx.watermarks, {}, ExecutionPolicy::Parallel).empty());
}

}  // namespace
}  // namespace tvr
