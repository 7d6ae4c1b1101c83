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

#include <functional>

#include "test_support.h"
#include "tvr/error.h"
#include "tvr/sql/parser.h"
#include "tvr/sql/validator.h"

namespace tvr::sql {
namespace {

using testing::bid_catalog;
using testing::compile;

std::string validation_error(const std::string& text, const Catalog& cat) {
  try {
    compile(text, cat);
  } catch (const Error& e) {
    return e.diagnostic();
  }
  return "";
}

const PlanNode* find_kind(const PlanNode& n, PlanKind k) {
  if (n.kind == k) return &n;
  for (const auto& in : n.inputs)
    if (const PlanNode* f = find_kind(*in, k)) return f;
  return nullptr;
}

void visit(const PlanNode& n, const std::function<void(const PlanNode&)>& fn) {
  fn(n);
  for (const auto& in : n.inputs) visit(*in, fn);
}

TEST(Validator, Query7Flags) {
  Catalog cat = bid_catalog();
  ValidatedQuery v = compile(testing::kQ7, cat);
  const Schema& s = v.plan->schema;
  ASSERT_EQ(s.arity(), 5u);
  EXPECT_EQ(s.columns[0].name, "wstart");
  EXPECT_EQ(s.columns[1].name, "wend");
  EXPECT_EQ(s.columns[4].name, "item");
  // Only the grouping key survives the aggregate with its flag.
  EXPECT_FALSE(s.columns[0].is_event_time);
  EXPECT_TRUE(s.columns[1].is_event_time);
  EXPECT_TRUE(s.columns[2].is_event_time);
  EXPECT_FALSE(s.columns[3].is_event_time);
  EXPECT_EQ(s.columns[3].format, ColumnFormat::Dollar);

  const PlanNode* agg = find_kind(*v.plan, PlanKind::Aggregate);
  ASSERT_NE(agg, nullptr);
  ASSERT_EQ(agg->group_keys.size(), 1u);
  const ColumnDef& key = agg->inputs[0]->schema.columns[agg->group_keys[0]];
  EXPECT_EQ(key.name, "wend");
  EXPECT_TRUE(key.is_event_time);
  EXPECT_EQ(s.window_key_columns(), std::vector<size_t>{1});
}

TEST(Validator, EveryFlaggedColumnMapsToSourceWatermark) {
  Catalog cat = bid_catalog();
  for (const char* text :
       {testing::kQ7, "SELECT * FROM Bid",
        "SELECT MAX(wstart), wend, SUM(price) FROM Hop(data => TABLE(Bid), timecol => "
        "DESCRIPTOR(bidtime), dur => INTERVAL '10' MINUTES, hopsize => INTERVAL '5' MINUTES) "
        "GROUP BY wend",
        "SELECT bidtime AS t, bidtime + INTERVAL '1' MINUTE AS u FROM Bid"}) {
    ValidatedQuery v = compile(text, cat);
    visit(*v.plan, [&](const PlanNode& n) {
      for (const ColumnDef& c : n.schema.columns) {
        if (!c.is_event_time) continue;
        ASSERT_TRUE(c.watermark) << c.name << " in " << text;
        EXPECT_NE(cat.find(c.watermark->source), nullptr);
        EXPECT_EQ(c.kind, ValueKind::Timestamp);
      }
    });
  }
}

TEST(Validator, ArithmeticDropsFlagAliasKeepsIt) {
  Catalog cat = bid_catalog();
  ValidatedQuery v = compile("SELECT bidtime AS t, bidtime + INTERVAL '1' MINUTE AS u FROM Bid", cat);
  EXPECT_TRUE(v.plan->schema.columns[0].is_event_time);
  EXPECT_FALSE(v.plan->schema.columns[1].is_event_time);
  ValidatedQuery m = compile(
      "SELECT MAX(bidtime), wend FROM Tumble(data => TABLE(Bid), timecol => DESCRIPTOR(bidtime), "
      "dur => INTERVAL '10' MINUTES) GROUP BY wend",
      cat);
  EXPECT_FALSE(m.plan->schema.columns[0].is_event_time);
}

TEST(Validator, StarExpandsWindowColumnsFirst) {
  Catalog cat = bid_catalog();
  ValidatedQuery v = compile(
      "SELECT * FROM Tumble(data => TABLE(Bid), timecol => DESCRIPTOR(bidtime), dur => INTERVAL "
      "'10' MINUTES, offset => INTERVAL '0' MINUTES)",
      cat);
  std::vector<std::string> names;
  for (const auto& c : v.plan->schema.columns) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"wstart", "wend", "bidtime", "price", "item"}));
  EXPECT_TRUE(v.plan->schema.columns[0].is_event_time);
  EXPECT_TRUE(v.plan->schema.columns[1].is_event_time);
}

TEST(Validator, UnboundedGroupByNeedsEventTimeKey) {
  const std::string q = "SELECT item, SUM(price) FROM Bid GROUP BY item";
  EXPECT_NE(validation_error(q, bid_catalog()).find("unbounded GROUP BY requires an event-time key"),
            std::string::npos);
  Catalog table = parse_schema_ddl(
      "CREATE TABLE Bid (bidtime TIMESTAMP EVENTTIME, price INT FORMAT '$', item STRING);");
  EXPECT_EQ(validation_error(q, table), "");
  ValidatedQuery v = compile(q, table);
  EXPECT_FALSE(v.plan->schema.columns[0].is_event_time);
}

TEST(Validator, Errors) {
  Catalog cat = bid_catalog();
  EXPECT_NE(validation_error("SELECT nope FROM Bid", cat).find("unknown column"), std::string::npos);
  EXPECT_NE(validation_error("SELECT * FROM Auction", cat).find("unknown table"), std::string::npos);
  EXPECT_NE(validation_error("SELECT bidtime FROM Bid a, Bid b", cat).find("ambiguous"),
            std::string::npos);
  EXPECT_NE(validation_error("SELECT * FROM Bid WHERE price = 'x'", cat).find("type mismatch"),
            std::string::npos);
  EXPECT_NE(validation_error("SELECT price FROM Tumble(data => TABLE(Bid), timecol => "
                             "DESCRIPTOR(bidtime), dur => INTERVAL '10' MINUTES) GROUP BY wend",
                             cat)
                .find("GROUP BY"),
            std::string::npos);
  EXPECT_NE(validation_error("SELECT * FROM Tumble(data => TABLE(Bid), timecol => "
                             "DESCRIPTOR(price), dur => INTERVAL '10' MINUTES)",
                             cat),
            "");
  EXPECT_NE(validation_error("SELECT price FROM Bid EMIT AFTER WATERMARK", cat)
                .find("requires an event-time column"),
            std::string::npos);
  EXPECT_NE(validation_error("SELECT * FROM Bid, Bid", cat).find("duplicate table alias"),
            std::string::npos);
  EXPECT_NE(validation_error("SELECT x.price FROM Bid", cat).find("unknown"), std::string::npos);
}

TEST(Validator, DeterministicPlans) {
  Catalog cat = bid_catalog();
  Query q = parse_query(testing::kQ7);
  std::string first = explain(*validate(q, cat).plan);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(explain(*validate(q, cat).plan), first);
  EXPECT_EQ(validate(q, cat).plan->schema, validate(q, cat).plan->schema);
}

TEST(Validator, PositionalTvfArguments) {
  Catalog cat = bid_catalog();
  ValidatedQuery named = compile(
      "SELECT * FROM Hop(data => TABLE(Bid), timecol => DESCRIPTOR(bidtime), dur => INTERVAL '10' "
      "MINUTES, hopsize => INTERVAL '5' MINUTES)",
      cat);
  ValidatedQuery positional = compile(
      "SELECT * FROM Hop(TABLE(Bid), DESCRIPTOR(bidtime), INTERVAL '10' MINUTES, INTERVAL '5' "
      "MINUTES)",
      cat);
  EXPECT_EQ(explain(*named.plan), explain(*positional.plan));
}

}  // namespace
}  // namespace tvr::sql
