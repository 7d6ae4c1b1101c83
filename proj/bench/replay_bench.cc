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

// Serial vs OpenMP replay of a synthetic bid stream: per-step views and the
// full changelog pipeline.

#include <benchmark/benchmark.h>

#include <random>
#include <set>
#include <string>

#include "tvr/event_log.h"
#include "tvr/executor.h"
#include "tvr/sql/parser.h"
#include "tvr/sql/validator.h"

namespace {

using namespace tvr;

const char* kDdl = "CREATE STREAM Bid (bidtime TIMESTAMP EVENTTIME, price INT FORMAT '$', item STRING);";

const char* kQuery =
    "SELECT MaxBid.wstart, MaxBid.wend, Bid.bidtime, Bid.price, Bid.item "
    "FROM Bid, (SELECT MAX(TumbleBid.price) maxPrice, TumbleBid.wstart wstart, TumbleBid.wend wend "
    "FROM Tumble(data => TABLE(Bid), timecol => DESCRIPTOR(bidtime), dur => INTERVAL '10' MINUTE) "
    "TumbleBid GROUP BY TumbleBid.wend) MaxBid "
    "WHERE Bid.price = MaxBid.maxPrice AND Bid.bidtime >= MaxBid.wend - INTERVAL '10' MINUTE "
    "AND Bid.bidtime < MaxBid.wend";

// One insert per minute with bounded disorder; a watermark every 5 minutes.
Catalog synthetic(int64_t n) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> skew(0, 8), price(1, 500);
  std::string text;
  for (int64_t i = 0; i < n; ++i) {
    int64_t p = 60 + i;
    text += format_time(Timestamp::at(p)) + " INSERT (" + format_time(Timestamp::at(p - skew(rng))) +
            ", $" + std::to_string(price(rng)) + ", I" + std::to_string(i) + ")\n";
    if (i % 5 == 4) text += format_time(Timestamp::at(p)) + " WM -> " + format_time(Timestamp::at(p - 10)) + "\n";
  }
  Catalog cat = parse_schema_ddl(kDdl);
  const SourceLog& bid = cat.get("bid");
  cat.set_entries("bid", parse_log(text, bid.name, bid.schema).entries);
  return cat;
}

struct Fixture {
  Catalog cat;
  sql::ValidatedQuery query;
  EvalContext ctx;
  std::vector<Timestamp> steps;
  explicit Fixture(int64_t n) : cat(synthetic(n)) {
    query = sql::validate(sql::parse_query(kQuery), cat);
    ctx = EvalContext::at(cat, cat.max_ptime());
    std::set<Timestamp> s;
    for (const auto& e : cat.get("bid").entries) s.insert(e.ptime);
    steps.assign(s.begin(), s.end());
  }
};

void BM_StepViews(benchmark::State& state, ExecutionPolicy policy) {
  Fixture f(state.range(0));
  for (auto _ : state) {
    auto views = compute_step_views(*f.query.plan, f.cat, f.ctx.watermarks, f.steps, policy);
    benchmark::DoNotOptimize(views);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.steps.size()));
}

void BM_Stream(benchmark::State& state, ExecutionPolicy policy) {
  Fixture f(state.range(0));
  sql::EmitSpec emit;
  emit.stream = true;
  emit.after_watermark = true;
  for (auto _ : state) {
    auto rows = eval_stream(*f.query.plan, emit, f.ctx, Timestamp::bottom(), f.cat.max_ptime(), policy);
    benchmark::DoNotOptimize(rows);
  }
}

BENCHMARK_CAPTURE(BM_StepViews, serial, ExecutionPolicy::Serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_StepViews, parallel, ExecutionPolicy::Parallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Stream, serial, ExecutionPolicy::Serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Stream, parallel, ExecutionPolicy::Parallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
