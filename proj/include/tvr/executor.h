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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tvr/changelog.h"
#include "tvr/event_log.h"
#include "tvr/plan.h"
#include "tvr/sql/ast.h"
#include "tvr/watermark.h"

namespace tvr {

/// How the per-step views of a replay are computed. Both produce
/// identical results; Serial is the reference.
enum class ExecutionPolicy { Serial, Parallel };

struct EvalContext {
  const Catalog* catalog = nullptr;
  Timestamp cursor;
  WatermarkState watermarks;  // every event-time column of every source

  static EvalContext at(const Catalog& catalog, Timestamp cursor);
};

/// Classical bag-semantics evaluation of `plan` over one relation per
/// scanned source (keyed by lower-cased name). No input is late.
Relation eval_relational(const PlanNode& plan, const std::map<std::string, Relation>& inputs);

/// As eval_relational, but rows carry the processing time they became
/// visible. When `watermarks` is given, a row reaching an Aggregate whose
/// event-time key was already complete at its arrival is dropped.
std::vector<TimedRow> eval_timed(const PlanNode& plan,
                                 const std::map<std::string, std::vector<TimedRow>>& inputs,
                                 const WatermarkState* watermarks);

/// MAX/MIN/SUM/COUNT over one non-empty group. NULLs are skipped; an
/// all-NULL MAX/MIN/SUM yields NULL.
Row eval_aggregate_functions(std::span<const Row* const> group,
                             std::span<const AggregateCall> calls);

/// The ungated result at processing time `at`: every source is
/// snapshotted at `at` and late inputs are dropped from aggregates.
Relation raw_view(const PlanNode& plan, const Catalog& catalog, const WatermarkState& watermarks,
                  Timestamp at);

/// Rows whose every event-time column is complete at processing time `at`.
Relation gate_complete(const Relation& rel, const WatermarkState& watermarks, Timestamp at);

/// raw_view() at every step. Parallel evaluates steps concurrently.
std::vector<Relation> compute_step_views(const PlanNode& plan, const Catalog& catalog,
                                         const WatermarkState& watermarks,
                                         std::span<const Timestamp> steps,
                                         ExecutionPolicy policy);

/// Turns a sequence of raw views into the materialized relation selected
/// by an EMIT clause and records the changelog between materializations.
///
/// AFTER DELAY d: the first change of a window's result while no timer is
/// pending arms a timer at change + d; when it fires the window's current
/// rows are materialized. Combined with AFTER WATERMARK, a window is also
/// materialized (once) as soon as it is complete, cancelling its timer.
class Materializer {
 public:
  Materializer(Schema schema, sql::EmitSpec emit, const WatermarkState& watermarks);

  /// Processes processing time `t` with the current raw view. Within one
  /// instant, data and watermark changes are already folded into `raw`;
  /// timers due at `t` fire afterwards. Returns the rows emitted at `t`.
  std::vector<ChangelogRow> advance(Timestamp t, const Relation& raw);

  /// Earliest pending timer, if any.
  std::optional<Timestamp> next_fire() const;

  const Relation& materialized() const { return materialized_; }

 private:
  Relation delayed(Timestamp t, const Relation& raw);
  bool key_complete(const Row& key, Timestamp t) const;

  sql::EmitSpec emit_;
  const WatermarkState& watermarks_;
  std::vector<size_t> key_columns_;
  Relation materialized_;
  VerState vers_;
  std::map<Row, Timestamp> timers_;
  std::set<Row> on_time_done_;
};

/// Point-in-time result at ctx.cursor. AFTER WATERMARK keeps only complete
/// rows; AFTER DELAY returns what the delay discipline has materialized.
Relation eval_table(const PlanNode& plan, const sql::EmitSpec& emit, const EvalContext& ctx,
                    ExecutionPolicy policy = ExecutionPolicy::Serial);

/// Replays every referenced log from its origin and returns the changelog
/// rows with from <= ptime <= to.
std::vector<ChangelogRow> eval_stream(const PlanNode& plan, const sql::EmitSpec& emit,
                                      const EvalContext& ctx, Timestamp from, Timestamp to,
                                      ExecutionPolicy policy = ExecutionPolicy::Serial);

}  // namespace tvr
