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
#include "tvr/executor.h"

#include <algorithm>
#include <exception>
#include <mutex>

#ifdef TVR_HAVE_OPENMP
#include <omp.h>
#endif

#include "tvr/error.h"
#include "tvr/windowing.h"

namespace tvr {

EvalContext EvalContext::at(const Catalog& catalog, Timestamp cursor) {
  EvalContext ctx;
  ctx.catalog = &catalog;
  ctx.cursor = cursor;
  for (const auto& [_, log] : catalog.sources()) ctx.watermarks.merge(watermark_state(log));
  return ctx;
}

namespace {

// Watermark in force just before `ptime`: same-instant data is processed
// ahead of same-instant watermark advances.
Timestamp watermark_before(const WatermarkState& state, const WatermarkRef& ref, Timestamp ptime) {
  if (ptime.is_bottom()) return Timestamp::bottom();
  const auto& list = state.entries(ref);
  auto it = std::lower_bound(list.begin(), list.end(), ptime,
                             [](const WatermarkEntry& e, Timestamp p) { return e.ptime < p; });
  if (it == list.begin()) return Timestamp::bottom();
  return std::prev(it)->value;
}

bool late_for_group(const PlanNode& agg, const Schema& input, const TimedRow& row,
                    const WatermarkState& wm) {
  for (size_t key : agg.group_keys) {
    const auto& def = input.columns[key];
    if (!def.is_event_time || !def.watermark) continue;
    const Value& v = row.row[key];
    if (v.is_null()) continue;
    if (is_complete(v.as_timestamp(), watermark_before(wm, *def.watermark, row.arrival))) return true;
  }
  return false;
}

std::vector<TimedRow> aggregate(const PlanNode& node, std::vector<TimedRow> input,
                                const WatermarkState* wm) {
  const Schema& in_schema = node.inputs[0]->schema;
  std::map<Row, std::vector<size_t>> groups;
  for (size_t i = 0; i < input.size(); ++i) {
    if (wm && late_for_group(node, in_schema, input[i], *wm)) continue;
    Row key;
    key.reserve(node.group_keys.size());
    for (size_t k : node.group_keys) key.push_back(input[i].row[k]);
    groups[std::move(key)].push_back(i);
  }
  std::vector<AggregateCall> calls;
  for (const auto& o : node.aggregate_outputs) {
    if (!o.carried) calls.push_back(o.call);
  }
  std::vector<TimedRow> out;
  out.reserve(groups.size());
  for (const auto& [key, members] : groups) {
    std::vector<const Row*> rows;
    rows.reserve(members.size());
    Timestamp arrival = Timestamp::bottom();
    for (size_t i : members) {
      rows.push_back(&input[i].row);
      arrival = std::max(arrival, input[i].arrival);
    }
    Row aggs = eval_aggregate_functions(rows, calls);
    Row result = key;
    size_t next_agg = 0;
    for (const auto& o : node.aggregate_outputs) {
      result.push_back(o.carried ? rows.front()->at(o.column) : aggs[next_agg++]);
    }
    out.push_back({std::move(result), arrival});
  }
  return out;
}

}  // namespace

std::vector<TimedRow> eval_timed(const PlanNode& node,
                                 const std::map<std::string, std::vector<TimedRow>>& inputs,
                                 const WatermarkState* wm) {
  switch (node.kind) {
    case PlanKind::Scan: {
      auto it = inputs.find(node.source);
      if (it == inputs.end()) throw InternalError("no input for source '" + node.source + "'");
      return it->second;
    }
    case PlanKind::WindowTvf: {
      auto in = eval_timed(*node.inputs[0], inputs, wm);
      std::vector<TimedRow> out;
      out.reserve(in.size());
      const auto& spec = node.window;
      for (auto& tr : in) {
        const Value& tv = tr.row[spec.timecol];
        if (tv.is_null()) throw Error("NULL event timestamp in window input");
        auto emit = [&](const Window& w) {
          Row r;
          r.reserve(tr.row.size() + 2);
          r.push_back(Value::timestamp(w.start));
          r.push_back(Value::timestamp(w.end));
          r.insert(r.end(), tr.row.begin(), tr.row.end());
          out.push_back({std::move(r), tr.arrival});
        };
        if (spec.kind == WindowKind::Tumble) {
          emit(tumble_assign(tv.as_timestamp(), spec.dur, spec.offset));
        } else {
          for (const auto& w : hop_assign(tv.as_timestamp(), spec.dur, spec.hopsize, spec.offset)) emit(w);
        }
      }
      return out;
    }
    case PlanKind::Filter: {
      auto in = eval_timed(*node.inputs[0], inputs, wm);
      std::erase_if(in, [&](const TimedRow& tr) { return !is_true(evaluate(node.predicate, tr.row)); });
      return in;
    }
    case PlanKind::Project: {
      auto in = eval_timed(*node.inputs[0], inputs, wm);
      std::vector<TimedRow> out;
      out.reserve(in.size());
      for (const auto& tr : in) {
        Row r;
        r.reserve(node.exprs.size());
        for (const auto& e : node.exprs) r.push_back(evaluate(e, tr.row));
        out.push_back({std::move(r), tr.arrival});
      }
      return out;
    }
    case PlanKind::Join: {
      auto left = eval_timed(*node.inputs[0], inputs, wm);
      auto right = eval_timed(*node.inputs[1], inputs, wm);
      std::vector<TimedRow> out;
      for (const auto& l : left) {
        for (const auto& r : right) {
          Row joined = l.row;
          joined.insert(joined.end(), r.row.begin(), r.row.end());
          if (!is_true(evaluate(node.predicate, joined))) continue;
          out.push_back({std::move(joined), std::max(l.arrival, r.arrival)});
        }
      }
      return out;
    }
    case PlanKind::Aggregate: return aggregate(node, eval_timed(*node.inputs[0], inputs, wm), wm);
  }
  throw InternalError("unknown plan node");
}

Relation eval_relational(const PlanNode& plan, const std::map<std::string, Relation>& inputs) {
  std::map<std::string, std::vector<TimedRow>> timed;
  for (const auto& [name, rel] : inputs) {
    auto& rows = timed[name];
    for (const auto& r : rel.rows) rows.push_back({r, Timestamp::bottom()});
  }
  Relation out{plan.schema, {}};
  for (auto& tr : eval_timed(plan, timed, nullptr)) out.rows.push_back(std::move(tr.row));
  return out;
}

Row eval_aggregate_functions(std::span<const Row* const> group,
                             std::span<const AggregateCall> calls) {
  if (group.empty()) throw InternalError("aggregate over an empty group");
  Row out;
  out.reserve(calls.size());
  for (const auto& call : calls) {
    if (call.func == sql::AggFunc::Count) {
      int64_t n = 0;
      for (const Row* r : group) n += (!call.arg || !(*r)[*call.arg].is_null()) ? 1 : 0;
      out.push_back(Value::integer(n));
      continue;
    }
    std::optional<Value> acc;
    for (const Row* r : group) {
      const Value& v = (*r)[*call.arg];
      if (v.is_null()) continue;
      if (!acc) {
        acc = v;
        continue;
      }
      switch (call.func) {
        case sql::AggFunc::Max:
          if (v > *acc) acc = v;
          break;
        case sql::AggFunc::Min:
          if (v < *acc) acc = v;
          break;
        case sql::AggFunc::Sum:
          if (v.kind() == ValueKind::Integer) {
            acc = Value::integer(acc->as_integer() + v.as_integer());
          } else {
            acc = Value::duration(acc->as_duration() + v.as_duration());
          }
          break;
        case sql::AggFunc::Count: break;
      }
    }
    out.push_back(acc.value_or(Value::null()));
  }
  return out;
}

Relation raw_view(const PlanNode& plan, const Catalog& catalog, const WatermarkState& watermarks,
                  Timestamp at) {
  std::map<std::string, std::vector<TimedRow>> inputs;
  for (const auto& name : referenced_sources(plan)) inputs[name] = timed_snapshot(catalog.get(name), at);
  Relation out{plan.schema, {}};
  for (auto& tr : eval_timed(plan, inputs, &watermarks)) out.rows.push_back(std::move(tr.row));
  return out;
}

namespace {

bool row_complete(const Schema& schema, const Row& row, const WatermarkState& wm, Timestamp at) {
  for (size_t i : schema.event_time_columns()) {
    const Value& v = row[i];
    if (v.is_null()) return false;
    if (!is_complete(v.as_timestamp(), watermark_at(wm, *schema.columns[i].watermark, at))) return false;
  }
  return true;
}

}  // namespace

Relation gate_complete(const Relation& rel, const WatermarkState& watermarks, Timestamp at) {
  Relation out{rel.schema, {}};
  for (const auto& row : rel.rows) {
    if (row_complete(rel.schema, row, watermarks, at)) out.rows.push_back(row);
  }
  return out;
}

std::vector<Relation> compute_step_views(const PlanNode& plan, const Catalog& catalog,
                                         const WatermarkState& watermarks,
                                         std::span<const Timestamp> steps,
                                         ExecutionPolicy policy) {
  std::vector<Relation> views(steps.size());
  if (policy == ExecutionPolicy::Serial) {
    for (size_t i = 0; i < steps.size(); ++i) views[i] = raw_view(plan, catalog, watermarks, steps[i]);
    return views;
  }
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto n = static_cast<int64_t>(steps.size());
#ifdef TVR_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int64_t i = 0; i < n; ++i) {
    try {
      views[i] = raw_view(plan, catalog, watermarks, steps[i]);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return views;
}

// ---------------------------------------------------------------------------

Materializer::Materializer(Schema schema, sql::EmitSpec emit, const WatermarkState& watermarks)
    : emit_(emit), watermarks_(watermarks), materialized_{std::move(schema), {}} {
  key_columns_ = materialized_.schema.window_key_columns();
}

std::optional<Timestamp> Materializer::next_fire() const {
  std::optional<Timestamp> out;
  for (const auto& [_, fire] : timers_) {
    if (!out || fire < *out) out = fire;
  }
  return out;
}

bool Materializer::key_complete(const Row& key, Timestamp t) const {
  if (key_columns_.empty()) return false;
  for (size_t k = 0; k < key_columns_.size(); ++k) {
    const auto& def = materialized_.schema.columns[key_columns_[k]];
    if (key[k].is_null()) return false;
    if (!is_complete(key[k].as_timestamp(), watermark_at(watermarks_, *def.watermark, t))) return false;
  }
  return true;
}

Relation Materializer::delayed(Timestamp t, const Relation& raw) {
  const Schema& schema = materialized_.schema;
  std::map<Row, std::vector<Row>> current;
  std::map<Row, std::vector<Row>> shown;
  for (const auto& r : raw.rows) current[window_key_of(schema, r)].push_back(r);
  for (const auto& r : materialized_.rows) shown[window_key_of(schema, r)].push_back(r);
  std::set<Row> keys;
  for (const auto& [k, _] : current) keys.insert(k);
  for (const auto& [k, _] : shown) keys.insert(k);

  Relation next{schema, {}};
  for (const auto& key : keys) {
    auto& cur = current[key];
    auto& mat = shown[key];
    std::vector<Row> chosen = mat;
    if (emit_.after_watermark && !on_time_done_.contains(key) && key_complete(key, t)) {
      Relation complete = gate_complete(Relation{schema, cur}, watermarks_, t);
      chosen = std::move(complete.rows);
      on_time_done_.insert(key);
      timers_.erase(key);
    } else {
      if (!timers_.contains(key) && !bag_equal(cur, mat)) timers_[key] = t + *emit_.delay;
      auto it = timers_.find(key);
      if (it != timers_.end() && it->second <= t) {
        chosen = cur;
        timers_.erase(it);
      }
    }
    next.rows.insert(next.rows.end(), chosen.begin(), chosen.end());
  }
  return next;
}

std::vector<ChangelogRow> Materializer::advance(Timestamp t, const Relation& raw) {
  Relation next;
  if (emit_.delay) {
    next = delayed(t, raw);
  } else if (emit_.after_watermark) {
    next = gate_complete(raw, watermarks_, t);
  } else {
    next = raw;
  }
  auto rows = relation_diff(materialized_, next, t, vers_);
  materialized_.rows = std::move(next.rows);
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

struct Replay {
  std::vector<ChangelogRow> changelog;
  Relation materialized;
};

Replay replay(const PlanNode& plan, const sql::EmitSpec& emit, const EvalContext& ctx, Timestamp to,
              ExecutionPolicy policy) {
  std::vector<Timestamp> steps;
  for (const auto& name : referenced_sources(plan)) {
    for (const auto& entry : ctx.catalog->get(name).entries) {
      if (entry.ptime <= to) steps.push_back(entry.ptime);
    }
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  auto views = compute_step_views(plan, *ctx.catalog, ctx.watermarks, steps, policy);

  Materializer mat(plan.schema, emit, ctx.watermarks);
  Replay out;
  Relation current{plan.schema, {}};
  size_t i = 0;
  while (true) {
    std::optional<Timestamp> t;
    if (i < steps.size()) t = steps[i];
    if (auto fire = mat.next_fire(); fire && *fire <= to && (!t || *fire < *t)) t = fire;
    if (!t) break;
    if (i < steps.size() && steps[i] == *t) current = std::move(views[i++]);
    auto rows = mat.advance(*t, current);
    out.changelog.insert(out.changelog.end(), std::make_move_iterator(rows.begin()),
                         std::make_move_iterator(rows.end()));
  }
  out.materialized = mat.materialized();
  return out;
}

}  // namespace

Relation eval_table(const PlanNode& plan, const sql::EmitSpec& emit, const EvalContext& ctx,
                    ExecutionPolicy policy) {
  if (emit.after_watermark && plan.schema.event_time_columns().empty()) {
    throw ValidationError("EMIT AFTER WATERMARK requires an event-time column in the result");
  }
  if (emit.delay) return replay(plan, emit, ctx, ctx.cursor, policy).materialized;
  Relation raw = raw_view(plan, *ctx.catalog, ctx.watermarks, ctx.cursor);
  return emit.after_watermark ? gate_complete(raw, ctx.watermarks, ctx.cursor) : raw;
}

std::vector<ChangelogRow> eval_stream(const PlanNode& plan, const sql::EmitSpec& emit,
                                      const EvalContext& ctx, Timestamp from, Timestamp to,
                                      ExecutionPolicy policy) {
  if (to < from) throw std::invalid_argument("stream range ends before it starts");
  if (emit.after_watermark && plan.schema.event_time_columns().empty()) {
    throw ValidationError("EMIT AFTER WATERMARK requires an event-time column in the result");
  }
  auto all = replay(plan, emit, ctx, to, policy).changelog;
  std::erase_if(all, [&](const ChangelogRow& r) { return r.ptime < from; });
  return all;
}

}  // namespace tvr
