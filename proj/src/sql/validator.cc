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
#include "tvr/sql/validator.h"

#include <map>

#include "tvr/sql/parser.h"
#include "tvr/strings.h"

namespace tvr::sql {

namespace {

struct ScopeEntry {
  std::string alias;  // lower-cased, may be empty
  size_t offset = 0;
  size_t width = 0;
};

struct Scope {
  std::vector<ScopeEntry> entries;
  Schema schema;
};

// Maps input columns of an Aggregate to its outputs while select items are
// being bound.
struct GroupContext {
  const Schema* input = nullptr;
  std::vector<size_t> keys;
  std::vector<AggregateOutput> outputs;
  std::vector<ColumnDef> output_defs;
};

class Validator {
 public:
  explicit Validator(const Catalog& catalog) : catalog_(catalog) {}

  PlanPtr query(const Query& q) {
    auto [plan, scope] = from_clause(q);
    if (q.where) {
      auto pred = bind(*q.where, scope, nullptr);
      require_boolean(pred, q.where->pos, "WHERE");
      auto node = std::make_shared<PlanNode>();
      node->kind = PlanKind::Filter;
      node->schema = plan->schema;
      node->inputs = {plan};
      node->predicate = std::move(pred);
      plan = node;
    }
    bool grouped = !q.group_by.empty();
    for (const auto& item : q.select) grouped = grouped || (!item.star && has_aggregate(item.expr));
    return grouped ? grouped_select(q, plan, scope) : plain_select(q, plan, scope);
  }

 private:
  static bool has_aggregate(const Expr& e) {
    if (e.kind == Expr::Kind::Aggregate) return true;
    for (const auto& a : e.args) {
      if (has_aggregate(a)) return true;
    }
    return false;
  }

  static void require_boolean(const BoundExpr& e, SourcePos pos, const char* where) {
    if (e.type != ValueKind::Boolean && e.type != ValueKind::Null) {
      throw ValidationError(std::string(where) + " condition must be BOOLEAN, got " +
                            std::string(kind_name(e.type)), pos);
    }
  }

  // ---- FROM ---------------------------------------------------------------

  std::pair<PlanPtr, Scope> from_clause(const Query& q) {
    PlanPtr plan;
    Scope scope;
    for (const auto& item : q.from) {
      auto [node, alias] = from_item(item);
      for (const auto& e : scope.entries) {
        if (!alias.empty() && e.alias == alias) {
          throw ValidationError("duplicate table alias '" + alias + "'", item.pos);
        }
      }
      scope.entries.push_back({alias, scope.schema.arity(), node->schema.arity()});
      if (!plan) {
        plan = node;
        scope.schema = node->schema;
        continue;
      }
      auto join = std::make_shared<PlanNode>();
      join->kind = PlanKind::Join;
      join->schema.columns = plan->schema.columns;
      join->schema.columns.insert(join->schema.columns.end(), node->schema.columns.begin(),
                                  node->schema.columns.end());
      join->schema.bounded = plan->schema.bounded && node->schema.bounded;
      join->inputs = {plan, node};
      join->predicate = BoundExpr::constant(Value::boolean(true));
      plan = join;
      scope.schema = join->schema;
    }
    return {plan, scope};
  }

  std::pair<PlanPtr, std::string> from_item(const FromItem& item) {
    switch (item.kind) {
      case FromItem::Kind::Table: {
        const SourceLog* log = catalog_.find(item.name);
        if (!log) throw ValidationError("unknown table '" + item.name + "'", item.pos);
        auto node = std::make_shared<PlanNode>();
        node->kind = PlanKind::Scan;
        node->source = to_lower(log->name);
        node->schema = log->schema;
        return {node, to_lower(item.alias.empty() ? item.name : item.alias)};
      }
      case FromItem::Kind::Subquery:
        return {query(*item.subquery), to_lower(item.alias)};
      case FromItem::Kind::Tvf:
        return {window_tvf(item), to_lower(item.alias.empty() ? item.name : item.alias)};
    }
    throw ValidationError("unsupported FROM item", item.pos);
  }

  PlanPtr window_tvf(const FromItem& item) {
    WindowKind kind;
    std::vector<std::string> params;
    if (iequals(item.name, "Tumble")) {
      kind = WindowKind::Tumble;
      params = {"data", "timecol", "dur", "offset"};
    } else if (iequals(item.name, "Hop")) {
      kind = WindowKind::Hop;
      params = {"data", "timecol", "dur", "hopsize", "offset"};
    } else {
      throw ValidationError("unknown table function '" + item.name + "'", item.pos);
    }
    std::map<std::string, const TvfArg*> bound;
    for (size_t i = 0; i < item.args.size(); ++i) {
      const auto& arg = item.args[i];
      std::string name = to_lower(arg.name);
      if (name.empty()) {
        if (i >= params.size()) throw ValidationError("too many arguments to " + item.name, arg.pos);
        name = params[i];
      }
      if (std::find(params.begin(), params.end(), name) == params.end()) {
        throw ValidationError("unknown parameter '" + arg.name + "' for " + item.name, arg.pos);
      }
      if (!bound.emplace(name, &arg).second) {
        throw ValidationError("parameter '" + name + "' given twice", arg.pos);
      }
    }
    auto required = [&](const std::string& name) -> const TvfArg& {
      auto it = bound.find(name);
      if (it == bound.end()) {
        throw ValidationError(item.name + " requires parameter '" + name + "'", item.pos);
      }
      return *it->second;
    };
    auto duration = [&](const TvfArg& arg, bool positive) {
      if (arg.kind != TvfArg::Kind::Expr || arg.expr.kind != Expr::Kind::Interval) {
        throw ValidationError("parameter '" + (arg.name.empty() ? std::string("?") : arg.name) +
                                  "' must be an INTERVAL literal", arg.pos);
      }
      if (positive && arg.expr.interval.count() <= 0) {
        throw ValidationError("window durations must be positive", arg.pos);
      }
      return arg.expr.interval;
    };

    const TvfArg& data = required("data");
    if (data.kind != TvfArg::Kind::Table) {
      throw ValidationError("parameter 'data' must be TABLE(<name>)", data.pos);
    }
    const SourceLog* log = catalog_.find(data.ident);
    if (!log) throw ValidationError("unknown table '" + data.ident + "'", data.pos);
    auto scan = std::make_shared<PlanNode>();
    scan->kind = PlanKind::Scan;
    scan->source = to_lower(log->name);
    scan->schema = log->schema;

    const TvfArg& timecol = required("timecol");
    if (timecol.kind != TvfArg::Kind::Descriptor) {
      throw ValidationError("parameter 'timecol' must be DESCRIPTOR(<column>)", timecol.pos);
    }
    auto idx = scan->schema.find(timecol.ident);
    if (!idx) throw ValidationError("unknown column '" + timecol.ident + "'", timecol.pos);
    if (!scan->schema.columns[*idx].is_event_time) {
      throw ValidationError("column '" + timecol.ident + "' is not a watermarked event-time column",
                            timecol.pos);
    }

    WindowSpec spec;
    spec.kind = kind;
    spec.timecol = *idx;
    spec.dur = duration(required("dur"), true);
    if (kind == WindowKind::Hop) spec.hopsize = duration(required("hopsize"), true);
    if (bound.contains("offset")) spec.offset = duration(*bound["offset"], false);

    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::WindowTvf;
    node->window = spec;
    node->schema = window_output_schema(scan->schema, spec, next_window_id_++);
    node->inputs = {scan};
    return node;
  }

  // ---- expressions --------------------------------------------------------

  size_t resolve(const Expr& e, const Scope& scope) const {
    std::string qual = to_lower(e.qualifier);
    std::optional<size_t> found;
    bool qualifier_seen = qual.empty();
    for (const auto& entry : scope.entries) {
      if (!qual.empty() && entry.alias != qual) continue;
      qualifier_seen = true;
      for (size_t i = entry.offset; i < entry.offset + entry.width; ++i) {
        if (!iequals(scope.schema.columns[i].name, e.name)) continue;
        if (found) {
          throw ValidationError("ambiguous column reference '" + print_expr(e) + "'", e.pos);
        }
        found = i;
      }
    }
    if (!qualifier_seen) throw ValidationError("unknown table alias '" + e.qualifier + "'", e.pos);
    if (!found) throw ValidationError("unknown column '" + print_expr(e) + "'", e.pos);
    return *found;
  }

  static bool is_window_partner(const ColumnDef& a, const ColumnDef& b) {
    return a.window_role != WindowRole::None && b.window_role != WindowRole::None &&
           a.window_id == b.window_id && a.window_role != b.window_role;
  }

  // Output index in a grouped query for input column `col`: a key, or a
  // column determined by a key.
  size_t group_column(const Expr& e, size_t col, GroupContext& g) const {
    for (size_t k = 0; k < g.keys.size(); ++k) {
      if (g.keys[k] == col) return k;
    }
    for (size_t k = 0; k < g.outputs.size(); ++k) {
      if (g.outputs[k].carried && g.outputs[k].column == col) return g.keys.size() + k;
    }
    const auto& def = g.input->columns[col];
    for (size_t key : g.keys) {
      if (!is_window_partner(def, g.input->columns[key])) continue;
      AggregateOutput out;
      out.carried = true;
      out.column = col;
      g.outputs.push_back(out);
      ColumnDef carried = def;
      carried.is_event_time = false;
      carried.watermark.reset();
      g.output_defs.push_back(std::move(carried));
      return g.keys.size() + g.outputs.size() - 1;
    }
    throw ValidationError("column '" + print_expr(e) + "' must appear in GROUP BY or an aggregate",
                          e.pos);
  }

  size_t aggregate_call(const Expr& e, const Scope& scope, GroupContext& g) const {
    AggregateCall call;
    call.func = e.agg;
    ColumnDef def;
    if (e.star) {
      def.name = "count";
      def.kind = ValueKind::Integer;
    } else {
      const Expr& arg = e.args[0];
      if (has_aggregate(arg)) throw ValidationError("nested aggregate", arg.pos);
      if (arg.kind != Expr::Kind::Column) {
        throw ValidationError("aggregate arguments must be column references", arg.pos);
      }
      size_t col = resolve(arg, scope);
      call.arg = col;
      const auto& in = scope.schema.columns[col];
      def.name = call.func == AggFunc::Count ? "count" : in.name;
      switch (call.func) {
        case AggFunc::Count: def.kind = ValueKind::Integer; break;
        case AggFunc::Sum:
          if (in.kind != ValueKind::Integer && in.kind != ValueKind::Duration) {
            throw ValidationError("SUM requires a numeric argument, got " +
                                  std::string(kind_name(in.kind)), arg.pos);
          }
          def.kind = in.kind;
          def.format = in.format;
          break;
        case AggFunc::Max:
        case AggFunc::Min:
          def.kind = in.kind;
          def.format = in.format;
          break;
      }
    }
    AggregateOutput out;
    out.call = call;
    for (size_t k = 0; k < g.outputs.size(); ++k) {
      if (!g.outputs[k].carried && g.outputs[k].call == call) return g.keys.size() + k;
    }
    g.outputs.push_back(out);
    g.output_defs.push_back(std::move(def));
    return g.keys.size() + g.outputs.size() - 1;
  }

  BoundExpr bind(const Expr& e, const Scope& scope, GroupContext* group) const {
    switch (e.kind) {
      case Expr::Kind::Column: {
        size_t col = resolve(e, scope);
        if (!group) return BoundExpr::column_ref(col, scope.schema.columns[col].kind);
        return BoundExpr::column_ref(group_column(e, col, *group), scope.schema.columns[col].kind);
      }
      case Expr::Kind::Aggregate: {
        if (!group) throw ValidationError("aggregate not allowed here", e.pos);
        size_t out = aggregate_call(e, scope, *group);
        return BoundExpr::column_ref(out, group->output_defs[out - group->keys.size()].kind);
      }
      case Expr::Kind::Integer: return BoundExpr::constant(Value::integer(e.integer));
      case Expr::Kind::String: return BoundExpr::constant(Value::text(e.name));
      case Expr::Kind::Interval: return BoundExpr::constant(Value::duration(e.interval));
      case Expr::Kind::Timestamp: return BoundExpr::constant(Value::timestamp(e.timestamp));
      case Expr::Kind::Boolean: return BoundExpr::constant(Value::boolean(e.boolean));
      case Expr::Kind::Null: return BoundExpr::constant(Value::null());
      case Expr::Kind::Binary: break;
    }
    BoundExpr lhs = bind(e.args[0], scope, group);
    BoundExpr rhs = bind(e.args[1], scope, group);
    BoundExpr out;
    out.kind = BoundExpr::Kind::Binary;
    out.op = e.op;
    out.type = binary_type(e, lhs.type, rhs.type);
    out.operands = {std::move(lhs), std::move(rhs)};
    return out;
  }

  static ValueKind binary_type(const Expr& e, ValueKind a, ValueKind b) {
    auto mismatch = [&]() {
      return ValidationError("type mismatch: " + std::string(kind_name(a)) + " " +
                                 std::string(op_text(e.op)) + " " + std::string(kind_name(b)),
                             e.pos);
    };
    using K = ValueKind;
    switch (e.op) {
      case BinaryOp::And:
        if ((a == K::Boolean || a == K::Null) && (b == K::Boolean || b == K::Null)) return K::Boolean;
        throw mismatch();
      case BinaryOp::Eq:
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
        if (a == b || a == K::Null || b == K::Null) return K::Boolean;
        throw mismatch();
      case BinaryOp::Add:
        if (a == K::Integer && b == K::Integer) return K::Integer;
        if ((a == K::Timestamp && b == K::Duration) || (a == K::Duration && b == K::Timestamp)) {
          return K::Timestamp;
        }
        if (a == K::Duration && b == K::Duration) return K::Duration;
        if (a == K::Null) return b;
        if (b == K::Null) return a;
        throw mismatch();
      case BinaryOp::Sub:
        if (a == K::Integer && b == K::Integer) return K::Integer;
        if (a == K::Timestamp && b == K::Duration) return K::Timestamp;
        if (a == K::Null) return b;
        if (b == K::Null) return a;
        throw mismatch();
    }
    throw mismatch();
  }

  // Verbatim column references forward their column definition; anything
  // else produces a plain, non-event-time column.
  static ColumnDef output_def(const SelectItem& item, const BoundExpr& bound,
                              const std::vector<ColumnDef>& input) {
    ColumnDef def;
    if (bound.kind == BoundExpr::Kind::Column) {
      def = input[bound.column];
    } else {
      def.kind = bound.type;
      if (bound.kind == BoundExpr::Kind::Binary && bound.operands[0].kind == BoundExpr::Kind::Column &&
          bound.type == ValueKind::Integer) {
        def.format = input[bound.operands[0].column].format;
      }
      def.name = print_expr(item.expr);
    }
    if (item.expr.kind == Expr::Kind::Column && bound.kind == BoundExpr::Kind::Column) {
      def.name = input[bound.column].name;
    }
    if (!item.alias.empty()) def.name = item.alias;
    return def;
  }

  PlanPtr plain_select(const Query& q, PlanPtr input, const Scope& scope) {
    auto node = std::make_shared<PlanNode>();
    node->kind = PlanKind::Project;
    node->schema.bounded = input->schema.bounded;
    node->inputs = {input};
    for (const auto& item : q.select) {
      if (item.star) {
        bool matched = item.qualifier.empty();
        for (const auto& entry : scope.entries) {
          if (!item.qualifier.empty() && entry.alias != to_lower(item.qualifier)) continue;
          matched = true;
          for (size_t i = entry.offset; i < entry.offset + entry.width; ++i) {
            node->exprs.push_back(BoundExpr::column_ref(i, scope.schema.columns[i].kind));
            node->schema.columns.push_back(scope.schema.columns[i]);
          }
        }
        if (!matched) throw ValidationError("unknown table alias '" + item.qualifier + "'", item.pos);
        continue;
      }
      auto bound = bind(item.expr, scope, nullptr);
      node->schema.columns.push_back(output_def(item, bound, scope.schema.columns));
      node->exprs.push_back(std::move(bound));
    }
    return node;
  }

  PlanPtr grouped_select(const Query& q, PlanPtr input, const Scope& scope) {
    GroupContext g;
    g.input = &scope.schema;
    std::vector<ColumnDef> key_defs;
    for (const auto& key : q.group_by) {
      if (key.kind != Expr::Kind::Column) {
        throw ValidationError("GROUP BY supports column references only", key.pos);
      }
      size_t col = resolve(key, scope);
      if (std::find(g.keys.begin(), g.keys.end(), col) != g.keys.end()) continue;
      g.keys.push_back(col);
      key_defs.push_back(scope.schema.columns[col]);
    }
    if (!input->schema.bounded) {
      bool has_event_key = std::any_of(key_defs.begin(), key_defs.end(),
                                       [](const ColumnDef& d) { return d.is_event_time; });
      if (!has_event_key) {
        throw ValidationError("unbounded GROUP BY requires an event-time key",
                              q.group_by.empty() ? q.pos : q.group_by.front().pos);
      }
    }

    std::vector<BoundExpr> exprs;
    std::vector<const SelectItem*> items;
    for (const auto& item : q.select) {
      if (item.star) throw ValidationError("'*' is not allowed in a grouped query", item.pos);
      exprs.push_back(bind(item.expr, scope, &g));
      items.push_back(&item);
    }

    auto agg = std::make_shared<PlanNode>();
    agg->kind = PlanKind::Aggregate;
    agg->inputs = {input};
    agg->group_keys = g.keys;
    agg->aggregate_outputs = g.outputs;
    agg->schema.bounded = input->schema.bounded;
    agg->schema.columns = key_defs;
    agg->schema.columns.insert(agg->schema.columns.end(), g.output_defs.begin(), g.output_defs.end());

    auto proj = std::make_shared<PlanNode>();
    proj->kind = PlanKind::Project;
    proj->inputs = {agg};
    proj->schema.bounded = agg->schema.bounded;
    for (size_t i = 0; i < exprs.size(); ++i) {
      proj->schema.columns.push_back(output_def(*items[i], exprs[i], agg->schema.columns));
    }
    proj->exprs = std::move(exprs);
    return proj;
  }

  const Catalog& catalog_;
  int next_window_id_ = 0;
};

}  // namespace

ValidatedQuery validate(const Query& query, const Catalog& catalog) {
  Validator v(catalog);
  ValidatedQuery out;
  out.plan = v.query(query);
  out.emit = query.emit.value_or(EmitSpec{});
  if (out.emit.after_watermark && out.plan->schema.event_time_columns().empty()) {
    throw ValidationError("EMIT AFTER WATERMARK requires an event-time column in the result",
                          query.pos);
  }
  return out;
}

}  // namespace tvr::sql
