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
#include "tvr/plan.h"

#include <sstream>

#include "tvr/error.h"

namespace tvr {

BoundExpr BoundExpr::column_ref(size_t index, ValueKind type) {
  BoundExpr e;
  e.kind = Kind::Column;
  e.column = index;
  e.type = type;
  return e;
}

BoundExpr BoundExpr::constant(Value v) {
  BoundExpr e;
  e.kind = Kind::Literal;
  e.type = v.kind();
  e.literal = std::move(v);
  return e;
}

bool is_true(const Value& v) { return v.kind() == ValueKind::Boolean && v.as_boolean(); }

namespace {

Value arithmetic(sql::BinaryOp op, const Value& a, const Value& b) {
  using sql::BinaryOp;
  if (a.kind() == ValueKind::Integer && b.kind() == ValueKind::Integer) {
    return Value::integer(op == BinaryOp::Add ? a.as_integer() + b.as_integer()
                                              : a.as_integer() - b.as_integer());
  }
  if (a.kind() == ValueKind::Timestamp && b.kind() == ValueKind::Duration) {
    return Value::timestamp(op == BinaryOp::Add ? a.as_timestamp() + b.as_duration()
                                                : a.as_timestamp() - b.as_duration());
  }
  if (op == BinaryOp::Add && a.kind() == ValueKind::Duration && b.kind() == ValueKind::Timestamp) {
    return Value::timestamp(b.as_timestamp() + a.as_duration());
  }
  if (op == BinaryOp::Add && a.kind() == ValueKind::Duration && b.kind() == ValueKind::Duration) {
    return Value::duration(a.as_duration() + b.as_duration());
  }
  throw InternalError("arithmetic on " + std::string(kind_name(a.kind())) + " and " +
                      std::string(kind_name(b.kind())));
}

}  // namespace

Value evaluate(const BoundExpr& expr, const Row& row) {
  using sql::BinaryOp;
  switch (expr.kind) {
    case BoundExpr::Kind::Column: return row[expr.column];
    case BoundExpr::Kind::Literal: return expr.literal;
    case BoundExpr::Kind::Binary: break;
  }
  Value lhs = evaluate(expr.operands[0], row);
  if (expr.op == BinaryOp::And) {
    if (lhs.kind() == ValueKind::Boolean && !lhs.as_boolean()) return Value::boolean(false);
    Value rhs = evaluate(expr.operands[1], row);
    if (rhs.kind() == ValueKind::Boolean && !rhs.as_boolean()) return Value::boolean(false);
    if (lhs.is_null() || rhs.is_null()) return Value::null();
    return Value::boolean(true);
  }
  Value rhs = evaluate(expr.operands[1], row);
  if (lhs.is_null() || rhs.is_null()) return Value::null();
  switch (expr.op) {
    case BinaryOp::Add:
    case BinaryOp::Sub: return arithmetic(expr.op, lhs, rhs);
    default: break;
  }
  auto cmp = *sql_compare(lhs, rhs);
  switch (expr.op) {
    case BinaryOp::Eq: return Value::boolean(cmp == 0);
    case BinaryOp::Lt: return Value::boolean(cmp < 0);
    case BinaryOp::Le: return Value::boolean(cmp <= 0);
    case BinaryOp::Gt: return Value::boolean(cmp > 0);
    case BinaryOp::Ge: return Value::boolean(cmp >= 0);
    default: break;
  }
  throw InternalError("unhandled operator");
}

std::set<std::string> referenced_sources(const PlanNode& plan) {
  std::set<std::string> out;
  if (plan.kind == PlanKind::Scan) out.insert(plan.source);
  for (const auto& in : plan.inputs) {
    auto sub = referenced_sources(*in);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {

void render_expr(std::ostringstream& out, const BoundExpr& e) {
  switch (e.kind) {
    case BoundExpr::Kind::Column: out << '#' << e.column; return;
    case BoundExpr::Kind::Literal:
      switch (e.literal.kind()) {
        case ValueKind::Null: out << "NULL"; break;
        case ValueKind::Integer: out << e.literal.as_integer(); break;
        case ValueKind::Text: out << '\'' << e.literal.as_text() << '\''; break;
        case ValueKind::Timestamp: out << format_time(e.literal.as_timestamp()); break;
        case ValueKind::Duration: out << e.literal.as_duration().count() << "min"; break;
        case ValueKind::Boolean: out << (e.literal.as_boolean() ? "TRUE" : "FALSE"); break;
      }
      return;
    case BoundExpr::Kind::Binary:
      out << '(';
      render_expr(out, e.operands[0]);
      out << ' ' << sql::op_text(e.op) << ' ';
      render_expr(out, e.operands[1]);
      out << ')';
      return;
  }
}

void render(std::ostringstream& out, const PlanNode& node, int depth) {
  out << std::string(depth * 2, ' ');
  switch (node.kind) {
    case PlanKind::Scan: out << "Scan " << node.source; break;
    case PlanKind::WindowTvf:
      out << (node.window.kind == WindowKind::Tumble ? "Tumble" : "Hop") << " timecol=#"
          << node.window.timecol << " dur=" << node.window.dur.count();
      if (node.window.kind == WindowKind::Hop) out << " hop=" << node.window.hopsize.count();
      out << " offset=" << node.window.offset.count();
      break;
    case PlanKind::Filter:
      out << "Filter ";
      render_expr(out, node.predicate);
      break;
    case PlanKind::Project:
      out << "Project";
      for (const auto& e : node.exprs) {
        out << ' ';
        render_expr(out, e);
      }
      break;
    case PlanKind::Join:
      out << "Join ";
      render_expr(out, node.predicate);
      break;
    case PlanKind::Aggregate:
      out << "Aggregate keys=";
      for (size_t i = 0; i < node.group_keys.size(); ++i) out << (i ? "," : "") << '#' << node.group_keys[i];
      for (const auto& o : node.aggregate_outputs) {
        if (o.carried) {
          out << " carry(#" << o.column << ')';
        } else {
          out << ' ' << sql::agg_name(o.call.func) << '(';
          if (o.call.arg) {
            out << '#' << *o.call.arg;
          } else {
            out << '*';
          }
          out << ')';
        }
      }
      break;
  }
  out << " ->";
  for (const auto& c : node.schema.columns) {
    out << ' ' << c.name << ':' << kind_name(c.kind);
    if (c.is_event_time) out << "[et " << to_string(*c.watermark) << ']';
  }
  out << '\n';
  for (const auto& in : node.inputs) render(out, *in, depth + 1);
}

}  // namespace

std::string explain(const PlanNode& plan) {
  std::ostringstream out;
  render(out, plan, 0);
  return out.str();
}

}  // namespace tvr
