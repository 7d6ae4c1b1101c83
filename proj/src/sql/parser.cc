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
#include "tvr/sql/parser.h"

#include <sstream>

#include "tvr/strings.h"

namespace tvr::sql {

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  Query run() {
    Query q = query(/*nested=*/false);
    if (cur().kind == TokenKind::Semicolon) ++i_;
    if (cur().kind != TokenKind::End) unexpected("end of query");
    return q;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    if (t.kind == TokenKind::Keyword || t.kind == TokenKind::Identifier) return "'" + t.text + "'";
    if (t.kind == TokenKind::String) return "string '" + t.text + "'";
    if (t.kind == TokenKind::Integer || t.kind == TokenKind::Interval) return t.text;
    return std::string(token_kind_name(t.kind));
  }

  [[noreturn]] void unexpected(const std::string& expected) const {
    throw ParseError("expected " + expected + " but found " + describe(cur()), cur().pos);
  }

  bool accept(TokenKind k) {
    if (cur().kind != k) return false;
    ++i_;
    return true;
  }
  bool accept_kw(std::string_view kw) {
    if (!cur().is_keyword(kw)) return false;
    ++i_;
    return true;
  }
  void expect(TokenKind k) {
    if (!accept(k)) unexpected(std::string(token_kind_name(k)));
  }
  void expect_kw(std::string_view kw) {
    if (!accept_kw(kw)) unexpected(std::string(kw));
  }
  std::string identifier(const char* what = "identifier") {
    if (cur().kind != TokenKind::Identifier) unexpected(what);
    return toks_[i_++].text;
  }

  Query query(bool nested) {
    Query q;
    q.pos = cur().pos;
    expect_kw("SELECT");
    do {
      q.select.push_back(select_item());
    } while (accept(TokenKind::Comma));
    expect_kw("FROM");
    do {
      q.from.push_back(from_item());
    } while (accept(TokenKind::Comma));
    if (accept_kw("WHERE")) q.where = expr();
    if (accept_kw("GROUP")) {
      expect_kw("BY");
      do {
        q.group_by.push_back(expr());
      } while (accept(TokenKind::Comma));
    }
    if (cur().is_keyword("EMIT")) {
      if (nested) throw ParseError("nested EMIT unsupported", cur().pos);
      ++i_;
      q.emit = emit();
    }
    return q;
  }

  EmitSpec emit() {
    EmitSpec spec;
    SourcePos start = cur().pos;
    bool any = false;
    if (accept_kw("STREAM")) {
      spec.stream = true;
      any = true;
    }
    bool need_after = false;
    while (true) {
      if (!cur().is_keyword("AFTER")) {
        if (need_after) unexpected("AFTER");
        break;
      }
      SourcePos at = cur().pos;
      ++i_;
      if (accept_kw("WATERMARK")) {
        if (spec.after_watermark) throw ParseError("AFTER WATERMARK given twice", at);
        spec.after_watermark = true;
      } else if (accept_kw("DELAY")) {
        if (spec.delay) throw ParseError("AFTER DELAY given twice", at);
        if (cur().kind != TokenKind::Interval) unexpected("INTERVAL literal");
        spec.delay = toks_[i_++].interval;
      } else {
        unexpected("WATERMARK or DELAY");
      }
      any = true;
      need_after = accept_kw("AND");
    }
    if (!any) throw ParseError("EMIT requires STREAM or AFTER", start);
    return spec;
  }

  // A bare identifier that can serve as an alias (not a clause keyword).
  std::string optional_alias() {
    if (accept_kw("AS")) return identifier("alias");
    if (cur().kind == TokenKind::Identifier) return toks_[i_++].text;
    return {};
  }

  SelectItem select_item() {
    SelectItem item;
    item.pos = cur().pos;
    if (accept(TokenKind::Star)) {
      item.star = true;
      return item;
    }
    if (cur().kind == TokenKind::Identifier && ahead(1).kind == TokenKind::Dot &&
        ahead(2).kind == TokenKind::Star) {
      item.star = true;
      item.qualifier = toks_[i_].text;
      i_ += 3;
      return item;
    }
    item.expr = expr();
    item.alias = optional_alias();
    return item;
  }

  FromItem from_item() {
    FromItem item;
    item.pos = cur().pos;
    if (accept(TokenKind::LParen)) {
      item.kind = FromItem::Kind::Subquery;
      item.subquery = std::make_shared<const Query>(query(/*nested=*/true));
      expect(TokenKind::RParen);
    } else {
      item.name = identifier("table name");
      if (accept(TokenKind::LParen)) {
        item.kind = FromItem::Kind::Tvf;
        tvf_args(item);
      }
    }
    item.alias = optional_alias();
    return item;
  }

  // Arguments may be separated by commas; a missing comma is tolerated
  // before a named argument (`a => x  b => y`).
  void tvf_args(FromItem& item) {
    if (accept(TokenKind::RParen)) return;
    while (true) {
      item.args.push_back(tvf_arg());
      if (accept(TokenKind::RParen)) return;
      if (accept(TokenKind::Comma)) continue;
      if (cur().kind == TokenKind::Identifier && ahead(1).kind == TokenKind::Arrow) continue;
      unexpected("',' or ')'");
    }
  }

  TvfArg tvf_arg() {
    TvfArg arg;
    arg.pos = cur().pos;
    if (cur().kind == TokenKind::Identifier && ahead(1).kind == TokenKind::Arrow) {
      arg.name = toks_[i_].text;
      i_ += 2;
    }
    if (accept_kw("TABLE")) {
      arg.kind = TvfArg::Kind::Table;
      if (accept(TokenKind::LParen)) {
        arg.ident = identifier("table name");
        expect(TokenKind::RParen);
      } else {
        arg.ident = identifier("table name");
      }
    } else if (accept_kw("DESCRIPTOR")) {
      arg.kind = TvfArg::Kind::Descriptor;
      expect(TokenKind::LParen);
      arg.ident = identifier("column name");
      expect(TokenKind::RParen);
    } else {
      arg.kind = TvfArg::Kind::Expr;
      arg.expr = expr();
    }
    return arg;
  }

  Expr expr() {
    Expr lhs = comparison();
    while (cur().is_keyword("AND")) {
      SourcePos pos = cur().pos;
      ++i_;
      lhs = Expr::binary(BinaryOp::And, std::move(lhs), comparison(), pos);
    }
    return lhs;
  }

  Expr comparison() {
    Expr lhs = additive();
    BinaryOp op;
    switch (cur().kind) {
      case TokenKind::Eq: op = BinaryOp::Eq; break;
      case TokenKind::Lt: op = BinaryOp::Lt; break;
      case TokenKind::Le: op = BinaryOp::Le; break;
      case TokenKind::Gt: op = BinaryOp::Gt; break;
      case TokenKind::Ge: op = BinaryOp::Ge; break;
      default: return lhs;
    }
    SourcePos pos = cur().pos;
    ++i_;
    return Expr::binary(op, std::move(lhs), additive(), pos);
  }

  Expr additive() {
    Expr lhs = primary();
    while (cur().kind == TokenKind::Plus || cur().kind == TokenKind::Minus) {
      BinaryOp op = cur().kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
      SourcePos pos = cur().pos;
      ++i_;
      lhs = Expr::binary(op, std::move(lhs), primary(), pos);
    }
    return lhs;
  }

  Expr primary() {
    const Token& t = cur();
    Expr e;
    e.pos = t.pos;
    switch (t.kind) {
      case TokenKind::Integer:
        e.kind = Expr::Kind::Integer;
        e.integer = t.integer;
        ++i_;
        return e;
      case TokenKind::Minus:
        if (ahead(1).kind == TokenKind::Integer) {
          e.kind = Expr::Kind::Integer;
          e.integer = -ahead(1).integer;
          i_ += 2;
          return e;
        }
        break;
      case TokenKind::String:
        e.kind = Expr::Kind::String;
        e.name = t.text;
        ++i_;
        return e;
      case TokenKind::Interval:
        e.kind = Expr::Kind::Interval;
        e.interval = t.interval;
        ++i_;
        return e;
      case TokenKind::TimestampLiteral:
        e.kind = Expr::Kind::Timestamp;
        e.timestamp = t.timestamp;
        ++i_;
        return e;
      case TokenKind::LParen: {
        ++i_;
        Expr inner = expr();
        expect(TokenKind::RParen);
        return inner;
      }
      case TokenKind::Keyword:
        if (t.is_keyword("NULL")) {
          e.kind = Expr::Kind::Null;
          ++i_;
          return e;
        }
        if (t.is_keyword("TRUE") || t.is_keyword("FALSE")) {
          e.kind = Expr::Kind::Boolean;
          e.boolean = t.is_keyword("TRUE");
          ++i_;
          return e;
        }
        break;
      case TokenKind::Identifier:
        if (ahead(1).kind == TokenKind::LParen) return aggregate();
        ++i_;
        if (accept(TokenKind::Dot)) {
          std::string column = identifier("column name");
          return Expr::column(t.text, std::move(column), t.pos);
        }
        return Expr::column("", t.text, t.pos);
      default: break;
    }
    unexpected("expression");
  }

  Expr aggregate() {
    const Token& name = cur();
    Expr e;
    e.kind = Expr::Kind::Aggregate;
    e.pos = name.pos;
    std::string upper = to_upper(name.text);
    if (upper == "MAX") {
      e.agg = AggFunc::Max;
    } else if (upper == "MIN") {
      e.agg = AggFunc::Min;
    } else if (upper == "SUM") {
      e.agg = AggFunc::Sum;
    } else if (upper == "COUNT") {
      e.agg = AggFunc::Count;
    } else {
      throw ParseError("unknown function '" + name.text + "'", name.pos);
    }
    i_ += 2;
    if (e.agg == AggFunc::Count && accept(TokenKind::Star)) {
      e.star = true;
    } else {
      e.args.push_back(expr());
    }
    expect(TokenKind::RParen);
    return e;
  }

  const std::vector<Token>& toks_;
  size_t i_ = 0;
};

void print(std::ostringstream& out, const Query& q);

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

void print(std::ostringstream& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Column:
      if (!e.qualifier.empty()) out << e.qualifier << '.';
      out << e.name;
      return;
    case Expr::Kind::Integer: out << e.integer; return;
    case Expr::Kind::String: out << quote(e.name); return;
    case Expr::Kind::Interval: out << "INTERVAL '" << e.interval.count() << "' MINUTE"; return;
    case Expr::Kind::Timestamp: out << "TIMESTAMP '" << format_time(e.timestamp) << "'"; return;
    case Expr::Kind::Boolean: out << (e.boolean ? "TRUE" : "FALSE"); return;
    case Expr::Kind::Null: out << "NULL"; return;
    case Expr::Kind::Binary:
      out << '(';
      print(out, e.args[0]);
      out << ' ' << op_text(e.op) << ' ';
      print(out, e.args[1]);
      out << ')';
      return;
    case Expr::Kind::Aggregate:
      out << agg_name(e.agg) << '(';
      if (e.star) {
        out << '*';
      } else {
        print(out, e.args[0]);
      }
      out << ')';
      return;
  }
}

void print(std::ostringstream& out, const Query& q) {
  out << "SELECT ";
  for (size_t i = 0; i < q.select.size(); ++i) {
    const auto& item = q.select[i];
    if (i) out << ", ";
    if (item.star) {
      if (!item.qualifier.empty()) out << item.qualifier << '.';
      out << '*';
      continue;
    }
    print(out, item.expr);
    if (!item.alias.empty()) out << " AS " << item.alias;
  }
  out << " FROM ";
  for (size_t i = 0; i < q.from.size(); ++i) {
    const auto& f = q.from[i];
    if (i) out << ", ";
    switch (f.kind) {
      case FromItem::Kind::Table: out << f.name; break;
      case FromItem::Kind::Subquery:
        out << '(';
        print(out, *f.subquery);
        out << ')';
        break;
      case FromItem::Kind::Tvf:
        out << f.name << '(';
        for (size_t k = 0; k < f.args.size(); ++k) {
          const auto& a = f.args[k];
          if (k) out << ", ";
          if (!a.name.empty()) out << a.name << " => ";
          switch (a.kind) {
            case TvfArg::Kind::Table: out << "TABLE(" << a.ident << ')'; break;
            case TvfArg::Kind::Descriptor: out << "DESCRIPTOR(" << a.ident << ')'; break;
            case TvfArg::Kind::Expr: print(out, a.expr); break;
          }
        }
        out << ')';
        break;
    }
    if (!f.alias.empty()) out << " AS " << f.alias;
  }
  if (q.where) {
    out << " WHERE ";
    print(out, *q.where);
  }
  if (!q.group_by.empty()) {
    out << " GROUP BY ";
    for (size_t i = 0; i < q.group_by.size(); ++i) {
      if (i) out << ", ";
      print(out, q.group_by[i]);
    }
  }
  if (q.emit) {
    out << " EMIT";
    if (q.emit->stream) out << " STREAM";
    bool first = true;
    if (q.emit->delay) {
      out << " AFTER DELAY INTERVAL '" << q.emit->delay->count() << "' MINUTE";
      first = false;
    }
    if (q.emit->after_watermark) out << (first ? "" : " AND") << " AFTER WATERMARK";
  }
}

}  // namespace

Query parse_query(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

Query parse_query(std::string_view text) { return parse_query(tokenize(text)); }

std::string print_query(const Query& q) {
  std::ostringstream out;
  print(out, q);
  return out.str();
}

std::string print_expr(const Expr& e) {
  std::ostringstream out;
  print(out, e);
  return out.str();
}

}  // namespace tvr::sql
