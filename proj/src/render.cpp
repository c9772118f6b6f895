#include "synthsql/sql/render.hpp"

#include <sstream>

namespace synthsql::sql {

namespace {

std::string quote_string(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

bool is_composite(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Literal:
    case ExprKind::ColumnRef:
    case ExprKind::Star:
    case ExprKind::FunctionCall:
    case ExprKind::Cast:
    case ExprKind::Case:
    case ExprKind::Subquery:
      return false;
    default:
      return true;
  }
}

std::string child(const Expr& e) {
  std::string s = render_expr(e);
  if (is_composite(e)) return "(" + s + ")";
  return s;
}

std::string render_order_items(const std::vector<OrderItem>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += render_expr(*items[i].expr);
    if (items[i].has_dir) out += items[i].desc ? " DESC" : " ASC";
  }
  return out;
}

std::string render_select(const SelectStmt& stmt);

std::string render_table_ref(const TableRef& ref) {
  std::string out;
  if (ref.kind == TableRef::Kind::Subquery)
    out = "(" + render_select(*ref.subquery) + ")";
  else
    out = ref.name;
  if (!ref.alias.empty()) out += " AS " + ref.alias;
  return out;
}

std::string render_core(const SelectCore& core) {
  std::ostringstream out;
  out << "SELECT ";
  if (core.distinct) out << "DISTINCT ";
  for (std::size_t i = 0; i < core.select_list.size(); ++i) {
    if (i) out << ", ";
    const Expr& e = *core.select_list[i];
    out << render_expr(e);
    if (!e.alias.empty()) out << " AS " << e.alias;
  }
  if (!core.from.empty()) {
    out << " FROM ";
    for (std::size_t i = 0; i < core.from.size(); ++i) {
      const JoinItem& item = core.from[i];
      switch (item.join) {
        case JoinType::Leading: break;
        case JoinType::Comma: out << ", "; break;
        case JoinType::Inner: out << " JOIN "; break;
        case JoinType::Cross: out << " CROSS JOIN "; break;
        case JoinType::Left: out << " LEFT OUTER JOIN "; break;
        case JoinType::Right: out << " RIGHT OUTER JOIN "; break;
        case JoinType::Full: out << " FULL OUTER JOIN "; break;
      }
      out << render_table_ref(item.ref);
      if (item.on) out << " ON " << render_expr(*item.on);
    }
  }
  if (core.where) out << " WHERE " << render_expr(*core.where);
  if (!core.group_by.empty()) {
    out << " GROUP BY ";
    for (std::size_t i = 0; i < core.group_by.size(); ++i) {
      if (i) out << ", ";
      out << render_expr(*core.group_by[i]);
    }
  }
  if (core.having) out << " HAVING " << render_expr(*core.having);
  return out.str();
}

std::string render_select(const SelectStmt& stmt) {
  std::string out = render_core(stmt.cores[0]);
  for (std::size_t i = 0; i < stmt.ops.size(); ++i) {
    switch (stmt.ops[i]) {
      case SetOp::Union: out += " UNION "; break;
      case SetOp::UnionAll: out += " UNION ALL "; break;
      case SetOp::Intersect: out += " INTERSECT "; break;
      case SetOp::Except: out += " EXCEPT "; break;
    }
    out += render_core(stmt.cores[i + 1]);
  }
  if (!stmt.order_by.empty()) out += " ORDER BY " + render_order_items(stmt.order_by);
  if (stmt.limit) out += " LIMIT " + render_expr(*stmt.limit);
  if (stmt.offset) out += " OFFSET " + render_expr(*stmt.offset);
  return out;
}

}  // namespace

std::string render_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Literal:
      switch (e.lit_type) {
        case LiteralType::Null: return "NULL";
        case LiteralType::Bool: return e.lit_text;
        case LiteralType::Number: return e.lit_text;
        default: return quote_string(e.lit_text);
      }
    case ExprKind::ColumnRef:
      return e.qualifier.empty() ? e.column : e.qualifier + "." + e.column;
    case ExprKind::Star:
      return e.qualifier.empty() ? "*" : e.qualifier + ".*";
    case ExprKind::Unary:
      if (e.op == "NOT") return "NOT " + child(*e.args[0]);
      return e.op + child(*e.args[0]);
    case ExprKind::Binary:
      return child(*e.args[0]) + " " + e.op + " " + child(*e.args[1]);
    case ExprKind::FunctionCall: {
      std::string out = e.func_name + "(";
      if (e.star_arg) {
        out += "*";
      } else {
        if (e.func_distinct) out += "DISTINCT ";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i) out += ", ";
          out += render_expr(*e.args[i]);
        }
      }
      out += ")";
      if (e.windowed) {
        out += " OVER (";
        if (!e.partition_by.empty()) {
          out += "PARTITION BY ";
          for (std::size_t i = 0; i < e.partition_by.size(); ++i) {
            if (i) out += ", ";
            out += render_expr(*e.partition_by[i]);
          }
        }
        if (!e.window_order.empty()) {
          if (!e.partition_by.empty()) out += " ";
          out += "ORDER BY " + render_order_items(e.window_order);
        }
        out += ")";
      }
      return out;
    }
    case ExprKind::Case: {
      std::string out = "CASE";
      if (e.case_operand) out += " " + child(*e.case_operand);
      for (std::size_t i = 0; i < e.when_exprs.size(); ++i) {
        out += " WHEN " + render_expr(*e.when_exprs[i]);
        out += " THEN " + render_expr(*e.then_exprs[i]);
      }
      if (e.else_expr) out += " ELSE " + render_expr(*e.else_expr);
      out += " END";
      return out;
    }
    case ExprKind::Cast:
      return "CAST(" + render_expr(*e.args[0]) + " AS " + e.cast_type + ")";
    case ExprKind::Subquery:
      return "(" + render_select(*e.subquery) + ")";
    case ExprKind::InList: {
      std::string out = child(*e.args[0]);
      out += e.negated ? " NOT IN (" : " IN (";
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        if (i > 1) out += ", ";
        out += render_expr(*e.args[i]);
      }
      out += ")";
      return out;
    }
    case ExprKind::InSubquery:
      return child(*e.args[0]) + (e.negated ? " NOT IN (" : " IN (") +
             render_select(*e.subquery) + ")";
    case ExprKind::Exists:
      return std::string(e.negated ? "NOT " : "") + "EXISTS (" + render_select(*e.subquery) + ")";
    case ExprKind::Between:
      return child(*e.args[0]) + (e.negated ? " NOT BETWEEN " : " BETWEEN ") +
             child(*e.args[1]) + " AND " + child(*e.args[2]);
    case ExprKind::Like: {
      std::string out = child(*e.args[0]) + (e.negated ? " NOT " : " ") + e.op + " " +
                        child(*e.args[1]);
      if (!e.like_escape.empty()) out += " ESCAPE " + quote_string(e.like_escape);
      return out;
    }
    case ExprKind::IsNull:
      return child(*e.args[0]) + (e.negated ? " IS NOT NULL" : " IS NULL");
  }
  return "";
}

std::string render(const SqlTree& tree) {
  std::string out;
  if (!tree.ctes.empty()) {
    out += "WITH ";
    for (std::size_t i = 0; i < tree.ctes.size(); ++i) {
      if (i) out += ", ";
      out += tree.ctes[i].name;
      if (!tree.ctes[i].columns.empty()) {
        out += "(";
        for (std::size_t j = 0; j < tree.ctes[i].columns.size(); ++j) {
          if (j) out += ", ";
          out += tree.ctes[i].columns[j];
        }
        out += ")";
      }
      out += " AS (" + render_select(*tree.ctes[i].query) + ")";
    }
    out += " ";
  }
  switch (tree.kind) {
    case StatementKind::Select:
      out += render_select(*tree.select);
      break;
    case StatementKind::Insert: {
      const InsertStmt& ins = *tree.insert;
      out += "INSERT INTO " + ins.table;
      if (!ins.columns.empty()) {
        out += " (";
        for (std::size_t i = 0; i < ins.columns.size(); ++i) {
          if (i) out += ", ";
          out += ins.columns[i];
        }
        out += ")";
      }
      if (ins.select) {
        out += " " + render_select(*ins.select);
      } else {
        out += " VALUES ";
        for (std::size_t r = 0; r < ins.rows.size(); ++r) {
          if (r) out += ", ";
          out += "(";
          for (std::size_t i = 0; i < ins.rows[r].size(); ++i) {
            if (i) out += ", ";
            out += render_expr(*ins.rows[r][i]);
          }
          out += ")";
        }
      }
      break;
    }
    case StatementKind::Update: {
      const UpdateStmt& upd = *tree.update;
      out += "UPDATE " + upd.table + " SET ";
      for (std::size_t i = 0; i < upd.assignments.size(); ++i) {
        if (i) out += ", ";
        out += upd.assignments[i].first + " = " + render_expr(*upd.assignments[i].second);
      }
      if (upd.where) out += " WHERE " + render_expr(*upd.where);
      break;
    }
    case StatementKind::Delete:
      out += "DELETE FROM " + tree.del->table;
      if (tree.del->where) out += " WHERE " + render_expr(*tree.del->where);
      break;
    case StatementKind::Alter: {
      const AlterStmt& alt = *tree.alter;
      out += "ALTER TABLE " + alt.table;
      switch (alt.action) {
        case AlterStmt::Action::AddColumn:
          out += " ADD COLUMN " + alt.name1 + " " + alt.column_type;
          if (alt.default_expr) out += " DEFAULT (" + render_expr(*alt.default_expr) + ")";
          break;
        case AlterStmt::Action::RenameTable:
          out += " RENAME TO " + alt.name1;
          break;
        case AlterStmt::Action::RenameColumn:
          out += " RENAME COLUMN " + alt.name1 + " TO " + alt.name2;
          break;
        case AlterStmt::Action::DropColumn:
          out += " DROP COLUMN " + alt.name1;
          break;
      }
      break;
    }
    case StatementKind::Other:
      out += tree.other_verb;
      break;
  }
  return out;
}

bool tree_equal(const SqlTree& a, const SqlTree& b) {
  // canonical rendering is injective over the fields the tree carries
  return a.kind == b.kind && render(a) == render(b);
}

}  // namespace synthsql::sql
