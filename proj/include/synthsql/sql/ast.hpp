#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace synthsql::sql {

enum class StatementKind { Select, Insert, Update, Delete, Alter, Other };

enum class LiteralType { String, Number, Temporal, Null, Bool };

enum class ExprKind {
  Literal,
  ColumnRef,
  Star,        // bare * or t.*
  Unary,       // op + args[0]
  Binary,      // args[0] op args[1]
  FunctionCall,
  Case,
  Cast,
  Subquery,    // (SELECT ...) used as an expression
  InList,      // args[0] IN (args[1..])
  InSubquery,  // args[0] IN (subquery)
  Exists,      // EXISTS (subquery)
  Between,     // args[0] BETWEEN args[1] AND args[2]
  Like,        // args[0] LIKE args[1]
  IsNull,      // args[0] IS [NOT] NULL
};

struct SelectStmt;
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct OrderItem {
  ExprPtr expr;
  bool has_dir = false;
  bool desc = false;
};

struct Expr {
  ExprKind kind;

  // Literal
  LiteralType lit_type = LiteralType::Null;
  std::string lit_text;

  // ColumnRef; scope_depth > 0 iff the reference crosses a subquery boundary
  std::string qualifier;
  std::string column;
  int scope_depth = 0;

  // Unary / Binary / operands of In/Between/Like/IsNull, function arguments
  std::string op;
  std::vector<ExprPtr> args;

  // result-column alias (select list only)
  std::string alias;

  // FunctionCall
  std::string func_name;
  bool windowed = false;
  bool star_arg = false;       // COUNT(*)
  bool func_distinct = false;  // COUNT(DISTINCT x)
  std::vector<ExprPtr> partition_by;
  std::vector<OrderItem> window_order;

  // Case
  ExprPtr case_operand;
  std::vector<ExprPtr> when_exprs;
  std::vector<ExprPtr> then_exprs;
  ExprPtr else_expr;

  // Cast
  std::string cast_type;

  // Subquery / InSubquery / Exists
  std::unique_ptr<SelectStmt> subquery;
  bool correlated = false;

  // NOT IN / NOT LIKE / NOT EXISTS / NOT BETWEEN / IS NOT NULL
  bool negated = false;
  std::string like_escape;
};

struct TableRef {
  enum class Kind { Table, Subquery };
  Kind kind = Kind::Table;
  std::string name;   // base table or CTE name
  std::string alias;  // empty when none
  std::unique_ptr<SelectStmt> subquery;
  bool correlated = false;  // for Kind::Subquery
};

enum class JoinType { Leading, Comma, Inner, Cross, Left, Right, Full };

struct JoinItem {
  JoinType join = JoinType::Leading;
  TableRef ref;
  ExprPtr on;  // null when no ON clause
};

struct SelectCore {
  bool distinct = false;
  std::vector<ExprPtr> select_list;
  std::vector<JoinItem> from;
  ExprPtr where;
  std::vector<ExprPtr> group_by;
  ExprPtr having;
};

enum class SetOp { Union, UnionAll, Intersect, Except };

struct SelectStmt {
  std::vector<SelectCore> cores;  // >= 1
  std::vector<SetOp> ops;         // cores.size() - 1
  std::vector<OrderItem> order_by;
  ExprPtr limit;
  ExprPtr offset;
};

struct CteDef {
  std::string name;
  std::vector<std::string> columns;
  std::unique_ptr<SelectStmt> query;
};

struct InsertStmt {
  std::string table;
  std::vector<std::string> columns;
  std::vector<std::vector<ExprPtr>> rows;  // VALUES form
  std::unique_ptr<SelectStmt> select;      // INSERT ... SELECT form
};

struct UpdateStmt {
  std::string table;
  std::vector<std::pair<std::string, ExprPtr>> assignments;
  ExprPtr where;
};

struct DeleteStmt {
  std::string table;
  ExprPtr where;
};

struct AlterStmt {
  enum class Action { AddColumn, RenameTable, RenameColumn, DropColumn };
  std::string table;
  Action action = Action::AddColumn;
  std::string name1;        // column name / new table name
  std::string name2;        // rename-column target
  std::string column_type;  // AddColumn
  ExprPtr default_expr;     // AddColumn DEFAULT (...)
};

struct SqlTree {
  StatementKind kind = StatementKind::Other;
  std::vector<CteDef> ctes;
  std::unique_ptr<SelectStmt> select;
  std::unique_ptr<InsertStmt> insert;
  std::unique_ptr<UpdateStmt> update;
  std::unique_ptr<DeleteStmt> del;
  std::unique_ptr<AlterStmt> alter;
  std::string other_verb;  // leading verb for StatementKind::Other
  int token_count = 0;     // lexer token count excluding the end marker
};

}  // namespace synthsql::sql
