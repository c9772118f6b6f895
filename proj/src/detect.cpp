#include "synthsql/sql/detect.hpp"

#include <regex>
#include <set>

#include "synthsql/errors.hpp"
#include "synthsql/sql/parser.hpp"
#include "synthsql/util.hpp"

namespace synthsql::sql {

namespace {

const std::regex& pattern_for(const std::string& fmt) {
  static const std::regex date(R"(^\d{4}-\d{2}-\d{2}$)");
  static const std::regex datetime(R"(^\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}$)");
  static const std::regex clock(R"(^\d{2}:\d{2}:\d{2}$)");
  static const std::regex year(R"(^\d{4}$)");
  static const std::regex none("$^");
  if (fmt == "YYYY-MM-DD") return date;
  if (fmt == "YYYY-MM-DD HH:MM:SS") return datetime;
  if (fmt == "HH:MM:SS") return clock;
  if (fmt == "YYYY") return year;
  return none;
}

// Tree walker collecting every feature in one pass; detectors project it.
struct Features {
  StructureSet structures;
  ActionSet actions;
  std::vector<std::string> warnings;
  std::set<std::string> base_tables;  // lower-cased, CTE names excluded
  std::set<std::string> cte_names;
  int function_count = 0;
  int join_count = 0;
  int window_function_count = 0;
  int cte_count = 0;
  int subquery_count = 0;
};

class Walker {
 public:
  Walker(const FunctionTable& functions, const TemporalFormats& temporal)
      : functions_(functions), temporal_(temporal) {}

  Features run(const SqlTree& tree) {
    for (const auto& cte : tree.ctes) f_.cte_names.insert(to_lower(cte.name));
    if (!tree.ctes.empty()) {
      f_.structures.insert(SyntaxStructure::CommonTableExpression);
      f_.cte_count = static_cast<int>(tree.ctes.size());
      for (const auto& cte : tree.ctes) walk_select(*cte.query);
    }
    if (tree.select) walk_select(*tree.select);
    if (tree.insert) {
      f_.base_tables.insert(to_lower(tree.insert->table));
      if (tree.insert->select) walk_select(*tree.insert->select);
      for (const auto& row : tree.insert->rows)
        for (const auto& v : row) walk_expr(*v);
    }
    if (tree.update) {
      f_.base_tables.insert(to_lower(tree.update->table));
      for (const auto& [col, val] : tree.update->assignments) {
        (void)col;
        walk_expr(*val);
      }
      if (tree.update->where) {
        f_.structures.insert(SyntaxStructure::Where);
        walk_expr(*tree.update->where);
      }
    }
    if (tree.del) {
      f_.base_tables.insert(to_lower(tree.del->table));
      if (tree.del->where) {
        f_.structures.insert(SyntaxStructure::Where);
        walk_expr(*tree.del->where);
      }
    }
    if (tree.alter) {
      f_.base_tables.insert(to_lower(tree.alter->table));
      if (tree.alter->default_expr) walk_expr(*tree.alter->default_expr);
    }
    return std::move(f_);
  }

 private:
  const FunctionTable& functions_;
  const TemporalFormats& temporal_;
  Features f_;

  void walk_select(const SelectStmt& stmt) {
    for (SetOp op : stmt.ops) {
      switch (op) {
        case SetOp::Union:
        case SetOp::UnionAll:
          f_.structures.insert(SyntaxStructure::Union);
          break;
        case SetOp::Intersect:
          f_.structures.insert(SyntaxStructure::Intersect);
          break;
        case SetOp::Except:
          f_.structures.insert(SyntaxStructure::Except);
          break;
      }
    }
    for (const auto& core : stmt.cores) walk_core(core);
    if (!stmt.order_by.empty()) f_.structures.insert(SyntaxStructure::OrderBy);
    for (const auto& item : stmt.order_by) walk_expr(*item.expr);
    if (stmt.limit) {
      f_.structures.insert(SyntaxStructure::LimitOffset);
      walk_expr(*stmt.limit);
    }
    if (stmt.offset) walk_expr(*stmt.offset);
  }

  void walk_core(const SelectCore& core) {
    for (const auto& item : core.from) {
      switch (item.join) {
        case JoinType::Leading:
          break;
        case JoinType::Comma:
        case JoinType::Cross:
          f_.structures.insert(SyntaxStructure::CrossJoin);
          ++f_.join_count;
          break;
        case JoinType::Inner:
          f_.structures.insert(SyntaxStructure::InnerJoin);
          ++f_.join_count;
          break;
        case JoinType::Left:
        case JoinType::Right:
        case JoinType::Full:
          f_.structures.insert(SyntaxStructure::OuterJoin);
          ++f_.join_count;
          break;
      }
      if (item.ref.kind == TableRef::Kind::Table) {
        std::string name = to_lower(item.ref.name);
        if (!f_.cte_names.count(name)) f_.base_tables.insert(name);
      } else {
        ++f_.subquery_count;
        if (item.ref.correlated) f_.structures.insert(SyntaxStructure::CorrelatedSubquery);
        walk_select(*item.ref.subquery);
      }
      if (item.on) walk_expr(*item.on);
    }
    for (const auto& e : core.select_list) walk_expr(*e);
    if (core.where) {
      f_.structures.insert(SyntaxStructure::Where);
      walk_expr(*core.where);
    }
    if (!core.group_by.empty()) f_.structures.insert(SyntaxStructure::GroupBy);
    for (const auto& e : core.group_by) walk_expr(*e);
    if (core.having) {
      f_.structures.insert(SyntaxStructure::Having);
      if (core.group_by.empty())
        f_.warnings.push_back("HAVING without GROUP BY (implicit single group)");
      walk_expr(*core.having);
    }
  }

  void note_subquery(const Expr& e) {
    ++f_.subquery_count;
    if (e.correlated) f_.structures.insert(SyntaxStructure::CorrelatedSubquery);
    walk_select(*e.subquery);
  }

  bool is_string_literal(const Expr& e) {
    return e.kind == ExprKind::Literal &&
           (e.lit_type == LiteralType::String || e.lit_type == LiteralType::Temporal);
  }

  void walk_expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Literal:
        if ((e.lit_type == LiteralType::String || e.lit_type == LiteralType::Temporal) &&
            temporal_.matches(e.lit_text))
          f_.actions.insert(KeyAction::SpecificTime);
        return;
      case ExprKind::ColumnRef:
      case ExprKind::Star:
        return;
      case ExprKind::Subquery:
        f_.structures.insert(SyntaxStructure::ScalarSubquery);
        note_subquery(e);
        return;
      case ExprKind::InSubquery:
        walk_expr(*e.args[0]);
        note_subquery(e);
        return;
      case ExprKind::Exists:
        note_subquery(e);
        return;
      case ExprKind::Like:
        if (e.op == "LIKE") f_.actions.insert(KeyAction::WildcardFiltering);
        for (const auto& a : e.args) walk_expr(*a);
        return;
      case ExprKind::Cast:
        f_.actions.insert(KeyAction::Cast);
        walk_expr(*e.args[0]);
        return;
      case ExprKind::Case:
        f_.actions.insert(KeyAction::ConditionJudgement);
        if (e.case_operand) walk_expr(*e.case_operand);
        for (const auto& a : e.when_exprs) walk_expr(*a);
        for (const auto& a : e.then_exprs) walk_expr(*a);
        if (e.else_expr) walk_expr(*e.else_expr);
        return;
      case ExprKind::FunctionCall:
        walk_function(e);
        return;
      default:
        for (const auto& a : e.args)
          if (a) walk_expr(*a);
        return;
    }
  }

  void walk_function(const Expr& e) {
    ++f_.function_count;
    bool known = false;
    FunctionClass cls = functions_.lookup(e.func_name, &known);
    std::string lname = to_lower(e.func_name);
    if (e.windowed) {
      ++f_.window_function_count;
      // windowed calls count only toward Window function
      f_.actions.insert(KeyAction::WindowFunction);
    } else if (known) {
      switch (cls) {
        case FunctionClass::Time:
          f_.actions.insert(KeyAction::TimeFunction);
          break;
        case FunctionClass::Json:
          f_.actions.insert(KeyAction::JsonFunction);
          break;
        case FunctionClass::String:
          f_.actions.insert(KeyAction::StringFunction);
          break;
        case FunctionClass::Aggregate:
          f_.actions.insert(KeyAction::AggregateFunction);
          break;
        case FunctionClass::Other:
          if (lname == "iif") f_.actions.insert(KeyAction::ConditionJudgement);
          break;
      }
    } else {
      bool string_context = false;
      for (const auto& a : e.args)
        if (is_string_literal(*a)) string_context = true;
      if (string_context) {
        f_.actions.insert(KeyAction::StringFunction);
      } else {
        f_.warnings.push_back("unknown function '" + e.func_name + "' ignored");
      }
    }
    if (cls == FunctionClass::Time && !e.windowed) {
      // integer literals handed to time functions are hardcoded times
      for (const auto& a : e.args) {
        if (a->kind == ExprKind::Literal && a->lit_type == LiteralType::Number &&
            a->lit_text.find('.') == std::string::npos)
          f_.actions.insert(KeyAction::SpecificTime);
      }
    }
    for (const auto& a : e.args) walk_expr(*a);
    for (const auto& a : e.partition_by) walk_expr(*a);
    for (const auto& item : e.window_order) walk_expr(*item.expr);
  }
};

Features collect(const SqlTree& tree, const FunctionTable& functions,
                 const TemporalFormats& temporal) {
  Walker walker(functions, temporal);
  return walker.run(tree);
}

}  // namespace

bool TemporalFormats::matches(const std::string& literal) const {
  for (const auto& fmt : formats)
    if (std::regex_match(literal, pattern_for(fmt))) return true;
  return false;
}

StatementType detect_statement_type(const SqlTree& tree) {
  switch (tree.kind) {
    case StatementKind::Select: return StatementType::Select;
    case StatementKind::Insert: return StatementType::Insert;
    case StatementKind::Update: return StatementType::Update;
    case StatementKind::Delete: return StatementType::Delete;
    case StatementKind::Alter: return StatementType::Alter;
    case StatementKind::Other:
      throw UnsupportedStatement("unsupported top-level statement: " + tree.other_verb);
  }
  throw UnsupportedStatement("unsupported statement");
}

StructureSet detect_syntax_structures(const SqlTree& tree, std::vector<std::string>* warnings) {
  Features f = collect(tree, FunctionTable::sqlite_defaults(), TemporalFormats{});
  if (warnings) *warnings = f.warnings;
  return f.structures;
}

ActionSet detect_key_actions(const SqlTree& tree, const FunctionTable& functions,
                             const TemporalFormats& temporal,
                             std::vector<std::string>* warnings) {
  Features f = collect(tree, functions, temporal);
  if (warnings) *warnings = f.warnings;
  return f.actions;
}

SqlFeatureSummary summarize_tree(const SqlTree& tree, const FunctionTable& functions,
                                 const TemporalFormats& temporal) {
  Features f = collect(tree, functions, temporal);
  SqlFeatureSummary s;
  s.statement_type = detect_statement_type(tree);
  s.syntax_structures = f.structures;
  s.key_actions = f.actions;
  s.distinct_table_count = static_cast<int>(f.base_tables.size());
  s.token_count = tree.token_count;
  s.function_count = f.function_count;
  s.join_count = f.join_count;
  s.window_function_count = f.window_function_count;
  s.cte_count = f.cte_count;
  s.subquery_count = f.subquery_count;
  s.warnings = f.warnings;
  return s;
}

SqlFeatureSummary summarize(const std::string& question, const std::string& sql,
                            const std::string& dialect, const FunctionTable& functions,
                            const TemporalFormats& temporal) {
  (void)question;
  SqlTree tree = parse_sql(sql, dialect);
  return summarize_tree(tree, functions, temporal);
}

}  // namespace synthsql::sql
