#include "synthsql/sql/parser.hpp"

#include <climits>
#include <regex>

#include "synthsql/errors.hpp"
#include "synthsql/sql/lexer.hpp"
#include "synthsql/util.hpp"

namespace synthsql::sql {

namespace {

bool looks_temporal(const std::string& s) {
  static const std::regex date(R"(^\d{4}-\d{2}-\d{2}$)");
  static const std::regex datetime(R"(^\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}$)");
  static const std::regex clock(R"(^\d{2}:\d{2}:\d{2}$)");
  static const std::regex year(R"(^\d{4}$)");
  return std::regex_match(s, date) || std::regex_match(s, datetime) ||
         std::regex_match(s, clock) || std::regex_match(s, year);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  SqlTree parse() {
    SqlTree tree;
    tree.token_count = static_cast<int>(tokens_.size()) - 1;
    if (peek().kind == TokenKind::End) throw err("statement", "empty statement");
    if (accept_kw("WITH")) {
      accept_kw("RECURSIVE");
      do {
        tree.ctes.push_back(parse_cte());
      } while (accept_op(","));
      for (std::size_t i = 0; i < tree.ctes.size(); ++i)
        for (std::size_t j = i + 1; j < tree.ctes.size(); ++j)
          if (to_lower(tree.ctes[i].name) == to_lower(tree.ctes[j].name))
            throw err("unique cte name", "duplicate CTE name '" + tree.ctes[i].name + "'");
    }
    const Token& head = peek();
    if (head.kind == TokenKind::Keyword) {
      if (head.upper == "SELECT" || head.upper == "VALUES") {
        tree.kind = StatementKind::Select;
        tree.select = std::make_unique<SelectStmt>(parse_select());
      } else if (head.upper == "INSERT") {
        tree.kind = StatementKind::Insert;
        tree.insert = std::make_unique<InsertStmt>(parse_insert());
      } else if (head.upper == "UPDATE") {
        tree.kind = StatementKind::Update;
        tree.update = std::make_unique<UpdateStmt>(parse_update());
      } else if (head.upper == "DELETE") {
        tree.kind = StatementKind::Delete;
        tree.del = std::make_unique<DeleteStmt>(parse_delete());
      } else if (head.upper == "ALTER") {
        tree.kind = StatementKind::Alter;
        tree.alter = std::make_unique<AlterStmt>(parse_alter());
      } else if (head.upper == "CREATE" || head.upper == "DROP" || head.upper == "TRUNCATE" ||
                 head.upper == "REPLACE" || head.upper == "PRAGMA" || head.upper == "EXPLAIN" ||
                 head.upper == "VACUUM") {
        tree.kind = StatementKind::Other;
        tree.other_verb = head.upper;
        while (peek().kind != TokenKind::End) advance();
      } else {
        throw err("statement keyword", "unexpected keyword '" + head.text + "'");
      }
    } else {
      throw err("statement keyword", "expected a statement keyword");
    }
    accept_op(";");
    if (peek().kind != TokenKind::End)
      throw err("end of statement", "trailing tokens after statement");
    resolve(tree);
    return tree;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  ParseError err(const std::string& expected, const std::string& msg) const {
    return ParseError(peek().offset, expected, msg + " (offset " + std::to_string(peek().offset) + ")");
  }

  bool is_kw(const std::string& kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Keyword && t.upper == kw;
  }
  bool accept_kw(const std::string& kw) {
    if (is_kw(kw)) {
      advance();
      return true;
    }
    return false;
  }
  void expect_kw(const std::string& kw) {
    if (!accept_kw(kw)) throw err(kw, "expected " + kw);
  }
  bool is_op(const std::string& op, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Operator && t.text == op;
  }
  bool accept_op(const std::string& op) {
    if (is_op(op)) {
      advance();
      return true;
    }
    return false;
  }
  void expect_op(const std::string& op) {
    if (!accept_op(op)) throw err(op, "expected '" + op + "'");
  }
  std::string expect_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) throw err("identifier", "expected an identifier");
    std::string name = t.text;
    advance();
    return name;
  }

  CteDef parse_cte() {
    CteDef cte;
    cte.name = expect_name();
    if (accept_op("(")) {
      do {
        cte.columns.push_back(expect_name());
      } while (accept_op(","));
      expect_op(")");
    }
    expect_kw("AS");
    expect_op("(");
    cte.query = std::make_unique<SelectStmt>(parse_select());
    expect_op(")");
    return cte;
  }

  SelectStmt parse_select() {
    SelectStmt stmt;
    stmt.cores.push_back(parse_select_core());
    for (;;) {
      if (accept_kw("UNION")) {
        stmt.ops.push_back(accept_kw("ALL") ? SetOp::UnionAll : SetOp::Union);
      } else if (accept_kw("INTERSECT")) {
        stmt.ops.push_back(SetOp::Intersect);
      } else if (accept_kw("EXCEPT")) {
        stmt.ops.push_back(SetOp::Except);
      } else {
        break;
      }
      stmt.cores.push_back(parse_select_core());
    }
    if (accept_kw("ORDER")) {
      expect_kw("BY");
      do {
        stmt.order_by.push_back(parse_order_item());
      } while (accept_op(","));
    }
    if (accept_kw("LIMIT")) {
      stmt.limit = expr_ptr(parse_expr());
      if (accept_kw("OFFSET")) {
        stmt.offset = expr_ptr(parse_expr());
      } else if (accept_op(",")) {
        // LIMIT <offset>, <count>
        stmt.offset = std::move(stmt.limit);
        stmt.limit = expr_ptr(parse_expr());
      }
    }
    return stmt;
  }

  OrderItem parse_order_item() {
    OrderItem item;
    item.expr = expr_ptr(parse_expr());
    if (accept_kw("ASC")) {
      item.has_dir = true;
    } else if (accept_kw("DESC")) {
      item.has_dir = true;
      item.desc = true;
    }
    return item;
  }

  SelectCore parse_select_core() {
    SelectCore core;
    expect_kw("SELECT");
    if (accept_kw("DISTINCT"))
      core.distinct = true;
    else
      accept_kw("ALL");
    do {
      core.select_list.push_back(expr_ptr(parse_result_column()));
    } while (accept_op(","));
    if (accept_kw("FROM")) core.from = parse_from();
    if (accept_kw("WHERE")) core.where = expr_ptr(parse_expr());
    if (accept_kw("GROUP")) {
      expect_kw("BY");
      do {
        core.group_by.push_back(expr_ptr(parse_expr()));
      } while (accept_op(","));
    }
    if (accept_kw("HAVING")) core.having = expr_ptr(parse_expr());
    return core;
  }

  Expr parse_result_column() {
    if (is_op("*")) {
      advance();
      Expr e;
      e.kind = ExprKind::Star;
      return e;
    }
    if (peek().kind == TokenKind::Identifier && is_op(".", 1) && is_op("*", 2)) {
      Expr e;
      e.kind = ExprKind::Star;
      e.qualifier = peek().text;
      advance();
      advance();
      advance();
      return e;
    }
    Expr e = parse_expr();
    if (accept_kw("AS")) {
      e.alias = expect_name();
    } else if (peek().kind == TokenKind::Identifier) {
      e.alias = expect_name();
    }
    return e;
  }

  std::vector<JoinItem> parse_from() {
    std::vector<JoinItem> from;
    JoinItem first;
    first.join = JoinType::Leading;
    first.ref = parse_table_ref();
    from.push_back(std::move(first));
    for (;;) {
      JoinItem item;
      if (accept_op(",")) {
        item.join = JoinType::Comma;
      } else if (is_kw("NATURAL")) {
        throw UnsupportedFeature("NATURAL joins are not supported");
      } else if (accept_kw("CROSS")) {
        expect_kw("JOIN");
        item.join = JoinType::Cross;
      } else if (accept_kw("INNER")) {
        expect_kw("JOIN");
        item.join = JoinType::Inner;
      } else if (accept_kw("LEFT")) {
        accept_kw("OUTER");
        expect_kw("JOIN");
        item.join = JoinType::Left;
      } else if (accept_kw("RIGHT")) {
        accept_kw("OUTER");
        expect_kw("JOIN");
        item.join = JoinType::Right;
      } else if (accept_kw("FULL")) {
        accept_kw("OUTER");
        expect_kw("JOIN");
        item.join = JoinType::Full;
      } else if (accept_kw("JOIN")) {
        item.join = JoinType::Inner;
      } else {
        break;
      }
      item.ref = parse_table_ref();
      if (accept_kw("ON")) {
        item.on = expr_ptr(parse_expr());
      } else if (item.join == JoinType::Inner) {
        // bare JOIN without ON behaves as a cross join
        item.join = JoinType::Cross;
      }
      from.push_back(std::move(item));
    }
    return from;
  }

  TableRef parse_table_ref() {
    TableRef ref;
    if (accept_op("(")) {
      ref.kind = TableRef::Kind::Subquery;
      ref.subquery = std::make_unique<SelectStmt>(parse_select());
      expect_op(")");
    } else {
      ref.kind = TableRef::Kind::Table;
      ref.name = expect_name();
    }
    if (accept_kw("AS")) {
      ref.alias = expect_name();
    } else if (peek().kind == TokenKind::Identifier) {
      ref.alias = expect_name();
    }
    return ref;
  }

  InsertStmt parse_insert() {
    InsertStmt stmt;
    expect_kw("INSERT");
    expect_kw("INTO");
    stmt.table = expect_name();
    if (accept_op("(")) {
      do {
        stmt.columns.push_back(expect_name());
      } while (accept_op(","));
      expect_op(")");
    }
    if (accept_kw("VALUES")) {
      do {
        expect_op("(");
        std::vector<ExprPtr> row;
        do {
          row.push_back(expr_ptr(parse_expr()));
        } while (accept_op(","));
        expect_op(")");
        stmt.rows.push_back(std::move(row));
      } while (accept_op(","));
    } else if (is_kw("SELECT") || is_kw("WITH")) {
      if (is_kw("WITH")) throw UnsupportedFeature("WITH inside INSERT body is not supported");
      stmt.select = std::make_unique<SelectStmt>(parse_select());
    } else {
      throw err("VALUES or SELECT", "expected VALUES or SELECT in INSERT");
    }
    return stmt;
  }

  UpdateStmt parse_update() {
    UpdateStmt stmt;
    expect_kw("UPDATE");
    stmt.table = expect_name();
    expect_kw("SET");
    do {
      std::string col = expect_name();
      expect_op("=");
      stmt.assignments.emplace_back(std::move(col), expr_ptr(parse_expr()));
    } while (accept_op(","));
    if (accept_kw("WHERE")) stmt.where = expr_ptr(parse_expr());
    return stmt;
  }

  DeleteStmt parse_delete() {
    DeleteStmt stmt;
    expect_kw("DELETE");
    expect_kw("FROM");
    stmt.table = expect_name();
    if (accept_kw("WHERE")) stmt.where = expr_ptr(parse_expr());
    return stmt;
  }

  AlterStmt parse_alter() {
    AlterStmt stmt;
    expect_kw("ALTER");
    expect_kw("TABLE");
    stmt.table = expect_name();
    if (accept_kw("ADD")) {
      accept_kw("COLUMN");
      stmt.action = AlterStmt::Action::AddColumn;
      stmt.name1 = expect_name();
      stmt.column_type = parse_type_name();
      if (accept_kw("DEFAULT")) {
        if (accept_op("(")) {
          stmt.default_expr = expr_ptr(parse_expr());
          expect_op(")");
        } else {
          stmt.default_expr = expr_ptr(parse_primary());
        }
      }
    } else if (accept_kw("RENAME")) {
      if (accept_kw("TO")) {
        stmt.action = AlterStmt::Action::RenameTable;
        stmt.name1 = expect_name();
      } else {
        accept_kw("COLUMN");
        stmt.action = AlterStmt::Action::RenameColumn;
        stmt.name1 = expect_name();
        expect_kw("TO");
        stmt.name2 = expect_name();
      }
    } else if (accept_kw("DROP")) {
      accept_kw("COLUMN");
      stmt.action = AlterStmt::Action::DropColumn;
      stmt.name1 = expect_name();
    } else {
      throw err("ADD, RENAME or DROP", "unsupported ALTER TABLE action");
    }
    return stmt;
  }

  std::string parse_type_name() {
    std::string type;
    while (peek().kind == TokenKind::Identifier ||
           (peek().kind == TokenKind::Keyword && peek().upper == "NOT")) {
      if (is_kw("NOT")) break;
      if (!type.empty()) type += " ";
      type += advance().text;
    }
    if (type.empty()) throw err("type name", "expected a column type");
    if (accept_op("(")) {
      type += "(";
      type += advance().text;
      if (accept_op(",")) {
        type += ",";
        type += advance().text;
      }
      expect_op(")");
      type += ")";
    }
    if (accept_kw("NOT")) {
      expect_kw("NULL");
      type += " NOT NULL";
    }
    return type;
  }

  static ExprPtr expr_ptr(Expr&& e) { return std::make_unique<Expr>(std::move(e)); }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (accept_kw("OR")) {
      Expr node;
      node.kind = ExprKind::Binary;
      node.op = "OR";
      node.args.push_back(expr_ptr(std::move(lhs)));
      node.args.push_back(expr_ptr(parse_and()));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    while (accept_kw("AND")) {
      Expr node;
      node.kind = ExprKind::Binary;
      node.op = "AND";
      node.args.push_back(expr_ptr(std::move(lhs)));
      node.args.push_back(expr_ptr(parse_not()));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_not() {
    if (is_kw("NOT") && !is_kw("EXISTS", 1)) {
      advance();
      Expr node;
      node.kind = ExprKind::Unary;
      node.op = "NOT";
      node.args.push_back(expr_ptr(parse_not()));
      return node;
    }
    return parse_predicate();
  }

  Expr parse_predicate() {
    Expr lhs = parse_additive();
    for (;;) {
      bool negated = false;
      if (is_kw("NOT") && (is_kw("IN", 1) || is_kw("LIKE", 1) || is_kw("BETWEEN", 1) ||
                           is_kw("GLOB", 1))) {
        advance();
        negated = true;
      }
      if (accept_kw("IS")) {
        Expr node;
        node.kind = ExprKind::IsNull;
        node.negated = accept_kw("NOT");
        expect_kw("NULL");
        node.args.push_back(expr_ptr(std::move(lhs)));
        lhs = std::move(node);
        continue;
      }
      if (accept_kw("IN")) {
        expect_op("(");
        Expr node;
        node.negated = negated;
        node.args.push_back(expr_ptr(std::move(lhs)));
        if (is_kw("SELECT")) {
          node.kind = ExprKind::InSubquery;
          node.subquery = std::make_unique<SelectStmt>(parse_select());
        } else {
          node.kind = ExprKind::InList;
          do {
            node.args.push_back(expr_ptr(parse_expr()));
          } while (accept_op(","));
        }
        expect_op(")");
        lhs = std::move(node);
        continue;
      }
      if (is_kw("LIKE") || is_kw("GLOB")) {
        Expr node;
        node.kind = ExprKind::Like;
        node.op = advance().upper;
        node.negated = negated;
        node.args.push_back(expr_ptr(std::move(lhs)));
        node.args.push_back(expr_ptr(parse_additive()));
        if (accept_kw("ESCAPE")) {
          if (peek().kind != TokenKind::String) throw err("string", "expected ESCAPE string");
          node.like_escape = advance().text;
        }
        lhs = std::move(node);
        continue;
      }
      if (accept_kw("BETWEEN")) {
        Expr node;
        node.kind = ExprKind::Between;
        node.negated = negated;
        node.args.push_back(expr_ptr(std::move(lhs)));
        node.args.push_back(expr_ptr(parse_additive()));
        expect_kw("AND");
        node.args.push_back(expr_ptr(parse_additive()));
        lhs = std::move(node);
        continue;
      }
      if (negated) throw err("IN, LIKE or BETWEEN", "dangling NOT in predicate");
      static const char* cmps[] = {"=", "<>", "!=", "<", "<=", ">", ">="};
      bool matched = false;
      for (const char* op : cmps) {
        if (is_op(op)) {
          advance();
          Expr node;
          node.kind = ExprKind::Binary;
          node.op = op;
          node.args.push_back(expr_ptr(std::move(lhs)));
          node.args.push_back(expr_ptr(parse_additive()));
          lhs = std::move(node);
          matched = true;
          break;
        }
      }
      if (!matched) break;
    }
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    for (;;) {
      std::string op;
      if (is_op("+") || is_op("-") || is_op("||"))
        op = advance().text;
      else
        break;
      Expr node;
      node.kind = ExprKind::Binary;
      node.op = op;
      node.args.push_back(expr_ptr(std::move(lhs)));
      node.args.push_back(expr_ptr(parse_multiplicative()));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    for (;;) {
      std::string op;
      if (is_op("*") || is_op("/") || is_op("%") || is_op("->") || is_op("->>"))
        op = advance().text;
      else
        break;
      Expr node;
      node.kind = ExprKind::Binary;
      node.op = op;
      node.args.push_back(expr_ptr(std::move(lhs)));
      node.args.push_back(expr_ptr(parse_unary()));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is_op("-") || is_op("+")) {
      std::string op = advance().text;
      Expr node;
      node.kind = ExprKind::Unary;
      node.op = op;
      node.args.push_back(expr_ptr(parse_unary()));
      return node;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Number) {
      Expr e;
      e.kind = ExprKind::Literal;
      e.lit_type = LiteralType::Number;
      e.lit_text = advance().text;
      return e;
    }
    if (t.kind == TokenKind::String) {
      Expr e;
      e.kind = ExprKind::Literal;
      e.lit_type = looks_temporal(t.text) ? LiteralType::Temporal : LiteralType::String;
      e.lit_text = advance().text;
      return e;
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.upper == "NULL") {
        advance();
        Expr e;
        e.kind = ExprKind::Literal;
        e.lit_type = LiteralType::Null;
        return e;
      }
      if (t.upper == "TRUE" || t.upper == "FALSE") {
        Expr e;
        e.kind = ExprKind::Literal;
        e.lit_type = LiteralType::Bool;
        e.lit_text = advance().upper;
        return e;
      }
      if (t.upper == "CAST") {
        advance();
        expect_op("(");
        Expr e;
        e.kind = ExprKind::Cast;
        e.args.push_back(expr_ptr(parse_expr()));
        expect_kw("AS");
        e.cast_type = parse_type_name();
        expect_op(")");
        return e;
      }
      if (t.upper == "CASE") return parse_case();
      if (t.upper == "EXISTS" || (t.upper == "NOT" && is_kw("EXISTS", 1))) {
        Expr e;
        e.kind = ExprKind::Exists;
        if (accept_kw("NOT")) e.negated = true;
        expect_kw("EXISTS");
        expect_op("(");
        e.subquery = std::make_unique<SelectStmt>(parse_select());
        expect_op(")");
        return e;
      }
      if (t.upper == "REPLACE" && is_op("(", 1)) return parse_function(advance().text);
      throw err("expression", "unexpected keyword '" + t.text + "' in expression");
    }
    if (t.kind == TokenKind::Operator && t.text == "(") {
      advance();
      if (is_kw("SELECT")) {
        Expr e;
        e.kind = ExprKind::Subquery;
        e.subquery = std::make_unique<SelectStmt>(parse_select());
        expect_op(")");
        return e;
      }
      // grouping parentheses are transparent in the tree
      Expr inner = parse_expr();
      expect_op(")");
      return inner;
    }
    if (t.kind == TokenKind::Identifier) {
      if (is_op("(", 1)) return parse_function(advance().text);
      Expr e;
      e.kind = ExprKind::ColumnRef;
      e.column = advance().text;
      if (is_op(".") && peek(1).kind == TokenKind::Identifier) {
        advance();
        e.qualifier = e.column;
        e.column = advance().text;
      } else if (is_op(".") && is_op("*", 1)) {
        advance();
        advance();
        Expr star;
        star.kind = ExprKind::Star;
        star.qualifier = e.column;
        return star;
      }
      return e;
    }
    throw err("expression", "expected an expression");
  }

  Expr parse_function(const std::string& name) {
    Expr e;
    e.kind = ExprKind::FunctionCall;
    e.func_name = name;
    expect_op("(");
    if (accept_op("*")) {
      e.star_arg = true;
    } else if (!is_op(")")) {
      if (accept_kw("DISTINCT")) e.func_distinct = true;
      do {
        e.args.push_back(expr_ptr(parse_expr()));
      } while (accept_op(","));
    }
    expect_op(")");
    if (accept_kw("OVER")) {
      e.windowed = true;
      expect_op("(");
      if (accept_kw("PARTITION")) {
        expect_kw("BY");
        do {
          e.partition_by.push_back(expr_ptr(parse_expr()));
        } while (accept_op(","));
      }
      if (accept_kw("ORDER")) {
        expect_kw("BY");
        do {
          e.window_order.push_back(parse_order_item());
        } while (accept_op(","));
      }
      expect_op(")");
    }
    return e;
  }

  Expr parse_case() {
    expect_kw("CASE");
    Expr e;
    e.kind = ExprKind::Case;
    if (!is_kw("WHEN")) e.case_operand = expr_ptr(parse_expr());
    while (accept_kw("WHEN")) {
      e.when_exprs.push_back(expr_ptr(parse_expr()));
      expect_kw("THEN");
      e.then_exprs.push_back(expr_ptr(parse_expr()));
    }
    if (e.when_exprs.empty()) throw err("WHEN", "CASE without WHEN branch");
    if (accept_kw("ELSE")) e.else_expr = expr_ptr(parse_expr());
    expect_kw("END");
    return e;
  }

  // ---- scope resolution -------------------------------------------------

  struct Scope {
    std::vector<std::string> names;  // lower-cased alias/table names
  };

  void resolve(SqlTree& tree) {
    std::vector<Scope> stack;
    for (auto& cte : tree.ctes) resolve_select(*cte.query, stack);
    if (tree.select) resolve_select(*tree.select, stack);
    if (tree.insert) {
      if (tree.insert->select) resolve_select(*tree.insert->select, stack);
      for (auto& row : tree.insert->rows)
        for (auto& v : row) resolve_expr(*v, stack);
    }
    if (tree.update) {
      Scope scope;
      scope.names.push_back(to_lower(tree.update->table));
      stack.push_back(scope);
      for (auto& [col, val] : tree.update->assignments) {
        (void)col;
        resolve_expr(*val, stack);
      }
      if (tree.update->where) resolve_expr(*tree.update->where, stack);
      stack.pop_back();
    }
    if (tree.del) {
      Scope scope;
      scope.names.push_back(to_lower(tree.del->table));
      stack.push_back(scope);
      if (tree.del->where) resolve_expr(*tree.del->where, stack);
      stack.pop_back();
    }
    if (tree.alter && tree.alter->default_expr) resolve_expr(*tree.alter->default_expr, stack);
  }

  // Returns the minimal stack index any column reference in the subtree
  // bound to (INT_MAX when none bound).
  int resolve_select(SelectStmt& stmt, std::vector<Scope>& stack) {
    int min_bind = INT_MAX;
    for (std::size_t c = 0; c < stmt.cores.size(); ++c) {
      SelectCore& core = stmt.cores[c];
      // FROM subqueries resolve against the outer stack only.
      for (auto& item : core.from) {
        if (item.ref.kind == TableRef::Kind::Subquery) {
          int base = static_cast<int>(stack.size());
          int m = resolve_select(*item.ref.subquery, stack);
          item.ref.correlated = m < base;
          min_bind = std::min(min_bind, m);
        }
      }
      Scope scope;
      for (auto& item : core.from) {
        if (!item.ref.alias.empty())
          scope.names.push_back(to_lower(item.ref.alias));
        else if (!item.ref.name.empty())
          scope.names.push_back(to_lower(item.ref.name));
      }
      stack.push_back(scope);
      for (auto& item : core.from)
        if (item.on) min_bind = std::min(min_bind, resolve_expr(*item.on, stack));
      for (auto& e : core.select_list) min_bind = std::min(min_bind, resolve_expr(*e, stack));
      if (core.where) min_bind = std::min(min_bind, resolve_expr(*core.where, stack));
      for (auto& e : core.group_by) min_bind = std::min(min_bind, resolve_expr(*e, stack));
      if (core.having) min_bind = std::min(min_bind, resolve_expr(*core.having, stack));
      if (c == 0) {
        // statement-level ORDER BY / LIMIT resolve in the first core's scope
        for (auto& item : stmt.order_by)
          min_bind = std::min(min_bind, resolve_expr(*item.expr, stack));
        if (stmt.limit) min_bind = std::min(min_bind, resolve_expr(*stmt.limit, stack));
        if (stmt.offset) min_bind = std::min(min_bind, resolve_expr(*stmt.offset, stack));
      }
      stack.pop_back();
    }
    return min_bind;
  }

  int resolve_expr(Expr& e, std::vector<Scope>& stack) {
    int min_bind = INT_MAX;
    if (e.kind == ExprKind::ColumnRef) {
      int top = static_cast<int>(stack.size()) - 1;
      if (e.qualifier.empty()) {
        e.scope_depth = 0;
        return top >= 0 ? top : INT_MAX;
      }
      std::string q = to_lower(e.qualifier);
      for (int i = top; i >= 0; --i) {
        for (const auto& n : stack[static_cast<std::size_t>(i)].names) {
          if (n == q) {
            e.scope_depth = top - i;
            return i;
          }
        }
      }
      e.scope_depth = 0;
      return INT_MAX;
    }
    if (e.subquery) {
      int base = static_cast<int>(stack.size());
      int m = resolve_select(*e.subquery, stack);
      e.correlated = m < base;
      min_bind = std::min(min_bind, m);
    }
    for (auto& a : e.args)
      if (a) min_bind = std::min(min_bind, resolve_expr(*a, stack));
    for (auto& a : e.partition_by) min_bind = std::min(min_bind, resolve_expr(*a, stack));
    for (auto& item : e.window_order) min_bind = std::min(min_bind, resolve_expr(*item.expr, stack));
    if (e.case_operand) min_bind = std::min(min_bind, resolve_expr(*e.case_operand, stack));
    for (auto& a : e.when_exprs) min_bind = std::min(min_bind, resolve_expr(*a, stack));
    for (auto& a : e.then_exprs) min_bind = std::min(min_bind, resolve_expr(*a, stack));
    if (e.else_expr) min_bind = std::min(min_bind, resolve_expr(*e.else_expr, stack));
    return min_bind;
  }
};

}  // namespace

SqlTree parse_sql(const std::string& text, const std::string& dialect) {
  if (text.empty()) throw ParseError(0, "statement", "empty SQL text");
  if (to_lower(dialect) != "sqlite")
    throw UnsupportedFeature("unsupported dialect: " + dialect);
  Parser parser(text);
  return parser.parse();
}

}  // namespace synthsql::sql
