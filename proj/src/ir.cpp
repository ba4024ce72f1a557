#include "plens/ir.hpp"

#include <sstream>

namespace plens {

std::unique_ptr<IRExpr> IRExpr::identifier(std::string name, Span s) {
  auto e = std::make_unique<IRExpr>();
  e->kind = Kind::Identifier;
  e->name = std::move(name);
  e->span = s;
  return e;
}

std::unique_ptr<IRExpr> IRExpr::literal(std::string text, LiteralKind k, Span s) {
  auto e = std::make_unique<IRExpr>();
  e->kind = Kind::Literal;
  e->name = std::move(text);
  e->literal_kind = k;
  e->span = s;
  return e;
}

std::unique_ptr<IRExpr> IRExpr::member(std::unique_ptr<IRExpr> base, std::string field, Span s) {
  auto e = std::make_unique<IRExpr>();
  e->kind = Kind::Member;
  e->base = std::move(base);
  e->name = std::move(field);
  e->span = s;
  return e;
}

std::unique_ptr<IRExpr> IRExpr::call(std::unique_ptr<IRExpr> callee,
                                     std::vector<std::unique_ptr<IRExpr>> args, Span s) {
  auto e = std::make_unique<IRExpr>();
  e->kind = Kind::Call;
  e->base = std::move(callee);
  e->args = std::move(args);
  e->span = s;
  return e;
}

bool IRExpr::op_marker(const IRExpr& call) {
  const IRExpr* callee = call.kind == Kind::Call ? call.base.get() : &call;
  return callee && callee->kind == Kind::Identifier && callee->name.rfind("<op:", 0) == 0;
}

void collect_calls(const IRExpr& expr, std::vector<const IRExpr*>& out) {
  switch (expr.kind) {
    case IRExpr::Kind::Identifier:
    case IRExpr::Kind::Literal:
      return;
    case IRExpr::Kind::Member:
      if (expr.base) collect_calls(*expr.base, out);
      return;
    case IRExpr::Kind::Call:
      out.push_back(&expr);
      if (expr.base) collect_calls(*expr.base, out);
      for (const auto& a : expr.args) collect_calls(*a, out);
      return;
  }
}

namespace {

void dump_expr(const IRExpr& e, std::ostringstream& os) {
  switch (e.kind) {
    case IRExpr::Kind::Identifier:
      os << "id(" << e.name << ")";
      break;
    case IRExpr::Kind::Literal:
      os << "lit("
         << (e.literal_kind == LiteralKind::String   ? "str"
             : e.literal_kind == LiteralKind::Number ? "num"
                                                     : "other")
         << ":" << e.name << ")";
      break;
    case IRExpr::Kind::Member:
      os << "member(";
      if (e.base) dump_expr(*e.base, os);
      os << "," << e.name << ")";
      break;
    case IRExpr::Kind::Call:
      os << "call(";
      if (e.base) dump_expr(*e.base, os);
      os << ",[";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ",";
        dump_expr(*e.args[i], os);
      }
      os << "])";
      break;
  }
  os << "@" << e.span.begin << ":" << e.span.end;
}

}  // namespace

std::string dump(const IRExpr& e) {
  std::ostringstream os;
  dump_expr(e, os);
  return os.str();
}

std::string dump(const IRStatement& s) {
  std::ostringstream os;
  switch (s.kind) {
    case IRStatement::Kind::VarDecl: os << "decl " << s.lhs; break;
    case IRStatement::Kind::Assign:
      os << "assign " << s.lhs;
      if (s.lhs_is_member) os << ".*";
      break;
    case IRStatement::Kind::CallStmt: os << "callstmt"; break;
    case IRStatement::Kind::Return: os << "return"; break;
  }
  if (s.value) os << " = " << dump(*s.value);
  os << " @" << s.span.begin << ":" << s.span.end;
  return os.str();
}

std::string dump(const IRModule& m) {
  std::ostringstream os;
  os << "module " << m.module_name << " (" << m.file.path << ")\n";
  for (const auto& imp : m.imports) {
    os << "  import " << imp.target;
    if (imp.wildcard) os << " *";
    for (const auto& [ext, local] : imp.symbols) os << " " << ext << "->" << local;
    os << " @" << imp.span.begin << ":" << imp.span.end << "\n";
  }
  for (const auto& fn : m.functions) {
    os << "  fn " << fn.id.qualified_name << "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      if (i) os << ",";
      os << fn.params[i].name;
    }
    os << ")";
    if (fn.is_exported) os << " exported";
    if (fn.is_synthetic) os << " synthetic";
    os << " @" << fn.span.begin << ":" << fn.span.end << "\n";
    for (const auto& st : fn.body) os << "    " << dump(st) << "\n";
  }
  return os.str();
}

}  // namespace plens
