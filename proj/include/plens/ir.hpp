#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plens/diagnostics.hpp"
#include "plens/source.hpp"

namespace plens {

// Globally qualified identity of a function or method.
// Scanned code:   `module::name` or `module::Class.name`
// External code:  the catalog-style dotted name, e.g. `org.slf4j.Logger.info`
struct MethodRef {
  std::string qualified_name;
  std::string module;
  std::optional<Span> span;  // absent for external (library) methods

  friend bool operator==(const MethodRef& a, const MethodRef& b) {
    return a.qualified_name == b.qualified_name;
  }
  friend bool operator<(const MethodRef& a, const MethodRef& b) {
    return a.qualified_name < b.qualified_name;
  }
};

enum class LiteralKind { String, Number, Other };

// Expression tree restricted to four shapes. Operators, object/array
// literals and subscripts are desugared by the parser into opaque calls
// (callee names beginning "<op:") so that dataflow can treat them as
// black boxes without widening the node set.
struct IRExpr {
  enum class Kind { Identifier, Literal, Member, Call };

  Kind kind = Kind::Identifier;
  std::string name;  // Identifier: name; Member: field; Literal: text
  LiteralKind literal_kind = LiteralKind::Other;
  std::unique_ptr<IRExpr> base;               // Member base / Call callee
  std::vector<std::unique_ptr<IRExpr>> args;  // Call arguments
  Span span;

  static std::unique_ptr<IRExpr> identifier(std::string name, Span s);
  static std::unique_ptr<IRExpr> literal(std::string text, LiteralKind k, Span s);
  static std::unique_ptr<IRExpr> member(std::unique_ptr<IRExpr> base, std::string field, Span s);
  static std::unique_ptr<IRExpr> call(std::unique_ptr<IRExpr> callee,
                                      std::vector<std::unique_ptr<IRExpr>> args, Span s);

  bool is_opaque_op() const { return kind == Kind::Call && op_marker(*this); }
  static bool op_marker(const IRExpr& callee_or_call);
};

struct IRStatement {
  enum class Kind { VarDecl, Assign, CallStmt, Return };

  Kind kind = Kind::VarDecl;
  std::string lhs;            // VarDecl/Assign: root variable name
  bool lhs_is_member = false; // assignment through a member path (a.b = ...)
  std::unique_ptr<IRExpr> value;  // rhs / call / return expression; may be null
  // Every call expression nested anywhere in `value`, in source order.
  // Later passes discover calls here instead of re-walking the tree.
  std::vector<const IRExpr*> calls;
  Span span;
};

struct ParamDecl {
  std::string name;
  Span span;
};

struct IRFunction {
  MethodRef id;
  std::string display_name;  // `name` or `Class.name`
  std::string class_name;    // empty for free functions
  std::vector<ParamDecl> params;
  std::vector<IRStatement> body;
  Span span;
  bool is_exported = false;
  bool is_synthetic = false;  // module-scope statements collected as <toplevel>
};

struct ImportDecl {
  std::string target;  // raw specifier (JS) or dotted name (Java)
  // (external name, local alias); the marker "*" as external name means a
  // namespace/default binding whose members resolve against the target.
  std::vector<std::pair<std::string, std::string>> symbols;
  bool wildcard = false;  // `import x.y.*` / side-effect-only import
  Span span;
};

struct IRModule {
  SourceFile file;
  std::string module_name;
  std::vector<ImportDecl> imports;
  std::vector<IRFunction> functions;
  std::vector<Diagnostic> diagnostics;
  std::size_t skipped_statements = 0;
};

// Collects nested Call nodes in source order (used by the parser to
// populate IRStatement::calls).
void collect_calls(const IRExpr& expr, std::vector<const IRExpr*>& out);

// Stable structural dump used by tests for round-trip comparison.
std::string dump(const IRExpr& e);
std::string dump(const IRStatement& s);
std::string dump(const IRModule& m);

inline const std::string kToplevelName = "<toplevel>";

}  // namespace plens
