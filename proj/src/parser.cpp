#include "plens/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

#include "plens/lexer.hpp"

namespace plens {

namespace {

constexpr int kMaxExprDepth = 200;

std::string strip_extension(std::string path) {
  auto slash = path.rfind('/');
  auto dot = path.rfind('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    path.resize(dot);
  }
  return path;
}

const std::set<std::string>& java_modifiers() {
  static const std::set<std::string> mods = {
      "public", "private",   "protected", "static",   "final",
      "abstract", "synchronized", "native", "transient", "volatile",
      "strictfp", "default",
  };
  return mods;
}

class Parser {
 public:
  explicit Parser(const SourceFile& file)
      : file_(file), lang_(file.language), lines_(file.text), toks_(lex(file.text, lang_)) {}

  IRModule parse() {
    mod_.file = file_;
    mod_.module_name = derive_module_name();
    if (lang_ == Language::JsLike) {
      parse_js_module();
    } else {
      parse_java_module();
    }
    finish_toplevel();
    // Stable order: declaration order already; synthetic last per module.
    return std::move(mod_);
  }

 private:
  // ---- token helpers ----

  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at_end() const { return cur().is(Token::Kind::End); }
  void advance() {
    if (!at_end()) ++pos_;
  }
  bool eat_punct(std::string_view p) {
    if (cur().is_punct(p)) {
      advance();
      return true;
    }
    return false;
  }
  bool eat_ident(std::string_view name) {
    if (cur().is_ident(name)) {
      advance();
      return true;
    }
    return false;
  }

  void diag_at(std::size_t offset, const std::string& reason) {
    auto lc = lines_.locate(offset);
    mod_.diagnostics.push_back(Diagnostic{file_.path, lc.line, lc.col, "skip", reason});
  }

  void skip_record(std::size_t offset, const std::string& reason) {
    diag_at(offset, reason);
    mod_.skipped_statements += 1;
  }

  // Consumes tokens through the end of the current statement: up to and
  // including `;`, or (when brace_ends_statement) a balanced `{...}` opened
  // before any `;`. Stops before a closing brace belonging to the caller.
  void consume_statement_tokens(bool brace_ends_statement = true) {
    int depth = 0;
    while (!at_end()) {
      const Token& t = cur();
      if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) {
        ++depth;
      } else if (t.is_punct(")") || t.is_punct("]")) {
        if (depth > 0) --depth;
      } else if (t.is_punct("}")) {
        if (depth == 0) return;  // caller's closer
        --depth;
        advance();
        if (depth == 0 && brace_ends_statement) return;
        continue;
      } else if (t.is_punct(";") && depth == 0) {
        advance();
        return;
      }
      advance();
    }
  }

  void consume_balanced(std::string_view open, std::string_view close) {
    if (!cur().is_punct(open)) return;
    int depth = 0;
    while (!at_end()) {
      if (cur().is_punct(open)) ++depth;
      else if (cur().is_punct(close)) {
        --depth;
        if (depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  // Consumes a type annotation until one of the stop puncts at depth 0.
  void consume_type_until(std::initializer_list<std::string_view> stops) {
    int angle = 0, paren = 0, square = 0, brace = 0;
    while (!at_end()) {
      const Token& t = cur();
      if (angle == 0 && paren == 0 && square == 0 && brace == 0) {
        for (auto s : stops) {
          if (t.is_punct(s)) return;
        }
        if (t.is_punct("}")) return;
      }
      if (t.is_punct("<")) ++angle;
      else if (t.is_punct(">")) angle = std::max(0, angle - 1);
      else if (t.is_punct(">>")) angle = std::max(0, angle - 2);
      else if (t.is_punct(">>>")) angle = std::max(0, angle - 3);
      else if (t.is_punct("(")) ++paren;
      else if (t.is_punct(")")) {
        if (paren == 0) return;
        --paren;
      } else if (t.is_punct("[")) ++square;
      else if (t.is_punct("]")) square = std::max(0, square - 1);
      else if (t.is_punct("{")) ++brace;
      else if (t.is_punct("}")) brace = std::max(0, brace - 1);
      advance();
    }
  }

  // ---- module level ----

  std::string derive_module_name() {
    if (lang_ == Language::JsLike) return strip_extension(file_.path);
    // JavaLike: look ahead for a package declaration.
    for (std::size_t i = 0; i + 1 < toks_.size() && i < 8; ++i) {
      if (toks_[i].is_ident("package")) {
        std::string name;
        for (std::size_t j = i + 1; j < toks_.size(); ++j) {
          if (toks_[j].is(Token::Kind::Ident)) name += toks_[j].text;
          else if (toks_[j].is_punct(".")) name += '.';
          else break;
        }
        if (!name.empty()) return name;
      }
    }
    return strip_extension(file_.path);
  }

  void parse_js_module() {
    while (!at_end()) {
      if (cur().is_ident("import")) {
        parse_js_import();
      } else if (cur().is_ident("export")) {
        parse_js_export();
      } else if (cur().is_ident("function") || (cur().is_ident("async") && ahead(1).is_ident("function"))) {
        parse_js_function_decl(false);
      } else if (cur().is_ident("class")) {
        parse_js_class(false);
      } else if (cur().is_punct("}")) {
        advance();  // stray closer at top level
      } else {
        parse_statement(toplevel_stmts_, "");
      }
    }
  }

  void parse_java_module() {
    while (!at_end()) {
      if (cur().is_ident("package")) {
        while (!at_end() && !cur().is_punct(";")) advance();
        eat_punct(";");
      } else if (cur().is_ident("import")) {
        parse_java_import();
      } else if (cur().is_punct("@")) {
        skip_annotation();
      } else if (cur().is_ident("class") || is_java_decl_start("class")) {
        parse_java_class();
      } else if (cur().is_ident("interface") || is_java_decl_start("interface")) {
        skip_record(cur().begin, "interface declaration");
        skip_java_type_decl();
      } else if (cur().is_ident("enum") || is_java_decl_start("enum") ||
                 cur().is_ident("record") || is_java_decl_start("record")) {
        skip_record(cur().begin, "enum/record declaration");
        skip_java_type_decl();
      } else {
        skip_record(cur().begin, "unsupported top-level construct `" + cur().text + "`");
        consume_statement_tokens();
        if (cur().is_punct("}")) advance();
      }
    }
  }

  bool is_java_decl_start(std::string_view kw) const {
    std::size_t i = 0;
    while (toks_[std::min(pos_ + i, toks_.size() - 1)].is(Token::Kind::Ident) &&
           java_modifiers().count(toks_[std::min(pos_ + i, toks_.size() - 1)].text)) {
      ++i;
    }
    return ahead(i).is_ident(kw);
  }

  void skip_java_type_decl() {
    while (!at_end() && !cur().is_punct("{") && !cur().is_punct(";")) advance();
    if (cur().is_punct("{")) consume_balanced("{", "}");
    else eat_punct(";");
  }

  void skip_annotation() {
    std::size_t start = cur().begin;
    advance();  // '@'
    std::string name = cur().is(Token::Kind::Ident) ? cur().text : "";
    if (cur().is(Token::Kind::Ident)) {
      advance();
      while (cur().is_punct(".") && ahead(1).is(Token::Kind::Ident)) {
        advance();
        name += "." + cur().text;
        advance();
      }
    }
    if (cur().is_punct("(")) consume_balanced("(", ")");
    skip_record(start, "annotation @" + name);
  }

  // ---- imports ----

  void parse_js_import() {
    std::size_t start = cur().begin;
    advance();  // import
    ImportDecl imp;
    imp.span.begin = start;
    if (cur().is(Token::Kind::String)) {
      // side-effect import
      imp.target = cur().value;
      imp.wildcard = true;
      advance();
    } else {
      bool expect_from = false;
      if (cur().is(Token::Kind::Ident) && !cur().is_ident("from")) {
        imp.symbols.emplace_back("*", cur().text);  // default binding
        advance();
        expect_from = true;
        if (eat_punct(",")) expect_from = false;
      }
      if (cur().is_punct("*")) {
        advance();
        if (eat_ident("as") && cur().is(Token::Kind::Ident)) {
          imp.symbols.emplace_back("*", cur().text);
          advance();
        }
        expect_from = true;
      } else if (cur().is_punct("{")) {
        advance();
        while (!at_end() && !cur().is_punct("}")) {
          if (cur().is(Token::Kind::Ident)) {
            std::string external = cur().text;
            std::string local = external;
            advance();
            if (eat_ident("as") && cur().is(Token::Kind::Ident)) {
              local = cur().text;
              advance();
            }
            imp.symbols.emplace_back(external, local);
          } else {
            advance();
          }
          eat_punct(",");
        }
        eat_punct("}");
        expect_from = true;
      }
      (void)expect_from;
      eat_ident("from");
      if (cur().is(Token::Kind::String)) {
        imp.target = cur().value;
        advance();
      }
    }
    eat_punct(";");
    imp.span.end = pos_ > 0 ? toks_[pos_ - 1].end : start;
    if (imp.symbols.empty()) imp.wildcard = true;  // side-effect / empty binding list
    if (!imp.target.empty()) mod_.imports.push_back(std::move(imp));
  }

  void parse_java_import() {
    std::size_t start = cur().begin;
    advance();  // import
    bool is_static = eat_ident("static");
    std::vector<std::string> segments;
    bool wildcard = false;
    while (!at_end()) {
      if (cur().is(Token::Kind::Ident)) {
        segments.push_back(cur().text);
        advance();
      } else if (cur().is_punct(".")) {
        advance();
        if (cur().is_punct("*")) {
          wildcard = true;
          advance();
          break;
        }
      } else {
        break;
      }
    }
    eat_punct(";");
    if (segments.empty()) return;
    ImportDecl imp;
    imp.span = {start, pos_ > 0 ? toks_[pos_ - 1].end : start};
    imp.wildcard = wildcard;
    if (wildcard) {
      imp.target = join(segments, ".");
    } else if (is_static && segments.size() >= 2) {
      std::string member = segments.back();
      segments.pop_back();
      imp.target = join(segments, ".");
      imp.symbols.emplace_back(member, member);
    } else {
      imp.target = join(segments, ".");
      imp.symbols.emplace_back(segments.back(), segments.back());
    }
    mod_.imports.push_back(std::move(imp));
  }

  static std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += sep;
      out += parts[i];
    }
    return out;
  }

  // ---- JS declarations ----

  void parse_js_export() {
    advance();  // export
    if (cur().is_ident("default")) {
      advance();
      if (cur().is_ident("function") || (cur().is_ident("async") && ahead(1).is_ident("function"))) {
        parse_js_function_decl(true);
        return;
      }
      if (cur().is_ident("class")) {
        parse_js_class(true);
        return;
      }
      // `export default <expr>;`
      parse_statement(toplevel_stmts_, "");
      return;
    }
    if (cur().is_ident("function") || (cur().is_ident("async") && ahead(1).is_ident("function"))) {
      parse_js_function_decl(true);
      return;
    }
    if (cur().is_ident("class")) {
      parse_js_class(true);
      return;
    }
    if (cur().is_punct("{")) {
      // `export { a, b }`: mark existing declarations.
      advance();
      while (!at_end() && !cur().is_punct("}")) {
        if (cur().is(Token::Kind::Ident)) exported_names_.insert(cur().text);
        advance();
      }
      eat_punct("}");
      // optional `from "..."` re-export
      if (eat_ident("from") && cur().is(Token::Kind::String)) advance();
      eat_punct(";");
      return;
    }
    // `export const x = ...` etc.
    exporting_next_ = true;
    parse_statement(toplevel_stmts_, "");
    exporting_next_ = false;
  }

  void parse_js_function_decl(bool exported) {
    std::size_t start = cur().begin;
    eat_ident("async");
    advance();  // function
    if (cur().is_punct("*")) {
      // generator: outside the subset
      skip_record(start, "generator function");
      while (!at_end() && !cur().is_punct("{")) advance();
      consume_balanced("{", "}");
      return;
    }
    std::string name;
    if (cur().is(Token::Kind::Ident)) {
      name = cur().text;
      advance();
    } else {
      name = anon_name(start);
    }
    IRFunction fn = parse_function_rest(name, "", start);
    fn.is_exported = exported;
    add_function(std::move(fn));
  }

  void parse_js_class(bool exported) {
    std::size_t start = cur().begin;
    advance();  // class
    std::string class_name = "<anon-class>";
    if (cur().is(Token::Kind::Ident)) {
      class_name = cur().text;
      advance();
    }
    if (eat_ident("extends")) {
      // extends clause can be an arbitrary expression; consume its tokens
      while (!at_end() && !cur().is_punct("{")) advance();
    }
    if (!cur().is_punct("{")) return;
    advance();
    while (!at_end() && !cur().is_punct("}")) {
      if (eat_punct(";")) continue;
      eat_ident("static");
      eat_ident("async");
      std::size_t mstart = cur().begin;
      if ((cur().is_ident("get") || cur().is_ident("set")) && ahead(1).is(Token::Kind::Ident) &&
          ahead(2).is_punct("(")) {
        advance();
      }
      std::string mname;
      if (cur().is(Token::Kind::Ident) || cur().is(Token::Kind::String)) {
        mname = cur().is(Token::Kind::Ident) ? cur().text : cur().value;
        advance();
      } else if (cur().is_punct("#") && ahead(1).is(Token::Kind::Ident)) {
        advance();
        mname = "#" + cur().text;
        advance();
      } else {
        skip_record(cur().begin, "unsupported class member");
        consume_statement_tokens();
        continue;
      }
      if (cur().is_punct("(")) {
        IRFunction fn = parse_function_rest(mname, class_name, mstart);
        fn.is_exported = exported;
        add_function(std::move(fn));
      } else if (cur().is_punct("=")) {
        // class field: record as a module-scope declaration
        advance();
        auto value = parse_expression(0);
        IRStatement st;
        st.kind = IRStatement::Kind::VarDecl;
        st.lhs = mname;
        st.span = {mstart, prev_end()};
        if (value) attach_value(st, std::move(value));
        toplevel_stmts_.push_back(std::move(st));
        eat_punct(";");
      } else {
        eat_punct(";");
      }
    }
    eat_punct("}");
    (void)start;
  }

  // ---- Java declarations ----

  void parse_java_class() {
    while (cur().is(Token::Kind::Ident) && java_modifiers().count(cur().text)) advance();
    if (!eat_ident("class")) {
      consume_statement_tokens();
      return;
    }
    std::string class_name = "<anon-class>";
    if (cur().is(Token::Kind::Ident)) {
      class_name = cur().text;
      advance();
    }
    if (cur().is_punct("<")) consume_generics();
    if (eat_ident("extends")) consume_type_until({"{", ";"});
    if (eat_ident("implements")) consume_type_until({"{", ";"});
    if (!cur().is_punct("{")) {
      consume_statement_tokens();
      return;
    }
    advance();
    while (!at_end() && !cur().is_punct("}")) {
      parse_java_member(class_name);
    }
    eat_punct("}");
  }

  void consume_generics() {
    int depth = 0;
    while (!at_end()) {
      if (cur().is_punct("<")) ++depth;
      else if (cur().is_punct(">")) {
        --depth;
        advance();
        if (depth <= 0) return;
        continue;
      } else if (cur().is_punct(">>")) {
        depth -= 2;
        advance();
        if (depth <= 0) return;
        continue;
      }
      advance();
    }
  }

  void parse_java_member(const std::string& class_name) {
    if (eat_punct(";")) return;
    if (cur().is_punct("@")) {
      skip_annotation();
      return;
    }
    if (cur().is_punct("{")) {
      // instance/static initializer block: flatten into module scope
      advance();
      parse_statements_until_close(toplevel_stmts_, class_name);
      eat_punct("}");
      return;
    }
    std::size_t start = cur().begin;
    while (cur().is(Token::Kind::Ident) && java_modifiers().count(cur().text)) advance();
    if (cur().is_punct("{")) {  // static initializer block after modifiers
      parse_java_member(class_name);
      return;
    }
    if (cur().is_ident("class")) {
      parse_java_class();
      return;
    }
    if (cur().is_ident("interface") || cur().is_ident("enum") || cur().is_ident("record")) {
      skip_record(start, "nested type declaration");
      skip_java_type_decl();
      return;
    }
    if (cur().is_punct("<")) consume_generics();  // generic method type params

    // Constructor?
    if (cur().is(Token::Kind::Ident) && cur().text == class_name && ahead(1).is_punct("(")) {
      advance();
      IRFunction fn = parse_function_rest("constructor", class_name, start);
      add_function(std::move(fn));
      return;
    }

    // Field or method: Type then name.
    std::size_t save = pos_;
    if (!try_consume_java_type()) {
      skip_record(start, "unsupported class member");
      consume_statement_tokens();
      return;
    }
    if (!cur().is(Token::Kind::Ident)) {
      pos_ = save;
      skip_record(start, "unsupported class member");
      consume_statement_tokens();
      return;
    }
    std::string name = cur().text;
    advance();
    if (cur().is_punct("(")) {
      IRFunction fn = parse_function_rest(name, class_name, start);
      add_function(std::move(fn));
      return;
    }
    // Field declaration(s): collected as module-scope statements.
    while (true) {
      IRStatement st;
      st.kind = IRStatement::Kind::VarDecl;
      st.lhs = name;
      st.span.begin = start;
      if (eat_punct("=")) {
        auto value = parse_expression(0);
        if (value) attach_value(st, std::move(value));
      }
      st.span.end = prev_end();
      toplevel_stmts_.push_back(std::move(st));
      if (eat_punct(",") && cur().is(Token::Kind::Ident)) {
        name = cur().text;
        start = cur().begin;
        advance();
        continue;
      }
      break;
    }
    eat_punct(";");
  }

  // Returns true if the tokens ahead read as a Java type; consumes them.
  bool try_consume_java_type() {
    if (!cur().is(Token::Kind::Ident)) return false;
    advance();
    while (true) {
      if (cur().is_punct(".") && ahead(1).is(Token::Kind::Ident)) {
        advance();
        advance();
        continue;
      }
      if (cur().is_punct("<")) {
        consume_generics();
        continue;
      }
      if (cur().is_punct("[") && ahead(1).is_punct("]")) {
        advance();
        advance();
        continue;
      }
      if (cur().is_punct("...")) {  // varargs
        advance();
        continue;
      }
      break;
    }
    return true;
  }

  // ---- functions ----

  static void uniquify_params(std::vector<ParamDecl>& params) {
    std::set<std::string> seen;
    for (auto& p : params) {
      std::string name = p.name;
      int n = 2;
      while (!seen.insert(name).second) {
        name = p.name + "#" + std::to_string(n++);
      }
      p.name = name;
    }
  }

  IRFunction parse_function_rest(const std::string& name, const std::string& class_name,
                                 std::size_t start) {
    IRFunction fn;
    fn.display_name = class_name.empty() ? name : class_name + "." + name;
    fn.class_name = class_name;
    fn.id.module = mod_.module_name;
    fn.id.qualified_name = mod_.module_name + "::" + fn.display_name;
    fn.span.begin = start;
    parse_params(fn.params);
    uniquify_params(fn.params);
    if (cur().is_punct(":")) {  // TS return type
      advance();
      consume_type_until({"{", ";", "=>"});
    }
    if (eat_ident("throws")) consume_type_until({"{", ";"});
    if (cur().is_punct("{")) {
      advance();
      ++body_depth_;
      parse_statements_until_close(fn.body, class_name);
      --body_depth_;
      eat_punct("}");
    } else {
      eat_punct(";");  // abstract/declaration-only
    }
    fn.span.end = prev_end();
    fn.id.span = fn.span;
    return fn;
  }

  void parse_params(std::vector<ParamDecl>& out) {
    if (!eat_punct("(")) return;
    while (!at_end() && !cur().is_punct(")")) {
      if (cur().is_punct("@")) {
        std::size_t s = cur().begin;
        advance();
        if (cur().is(Token::Kind::Ident)) advance();
        if (cur().is_punct("(")) consume_balanced("(", ")");
        diag_at(s, "annotation on parameter");
        continue;
      }
      eat_ident("final");
      eat_punct("...");
      if (lang_ == Language::JavaLike) {
        // Type then name; the last identifier before `,`/`)` is the name.
        std::size_t save = pos_;
        if (try_consume_java_type() && cur().is(Token::Kind::Ident)) {
          out.push_back(ParamDecl{cur().text, {cur().begin, cur().end}});
          advance();
        } else {
          pos_ = save;
          if (cur().is(Token::Kind::Ident)) {
            out.push_back(ParamDecl{cur().text, {cur().begin, cur().end}});
            advance();
          }
        }
      } else {
        if (cur().is(Token::Kind::Ident)) {
          out.push_back(ParamDecl{cur().text, {cur().begin, cur().end}});
          advance();
          if (eat_punct("?")) {
          }
          if (cur().is_punct(":")) {
            advance();
            consume_type_until({",", ")", "="});
          }
          if (cur().is_punct("=")) {
            advance();
            consume_type_until({",", ")"});
          }
        } else if (cur().is_punct("{") || cur().is_punct("[")) {
          // destructured parameter: positional placeholder
          std::size_t s = cur().begin;
          consume_balanced(cur().is_punct("{") ? "{" : "[",
                           cur().is_punct("{") ? "}" : "]");
          out.push_back(ParamDecl{"<pat>", {s, prev_end()}});
          if (cur().is_punct(":")) {
            advance();
            consume_type_until({",", ")", "="});
          }
          if (cur().is_punct("=")) {
            advance();
            consume_type_until({",", ")"});
          }
        }
      }
      if (!eat_punct(",")) {
        if (!cur().is_punct(")")) advance();  // stray token; keep moving
      }
    }
    eat_punct(")");
  }

  // ---- statements ----

  void parse_statements_until_close(std::vector<IRStatement>& out, const std::string& class_ctx) {
    while (!at_end() && !cur().is_punct("}")) {
      parse_statement(out, class_ctx);
    }
  }

  void parse_statement(std::vector<IRStatement>& out, const std::string& class_ctx) {
    if (eat_punct(";")) return;
    const Token& t = cur();
    std::size_t start = t.begin;

    if (t.is_punct("{")) {  // bare block: flatten
      advance();
      parse_statements_until_close(out, class_ctx);
      eat_punct("}");
      return;
    }
    if (t.is_punct("@")) {
      skip_annotation();
      return;
    }
    if (t.is(Token::Kind::Ident)) {
      const std::string& kw = t.text;
      if (kw == "if") {
        skip_record(start, "if statement");
        advance();
        consume_balanced("(", ")");
        parse_branch_body(out, class_ctx);
        while (eat_ident("else")) {
          if (cur().is_ident("if")) {
            advance();
            consume_balanced("(", ")");
          }
          parse_branch_body(out, class_ctx);
        }
        return;
      }
      if (kw == "while" || kw == "for" || kw == "switch") {
        skip_record(start, kw + " statement");
        advance();
        consume_balanced("(", ")");
        parse_branch_body(out, class_ctx);
        return;
      }
      if (kw == "do") {
        skip_record(start, "do statement");
        advance();
        parse_branch_body(out, class_ctx);
        eat_ident("while");
        consume_balanced("(", ")");
        eat_punct(";");
        return;
      }
      if (kw == "try") {
        skip_record(start, "try statement");
        advance();
        if (cur().is_punct("(")) consume_balanced("(", ")");  // try-with-resources header
        parse_branch_body(out, class_ctx);
        while (cur().is_ident("catch")) {
          advance();
          consume_balanced("(", ")");
          parse_branch_body(out, class_ctx);
        }
        if (eat_ident("finally")) parse_branch_body(out, class_ctx);
        return;
      }
      if (kw == "case") {
        advance();
        while (!at_end() && !cur().is_punct(":") && !cur().is_punct(";") && !cur().is_punct("}")) advance();
        eat_punct(":");
        return;
      }
      if (kw == "default" && ahead(1).is_punct(":")) {
        advance();
        eat_punct(":");
        return;
      }
      if (kw == "return") {
        advance();
        IRStatement st;
        st.kind = IRStatement::Kind::Return;
        st.span.begin = start;
        if (!cur().is_punct(";") && !cur().is_punct("}")) {
          auto value = parse_expression(0);
          if (value) attach_value(st, std::move(value));
        }
        eat_punct(";");
        st.span.end = prev_end();
        out.push_back(std::move(st));
        return;
      }
      if (kw == "throw" || kw == "break" || kw == "continue" || kw == "debugger" ||
          kw == "yield" || kw == "assert" || kw == "goto" || kw == "synchronized") {
        skip_record(start, kw + " statement");
        advance();
        if (kw == "synchronized") {
          consume_balanced("(", ")");
          parse_branch_body(out, class_ctx);
          return;
        }
        consume_statement_tokens();
        return;
      }
      if (lang_ == Language::JsLike && (kw == "const" || kw == "let" || kw == "var")) {
        parse_js_var_decl(out, start);
        return;
      }
      if (lang_ == Language::JsLike &&
          (kw == "function" || (kw == "async" && ahead(1).is_ident("function")))) {
        parse_js_function_decl(false);  // nested declaration hoisted to module level
        return;
      }
      if (lang_ == Language::JsLike && kw == "class") {
        parse_js_class(false);
        return;
      }
      if (kw == "import") {
        if (lang_ == Language::JsLike && body_depth_ == 0) {
          parse_js_import();
        } else {
          skip_record(start, "import inside function body");
          consume_statement_tokens();
        }
        return;
      }
      if (lang_ == Language::JavaLike) {
        // Local variable declaration: Type name [= expr][, name [= expr]]*;
        std::size_t save = pos_;
        eat_ident("final");
        if (try_consume_java_type() && cur().is(Token::Kind::Ident) &&
            (ahead(1).is_punct("=") || ahead(1).is_punct(";") || ahead(1).is_punct(","))) {
          parse_java_local_decl(out, start);
          return;
        }
        pos_ = save;
      }
    }

    // Expression-led statement: assignment or call.
    parse_expression_statement(out, start);
  }

  void parse_branch_body(std::vector<IRStatement>& out, const std::string& class_ctx) {
    if (cur().is_punct("{")) {
      advance();
      parse_statements_until_close(out, class_ctx);
      eat_punct("}");
    } else if (!at_end() && !cur().is_punct("}")) {
      parse_statement(out, class_ctx);
    }
  }

  void parse_js_var_decl(std::vector<IRStatement>& out, std::size_t start) {
    advance();  // const/let/var
    bool first = true;
    while (!at_end()) {
      std::size_t dstart = first ? start : cur().begin;
      first = false;
      if (cur().is_punct("{") || cur().is_punct("[")) {
        if (try_destructured_require(dstart)) return;
        skip_record(dstart, "destructuring declaration");
        consume_statement_tokens(/*brace_ends_statement=*/false);
        return;
      }
      if (!cur().is(Token::Kind::Ident)) {
        skip_record(dstart, "unsupported declaration");
        consume_statement_tokens();
        return;
      }
      std::string name = cur().text;
      advance();
      if (cur().is_punct(":")) {  // TS annotation
        advance();
        consume_type_until({"=", ",", ";"});
      }
      IRStatement st;
      st.kind = IRStatement::Kind::VarDecl;
      st.lhs = name;
      st.span.begin = dstart;
      if (eat_punct("=")) {
        auto value = parse_expression(0);
        if (value) attach_value(st, std::move(value));
      }
      st.span.end = prev_end();
      bool more = eat_punct(",");
      if (!more) {
        eat_punct(";");
        st.span.end = prev_end();
      }
      if (exporting_next_) exported_names_.insert(st.lhs);
      register_require_binding(st);
      out.push_back(std::move(st));
      if (!more) return;
    }
  }

  // `const x = require("mod")` binds x like a default import.
  void register_require_binding(const IRStatement& st) {
    if (!st.value || st.value->kind != IRExpr::Kind::Call) return;
    const IRExpr& call = *st.value;
    if (!call.base || call.base->kind != IRExpr::Kind::Identifier ||
        call.base->name != "require") {
      return;
    }
    if (call.args.size() != 1 || call.args[0]->kind != IRExpr::Kind::Literal ||
        call.args[0]->literal_kind != LiteralKind::String) {
      return;
    }
    ImportDecl imp;
    imp.target = call.args[0]->name;
    imp.symbols.emplace_back("*", st.lhs);
    imp.span = st.span;
    mod_.imports.push_back(std::move(imp));
  }

  // `const { a, b: c } = require("mod")` becomes named import bindings.
  // Returns false (without consuming) when the shape is anything else.
  bool try_destructured_require(std::size_t start) {
    if (!cur().is_punct("{")) return false;
    std::size_t save = pos_;
    advance();
    std::vector<std::pair<std::string, std::string>> symbols;
    while (cur().is(Token::Kind::Ident)) {
      std::string external = cur().text;
      std::string local = external;
      advance();
      if (eat_punct(":")) {
        if (!cur().is(Token::Kind::Ident)) {
          pos_ = save;
          return false;
        }
        local = cur().text;
        advance();
      }
      symbols.emplace_back(external, local);
      if (!eat_punct(",")) break;
    }
    if (symbols.empty() || !eat_punct("}") || !eat_punct("=") || !eat_ident("require") ||
        !eat_punct("(") || !cur().is(Token::Kind::String)) {
      pos_ = save;
      return false;
    }
    std::string target = cur().value;
    advance();
    if (!eat_punct(")")) {
      pos_ = save;
      return false;
    }
    eat_punct(";");
    ImportDecl imp;
    imp.target = std::move(target);
    imp.symbols = std::move(symbols);
    imp.span = {start, prev_end()};
    mod_.imports.push_back(std::move(imp));
    return true;
  }

  void parse_java_local_decl(std::vector<IRStatement>& out, std::size_t start) {
    // Type already consumed; positioned at the first name.
    bool first = true;
    while (cur().is(Token::Kind::Ident)) {
      IRStatement st;
      st.kind = IRStatement::Kind::VarDecl;
      st.lhs = cur().text;
      st.span.begin = first ? start : cur().begin;
      first = false;
      advance();
      if (eat_punct("=")) {
        auto value = parse_expression(0);
        if (value) attach_value(st, std::move(value));
      }
      st.span.end = prev_end();
      out.push_back(std::move(st));
      if (!eat_punct(",")) break;
    }
    eat_punct(";");
    if (!out.empty()) out.back().span.end = prev_end();
  }

  void parse_expression_statement(std::vector<IRStatement>& out, std::size_t start) {
    auto expr = parse_expression(0);
    if (!expr) {
      skip_record(start, "unparseable statement `" + toks_[std::min(pos_, toks_.size() - 1)].text + "`");
      consume_statement_tokens();
      return;
    }
    static const std::array<std::string_view, 6> kAugOps = {"+=", "-=", "*=", "/=", "%=", "&="};
    bool aug = false;
    for (auto op : kAugOps) {
      if (cur().is_punct(op)) aug = true;
    }
    if (cur().is_punct("=") || aug) {
      std::string root;
      bool is_member = false;
      if (!lhs_root(*expr, root, is_member)) {
        skip_record(start, "unsupported assignment target");
        consume_statement_tokens();
        return;
      }
      bool augmented = aug;
      advance();  // the operator
      auto rhs = parse_expression(0);
      eat_punct(";");
      IRStatement st;
      st.kind = IRStatement::Kind::Assign;
      st.lhs = root;
      st.lhs_is_member = is_member;
      st.span = {start, prev_end()};
      if (augmented) {
        // x += e  reads x as well as e
        std::vector<std::unique_ptr<IRExpr>> args;
        args.push_back(std::move(expr));
        if (rhs) args.push_back(std::move(rhs));
        auto call = IRExpr::call(IRExpr::identifier("<op:aug>", st.span), std::move(args), st.span);
        attach_value(st, std::move(call));
      } else if (rhs) {
        attach_value(st, std::move(rhs));
      }
      out.push_back(std::move(st));
      return;
    }
    eat_punct(";");
    if (expr->kind == IRExpr::Kind::Call && !IRExpr::op_marker(*expr)) {
      IRStatement st;
      st.kind = IRStatement::Kind::CallStmt;
      st.span = {start, prev_end()};
      attach_value(st, std::move(expr));
      out.push_back(std::move(st));
      return;
    }
    skip_record(start, "expression statement without effect");
  }

  static bool lhs_root(const IRExpr& e, std::string& root, bool& is_member) {
    if (e.kind == IRExpr::Kind::Identifier) {
      root = e.name;
      is_member = false;
      return true;
    }
    if (e.kind == IRExpr::Kind::Member) {
      const IRExpr* b = &e;
      while (b->kind == IRExpr::Kind::Member) b = b->base.get();
      if (b && b->kind == IRExpr::Kind::Identifier) {
        root = b->name;
        is_member = true;
        return true;
      }
    }
    return false;
  }

  void attach_value(IRStatement& st, std::unique_ptr<IRExpr> value) {
    st.value = std::move(value);
    st.calls.clear();
    collect_calls(*st.value, st.calls);
  }

  // ---- expressions ----

  std::unique_ptr<IRExpr> parse_expression(int depth) {
    if (depth > kMaxExprDepth) return nullptr;
    auto first = parse_binary(depth);
    if (!first) return nullptr;
    if (cur().is_punct("?") && !ahead(1).is_punct(".")) {
      std::size_t start = first->span.begin;
      advance();
      auto then_e = parse_expression(depth + 1);
      std::unique_ptr<IRExpr> else_e;
      if (eat_punct(":")) else_e = parse_expression(depth + 1);
      std::vector<std::unique_ptr<IRExpr>> args;
      args.push_back(std::move(first));
      if (then_e) args.push_back(std::move(then_e));
      if (else_e) args.push_back(std::move(else_e));
      Span s{start, prev_end()};
      return IRExpr::call(IRExpr::identifier("<op:cond>", s), std::move(args), s);
    }
    return first;
  }

  bool at_binary_op() const {
    static const std::set<std::string> ops = {
        "+",  "-",  "*",  "/",  "%",  "<",   "<=",  ">",  ">=", "==", "!=",
        "===", "!==", "&&", "||", "??", "&",  "|",  "^",  "<<", ">>", ">>>", "**",
    };
    if (cur().is(Token::Kind::Punct) && ops.count(cur().text)) return true;
    if (cur().is_ident("instanceof") || cur().is_ident("in")) return true;
    return false;
  }

  std::unique_ptr<IRExpr> parse_binary(int depth) {
    if (depth > kMaxExprDepth) return nullptr;
    auto first = parse_unary(depth);
    if (!first) return nullptr;
    if (!at_binary_op()) return first;
    std::size_t start = first->span.begin;
    std::vector<std::unique_ptr<IRExpr>> operands;
    operands.push_back(std::move(first));
    while (at_binary_op()) {
      advance();
      auto next = parse_unary(depth + 1);
      if (!next) break;
      operands.push_back(std::move(next));
    }
    Span s{start, prev_end()};
    return IRExpr::call(IRExpr::identifier("<op:bin>", s), std::move(operands), s);
  }

  std::unique_ptr<IRExpr> parse_unary(int depth) {
    if (depth > kMaxExprDepth) return nullptr;
    const Token& t = cur();
    if (t.is_punct("!") || t.is_punct("-") || t.is_punct("+") || t.is_punct("~") ||
        t.is_punct("...") || t.is_punct("++") || t.is_punct("--") ||
        t.is_ident("typeof") || t.is_ident("void") || t.is_ident("delete") ||
        t.is_ident("await")) {
      advance();
      return parse_unary(depth + 1);
    }
    if (t.is_ident("new")) return parse_new(depth);
    return parse_postfixed(depth);
  }

  std::unique_ptr<IRExpr> parse_new(int depth) {
    std::size_t start = cur().begin;
    advance();  // new
    if (!cur().is(Token::Kind::Ident)) return parse_postfixed(depth);
    auto chain = IRExpr::identifier(cur().text, {cur().begin, cur().end});
    advance();
    while (cur().is_punct(".") && ahead(1).is(Token::Kind::Ident)) {
      advance();
      chain = IRExpr::member(std::move(chain), cur().text, {start, cur().end});
      advance();
    }
    if (cur().is_punct("<")) consume_generics();
    std::vector<std::unique_ptr<IRExpr>> args;
    if (cur().is_punct("(")) args = parse_args(depth);
    if (cur().is_punct("[")) {  // array allocation: new int[n]
      consume_balanced("[", "]");
    }
    Span s{start, prev_end()};
    auto ctor = IRExpr::member(std::move(chain), "new", s);
    auto call = IRExpr::call(std::move(ctor), std::move(args), s);
    return parse_postfix_chain(std::move(call), depth);
  }

  std::vector<std::unique_ptr<IRExpr>> parse_args(int depth) {
    std::vector<std::unique_ptr<IRExpr>> args;
    advance();  // '('
    while (!at_end() && !cur().is_punct(")")) {
      auto a = parse_expression(depth + 1);
      if (a) {
        args.push_back(std::move(a));
      } else {
        // give up on this argument; resync to ',' or ')'
        int d = 0;
        while (!at_end()) {
          if (cur().is_punct("(") || cur().is_punct("[") || cur().is_punct("{")) ++d;
          else if (cur().is_punct(")") || cur().is_punct("]") || cur().is_punct("}")) {
            if (d == 0) break;
            --d;
          } else if (cur().is_punct(",") && d == 0) {
            break;
          }
          advance();
        }
      }
      if (!eat_punct(",")) break;
    }
    eat_punct(")");
    return args;
  }

  std::unique_ptr<IRExpr> parse_postfixed(int depth) {
    auto primary = parse_primary(depth);
    if (!primary) return nullptr;
    return parse_postfix_chain(std::move(primary), depth);
  }

  std::unique_ptr<IRExpr> parse_postfix_chain(std::unique_ptr<IRExpr> expr, int depth) {
    if (depth > kMaxExprDepth) return expr;
    std::size_t start = expr->span.begin;
    while (!at_end()) {
      if ((cur().is_punct(".") || cur().is_punct("?.")) && ahead(1).is(Token::Kind::Ident)) {
        advance();
        expr = IRExpr::member(std::move(expr), cur().text, {start, cur().end});
        advance();
        continue;
      }
      if (cur().is_punct("(")) {
        auto args = parse_args(depth);
        Span s{start, prev_end()};
        expr = IRExpr::call(std::move(expr), std::move(args), s);
        continue;
      }
      if (cur().is_punct("[")) {
        advance();
        auto index = parse_expression(depth + 1);
        eat_punct("]");
        Span s{start, prev_end()};
        std::vector<std::unique_ptr<IRExpr>> args;
        args.push_back(std::move(expr));
        if (index) args.push_back(std::move(index));
        expr = IRExpr::call(IRExpr::identifier("<op:index>", s), std::move(args), s);
        continue;
      }
      if (cur().is_punct("++") || cur().is_punct("--")) {
        advance();
        continue;
      }
      if (cur().is_punct("!") && lang_ == Language::JsLike && ahead(1).is_punct(".")) {
        advance();  // TS non-null assertion in a chain
        continue;
      }
      if (cur().is_ident("as") && lang_ == Language::JsLike) {
        advance();
        consume_type_until({";", ",", ")", "]"});
        continue;
      }
      break;
    }
    return expr;
  }

  std::unique_ptr<IRExpr> parse_primary(int depth) {
    if (depth > kMaxExprDepth) return nullptr;
    const Token& t = cur();
    Span s{t.begin, t.end};

    if (t.is(Token::Kind::Number)) {
      advance();
      return IRExpr::literal(t.text, LiteralKind::Number, s);
    }
    if (t.is(Token::Kind::String)) {
      advance();
      return IRExpr::literal(t.value, LiteralKind::String, s);
    }
    if (t.is(Token::Kind::Ident)) {
      if (t.text == "true" || t.text == "false" || t.text == "null" || t.text == "undefined" ||
          t.text == "NaN") {
        advance();
        return IRExpr::literal(t.text, LiteralKind::Other, s);
      }
      if (t.text == "function" && lang_ == Language::JsLike) return parse_function_expr(depth);
      if (t.text == "async" && lang_ == Language::JsLike &&
          (ahead(1).is_ident("function") || ahead(1).is_punct("("))) {
        advance();
        return parse_primary(depth);
      }
      // bare-identifier arrow: `x => ...`
      if (lang_ == Language::JsLike && ahead(1).is_punct("=>")) {
        return parse_arrow_single_param(depth);
      }
      advance();
      return IRExpr::identifier(t.text, s);
    }
    if (t.is_punct("(")) return parse_paren_or_arrow(depth);
    if (t.is_punct("[")) {
      advance();
      std::vector<std::unique_ptr<IRExpr>> elems;
      while (!at_end() && !cur().is_punct("]")) {
        auto e = parse_expression(depth + 1);
        if (e) elems.push_back(std::move(e));
        else break;
        if (!eat_punct(",")) break;
      }
      while (!at_end() && !cur().is_punct("]")) advance();
      eat_punct("]");
      Span sp{s.begin, prev_end()};
      return IRExpr::call(IRExpr::identifier("<op:arr>", sp), std::move(elems), sp);
    }
    if (t.is_punct("{") && lang_ == Language::JsLike) return parse_object_literal(depth);
    return nullptr;
  }

  // `{ key: value, shorthand, ...spread }` -> <op:obj>(values...)
  std::unique_ptr<IRExpr> parse_object_literal(int depth) {
    std::size_t start = cur().begin;
    advance();  // '{'
    std::vector<std::unique_ptr<IRExpr>> values;
    while (!at_end() && !cur().is_punct("}")) {
      std::size_t iteration_start = pos_;
      if (eat_punct(",")) continue;
      if (cur().is_punct("...")) {
        advance();
        auto v = parse_expression(depth + 1);
        if (v) values.push_back(std::move(v));
        continue;
      }
      // key: identifier/string/number/computed
      if (cur().is(Token::Kind::Ident) &&
          (ahead(1).is_punct(",") || ahead(1).is_punct("}"))) {
        // shorthand: the identifier is also the value
        values.push_back(IRExpr::identifier(cur().text, {cur().begin, cur().end}));
        advance();
        continue;
      }
      if (cur().is_punct("[")) consume_balanced("[", "]");
      else if (cur().is(Token::Kind::Ident) || cur().is(Token::Kind::String) ||
               cur().is(Token::Kind::Number)) {
        advance();
      }
      if (cur().is_punct("(")) {
        // method shorthand: skip params + body
        consume_balanced("(", ")");
        if (cur().is_punct("{")) consume_balanced("{", "}");
        continue;
      }
      if (eat_punct(":")) {
        auto v = parse_expression(depth + 1);
        if (v) values.push_back(std::move(v));
      }
      if (!cur().is_punct(",") && !cur().is_punct("}")) {
        // resync inside the object literal
        int d = 0;
        while (!at_end()) {
          if (cur().is_punct("{") || cur().is_punct("[") || cur().is_punct("(")) ++d;
          else if (cur().is_punct("}") || cur().is_punct("]") || cur().is_punct(")")) {
            if (d == 0) break;
            --d;
          } else if (cur().is_punct(",") && d == 0) {
            break;
          }
          advance();
        }
      }
      if (pos_ == iteration_start) advance();  // stray closer: force progress
    }
    eat_punct("}");
    Span sp{start, prev_end()};
    return IRExpr::call(IRExpr::identifier("<op:obj>", sp), std::move(values), sp);
  }

  std::unique_ptr<IRExpr> parse_paren_or_arrow(int depth) {
    // Look ahead for `(...) =>` (JS) or `(...) ->` (Java lambda).
    std::size_t scan = pos_;
    int d = 0;
    while (scan < toks_.size() - 1) {
      const Token& t = toks_[scan];
      if (t.is_punct("(")) ++d;
      else if (t.is_punct(")")) {
        --d;
        if (d == 0) break;
      }
      ++scan;
    }
    const Token& after = toks_[std::min(scan + 1, toks_.size() - 1)];
    if (after.is_punct("=>") || after.is_punct("->")) return parse_arrow_paren_params(depth);

    std::size_t start = cur().begin;
    advance();  // '('
    auto inner = parse_expression(depth + 1);
    while (!at_end() && !cur().is_punct(")")) advance();
    eat_punct(")");
    if (!inner) return nullptr;
    // Java cast: `(Type) operand`
    if (lang_ == Language::JavaLike && is_pure_name_chain(*inner)) {
      const Token& nxt = cur();
      if (nxt.is(Token::Kind::Ident) || nxt.is(Token::Kind::String) ||
          nxt.is(Token::Kind::Number) || nxt.is_punct("(")) {
        auto operand = parse_unary(depth + 1);
        if (operand) return operand;
      }
    }
    (void)start;
    return inner;
  }

  static bool is_pure_name_chain(const IRExpr& e) {
    if (e.kind == IRExpr::Kind::Identifier) return true;
    if (e.kind == IRExpr::Kind::Member && e.base) return is_pure_name_chain(*e.base);
    return false;
  }

  std::unique_ptr<IRExpr> parse_arrow_single_param(int depth) {
    std::size_t start = cur().begin;
    std::vector<ParamDecl> params;
    params.push_back(ParamDecl{cur().text, {cur().begin, cur().end}});
    advance();  // param
    advance();  // '=>'
    return finish_lambda(start, std::move(params), depth);
  }

  std::unique_ptr<IRExpr> parse_arrow_paren_params(int depth) {
    std::size_t start = cur().begin;
    std::vector<ParamDecl> params;
    advance();  // '('
    while (!at_end() && !cur().is_punct(")")) {
      if (cur().is(Token::Kind::Ident) && !java_modifiers().count(cur().text)) {
        // Java lambdas may carry types: keep the last ident before , or )
        std::string name = cur().text;
        Span ps{cur().begin, cur().end};
        advance();
        while (cur().is(Token::Kind::Ident)) {
          name = cur().text;
          ps = {cur().begin, cur().end};
          advance();
        }
        params.push_back(ParamDecl{name, ps});
        if (cur().is_punct(":")) {
          advance();
          consume_type_until({",", ")", "="});
        }
        if (cur().is_punct("=")) {
          advance();
          consume_type_until({",", ")"});
        }
      } else if (cur().is_punct("{") || cur().is_punct("[")) {
        std::size_t s = cur().begin;
        consume_balanced(cur().is_punct("{") ? "{" : "[", cur().is_punct("{") ? "}" : "]");
        params.push_back(ParamDecl{"<pat>", {s, prev_end()}});
      } else {
        advance();
      }
      eat_punct(",");
    }
    eat_punct(")");
    if (cur().is_punct(":")) {  // TS return type
      advance();
      consume_type_until({"=>", "{", ";"});
    }
    if (!eat_punct("=>")) eat_punct("->");
    return finish_lambda(start, std::move(params), depth);
  }

  std::unique_ptr<IRExpr> finish_lambda(std::size_t start, std::vector<ParamDecl> params,
                                        int depth) {
    std::string name = anon_name(start);
    uniquify_params(params);
    IRFunction fn;
    fn.display_name = name;
    fn.id.module = mod_.module_name;
    fn.id.qualified_name = mod_.module_name + "::" + name;
    fn.params = std::move(params);
    fn.span.begin = start;
    if (cur().is_punct("{")) {
      advance();
      ++body_depth_;
      parse_statements_until_close(fn.body, "");
      --body_depth_;
      eat_punct("}");
    } else {
      auto value = parse_expression(depth + 1);
      IRStatement ret;
      ret.kind = IRStatement::Kind::Return;
      ret.span = value ? value->span : Span{start, prev_end()};
      if (value) attach_value(ret, std::move(value));
      fn.body.push_back(std::move(ret));
    }
    fn.span.end = prev_end();
    fn.id.span = fn.span;
    Span s{start, prev_end()};
    add_function(std::move(fn));
    return IRExpr::identifier(name, s);
  }

  std::unique_ptr<IRExpr> parse_function_expr(int depth) {
    std::size_t start = cur().begin;
    advance();  // function
    if (cur().is_punct("*")) {
      skip_record(start, "generator function");
      while (!at_end() && !cur().is_punct("{")) advance();
      consume_balanced("{", "}");
      return IRExpr::literal("undefined", LiteralKind::Other, {start, prev_end()});
    }
    if (cur().is(Token::Kind::Ident)) advance();  // expression name is local-only
    std::string name = anon_name(start);
    IRFunction fn;
    fn.display_name = name;
    fn.id.module = mod_.module_name;
    fn.id.qualified_name = mod_.module_name + "::" + name;
    fn.span.begin = start;
    parse_params(fn.params);
    uniquify_params(fn.params);
    if (cur().is_punct("{")) {
      advance();
      ++body_depth_;
      parse_statements_until_close(fn.body, "");
      --body_depth_;
      eat_punct("}");
    }
    fn.span.end = prev_end();
    fn.id.span = fn.span;
    add_function(std::move(fn));
    (void)depth;
    return IRExpr::identifier(name, {start, prev_end()});
  }

  // ---- assembly ----

  std::string anon_name(std::size_t offset) const {
    auto lc = lines_.locate(offset);
    std::ostringstream os;
    os << "<anon@" << lc.line << ":" << lc.col << ">";
    return os.str();
  }

  void add_function(IRFunction fn) {
    // Qualified names must be unique; nested redefinitions get a position tag.
    if (seen_qualified_.count(fn.id.qualified_name)) {
      auto lc = lines_.locate(fn.span.begin);
      std::ostringstream os;
      os << fn.id.qualified_name << "@" << lc.line << ":" << lc.col;
      fn.id.qualified_name = os.str();
    }
    seen_qualified_.insert(fn.id.qualified_name);
    mod_.functions.push_back(std::move(fn));
  }

  void finish_toplevel() {
    for (auto& fn : mod_.functions) {
      if (exported_names_.count(fn.display_name)) fn.is_exported = true;
    }
    if (toplevel_stmts_.empty()) return;
    IRFunction top;
    top.display_name = kToplevelName;
    top.id.module = mod_.module_name;
    top.id.qualified_name = mod_.module_name + "::" + kToplevelName;
    top.is_synthetic = true;
    top.span.begin = toplevel_stmts_.front().span.begin;
    top.span.end = toplevel_stmts_.front().span.end;
    for (const auto& st : toplevel_stmts_) {
      top.span.begin = std::min(top.span.begin, st.span.begin);
      top.span.end = std::max(top.span.end, st.span.end);
    }
    top.id.span = top.span;
    top.body = std::move(toplevel_stmts_);
    add_function(std::move(top));
  }

  std::size_t prev_end() const { return pos_ > 0 ? toks_[pos_ - 1].end : 0; }

  const SourceFile& file_;
  Language lang_;
  LineIndex lines_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  IRModule mod_;
  std::vector<IRStatement> toplevel_stmts_;
  std::set<std::string> seen_qualified_;
  std::set<std::string> exported_names_;
  bool exporting_next_ = false;
  int body_depth_ = 0;
};

}  // namespace

IRModule parse_file(const SourceFile& file) {
  SourceFile clean = file;
  clean.text = sanitize_utf8(file.text);
  return Parser(clean).parse();
}

}  // namespace plens
