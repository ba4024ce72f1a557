#include "plens/graphs.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>

namespace plens {

std::string to_string(Resolution r) {
  switch (r) {
    case Resolution::Exact: return "exact";
    case Resolution::ImportResolved: return "import";
    case Resolution::SuffixHeuristic: return "suffix";
    case Resolution::Unresolved: return "unresolved";
  }
  return "unresolved";
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_relative_specifier(const std::string& spec) {
  return spec.rfind("./", 0) == 0 || spec.rfind("../", 0) == 0 || spec == "." || spec == "..";
}

}  // namespace

std::string resolve_js_target(const std::string& importer_path, const std::string& specifier) {
  if (!is_relative_specifier(specifier)) {
    // bare specifier -> library name
    auto parts = split(specifier, '/');
    if (!parts.empty() && parts[0].size() > 1 && parts[0][0] == '@' && parts.size() > 1) {
      return parts[0] + "/" + parts[1];
    }
    return parts.empty() ? specifier : parts[0];
  }
  auto dir = split(importer_path, '/');
  if (!dir.empty()) dir.pop_back();  // drop the file name
  for (const auto& seg : split(specifier, '/')) {
    if (seg == "." || seg.empty()) continue;
    if (seg == "..") {
      if (!dir.empty()) dir.pop_back();
    } else {
      dir.push_back(seg);
    }
  }
  std::string resolved = join(dir, '/');
  // strip a source extension if the import spelled one
  for (const char* ext : {".js", ".jsx", ".ts", ".tsx"}) {
    std::string e(ext);
    if (resolved.size() > e.size() &&
        resolved.compare(resolved.size() - e.size(), e.size(), e) == 0) {
      resolved.resize(resolved.size() - e.size());
      break;
    }
  }
  return resolved;
}

std::string java_library_of(const std::string& import_target) {
  auto segments = split(import_target, '.');
  while (segments.size() > 1 &&
         std::isupper(static_cast<unsigned char>(segments.back()[0]))) {
    segments.pop_back();
  }
  return join(segments, '.');
}

ImportGraph build_import_graph(std::span<const IRModule> modules) {
  ImportGraph g;
  std::set<std::string> scanned;
  for (const auto& m : modules) {
    scanned.insert(m.module_name);
    g.nodes.insert(m.module_name);
  }
  for (const auto& m : modules) {
    for (const auto& imp : m.imports) {
      std::string target;
      if (m.file.language == Language::JsLike) {
        target = resolve_js_target(m.file.path, imp.target);
        if (is_relative_specifier(imp.target)) {
          // prefer a scanned module; `./lib` may be lib or lib/index
          if (!scanned.count(target) && scanned.count(target + "/index")) {
            target += "/index";
          }
        }
      } else {
        if (scanned.count(imp.target)) {
          target = imp.target;
        } else {
          target = java_library_of(imp.target);
        }
      }
      if (target.empty() || target == m.module_name) continue;  // self-edge dropped
      g.nodes.insert(target);
      g.edges.insert({m.module_name, target});
    }
  }
  return g;
}

namespace {

// Iterative Tarjan SCC over string nodes.
struct SccResult {
  std::map<std::string, std::size_t> component_of;
  std::vector<std::vector<std::string>> components;
};

SccResult tarjan_scc(const ImportGraph& g) {
  std::vector<std::string> nodes(g.nodes.begin(), g.nodes.end());
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < nodes.size(); ++i) index_of[nodes[i]] = i;

  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto& [from, to] : g.edges) {
    adj[index_of.at(from)].push_back(index_of.at(to));
  }

  const std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(nodes.size(), kUnvisited);
  std::vector<std::size_t> low(nodes.size(), 0);
  std::vector<bool> on_stack(nodes.size(), false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  SccResult result;

  struct Frame {
    std::size_t node;
    std::size_t next_edge = 0;
  };

  for (std::size_t start = 0; start < nodes.size(); ++start) {
    if (index[start] != kUnvisited) continue;
    std::vector<Frame> frames{{start, 0}};
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::size_t v = f.node;
      if (f.next_edge < adj[v].size()) {
        std::size_t w = adj[v][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back(Frame{w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          std::vector<std::string> comp;
          while (true) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(nodes[w]);
            result.component_of[nodes[w]] = result.components.size();
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          result.components.push_back(std::move(comp));
        }
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().node] = std::min(low[frames.back().node], low[v]);
        }
      }
    }
  }
  return result;
}

}  // namespace

DependencyOrder dependency_order(const ImportGraph& g) {
  DependencyOrder out;
  SccResult scc = tarjan_scc(g);

  // Condensation edges run dependency -> dependent so that Kahn's
  // algorithm emits dependencies first.
  std::size_t n = scc.components.size();
  std::vector<std::set<std::size_t>> dependents(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [from, to] : g.edges) {
    std::size_t cf = scc.component_of.at(from);
    std::size_t ct = scc.component_of.at(to);
    if (cf == ct) continue;
    if (dependents[ct].insert(cf).second) ++indegree[cf];
  }

  // Min-heap keyed by the group's smallest member for a deterministic
  // total order extending the partial order.
  auto key = [&](std::size_t c) -> const std::string& { return scc.components[c].front(); };
  auto cmp = [&](std::size_t a, std::size_t b) { return key(a) > key(b); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
  for (std::size_t c = 0; c < n; ++c) {
    if (indegree[c] == 0) ready.push(c);
  }
  while (!ready.empty()) {
    std::size_t c = ready.top();
    ready.pop();
    out.groups.push_back(scc.components[c]);
    for (std::size_t d : dependents[c]) {
      if (--indegree[d] == 0) ready.push(d);
    }
  }

  for (const auto& comp : scc.components) {
    if (comp.size() > 1) {
      std::ostringstream os;
      os << "import cycle: {";
      for (std::size_t i = 0; i < comp.size(); ++i) {
        if (i) os << ", ";
        os << comp[i];
      }
      os << "}";
      out.diagnostics.push_back(Diagnostic{"", 0, 0, "note", os.str()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Call graph
// ---------------------------------------------------------------------------

namespace {

// Per-scan lookup tables for callee resolution.
class Resolver {
 public:
  Resolver(std::span<const IRModule> modules, const PrivacyCatalog& catalog)
      : modules_(modules), catalog_(catalog) {
    for (const auto& m : modules) {
      modules_by_name_[m.module_name].push_back(&m);
      for (const auto& fn : m.functions) {
        if (fn.class_name.empty()) {
          free_functions_[{m.module_name, fn.display_name}] = &fn;
        } else {
          methods_[{m.module_name, fn.display_name}] = &fn;
          classes_.insert({m.module_name, fn.class_name});
        }
      }
    }
  }

  const IRFunction* find_free(const std::string& module, const std::string& name) const {
    auto it = free_functions_.find({module, name});
    return it == free_functions_.end() ? nullptr : it->second;
  }

  const IRFunction* find_method(const std::string& module, const std::string& cls,
                                const std::string& name) const {
    auto it = methods_.find({module, cls + "." + name});
    return it == methods_.end() ? nullptr : it->second;
  }

  bool has_class(const std::string& module, const std::string& cls) const {
    return classes_.count({module, cls}) > 0;
  }

  const std::vector<const IRModule*>* modules_named(const std::string& name) const {
    auto it = modules_by_name_.find(name);
    return it == modules_by_name_.end() ? nullptr : &it->second;
  }

  const PrivacyCatalog& catalog() const { return catalog_; }

 private:
  std::span<const IRModule> modules_;
  const PrivacyCatalog& catalog_;
  std::map<std::pair<std::string, std::string>, const IRFunction*> free_functions_;
  std::map<std::pair<std::string, std::string>, const IRFunction*> methods_;
  std::set<std::pair<std::string, std::string>> classes_;
  std::map<std::string, std::vector<const IRModule*>> modules_by_name_;
};

// Extracts the dotted identifier chain of a callee expression. Returns
// false if the head is dynamic (a call result, literal, etc.); in that
// case `segments` holds only the trailing known member names.
bool callee_chain(const IRExpr& callee, std::vector<std::string>& segments) {
  if (callee.kind == IRExpr::Kind::Identifier) {
    segments.insert(segments.begin(), callee.name);
    return true;
  }
  if (callee.kind == IRExpr::Kind::Member) {
    segments.insert(segments.begin(), callee.name);
    if (callee.base) return callee_chain(*callee.base, segments);
    return false;
  }
  return false;
}

std::vector<std::string> library_tokens(const std::string& name) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : lower(name)) {
    if (c == '.' || c == '-' || c == '/' || c == '@' || c == ' ' || c == '*') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Package prefix of a pattern: the dotted name minus the method segment and
// any trailing type segments ("org.apache.ibatis.session.SqlSession.selectList"
// -> "org.apache.ibatis.session"; "fs.readFileSync" -> "fs").
std::string pattern_package(const std::string& pattern) {
  if (pattern.find('*') != std::string::npos) return "";
  auto segments = split(pattern, '.');
  if (segments.size() < 2) return "";
  segments.pop_back();  // method
  while (segments.size() > 1 &&
         std::isupper(static_cast<unsigned char>(segments.back()[0]))) {
    segments.pop_back();
  }
  return join(segments, '.');
}

// Corroborating-import check for the suffix heuristic: the module must
// import something that plausibly provides the entry's library.
bool corroborated(const CatalogEntry& entry, const IRModule& mod) {
  std::string lib = lower(entry.library);
  if (lib == "builtin" || lib.empty()) return true;
  if (entry.pattern.rfind("java.lang.", 0) == 0) return true;  // implicitly imported
  // Umbrella names like "java.*" would corroborate through any java.*
  // import; those entries must match by package prefix instead.
  bool umbrella = lib.find('*') != std::string::npos;
  auto tokens = library_tokens(lib);
  std::string pkg = lower(pattern_package(entry.pattern));
  for (const auto& imp : mod.imports) {
    std::string target = lower(imp.target);
    if (!tokens.empty() && !umbrella) {
      bool all = true;
      for (const auto& t : tokens) {
        if (target.find(t) == std::string::npos) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    if (!pkg.empty()) {
      if (target == pkg || target.rfind(pkg + ".", 0) == 0 ||
          pkg.rfind(target + ".", 0) == 0) {
        return true;
      }
    }
  }
  return false;
}

struct LocalAliases {
  // variable -> qualified name of a function expression bound to it
  std::map<std::string, std::string> fn_bindings;
};

LocalAliases collect_aliases(const IRModule& m) {
  LocalAliases out;
  std::set<std::string> anon_names;
  for (const auto& fn : m.functions) {
    if (fn.display_name.rfind("<anon@", 0) == 0) {
      anon_names.insert(fn.display_name);
    }
  }
  for (const auto& fn : m.functions) {
    for (const auto& st : fn.body) {
      if (st.kind != IRStatement::Kind::VarDecl && st.kind != IRStatement::Kind::Assign) continue;
      if (!st.value || st.value->kind != IRExpr::Kind::Identifier) continue;
      if (anon_names.count(st.value->name)) {
        out.fn_bindings[st.lhs] = m.module_name + "::" + st.value->name;
      }
    }
  }
  return out;
}

class CallGraphBuilder {
 public:
  CallGraphBuilder(std::span<const IRModule> modules, const PrivacyCatalog& catalog)
      : modules_(modules), resolver_(modules, catalog), catalog_(catalog) {}

  CallGraph build() {
    for (const auto& m : modules_) {
      LocalAliases aliases = collect_aliases(m);
      for (const auto& fn : m.functions) {
        add_node(fn.id);
        for (const auto& st : fn.body) {
          for (const IRExpr* call : st.calls) {
            if (IRExpr::op_marker(*call)) continue;
            resolve_call(m, fn, aliases, *call);
          }
        }
      }
    }
    finish();
    return std::move(graph_);
  }

 private:
  void add_node(const MethodRef& ref) {
    auto [it, inserted] = node_index_.emplace(ref.qualified_name, ref);
    (void)it;
    (void)inserted;
  }

  void add_edge(const IRFunction& caller, Span site, MethodRef callee, Resolution res) {
    add_node(callee);
    edges_.push_back(CallEdge{caller.id, site, std::move(callee), res});
  }

  void resolve_call(const IRModule& m, const IRFunction& fn, const LocalAliases& aliases,
                    const IRExpr& call) {
    std::vector<std::string> chain;
    bool head_known = call.base && callee_chain(*call.base, chain);
    if (chain.empty()) return;
    if (head_known && chain.size() > 1 && chain.front() == "this") {
      chain.erase(chain.begin());
      if (chain.empty()) return;
    }

    Span site = call.span;
    if (head_known) {
      if (resolve_exact(m, fn, aliases, chain, site)) return;
      if (resolve_import(m, fn, chain, site)) return;
    }
    if (resolve_suffix(m, fn, chain, site, head_known)) return;

    // Unresolved: keep the edge for blind-spot reporting.
    MethodRef callee;
    callee.qualified_name = (head_known ? "" : "<dynamic>.") + join_dots(chain);
    callee.module = "";
    add_edge(fn, site, std::move(callee), Resolution::Unresolved);
  }

  static std::string join_dots(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out.push_back('.');
      out += parts[i];
    }
    return out;
  }

  bool resolve_exact(const IRModule& m, const IRFunction& fn, const LocalAliases& aliases,
                     const std::vector<std::string>& chain, Span site) {
    if (chain.size() == 1) {
      const std::string& name = chain[0];
      // same-class method first (Java unqualified call)
      if (!fn.class_name.empty()) {
        if (const IRFunction* callee = resolver_.find_method(m.module_name, fn.class_name, name)) {
          add_edge(fn, site, callee->id, Resolution::Exact);
          return true;
        }
      }
      if (const IRFunction* callee = resolver_.find_free(m.module_name, name)) {
        add_edge(fn, site, callee->id, Resolution::Exact);
        return true;
      }
      auto alias = aliases.fn_bindings.find(name);
      if (alias != aliases.fn_bindings.end()) {
        MethodRef callee;
        callee.qualified_name = alias->second;
        callee.module = m.module_name;
        add_edge(fn, site, std::move(callee), Resolution::Exact);
        return true;
      }
      return false;
    }
    if (chain.size() == 2) {
      // Class.method / Class.new within the module
      const std::string& cls = chain[0];
      const std::string& method = chain[1];
      if (resolver_.has_class(m.module_name, cls)) {
        std::string lookup = method == "new" ? "constructor" : method;
        if (const IRFunction* callee = resolver_.find_method(m.module_name, cls, lookup)) {
          add_edge(fn, site, callee->id, Resolution::Exact);
          return true;
        }
      }
    }
    return false;
  }

  bool resolve_import(const IRModule& m, const IRFunction& fn,
                      const std::vector<std::string>& chain, Span site) {
    const std::string& head = chain[0];
    for (const auto& imp : m.imports) {
      // 1) symbol-bound heads
      for (const auto& [external, local] : imp.symbols) {
        if (local != head) continue;
        if (try_import_target(m, fn, imp, external, chain, site)) return true;
      }
    }
    // 2) Java wildcard imports: `import java.io.*` binds any head
    if (m.file.language == Language::JavaLike) {
      for (const auto& imp : m.imports) {
        if (!imp.wildcard) continue;
        std::string candidate = imp.target + "." + join_dots(chain);
        if (emit_catalog_edge(fn, candidate, site)) return true;
        // scanned package?
        if (try_scanned_target(m, fn, imp.target, chain, site)) return true;
      }
    }
    return false;
  }

  // Resolves a symbol-bound call through one import declaration.
  bool try_import_target(const IRModule& m, const IRFunction& fn, const ImportDecl& imp,
                         const std::string& external, const std::vector<std::string>& chain,
                         Span site) {
    std::vector<std::string> rest(chain.begin() + 1, chain.end());

    if (m.file.language == Language::JsLike) {
      std::string target = resolve_js_target(m.file.path, imp.target);
      if (is_relative_specifier(imp.target)) {
        const auto* mods = resolver_.modules_named(target);
        if (!mods && resolver_.modules_named(target + "/index")) {
          target += "/index";
          mods = resolver_.modules_named(target);
        }
        if (mods) {
          // named import: function or class in the target module
          std::vector<std::string> lookup_chain;
          if (external == "*") {
            lookup_chain = rest;  // ns.member...
          } else {
            lookup_chain.push_back(external);
            lookup_chain.insert(lookup_chain.end(), rest.begin(), rest.end());
          }
          if (resolve_in_module(*mods, fn, lookup_chain, site)) return true;
        }
        return false;  // relative import with no scanned target
      }
      // library import -> catalog candidate
      std::string prefix = target;
      std::string candidate;
      if (external == "*") {
        candidate = rest.empty() ? prefix : prefix + "." + join_dots(rest);
      } else {
        candidate = prefix + "." + external + (rest.empty() ? "" : "." + join_dots(rest));
      }
      return emit_catalog_edge(fn, candidate, site);
    }

    // JavaLike
    bool head_is_type = !imp.target.empty() && external == last_segment(imp.target);
    std::string candidate =
        head_is_type ? imp.target + (rest.empty() ? "" : "." + join_dots(rest))
                     : imp.target + "." + join_dots(chain);
    // scanned module (same package tree)?
    std::string pkg = java_library_of(imp.target);
    if (const auto* mods = resolver_.modules_named(pkg)) {
      std::vector<std::string> lookup_chain;
      if (head_is_type) {
        lookup_chain.push_back(external);
        lookup_chain.insert(lookup_chain.end(), rest.begin(), rest.end());
      } else {
        lookup_chain = chain;
      }
      if (resolve_in_module(*mods, fn, lookup_chain, site)) return true;
    }
    return emit_catalog_edge(fn, candidate, site);
  }

  static std::string last_segment(const std::string& dotted) {
    auto pos = dotted.rfind('.');
    return pos == std::string::npos ? dotted : dotted.substr(pos + 1);
  }

  bool try_scanned_target(const IRModule&, const IRFunction& fn, const std::string& module_name,
                          const std::vector<std::string>& chain, Span site) {
    const auto* mods = resolver_.modules_named(module_name);
    if (!mods) return false;
    return resolve_in_module(*mods, fn, chain, site);
  }

  // Looks for `f`, `Class.method`, or `Class.new` in the given modules.
  bool resolve_in_module(const std::vector<const IRModule*>& mods, const IRFunction& fn,
                         const std::vector<std::string>& chain, Span site) {
    for (const IRModule* target : mods) {
      if (chain.size() == 1) {
        if (const IRFunction* callee = resolver_.find_free(target->module_name, chain[0])) {
          add_edge(fn, site, callee->id, Resolution::ImportResolved);
          return true;
        }
      }
      if (chain.size() >= 2) {
        std::string method = chain.back() == "new" ? "constructor" : chain.back();
        const std::string& cls = chain[chain.size() - 2];
        if (const IRFunction* callee = resolver_.find_method(target->module_name, cls, method)) {
          add_edge(fn, site, callee->id, Resolution::ImportResolved);
          return true;
        }
      }
    }
    return false;
  }

  bool emit_catalog_edge(const IRFunction& fn, const std::string& candidate, Span site) {
    const CatalogEntry* entry = resolver_.catalog().match(candidate);
    if (!entry) return false;
    MethodRef callee;
    callee.qualified_name = candidate;
    callee.module = entry->library;
    add_edge(fn, site, std::move(callee), Resolution::ImportResolved);
    return true;
  }

  bool resolve_suffix(const IRModule& m, const IRFunction& fn,
                      const std::vector<std::string>& chain, Span site, bool head_known) {
    if (chain.size() >= 2) {
      const std::string& method = chain.back();
      const std::string& receiver = chain[chain.size() - 2];
      auto candidates = resolver_.catalog().suffix_candidates(receiver, method);
      std::vector<const CatalogEntry*> corroborated_entries;
      for (const auto* e : candidates) {
        if (corroborated(*e, m)) corroborated_entries.push_back(e);
      }
      if (corroborated_entries.size() == 1) {
        const CatalogEntry* entry = corroborated_entries[0];
        MethodRef callee;
        callee.qualified_name = concrete_name_for(*entry, receiver, method);
        callee.module = entry->library;
        add_edge(fn, site, std::move(callee), Resolution::SuffixHeuristic);
        return true;
      }
      return false;
    }
    // bare single-segment call: only exact single-segment builtin patterns
    if (chain.size() == 1 && head_known) {
      const CatalogEntry* entry = resolver_.catalog().match(chain[0]);
      if (entry && entry->pattern == chain[0] && corroborated(*entry, m)) {
        MethodRef callee;
        callee.qualified_name = chain[0];
        callee.module = entry->library;
        add_edge(fn, site, std::move(callee), Resolution::SuffixHeuristic);
        return true;
      }
    }
    return false;
  }

  // The canonical name for a suffix-heuristic hit is the pattern with the
  // wildcard (if any) left in place of the unknown prefix.
  static std::string concrete_name_for(const CatalogEntry& entry, const std::string&,
                                       const std::string&) {
    return entry.pattern;
  }

  void finish() {
    std::sort(edges_.begin(), edges_.end(), [](const CallEdge& a, const CallEdge& b) {
      if (a.caller.qualified_name != b.caller.qualified_name) {
        return a.caller.qualified_name < b.caller.qualified_name;
      }
      if (a.site.begin != b.site.begin) return a.site.begin < b.site.begin;
      return a.callee.qualified_name < b.callee.qualified_name;
    });
    edges_.erase(std::unique(edges_.begin(), edges_.end(),
                             [](const CallEdge& a, const CallEdge& b) {
                               return a.caller.qualified_name == b.caller.qualified_name &&
                                      a.site.begin == b.site.begin &&
                                      a.callee.qualified_name == b.callee.qualified_name;
                             }),
                 edges_.end());
    graph_.edges = std::move(edges_);
    for (auto& [name, ref] : node_index_) {
      graph_.nodes.push_back(std::move(ref));
    }
  }

  std::span<const IRModule> modules_;
  Resolver resolver_;
  const PrivacyCatalog& catalog_;
  CallGraph graph_;
  std::vector<CallEdge> edges_;
  std::map<std::string, MethodRef> node_index_;
};

}  // namespace

bool CallGraph::has_node(const std::string& qualified) const {
  return std::binary_search(nodes.begin(), nodes.end(), MethodRef{qualified, "", {}},
                            [](const MethodRef& a, const MethodRef& b) { return a < b; });
}

CallGraph build_call_graph(std::span<const IRModule> modules, const PrivacyCatalog& catalog) {
  return CallGraphBuilder(modules, catalog).build();
}

std::string to_dot(const ImportGraph& g) {
  std::ostringstream os;
  os << "digraph imports {\n";
  for (const auto& n : g.nodes) os << "  \"" << n << "\";\n";
  for (const auto& [from, to] : g.edges) {
    os << "  \"" << from << "\" -> \"" << to << "\";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const CallGraph& g) {
  std::ostringstream os;
  os << "digraph calls {\n";
  for (const auto& n : g.nodes) os << "  \"" << n.qualified_name << "\";\n";
  for (const auto& e : g.edges) {
    os << "  \"" << e.caller.qualified_name << "\" -> \"" << e.callee.qualified_name
       << "\" [label=\"" << to_string(e.resolution) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace plens
