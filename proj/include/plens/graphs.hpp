#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plens/catalog.hpp"
#include "plens/diagnostics.hpp"
#include "plens/ir.hpp"

namespace plens {

// Module/library dependency graph derived from import statements.
struct ImportGraph {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;  // importer -> imported
};

ImportGraph build_import_graph(std::span<const IRModule> modules);

// Strongly-connected components of the import graph, condensed and emitted
// dependencies-first. Within a group and between incomparable groups the
// order is lexicographic. Cycles are reported as diagnostics, not errors.
struct DependencyOrder {
  std::vector<std::vector<std::string>> groups;
  std::vector<Diagnostic> diagnostics;
};

DependencyOrder dependency_order(const ImportGraph& g);

enum class Resolution { Exact, ImportResolved, SuffixHeuristic, Unresolved };

std::string to_string(Resolution r);

struct CallEdge {
  MethodRef caller;
  Span site;
  MethodRef callee;
  Resolution resolution = Resolution::Unresolved;
};

struct CallGraph {
  std::vector<MethodRef> nodes;  // sorted by qualified name, unique
  std::vector<CallEdge> edges;   // sorted, deduplicated by (caller, site, callee)

  bool has_node(const std::string& qualified) const;
};

CallGraph build_call_graph(std::span<const IRModule> modules, const PrivacyCatalog& catalog);

// DOT renderings for --emit-graphs.
std::string to_dot(const ImportGraph& g);
std::string to_dot(const CallGraph& g);

// Resolution helpers (exposed for tests).
// "./util" relative to "src/api/users.js" -> "src/util"; bare specifiers
// map to a library name ("@scope/pkg/x" -> "@scope/pkg", "lodash/fp" ->
// "lodash").
std::string resolve_js_target(const std::string& importer_path, const std::string& specifier);
// "java.io.FileReader" -> "java.io" (trailing type segments stripped).
std::string java_library_of(const std::string& import_target);

}  // namespace plens
