#pragma once

// Seeded random inputs for property tests: straight-line JS programs,
// multi-function programs, call graphs, and import graphs.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plens/catalog.hpp"
#include "plens/graphs.hpp"
#include "plens/ir.hpp"
#include "plens/pd_sources.hpp"

namespace gen {

// Rules/catalog/libraries used by generated programs: one identifier
// category matching `taint_*` variables plus a literal marker, and one
// native sink `sinklib.Sink.send` reached as `sink.send(...)`.
inline plens::RuleSet test_rules() {
  return plens::parse_rules_json(R"json({
    "categories": [
      { "name": "TestData", "pii": true,
        "identifier_patterns": ["(?:^|_)taint_?\\d*(?:_|$)"],
        "literal_patterns": ["^SECRET"] }
    ]
  })json",
                                 "<test rules>");
}

inline plens::PrivacyCatalog test_catalog() {
  return plens::parse_catalog_json(R"({
    "version": "t",
    "entries": [
      { "pattern": "sinklib.Sink.send", "library": "sinklib", "origin": "native",
        "domain": "IO", "labels": ["DPT"] },
      { "pattern": "sinklib.Sink.store", "library": "sinklib", "origin": "native",
        "domain": "IO", "labels": ["DSMD"] }
    ]
  })",
                                   "<test catalog>");
}

inline std::vector<plens::LibraryInfo> test_libraries() {
  return plens::parse_libraries_json(
      R"([{ "name": "sinklib", "language": "js", "category": "DPT" }])", "<test libraries>");
}

class ProgramGenerator {
 public:
  explicit ProgramGenerator(unsigned seed) : rng_(seed) {}

  // One module, one function, straight-line statements.
  plens::SourceFile straight_line(std::size_t max_statements = 30) {
    std::ostringstream os;
    os << "import sinklib from \"sinklib\";\n";
    std::size_t params = pick(1, 4);
    os << "export function f0(";
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < params; ++i) {
      std::string name = pick(0, 2) == 0 ? "taint_" + std::to_string(i) : "v" + std::to_string(i);
      if (i) os << ", ";
      os << name;
      vars.push_back(name);
    }
    os << ") {\n";
    std::size_t count = pick(1, max_statements);
    for (std::size_t i = 0; i < count; ++i) {
      emit_statement(os, vars, 1 + i);
    }
    os << "}\n";
    plens::SourceFile f;
    f.path = "gen/m0.js";
    f.language = plens::Language::JsLike;
    f.text = os.str();
    return f;
  }

  // 2-5 functions across 1-3 modules with cross-module calls.
  std::vector<plens::SourceFile> multi_function() {
    std::size_t module_count = pick(1, 3);
    std::size_t fn_total = pick(2, 5);
    std::vector<std::ostringstream> bodies(module_count);
    std::vector<std::vector<std::string>> fn_names(module_count);
    for (std::size_t f = 0; f < fn_total; ++f) {
      std::size_t m = pick(0, module_count - 1);
      fn_names[m].push_back("f" + std::to_string(f));
    }
    for (std::size_t m = 0; m < module_count; ++m) {
      bodies[m] << "import sinklib from \"sinklib\";\n";
      for (std::size_t other = 0; other < module_count; ++other) {
        if (other == m || fn_names[other].empty()) continue;
        bodies[m] << "import { ";
        for (std::size_t i = 0; i < fn_names[other].size(); ++i) {
          if (i) bodies[m] << ", ";
          bodies[m] << fn_names[other][i];
        }
        bodies[m] << " } from \"./m" << other << "\";\n";
      }
    }
    std::vector<std::string> all_fns;
    for (const auto& names : fn_names) {
      all_fns.insert(all_fns.end(), names.begin(), names.end());
    }
    for (std::size_t m = 0; m < module_count; ++m) {
      for (const auto& name : fn_names[m]) {
        bodies[m] << "export function " << name << "(";
        std::vector<std::string> vars;
        std::size_t params = pick(1, 3);
        for (std::size_t i = 0; i < params; ++i) {
          std::string p =
              pick(0, 3) == 0 ? "taint_" + std::to_string(i) : "p" + std::to_string(i);
          if (i) bodies[m] << ", ";
          bodies[m] << p;
          vars.push_back(p);
        }
        bodies[m] << ") {\n";
        std::size_t count = pick(1, 8);
        for (std::size_t i = 0; i < count; ++i) {
          emit_statement(bodies[m], vars, i, &all_fns);
        }
        bodies[m] << "}\n";
      }
    }
    std::vector<plens::SourceFile> files;
    for (std::size_t m = 0; m < module_count; ++m) {
      plens::SourceFile f;
      f.path = "gen/m" + std::to_string(m) + ".js";
      f.language = plens::Language::JsLike;
      f.text = bodies[m].str();
      files.push_back(std::move(f));
    }
    return files;
  }

 private:
  void emit_statement(std::ostringstream& os, std::vector<std::string>& vars, std::size_t n,
                      const std::vector<std::string>* callable = nullptr) {
    switch (pick(0, 5)) {
      case 0: {  // declaration
        std::string name = "v" + std::to_string(100 + n);
        os << "  const " << name << " = " << expr(vars, callable) << ";\n";
        vars.push_back(name);
        break;
      }
      case 1: {  // assignment to an existing variable
        if (vars.empty()) {
          os << "  const v" << 100 + n << " = " << expr(vars, callable) << ";\n";
          vars.push_back("v" + std::to_string(100 + n));
        } else {
          os << "  " << vars[pick(0, vars.size() - 1)] << " = " << expr(vars, callable)
             << ";\n";
        }
        break;
      }
      case 2:  // sink call
        os << "  sink." << (pick(0, 1) ? "send" : "store") << "(" << expr(vars, callable)
           << ");\n";
        break;
      case 3:  // neutral external call
        os << "  helper.run(" << expr(vars, callable) << ");\n";
        break;
      case 4:  // local/cross-module call statement
        if (callable && !callable->empty()) {
          os << "  " << (*callable)[pick(0, callable->size() - 1)] << "("
             << expr(vars, callable) << ");\n";
        } else {
          os << "  sink.send(" << expr(vars, callable) << ");\n";
        }
        break;
      case 5:
        os << "  return " << expr(vars, callable) << ";\n";
        break;
    }
  }

  std::string expr(const std::vector<std::string>& vars,
                   const std::vector<std::string>* callable) {
    switch (pick(0, 5)) {
      case 0:
        return vars.empty() ? "\"plain\"" : vars[pick(0, vars.size() - 1)];
      case 1:
        return pick(0, 2) == 0 ? "\"SECRET" + std::to_string(pick(0, 999)) + "\""
                               : "\"plain" + std::to_string(pick(0, 999)) + "\"";
      case 2:
        return std::to_string(pick(0, 100));
      case 3:
        return vars.empty() ? "\"plain\""
                            : vars[pick(0, vars.size() - 1)] + ".field";
      case 4:
        if (callable && !callable->empty() && pick(0, 1)) {
          return (*callable)[pick(0, callable->size() - 1)] + "(" +
                 (vars.empty() ? "1" : vars[pick(0, vars.size() - 1)]) + ")";
        }
        return "helper.make(" + (vars.empty() ? "2" : vars[pick(0, vars.size() - 1)]) + ")";
      case 5:
        return vars.empty() ? "3" : vars[pick(0, vars.size() - 1)];
    }
    return "4";
  }

 public:
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return lo + rng_() % (hi - lo + 1);
  }

 private:
  std::mt19937 rng_;
};

// Random call graph with app nodes and a few catalog-matched sinks.
inline plens::CallGraph random_call_graph(std::mt19937& rng, std::size_t max_nodes,
                                          std::size_t max_sinks) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
  plens::CallGraph cg;
  std::size_t n = pick(2, max_nodes);
  std::size_t sinks = pick(1, max_sinks);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    std::string q = "app::m" + std::to_string(i);
    names.push_back(q);
    cg.nodes.push_back(plens::MethodRef{q, "app", plens::Span{0, 1}});
  }
  for (std::size_t i = 0; i < sinks; ++i) {
    std::string q = "natlib.Dev.hit" + std::to_string(i);
    names.push_back(q);
    cg.nodes.push_back(plens::MethodRef{q, "natlib", {}});
  }
  std::size_t edges = pick(0, 3 * n);
  for (std::size_t i = 0; i < edges; ++i) {
    const std::string& from = names[pick(0, n - 1)];  // apps call
    const std::string& to = names[pick(0, names.size() - 1)];
    plens::Resolution res =
        pick(0, 9) == 0 ? plens::Resolution::Unresolved : plens::Resolution::Exact;
    cg.edges.push_back(plens::CallEdge{plens::MethodRef{from, "app", plens::Span{0, 1}},
                                       plens::Span{i, i + 1},
                                       plens::MethodRef{to, "", {}}, res});
  }
  std::sort(cg.nodes.begin(), cg.nodes.end());
  return cg;
}

inline plens::PrivacyCatalog sink_catalog(std::size_t max_sinks) {
  std::ostringstream os;
  os << R"({"version":"t","entries":[)";
  for (std::size_t i = 0; i < max_sinks; ++i) {
    if (i) os << ",";
    os << R"({"pattern":"natlib.Dev.hit)" << i
       << R"(","library":"natlib","origin":"native","domain":"IO","labels":["DPT"]})";
  }
  os << "]}";
  return plens::parse_catalog_json(os.str(), "<sink catalog>");
}

inline plens::ImportGraph random_import_graph(std::mt19937& rng, std::size_t max_nodes) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
  plens::ImportGraph g;
  std::size_t n = pick(2, max_nodes);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream os;
    os << "n" << i;
    names.push_back(os.str());
    g.nodes.insert(os.str());
  }
  std::size_t edges = pick(0, 3 * n);
  for (std::size_t i = 0; i < edges; ++i) {
    std::string a = names[pick(0, n - 1)];
    std::string b = names[pick(0, n - 1)];
    if (a != b) g.edges.insert({a, b});
  }
  return g;
}

}  // namespace gen
