#include <doctest.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "plens/graphs.hpp"
#include "plens/parser.hpp"

using namespace plens;

namespace {

IRModule parse_js(const std::string& path, const std::string& text) {
  return parse_file(SourceFile{path, Language::JsLike, text});
}

IRModule parse_java(const std::string& path, const std::string& text) {
  return parse_file(SourceFile{path, Language::JavaLike, text});
}

ImportGraph graph_of(std::initializer_list<std::pair<std::string, std::string>> edges) {
  ImportGraph g;
  for (const auto& [a, b] : edges) {
    g.nodes.insert(a);
    g.nodes.insert(b);
    g.edges.insert({a, b});
  }
  return g;
}

std::size_t group_index(const DependencyOrder& order, const std::string& node) {
  for (std::size_t i = 0; i < order.groups.size(); ++i) {
    for (const auto& n : order.groups[i]) {
      if (n == node) return i;
    }
  }
  return static_cast<std::size_t>(-1);
}

const CallEdge* find_edge(const CallGraph& cg, const std::string& caller,
                          const std::string& callee) {
  for (const auto& e : cg.edges) {
    if (e.caller.qualified_name == caller && e.callee.qualified_name == callee) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("graphs") {

TEST_CASE("import chain produces a chain of edges") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("a.js", "import { x } from \"./b\";\nexport function fa(){}"));
  mods.push_back(parse_js("b.js", "import { y } from \"./c\";\nexport function fb(){}"));
  mods.push_back(parse_js("c.js", "export function fc(){}"));
  ImportGraph g = build_import_graph(mods);
  CHECK(g.edges == std::set<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}});
}

TEST_CASE("self import dropped after canonicalization") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("self.js", "import { me } from \"./self\";\nexport function f(){}"));
  ImportGraph g = build_import_graph(mods);
  CHECK(g.edges.empty());
}

TEST_CASE("six modules, nine imports, two duplicates: seven edges") {
  // hand count: a->b, a->c, b->c, b->lib, c->d, d->e, e->lib = 7 distinct
  std::vector<IRModule> mods;
  mods.push_back(parse_js("a.js",
                          "import { f1 } from \"./b\";\n"
                          "import { f2 } from \"./c\";\n"
                          "import { f3 } from \"./b\";\n"  // duplicate a->b
                          "export function fa(){}"));
  mods.push_back(parse_js("b.js",
                          "import { g1 } from \"./c\";\n"
                          "import lib from \"widgets\";\n"
                          "export function fb(){}"));
  mods.push_back(parse_js("c.js", "import { h1 } from \"./d\";\nexport function fc(){}"));
  mods.push_back(parse_js("d.js", "import { k1 } from \"./e\";\nexport function fd(){}"));
  mods.push_back(parse_js("e.js",
                          "import lib2 from \"widgets\";\n"
                          "import lib3 from \"widgets\";\n"  // duplicate e->widgets
                          "export function fe(){}"));
  mods.push_back(parse_js("f.js", "export function ff(){}"));
  ImportGraph g = build_import_graph(mods);
  CHECK(g.edges.size() == 7);
}

TEST_CASE("dependency order: chain reverses") {
  DependencyOrder order = dependency_order(graph_of({{"A", "B"}, {"B", "C"}}));
  REQUIRE(order.groups.size() == 3);
  CHECK(order.groups[0] == std::vector<std::string>{"C"});
  CHECK(order.groups[1] == std::vector<std::string>{"B"});
  CHECK(order.groups[2] == std::vector<std::string>{"A"});
  CHECK(order.diagnostics.empty());
}

TEST_CASE("dependency order: two-cycle condenses") {
  DependencyOrder order = dependency_order(graph_of({{"A", "B"}, {"B", "A"}, {"B", "C"}}));
  REQUIRE(order.groups.size() == 2);
  CHECK(order.groups[0] == std::vector<std::string>{"C"});
  CHECK(order.groups[1] == std::vector<std::string>{"A", "B"});
  REQUIRE(order.diagnostics.size() == 1);
  CHECK(to_string(order.diagnostics[0]).find("cycle") != std::string::npos);
}

TEST_CASE("random DAGs: every edge points from a later group to an earlier one") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    // random DAG of up to 50 nodes: edges only from higher to lower index
    std::size_t n = 2 + rng() % 49;
    ImportGraph g;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("node" + std::to_string(100 + i));
      g.nodes.insert(names.back());
    }
    std::size_t edges = rng() % (3 * n);
    for (std::size_t e = 0; e < edges; ++e) {
      std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      if (a < b) std::swap(a, b);
      g.edges.insert({names[a], names[b]});  // higher imports lower
    }
    DependencyOrder order = dependency_order(g);
    // brute-force check of the partial order
    for (const auto& [from, to] : g.edges) {
      CHECK(group_index(order, to) < group_index(order, from));
    }
    // partition property
    std::size_t total = 0;
    for (const auto& grp : order.groups) total += grp.size();
    CHECK(total == g.nodes.size());
  }
}

TEST_CASE("call graph: import-resolved local module call") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("main.js", "import { h } from \"./lib\";\nexport function f(){ h(); }"));
  mods.push_back(parse_js("lib.js", "export function h(){}"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* e = find_edge(cg, "main::f", "lib::h");
  REQUIRE(e != nullptr);
  CHECK(e->resolution == Resolution::ImportResolved);
}

TEST_CASE("call graph: suffix heuristic needs a unique corroborated entry") {
  std::string text = "package com.demo;\n"
                     "import org.slf4j.Logger;\n"
                     "import org.slf4j.LoggerFactory;\n"
                     "public class A {\n"
                     "  public void f(String msg) {\n"
                     "    Logger logger = LoggerFactory.getLogger(A.class);\n"
                     "    logger.info(msg);\n"
                     "  }\n"
                     "}\n";
  std::vector<IRModule> mods;
  mods.push_back(parse_java("A.java", text));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* info = find_edge(cg, "com.demo::A.f", "org.slf4j.Logger.info");
  REQUIRE(info != nullptr);
  CHECK(info->resolution == Resolution::SuffixHeuristic);
  const CallEdge* factory = find_edge(cg, "com.demo::A.f", "org.slf4j.LoggerFactory.getLogger");
  REQUIRE(factory != nullptr);
  CHECK(factory->resolution == Resolution::ImportResolved);
}

TEST_CASE("call graph: unknown callee stays unresolved") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("u.js", "export function f(foo){ foo.bar(); }"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  REQUIRE(cg.edges.size() == 1);
  CHECK(cg.edges[0].resolution == Resolution::Unresolved);
  CHECK(cg.edges[0].callee.qualified_name == "foo.bar");
}

TEST_CASE("call graph: same-module definitions win (exact)") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("m.js", "export function g(){}\nexport function f(){ g(); }"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* e = find_edge(cg, "m::f", "m::g");
  REQUIRE(e != nullptr);
  CHECK(e->resolution == Resolution::Exact);
}

TEST_CASE("calls through arrow bindings resolve to the anonymous function") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("m.js",
                          "const h = (x) => { return x; };\n"
                          "export function g(){ h(1); }\n"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  bool found = false;
  for (const auto& e : cg.edges) {
    if (e.caller.qualified_name == "m::g" && e.resolution == Resolution::Exact &&
        e.callee.qualified_name.rfind("m::<anon@", 0) == 0) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("call graph: constructor resolution through java imports") {
  std::string text = "package com.demo;\n"
                     "import java.io.FileWriter;\n"
                     "public class W {\n"
                     "  public void f(String s) throws Exception {\n"
                     "    FileWriter fileWriter = new FileWriter(\"out.txt\");\n"
                     "    fileWriter.write(s);\n"
                     "  }\n"
                     "}\n";
  std::vector<IRModule> mods;
  mods.push_back(parse_java("W.java", text));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* ctor = find_edge(cg, "com.demo::W.f", "java.io.FileWriter.new");
  REQUIRE(ctor != nullptr);
  CHECK(ctor->resolution == Resolution::ImportResolved);
  const CallEdge* write = find_edge(cg, "com.demo::W.f", "java.io.FileWriter.write");
  REQUIRE(write != nullptr);
  CHECK(write->resolution == Resolution::SuffixHeuristic);
}

TEST_CASE("System.out.println resolves through the implicit java.lang import") {
  std::vector<IRModule> mods;
  mods.push_back(parse_java("P.java",
                            "package p;\n"
                            "public class P {\n"
                            "  void log(String msg) { System.out.println(msg); }\n"
                            "}\n"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* e = find_edge(cg, "p::P.log", "java.lang.System.out.println");
  REQUIRE(e != nullptr);
  CHECK(e->resolution == Resolution::SuffixHeuristic);
}

TEST_CASE("relative imports fall back to index modules") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("app.js", "import { boot } from \"./core\";\n"
                                    "export function main(){ boot(); }\n"));
  mods.push_back(parse_js("core/index.js", "export function boot(){}"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* e = find_edge(cg, "app::main", "core/index::boot");
  REQUIRE(e != nullptr);
  CHECK(e->resolution == Resolution::ImportResolved);
}

TEST_CASE("require-based imports resolve like default imports") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("cjs.js",
                          "const axios = require(\"axios\");\n"
                          "export function push(v){ axios.post(\"https://x.test\", v); }\n"));
  CallGraph cg = build_call_graph(mods, default_catalog());
  const CallEdge* e = find_edge(cg, "cjs::push", "axios.post");
  REQUIRE(e != nullptr);
  CHECK(e->resolution == Resolution::ImportResolved);
}

TEST_CASE("determinism: module input order does not change graphs") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("x.js", "import { q } from \"./y\";\nexport function f(){ q(); }"));
  mods.push_back(parse_js("y.js", "export function q(){}"));
  CallGraph a = build_call_graph(mods, default_catalog());
  std::vector<IRModule> reversed;
  reversed.push_back(parse_js("y.js", "export function q(){}"));
  reversed.push_back(parse_js("x.js", "import { q } from \"./y\";\nexport function f(){ q(); }"));
  CallGraph b = build_call_graph(reversed, default_catalog());
  CHECK(to_dot(a) == to_dot(b));
  CHECK(to_dot(build_import_graph(mods)) == to_dot(build_import_graph(reversed)));
}

TEST_CASE("monotonicity: adding a module keeps existing nodes and exact edges") {
  std::vector<IRModule> base;
  base.push_back(parse_js("m.js", "export function g(){}\nexport function f(){ g(); }"));
  CallGraph before = build_call_graph(base, default_catalog());
  std::vector<IRModule> more;
  more.push_back(parse_js("m.js", "export function g(){}\nexport function f(){ g(); }"));
  more.push_back(parse_js("n.js", "export function other(){}"));
  CallGraph after = build_call_graph(more, default_catalog());
  for (const auto& n : before.nodes) {
    CHECK(after.has_node(n.qualified_name));
  }
  for (const auto& e : before.edges) {
    if (e.resolution != Resolution::Exact) continue;
    CHECK(find_edge(after, e.caller.qualified_name, e.callee.qualified_name) != nullptr);
  }
}

TEST_CASE("resolution soundness: import-resolved edges have a supporting import") {
  std::mt19937 rng(42);
  gen::ProgramGenerator pg(rng());
  for (int trial = 0; trial < 20; ++trial) {
    auto files = pg.multi_function();
    std::vector<IRModule> mods;
    for (const auto& f : files) mods.push_back(parse_file(f));
    CallGraph cg = build_call_graph(mods, gen::test_catalog());
    for (const auto& e : cg.edges) {
      if (e.resolution != Resolution::ImportResolved) continue;
      // the caller's module must import something
      const IRModule* mod = nullptr;
      for (const auto& m : mods) {
        if (m.module_name == e.caller.module) mod = &m;
      }
      REQUIRE(mod != nullptr);
      CHECK(!mod->imports.empty());
    }
  }
}

TEST_CASE("dot output shape") {
  std::vector<IRModule> mods;
  mods.push_back(parse_js("m.js", "export function f(){}"));
  ImportGraph ig = build_import_graph(mods);
  CHECK(to_dot(ig).rfind("digraph imports", 0) == 0);
  CallGraph cg = build_call_graph(mods, default_catalog());
  CHECK(to_dot(cg).rfind("digraph calls", 0) == 0);
}

}  // TEST_SUITE
