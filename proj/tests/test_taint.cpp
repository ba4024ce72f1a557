#include <doctest.h>

#include <random>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "plens/parser.hpp"
#include "plens/taint.hpp"

using namespace plens;

namespace {

struct Pipeline {
  std::vector<IRModule> modules;
  CallGraph cg;
  std::vector<PersonalDataSource> sources;
  PrivacySets sets;
  std::vector<TaintFlow> flows;
  PrivacyCatalog catalog;
  std::vector<LibraryInfo> libraries;
};

Pipeline run_taint(const std::vector<SourceFile>& files, RuleSet rules,
                   PrivacyCatalog catalog, std::vector<LibraryInfo> libraries) {
  Pipeline p;
  p.catalog = std::move(catalog);
  p.libraries = std::move(libraries);
  for (const auto& f : files) p.modules.push_back(parse_file(f));
  p.cg = build_call_graph(p.modules, p.catalog);
  DependencyOrder order = dependency_order(build_import_graph(p.modules));
  p.sets = compute_api_set(p.cg, p.catalog, order);
  RuleMatcher matcher(rules.categories);
  for (const auto& m : p.modules) {
    auto found = detect_sources(m, matcher);
    p.sources.insert(p.sources.end(), found.begin(), found.end());
  }
  p.flows = propagate_inter(p.cg, p.modules, p.sources, p.catalog, p.sets, p.libraries);
  return p;
}

Pipeline run_gen(const std::vector<SourceFile>& files) {
  return run_taint(files, gen::test_rules(), gen::test_catalog(), gen::test_libraries());
}

SourceFile js(const std::string& path, const std::string& text) {
  return SourceFile{path, Language::JsLike, text};
}

std::set<oracles::FlowFact> facts_of(const Pipeline& p) {
  std::set<oracles::FlowFact> out;
  for (const auto& f : p.flows) {
    out.insert(oracles::FlowFact{f.source_index, f.sink.caller.qualified_name,
                                 f.sink.site.begin, f.sink.callee.qualified_name});
  }
  return out;
}

}  // namespace

TEST_SUITE("taint") {

TEST_CASE("one-hop alias produces a flow of length two") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0){\n"
                           "  const e = taint_0;\n"
                           "  sink.send(e);\n"
                           "}\n")});
  REQUIRE(p.flows.size() == 1);
  const TaintFlow& flow = p.flows[0];
  CHECK(flow.source.symbol == "taint_0");
  CHECK(flow.sink.callee.qualified_name == "sinklib.Sink.send");
  CHECK(flow.path.size() == 2);
  CHECK(flow.path[0].variable == "e");
  CHECK(flow.path[1].variable == "e");
  CHECK_FALSE(flow.crosses_files);
}

TEST_CASE("untainted value produces no flow") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(){\n"
                           "  const x = 5;\n"
                           "  sink.send(x);\n"
                           "}\n")});
  CHECK(p.flows.empty());
}

TEST_CASE("direct argument use is a length-one path") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0){ sink.send(taint_0); }\n")});
  REQUIRE(p.flows.size() == 1);
  CHECK(p.flows[0].path.size() == 1);
  CHECK(p.flows[0].path[0].variable == "taint_0");
}

TEST_CASE("intra-procedural propagation follows the transfer rules") {
  IRModule m = parse_file(js("gen/m0.js",
                             "export function f(taint_0, clean){\n"
                             "  const a = taint_0;\n"
                             "  const b = a.field;\n"
                             "  const c = helper.run(b);\n"
                             "  const d = clean;\n"
                             "  return c;\n"
                             "}\n"));
  RuleSet rules = gen::test_rules();
  auto sources = detect_sources(m, rules.categories);
  REQUIRE(sources.size() == 1);
  TaintState state = propagate_intra(m.functions[0], sources, {});
  CHECK(state.var_taints.count("a"));
  CHECK(state.var_taints.count("b"));   // member access keeps taint
  CHECK(state.var_taints.count("c"));   // black-box call propagates
  CHECK(!state.var_taints.count("d"));
  CHECK(!state.return_taint.empty());
}

TEST_CASE("reverse-order definitions still settle (re-iteration fixpoint)") {
  IRModule m = parse_file(js("gen/m0.js",
                             "export function f(taint_0){\n"
                             "  out = mid;\n"
                             "  mid = taint_0;\n"
                             "  return out;\n"
                             "}\n"));
  RuleSet rules = gen::test_rules();
  auto sources = detect_sources(m, rules.categories);
  TaintState state = propagate_intra(m.functions[0], sources, {});
  CHECK(state.var_taints.count("out"));
  CHECK(!state.return_taint.empty());
}

TEST_CASE("cross-function flow through a parameter") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import { g } from \"./m1\";\n"
                           "export function f(taint_0){ g(taint_0); }\n"),
                        js("gen/m1.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function g(p0){ sink.send(p0); }\n")});
  REQUIRE(p.flows.size() == 1);
  const TaintFlow& flow = p.flows[0];
  CHECK(flow.sink.caller.qualified_name == "gen/m1::g");
  CHECK(flow.crosses_files);
  CHECK(flow.source.function_qualified == "gen/m0::f");
  REQUIRE(flow.path.size() == 2);
  CHECK(flow.path[0].variable == "p0");  // the parameter binding hop
  CHECK(flow.path[0].file == "gen/m0.js");
  CHECK(flow.path[1].file == "gen/m1.js");
}

TEST_CASE("return taint flows back to call sites") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function src(taint_0){ return taint_0; }\n"
                           "export function f(taint_0){\n"
                           "  const v = src(taint_0);\n"
                           "  sink.send(v);\n"
                           "}\n")});
  // two flows: direct param at f, and the same source via src's return
  bool saw_v = false;
  for (const auto& flow : p.flows) {
    for (const auto& hop : flow.path) {
      if (hop.variable == "v") saw_v = true;
    }
  }
  CHECK(saw_v);
  REQUIRE(!p.flows.empty());
}

TEST_CASE("recursion terminates with one flow per sink site") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0){\n"
                           "  f(taint_0);\n"
                           "  sink.send(taint_0);\n"
                           "}\n")});
  CHECK(p.flows.size() == 1);
}

TEST_CASE("collect_am uses set semantics over callers") {
  CHECK(collect_am(std::vector<TaintFlow>{}).empty());
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0){\n"
                           "  sink.send(taint_0);\n"
                           "  sink.store(taint_0);\n"
                           "}\n")});
  REQUIRE(p.flows.size() == 2);
  CHECK(collect_am(p.flows) == std::set<std::string>{"gen/m0::f"});
}

TEST_CASE("pii flag always mirrors the source category") {
  std::mt19937 rng(7);
  gen::ProgramGenerator pg(rng());
  for (int trial = 0; trial < 30; ++trial) {
    Pipeline p = run_gen(pg.multi_function());
    for (const auto& flow : p.flows) {
      CHECK(flow.pii == flow.source.pii);
    }
  }
}

TEST_CASE("random straight-line programs match the def-use oracle") {
  std::mt19937 rng(1001);
  for (int trial = 0; trial < 120; ++trial) {
    gen::ProgramGenerator pg(static_cast<unsigned>(rng()));
    Pipeline p = run_gen({pg.straight_line()});
    auto expected =
        oracles::taint_oracle(p.cg, p.modules, p.sources, p.catalog, p.sets, p.libraries);
    CHECK(facts_of(p) == expected);
  }
}

TEST_CASE("random multi-function programs match the oracle and verify witnesses") {
  std::mt19937 rng(2002);
  for (int trial = 0; trial < 40; ++trial) {
    gen::ProgramGenerator pg(static_cast<unsigned>(rng()));
    Pipeline p = run_gen(pg.multi_function());
    auto expected =
        oracles::taint_oracle(p.cg, p.modules, p.sources, p.catalog, p.sets, p.libraries);
    CHECK(facts_of(p) == expected);
    for (const auto& flow : p.flows) {
      std::string why;
      CHECK_MESSAGE(oracles::verify_witness(flow, p.modules, p.cg, why), why);
    }
  }
}

TEST_CASE("adding a source never removes a flow") {
  std::mt19937 rng(3003);
  RuleSet narrow = gen::test_rules();
  RuleSet wide = parse_rules_json(R"json({
    "categories": [
      { "name": "TestData", "pii": true,
        "identifier_patterns": ["(?:^|_)taint_?\\d*(?:_|$)"],
        "literal_patterns": ["^SECRET"] },
      { "name": "MoreData", "pii": false,
        "identifier_patterns": ["(?:^|_)v\\d+(?:_|$)"],
        "literal_patterns": [] }
    ]
  })json", "<wide rules>");
  for (int trial = 0; trial < 25; ++trial) {
    gen::ProgramGenerator pg(static_cast<unsigned>(rng()));
    auto files = pg.multi_function();
    Pipeline a = run_taint(files, narrow, gen::test_catalog(), gen::test_libraries());
    Pipeline b = run_taint(files, wide, gen::test_catalog(), gen::test_libraries());
    // key flows by symbols instead of indices (indexing shifts with rules)
    auto key_set = [](const Pipeline& p) {
      std::set<std::tuple<std::string, std::string, std::string, std::size_t>> out;
      for (const auto& f : p.flows) {
        out.insert({f.source.symbol, f.source.function_qualified,
                    f.sink.caller.qualified_name, f.sink.site.begin});
      }
      return out;
    };
    auto before = key_set(a);
    auto after = key_set(b);
    for (const auto& k : before) CHECK(after.count(k));
  }
}

TEST_CASE("two sources reaching one site yield two flows") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0, taint_1){\n"
                           "  const both = helper.join(taint_0, taint_1);\n"
                           "  sink.send(both);\n"
                           "}\n")});
  CHECK(p.flows.size() == 2);
  for (const auto& flow : p.flows) {
    CHECK(flow.sink.site.begin == p.flows[0].sink.site.begin);
  }
}

TEST_CASE("literal source directly at the sink has a one-hop path") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(){ sink.send(\"SECRET7\"); }\n")});
  REQUIRE(p.flows.size() == 1);
  CHECK(p.flows[0].source.kind == SourceKind::LiteralText);
  CHECK(p.flows[0].path.size() == 1);
}

TEST_CASE("member assignment taints the root object") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0){\n"
                           "  holder.slot = taint_0;\n"
                           "  sink.send(holder);\n"
                           "}\n")});
  REQUIRE(p.flows.size() == 1);
  CHECK(p.flows[0].path.back().variable == "holder");
}

TEST_CASE("scanned library source becomes a sink boundary") {
  auto libraries = parse_libraries_json(
      R"([{ "name": "sinklib", "language": "js", "category": "DPT" },
          { "name": "wrapkit", "language": "js", "category": "DPT" }])",
      "t");
  Pipeline p = run_taint(
      {js("app/main.js",
          "import { wrap } from \"../wrapkit/core\";\n"
          "export function f(taint_0){ wrap(taint_0); }\n"),
       js("wrapkit/core.js",
          "import sinklib from \"sinklib\";\n"
          "export function wrap(v0){ sink.send(v0); }\n")},
      gen::test_rules(), gen::test_catalog(), libraries);
  // the library-internal flow into the native sink, plus the app->library
  // boundary flow (wrap is api privacy-relevant, defined in a configured
  // library whose source was scanned)
  CHECK(p.flows.size() == 2);
  std::set<std::string> callees;
  for (const auto& flow : p.flows) callees.insert(flow.sink.callee.qualified_name);
  CHECK(callees ==
        std::set<std::string>{"sinklib.Sink.send", "wrapkit/core::wrap"});
}

TEST_CASE("taint survives a sixty-call chain with a verifiable witness") {
  std::ostringstream os;
  os << "import sinklib from \"sinklib\";\n";
  const int depth = 60;
  os << "export function f" << depth << "(p){ sink.send(p); }\n";
  for (int i = depth - 1; i >= 0; --i) {
    os << "export function f" << i << "(p){ f" << i + 1 << "(p); }\n";
  }
  os << "export function entry(taint_0){ f0(taint_0); }\n";
  Pipeline p = run_gen({js("gen/deep.js", os.str())});
  REQUIRE(p.flows.size() == 1);
  const TaintFlow& flow = p.flows[0];
  CHECK(flow.sink.caller.qualified_name == "gen/deep::f" + std::to_string(depth));
  CHECK(flow.path.size() == static_cast<std::size_t>(depth) + 2);
  std::string why;
  CHECK_MESSAGE(oracles::verify_witness(flow, p.modules, p.cg, why), why);
  // the oracle agrees even at depth
  auto expected =
      oracles::taint_oracle(p.cg, p.modules, p.sources, p.catalog, p.sets, p.libraries);
  CHECK(facts_of(p) == expected);
}

TEST_CASE("wide fan-in: many sources converge on one sink") {
  std::ostringstream os;
  os << "import sinklib from \"sinklib\";\n";
  os << "export function gather(";
  const int width = 12;
  for (int i = 0; i < width; ++i) {
    if (i) os << ", ";
    os << "taint_" << i;
  }
  os << "){\n";
  os << "  const pile = helper.mix(";
  for (int i = 0; i < width; ++i) {
    if (i) os << ", ";
    os << "taint_" << i;
  }
  os << ");\n  sink.send(pile);\n}\n";
  Pipeline p = run_gen({js("gen/wide.js", os.str())});
  CHECK(p.flows.size() == width);  // one flow per source into the same site
}

TEST_CASE("unresolved callees are never sinks but still move taint") {
  Pipeline p = run_gen({js("gen/m0.js",
                           "import sinklib from \"sinklib\";\n"
                           "export function f(taint_0){\n"
                           "  const v = mystery.transform(taint_0);\n"
                           "  sink.send(v);\n"
                           "}\n")});
  REQUIRE(p.flows.size() == 1);
  CHECK(p.flows[0].sink.callee.qualified_name == "sinklib.Sink.send");
}

}  // TEST_SUITE
