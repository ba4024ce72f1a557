#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "plens/api_closure.hpp"

using namespace plens;

namespace {

CallGraph tiny_graph(std::initializer_list<std::pair<std::string, std::string>> edges,
                     std::initializer_list<std::string> externals) {
  CallGraph cg;
  std::set<std::string> seen;
  auto add_node = [&](const std::string& q, bool external) {
    if (!seen.insert(q).second) return;
    cg.nodes.push_back(MethodRef{q, external ? "" : "app",
                                 external ? std::optional<Span>{} : std::optional<Span>{Span{0, 1}}});
  };
  std::set<std::string> ext(externals);
  std::size_t site = 0;
  for (const auto& [from, to] : edges) {
    add_node(from, ext.count(from) > 0);
    add_node(to, ext.count(to) > 0);
    cg.edges.push_back(CallEdge{MethodRef{from, "app", Span{0, 1}}, Span{site, site + 1},
                                MethodRef{to, "", {}}, Resolution::Exact});
    ++site;
  }
  std::sort(cg.nodes.begin(), cg.nodes.end());
  return cg;
}

PrivacyCatalog lm_nc_dec_catalog() {
  return parse_catalog_json(R"({
    "version": "t",
    "entries": [
      { "pattern": "natlib.Log.write", "library": "natlib", "origin": "native",
        "domain": "IO", "labels": ["LM"] },
      { "pattern": "natlib.Net.push", "library": "natlib", "origin": "native",
        "domain": "Network", "labels": ["NC"] },
      { "pattern": "natlib.Sec.seal", "library": "natlib", "origin": "native",
        "domain": "Security", "labels": ["DEC"] }
    ]
  })", "t");
}

}  // namespace

TEST_SUITE("api-closure") {

TEST_CASE("direct invocation joins the api set with the sink's labels") {
  CallGraph cg = tiny_graph({{"app::m", "app::n"}, {"app::n", "natlib.Log.write"}},
                            {"natlib.Log.write"});
  PrivacySets sets = compute_api_set(cg, lm_nc_dec_catalog(), {});
  CHECK(sets.api_set.count("app::m"));
  CHECK(sets.api_set.count("app::n"));
  CHECK(sets.native_hits == std::set<std::string>{"app::n"});
  CHECK(sets.labels_of.at("app::m") == std::set<ProcessingLabel>{ProcessingLabel::LM});
  CHECK(sets.labels_of.at("app::n") == std::set<ProcessingLabel>{ProcessingLabel::LM});
}

TEST_CASE("labels union along call paths") {
  CallGraph cg = tiny_graph({{"app::a", "app::b"},
                             {"app::b", "app::c"},
                             {"app::c", "natlib.Net.push"},
                             {"app::b", "app::d"},
                             {"app::d", "natlib.Sec.seal"}},
                            {"natlib.Net.push", "natlib.Sec.seal"});
  PrivacySets sets = compute_api_set(cg, lm_nc_dec_catalog(), {});
  std::set<ProcessingLabel> nc_dec{ProcessingLabel::NC, ProcessingLabel::DEC};
  CHECK(sets.labels_of.at("app::a") == nc_dec);
  CHECK(sets.labels_of.at("app::b") == nc_dec);
  CHECK(sets.labels_of.at("app::c") == std::set<ProcessingLabel>{ProcessingLabel::NC});
}

TEST_CASE("unresolved edges never contribute reachability") {
  CallGraph cg = tiny_graph({{"app::m", "natlib.Log.write"}}, {"natlib.Log.write"});
  cg.edges[0].resolution = Resolution::Unresolved;
  PrivacySets sets = compute_api_set(cg, lm_nc_dec_catalog(), {});
  CHECK(sets.api_set.empty());
  CHECK(sets.native_hits.empty());
}

TEST_CASE("random graphs match the DFS oracle") {
  std::mt19937 rng(2024);
  PrivacyCatalog catalog = gen::sink_catalog(5);
  for (int trial = 0; trial < 200; ++trial) {
    CallGraph cg = gen::random_call_graph(rng, 100, 5);
    PrivacySets sets = compute_api_set(cg, catalog, {});
    oracles::ReachabilityOracle expected = oracles::reachability_oracle(cg, catalog);
    CHECK(sets.api_set == expected.api_set);
    // labels agree on every node the oracle saw
    for (const auto& [node, labels] : expected.labels_of) {
      CHECK(sets.labels_of.at(node) == labels);
    }
  }
}

TEST_CASE("monotonicity: adding an edge never shrinks the api set or labels") {
  std::mt19937 rng(9);
  PrivacyCatalog catalog = gen::sink_catalog(5);
  for (int trial = 0; trial < 40; ++trial) {
    CallGraph cg = gen::random_call_graph(rng, 40, 3);
    PrivacySets before = compute_api_set(cg, catalog, {});
    // add one resolved edge between random existing nodes
    if (cg.nodes.size() < 2) continue;
    const auto& from = cg.nodes[rng() % cg.nodes.size()];
    const auto& to = cg.nodes[rng() % cg.nodes.size()];
    if (!from.span.has_value()) continue;  // callers are scanned nodes
    cg.edges.push_back(
        CallEdge{from, Span{9999, 10000}, to, Resolution::Exact});
    PrivacySets after = compute_api_set(cg, catalog, {});
    for (const auto& m : before.api_set) CHECK(after.api_set.count(m));
    for (const auto& [m, labels] : before.labels_of) {
      for (auto l : labels) CHECK(after.labels_of.at(m).count(l));
    }
  }
}

TEST_CASE("order independence: shuffled edges give the same result") {
  std::mt19937 rng(31);
  PrivacyCatalog catalog = gen::sink_catalog(4);
  for (int trial = 0; trial < 20; ++trial) {
    CallGraph cg = gen::random_call_graph(rng, 60, 4);
    PrivacySets a = compute_api_set(cg, catalog, {});
    std::shuffle(cg.edges.begin(), cg.edges.end(), rng);
    std::shuffle(cg.nodes.begin(), cg.nodes.end(), rng);
    PrivacySets b = compute_api_set(cg, catalog, {});
    CHECK(a.api_set == b.api_set);
    CHECK(a.labels_of == b.labels_of);
    CHECK(a.native_hits == b.native_hits);
  }
}

TEST_CASE("classification of the three method kinds") {
  PrivacyCatalog catalog = parse_catalog_json(R"({
    "version": "t",
    "entries": [
      { "pattern": "java.io.*", "library": "java.*", "origin": "native",
        "domain": "IO", "labels": ["DPT"] },
      { "pattern": "axios.post", "library": "axios", "origin": "api", "labels": ["NC"] }
    ]
  })", "t");
  auto libraries = parse_libraries_json(
      R"([{ "name": "axios", "language": "js", "category": "NC" }])", "t");

  CallGraph cg;
  cg.nodes.push_back(MethodRef{"app::caller", "app", Span{0, 1}});
  cg.nodes.push_back(MethodRef{"axios.post", "axios", {}});
  cg.nodes.push_back(MethodRef{"java.io.FileWriter.write", "java.*", {}});
  std::sort(cg.nodes.begin(), cg.nodes.end());
  cg.edges.push_back(CallEdge{MethodRef{"app::caller", "app", Span{0, 1}}, Span{0, 1},
                              MethodRef{"axios.post", "axios", {}}, Resolution::ImportResolved});
  PrivacySets sets = compute_api_set(cg, catalog, {});

  CHECK(classify_method(sets, catalog, libraries, MethodRef{"java.io.FileWriter.write", "java.*", {}}) ==
        MethodClass::NativeEntry);
  CHECK(classify_method(sets, catalog, libraries, MethodRef{"axios.post", "axios", {}}) ==
        MethodClass::ApiPrivacyRelevant);
  // the app method reaches a privacy-relevant callee but is not library code
  CHECK(sets.api_set.count("app::caller"));
  CHECK(classify_method(sets, catalog, libraries, MethodRef{"app::caller", "app", Span{0, 1}}) ==
        MethodClass::Application);
}

TEST_CASE("api set never contains native-matched methods") {
  std::mt19937 rng(55);
  PrivacyCatalog catalog = gen::sink_catalog(5);
  for (int trial = 0; trial < 40; ++trial) {
    CallGraph cg = gen::random_call_graph(rng, 60, 5);
    PrivacySets sets = compute_api_set(cg, catalog, {});
    for (const auto& m : sets.api_set) {
      const CatalogEntry* e = catalog.match(m);
      CHECK((e == nullptr || e->origin != EntryOrigin::Native));
    }
    // every api member has at least one label
    for (const auto& m : sets.api_set) {
      CHECK(!sets.labels_of.at(m).empty());
    }
  }
}

}  // TEST_SUITE
