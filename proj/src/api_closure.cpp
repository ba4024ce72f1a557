#include "plens/api_closure.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace plens {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> name_segments(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : lower(s)) {
    if (c == '/' || c == '.' || c == '-' || c == '_' || c == ' ' || c == '@') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// A scanned module "belongs to" a configured library when every token of
// the library name appears among the module name's segments (supports
// scanning library source directly).
bool module_in_library(const std::string& module_name, const std::vector<LibraryInfo>& libs) {
  auto segments = name_segments(module_name);
  for (const auto& lib : libs) {
    auto tokens = name_segments(lib.name);
    if (tokens.empty()) continue;
    bool all = true;
    for (const auto& t : tokens) {
      if (std::find(segments.begin(), segments.end(), t) == segments.end()) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::string to_string(MethodClass c) {
  switch (c) {
    case MethodClass::NativeEntry: return "native";
    case MethodClass::ApiPrivacyRelevant: return "api";
    case MethodClass::Application: return "application";
  }
  return "application";
}

PrivacySets compute_api_set(const CallGraph& cg, const PrivacyCatalog& catalog,
                            const DependencyOrder& order) {
  PrivacySets sets;

  // Seed: catalog-matched nodes carry their entry's labels; api-origin
  // matches are in the api set by curation, native matches never are.
  std::set<std::string> native_matched;
  std::map<std::string, std::set<ProcessingLabel>> labels;
  std::set<std::string> reaches;  // reaches a catalog sink
  for (const auto& node : cg.nodes) {
    const CatalogEntry* entry = catalog.match(node.qualified_name);
    if (!entry) continue;
    labels[node.qualified_name].insert(entry->labels.begin(), entry->labels.end());
    reaches.insert(node.qualified_name);
    if (entry->origin == EntryOrigin::Native) {
      native_matched.insert(node.qualified_name);
    }
  }

  // Reverse adjacency over resolved edges only.
  std::map<std::string, std::vector<const CallEdge*>> edges_into;  // callee -> edges
  for (const auto& e : cg.edges) {
    if (e.resolution == Resolution::Unresolved) continue;
    edges_into[e.callee.qualified_name].push_back(&e);
    if (native_matched.count(e.callee.qualified_name)) {
      sets.native_hits.insert(e.caller.qualified_name);
    }
  }

  // Worklist propagation to the least fixed point. Seeded in dependency
  // order (dependencies first) so most labels settle in one pass; the
  // queue guarantees the result is order-independent regardless.
  std::deque<std::string> work;
  std::set<std::string> queued;
  auto enqueue = [&](const std::string& name) {
    if (queued.insert(name).second) work.push_back(name);
  };
  std::map<std::string, std::size_t> group_of;
  for (std::size_t i = 0; i < order.groups.size(); ++i) {
    for (const auto& module : order.groups[i]) group_of[module] = i;
  }
  std::vector<std::string> seeds(reaches.begin(), reaches.end());
  std::stable_sort(seeds.begin(), seeds.end(), [&](const std::string& a, const std::string& b) {
    auto ga = group_of.find(a);
    auto gb = group_of.find(b);
    std::size_t ia = ga == group_of.end() ? 0 : ga->second;
    std::size_t ib = gb == group_of.end() ? 0 : gb->second;
    if (ia != ib) return ia < ib;
    return a < b;
  });
  for (const auto& s : seeds) enqueue(s);

  while (!work.empty()) {
    std::string current = work.front();
    work.pop_front();
    queued.erase(current);
    auto it = edges_into.find(current);
    if (it == edges_into.end()) continue;
    const auto& current_labels = labels[current];
    for (const CallEdge* e : it->second) {
      const std::string& caller = e->caller.qualified_name;
      bool changed = false;
      if (reaches.insert(caller).second) changed = true;
      auto& caller_labels = labels[caller];
      for (auto l : current_labels) {
        if (caller_labels.insert(l).second) changed = true;
      }
      if (changed) enqueue(caller);
    }
  }

  for (const auto& name : reaches) {
    if (!native_matched.count(name)) sets.api_set.insert(name);
  }
  sets.labels_of = std::move(labels);
  return sets;
}

MethodClass classify_method(const PrivacySets& sets, const PrivacyCatalog& catalog,
                            const std::vector<LibraryInfo>& libraries, const MethodRef& m) {
  const CatalogEntry* entry = catalog.match(m.qualified_name);
  if (entry && entry->origin == EntryOrigin::Native) return MethodClass::NativeEntry;
  if (sets.api_set.count(m.qualified_name)) {
    // External methods carry their library in `module`; scanned methods
    // are checked against the configured list by module name.
    bool external = !m.span.has_value();
    if (external) {
      std::string lib = entry ? entry->library : m.module;
      if (library_configured(libraries, lib)) return MethodClass::ApiPrivacyRelevant;
    } else if (module_in_library(m.module, libraries)) {
      return MethodClass::ApiPrivacyRelevant;
    }
  }
  return MethodClass::Application;
}

}  // namespace plens
