#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "plens/catalog.hpp"
#include "plens/graphs.hpp"

namespace plens {

// Result of the privacy-relevance fixed point over the call graph.
struct PrivacySets {
  // Methods containing at least one call site that resolves into a Native
  // catalog entry.
  std::set<std::string> native_hits;
  // Methods from which some resolved call path reaches a Native catalog
  // match. Methods that themselves match a Native pattern are excluded.
  std::set<std::string> api_set;
  // Union of processing labels over all catalog entries reachable from a
  // method (least fixed point).
  std::map<std::string, std::set<ProcessingLabel>> labels_of;
};

// Backward reachability to Native catalog matches over resolved edges
// (Unresolved edges never participate). Api-origin catalog matches count
// as reaching Native by curation. Evaluation follows the dependency order
// where possible but the result equals order-independent reachability.
PrivacySets compute_api_set(const CallGraph& cg, const PrivacyCatalog& catalog,
                            const DependencyOrder& order);

enum class MethodClass { NativeEntry, ApiPrivacyRelevant, Application };

std::string to_string(MethodClass c);

// NativeEntry: matches a Native pattern. ApiPrivacyRelevant: in the api
// set and defined in a configured library. Application: everything else.
MethodClass classify_method(const PrivacySets& sets, const PrivacyCatalog& catalog,
                            const std::vector<LibraryInfo>& libraries, const MethodRef& m);

}  // namespace plens
