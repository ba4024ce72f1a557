#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plens/api_closure.hpp"
#include "plens/catalog.hpp"
#include "plens/graphs.hpp"
#include "plens/ir.hpp"
#include "plens/pd_sources.hpp"

namespace plens {

// Per-function taint: variable -> contributing source indices. Sets only
// grow during propagation (monotone transfer functions).
struct TaintState {
  std::map<std::string, std::set<std::size_t>> var_taints;
  std::set<std::size_t> return_taint;
};

// Intra-procedural propagation over a statement list, iterated to a fixed
// point. All calls are treated as black boxes (any tainted argument or
// receiver taints the call's value).
TaintState propagate_intra(const IRFunction& fn, std::span<const PersonalDataSource> sources,
                           const TaintState& initial);

struct SinkCall {
  MethodRef caller;
  Span site;
  MethodRef callee;
};

struct FlowHop {
  std::string file;
  Span span;
  std::string variable;
};

// A witnessed path from a personal-data source to a privacy-relevant call.
struct TaintFlow {
  std::size_t source_index = 0;
  PersonalDataSource source;
  SinkCall sink;
  std::vector<FlowHop> path;  // first hop carries the source; last is the sink argument/receiver
  bool crosses_files = false;
  bool pii = false;
};

// Interprocedural fixed point: argument-to-parameter transfer along
// resolved edges, return-taint transfer back to call sites,
// context-insensitive. Emits one flow per (source, sink call) pair; sinks
// are calls whose callee classifies as NativeEntry or ApiPrivacyRelevant.
std::vector<TaintFlow> propagate_inter(const CallGraph& cg, std::span<const IRModule> modules,
                                       std::span<const PersonalDataSource> sources,
                                       const PrivacyCatalog& catalog, const PrivacySets& sets,
                                       const std::vector<LibraryInfo>& libraries);

// AM: application methods appearing as the caller of at least one flow.
std::set<std::string> collect_am(std::span<const TaintFlow> flows);

// |Total|: every parsed function, synthetic module scopes included.
std::size_t total_methods(std::span<const IRModule> modules);

}  // namespace plens
