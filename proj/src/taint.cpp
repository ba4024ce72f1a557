#include "plens/taint.hpp"

#include <algorithm>
#include <deque>

#include "plens/errors.hpp"

namespace plens {

namespace {

const std::string kReturnVar = "<ret>";

// Where a source id entered an expression: a same-function variable, a
// callee's return value, or the source occurrence itself.
struct Carrier {
  std::string function;  // empty = same function / direct
  std::string variable;  // empty = direct source occurrence
};

using ExprTaint = std::map<std::size_t, Carrier>;

void merge_taint(ExprTaint& into, const ExprTaint& from) {
  for (const auto& [src, carrier] : from) {
    into.emplace(src, carrier);  // first carrier wins, deterministic
  }
}

// ---------------------------------------------------------------------------
// Intra-procedural propagation with every call treated as a black box.
// ---------------------------------------------------------------------------

struct IntraEval {
  const IRFunction& fn;
  const std::map<std::pair<std::string, std::size_t>, std::size_t>& literal_sources;
  TaintState& state;

  std::set<std::size_t> eval(const IRExpr& e) const {
    switch (e.kind) {
      case IRExpr::Kind::Identifier: {
        auto it = state.var_taints.find(e.name);
        return it == state.var_taints.end() ? std::set<std::size_t>{} : it->second;
      }
      case IRExpr::Kind::Literal: {
        auto it = literal_sources.find({fn.id.qualified_name, e.span.begin});
        if (it != literal_sources.end()) return {it->second};
        return {};
      }
      case IRExpr::Kind::Member:
        return e.base ? eval(*e.base) : std::set<std::size_t>{};
      case IRExpr::Kind::Call: {
        std::set<std::size_t> out;
        for (const auto& a : e.args) {
          auto t = eval(*a);
          out.insert(t.begin(), t.end());
        }
        if (e.base && e.base->kind == IRExpr::Kind::Member && e.base->base) {
          auto t = eval(*e.base->base);  // receiver
          out.insert(t.begin(), t.end());
        }
        return out;
      }
    }
    return {};
  }
};

}  // namespace

TaintState propagate_intra(const IRFunction& fn, std::span<const PersonalDataSource> sources,
                           const TaintState& initial) {
  TaintState state = initial;
  std::map<std::pair<std::string, std::size_t>, std::size_t> literal_sources;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& s = sources[i];
    if (s.function_qualified != fn.id.qualified_name) continue;
    if (s.kind == SourceKind::VariableIdentifier) {
      state.var_taints[s.symbol].insert(i);
    } else {
      literal_sources[{s.function_qualified, s.span.begin}] = i;
    }
  }
  IntraEval eval{fn, literal_sources, state};

  bool changed = true;
  std::size_t rounds = 0;
  const std::size_t round_limit = (fn.body.size() + fn.params.size() + 2) * (sources.size() + 2) + 8;
  while (changed) {
    changed = false;
    if (++rounds > round_limit) break;  // monotone; belt and braces
    for (const auto& st : fn.body) {
      if (!st.value) continue;
      auto taints = eval.eval(*st.value);
      if (taints.empty()) continue;
      switch (st.kind) {
        case IRStatement::Kind::VarDecl:
        case IRStatement::Kind::Assign: {
          auto& slot = state.var_taints[st.lhs];
          for (auto s : taints) {
            if (slot.insert(s).second) changed = true;
          }
          break;
        }
        case IRStatement::Kind::Return: {
          for (auto s : taints) {
            if (state.return_taint.insert(s).second) changed = true;
          }
          break;
        }
        case IRStatement::Kind::CallStmt:
          break;
      }
    }
  }
  return state;
}

// ---------------------------------------------------------------------------
// Interprocedural engine
// ---------------------------------------------------------------------------

namespace {

struct HopRecord {
  std::string file;
  Span span;
  // Predecessor taint fact, absent at the source occurrence.
  bool has_prev = false;
  std::string prev_function;
  std::string prev_variable;
};

struct FlowKey {
  std::size_t source;
  std::string caller;
  std::size_t site_begin;
  std::string callee;

  bool operator<(const FlowKey& o) const {
    return std::tie(source, caller, site_begin, callee) <
           std::tie(o.source, o.caller, o.site_begin, o.callee);
  }
};

struct FlowSeed {
  Span site;
  MethodRef callee_ref;
  Carrier carrier;  // taint fact feeding the sink argument/receiver
};

class InterEngine {
 public:
  InterEngine(const CallGraph& cg, std::span<const IRModule> modules,
              std::span<const PersonalDataSource> sources, const PrivacyCatalog& catalog,
              const PrivacySets& sets, const std::vector<LibraryInfo>& libraries)
      : modules_(modules), sources_(sources), catalog_(catalog), sets_(sets),
        libraries_(libraries) {
    for (const auto& m : modules_) {
      for (const auto& fn : m.functions) {
        functions_[fn.id.qualified_name] = &fn;
        file_of_[fn.id.qualified_name] = m.file.path;
      }
    }
    for (const auto& e : cg.edges) {
      edge_at_[{e.caller.qualified_name, e.site.begin, e.site.end}] = &e;
      if (e.resolution != Resolution::Unresolved &&
          functions_.count(e.callee.qualified_name)) {
        callers_of_[e.callee.qualified_name].insert(e.caller.qualified_name);
      }
    }
    for (std::size_t i = 0; i < sources_.size(); ++i) {
      const auto& s = sources_[i];
      if (s.kind == SourceKind::VariableIdentifier) {
        taint_[s.function_qualified][s.symbol].insert(i);
      } else {
        literal_sources_[{s.function_qualified, s.span.begin}] = i;
      }
    }
  }

  std::vector<TaintFlow> run() {
    std::deque<std::string> work;
    std::set<std::string> queued;
    for (const auto& [name, fn] : functions_) {
      work.push_back(name);
      queued.insert(name);
    }
    std::size_t guard = 0;
    const std::size_t limit = 4 * (functions_.size() + 4) * (sources_.size() + 4) + 64;
    while (!work.empty()) {
      if (++guard > limit * 16) {
        throw ScanError(ScanError::Kind::Internal, "taint fixed point failed to settle");
      }
      std::string name = work.front();
      work.pop_front();
      queued.erase(name);
      auto it = functions_.find(name);
      if (it == functions_.end()) continue;
      bool ret_changed = process_function(*it->second, work, queued);
      if (ret_changed) {
        auto callers = callers_of_.find(name);
        if (callers != callers_of_.end()) {
          for (const auto& c : callers->second) {
            if (queued.insert(c).second) work.push_back(c);
          }
        }
      }
    }
    return build_flows();
  }

 private:
  bool is_sink(const MethodRef& callee) const {
    MethodClass cls = classify_method(sets_, catalog_, libraries_, callee);
    return cls == MethodClass::NativeEntry || cls == MethodClass::ApiPrivacyRelevant;
  }

  // Evaluates an expression; records sink flows and argument-to-parameter
  // transfers as side effects.
  ExprTaint eval(const IRFunction& fn, const IRStatement& st, const IRExpr& e,
                 std::deque<std::string>& work, std::set<std::string>& queued) {
    switch (e.kind) {
      case IRExpr::Kind::Identifier: {
        ExprTaint out;
        auto fit = taint_.find(fn.id.qualified_name);
        if (fit != taint_.end()) {
          auto vit = fit->second.find(e.name);
          if (vit != fit->second.end()) {
            for (auto s : vit->second) out.emplace(s, Carrier{"", e.name});
          }
        }
        return out;
      }
      case IRExpr::Kind::Literal: {
        auto it = literal_sources_.find({fn.id.qualified_name, e.span.begin});
        if (it != literal_sources_.end()) return {{it->second, Carrier{"", ""}}};
        return {};
      }
      case IRExpr::Kind::Member:
        return e.base ? eval(fn, st, *e.base, work, queued) : ExprTaint{};
      case IRExpr::Kind::Call:
        return eval_call(fn, st, e, work, queued);
    }
    return {};
  }

  ExprTaint eval_call(const IRFunction& fn, const IRStatement& st, const IRExpr& call,
                      std::deque<std::string>& work, std::set<std::string>& queued) {
    std::vector<ExprTaint> arg_taints;
    arg_taints.reserve(call.args.size());
    for (const auto& a : call.args) {
      arg_taints.push_back(eval(fn, st, *a, work, queued));
    }
    ExprTaint receiver;
    if (call.base && call.base->kind == IRExpr::Kind::Member && call.base->base) {
      receiver = eval(fn, st, *call.base->base, work, queued);
    }

    const CallEdge* edge = nullptr;
    if (!IRExpr::op_marker(call)) {
      auto it = edge_at_.find({fn.id.qualified_name, call.span.begin, call.span.end});
      if (it != edge_at_.end()) edge = it->second;
    }

    const IRFunction* callee_fn = nullptr;
    if (edge && edge->resolution != Resolution::Unresolved) {
      auto fit = functions_.find(edge->callee.qualified_name);
      if (fit != functions_.end()) callee_fn = fit->second;

      // Sink detection: any tainted argument or receiver flows in.
      if (is_sink(edge->callee)) {
        for (const auto& at : arg_taints) {
          for (const auto& [src, carrier] : at) {
            record_flow(src, fn, call.span, edge->callee, carrier);
          }
        }
        for (const auto& [src, carrier] : receiver) {
          record_flow(src, fn, call.span, edge->callee, carrier);
        }
      }

      if (callee_fn) {
        // argument -> parameter transfer
        std::size_t n = std::min(arg_taints.size(), callee_fn->params.size());
        bool callee_changed = false;
        for (std::size_t i = 0; i < n; ++i) {
          const std::string& param = callee_fn->params[i].name;
          for (const auto& [src, carrier] : arg_taints[i]) {
            if (add_fact(callee_fn->id.qualified_name, param, src,
                         HopRecord{file_of_[fn.id.qualified_name], st.span, true,
                                   fn.id.qualified_name, carrier.variable},
                         fn.id.qualified_name, carrier)) {
              callee_changed = true;
            }
          }
        }
        if (callee_changed && queued.insert(callee_fn->id.qualified_name).second) {
          work.push_back(callee_fn->id.qualified_name);
        }
        // return-taint transfer back to this call's value
        ExprTaint out;
        auto rt = taint_.find(callee_fn->id.qualified_name);
        if (rt != taint_.end()) {
          auto rv = rt->second.find(kReturnVar);
          if (rv != rt->second.end()) {
            for (auto s : rv->second) {
              out.emplace(s, Carrier{callee_fn->id.qualified_name, kReturnVar});
            }
          }
        }
        return out;
      }
    }

    // External or unresolved callee: black box, arguments and receiver
    // flow through the value.
    ExprTaint out;
    for (const auto& at : arg_taints) merge_taint(out, at);
    merge_taint(out, receiver);
    return out;
  }

  // Adds (function, variable) <- source; records the witness hop on first
  // arrival. `carrier_fn` is the function the carrier variable lives in.
  bool add_fact(const std::string& function, const std::string& variable, std::size_t src,
                HopRecord hop, const std::string& carrier_fn, const Carrier& carrier) {
    auto& slot = taint_[function][variable];
    if (!slot.insert(src).second) return false;
    // Normalize the predecessor: empty carrier variable means the source
    // occurrence itself (no predecessor fact).
    if (carrier.variable.empty() && carrier.function.empty()) {
      hop.has_prev = false;
    } else {
      hop.has_prev = true;
      hop.prev_function = carrier.function.empty() ? carrier_fn : carrier.function;
      hop.prev_variable = carrier.variable;
    }
    parents_.emplace(std::make_tuple(function, variable, src), std::move(hop));
    return true;
  }

  bool process_function(const IRFunction& fn, std::deque<std::string>& work,
                        std::set<std::string>& queued) {
    const std::string& name = fn.id.qualified_name;
    const std::string& file = file_of_[name];
    std::size_t ret_before = taint_[name][kReturnVar].size();
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& st : fn.body) {
        if (!st.value) continue;
        ExprTaint taints = eval(fn, st, *st.value, work, queued);
        if (taints.empty()) continue;
        const std::string* target = nullptr;
        if (st.kind == IRStatement::Kind::VarDecl || st.kind == IRStatement::Kind::Assign) {
          target = &st.lhs;
        } else if (st.kind == IRStatement::Kind::Return) {
          target = &kReturnVar;
        }
        if (!target || target->empty()) continue;
        for (const auto& [src, carrier] : taints) {
          if (add_fact(name, *target, src, HopRecord{file, st.span, false, "", ""}, name,
                       carrier)) {
            changed = true;
          }
        }
      }
    }
    return taint_[name][kReturnVar].size() != ret_before;
  }

  void record_flow(std::size_t src, const IRFunction& caller, Span site,
                   const MethodRef& callee, const Carrier& carrier) {
    FlowKey key{src, caller.id.qualified_name, site.begin, callee.qualified_name};
    if (flows_.count(key)) return;
    Carrier c = carrier;
    if (c.function.empty()) c.function = caller.id.qualified_name;
    flows_.emplace(key, FlowSeed{site, callee, c});
  }

  std::vector<TaintFlow> build_flows() const {
    std::vector<TaintFlow> out;
    for (const auto& [key, seed] : flows_) {
      TaintFlow flow;
      flow.source_index = key.source;
      flow.source = sources_[key.source];
      flow.pii = flow.source.pii;
      flow.sink.caller = functions_.at(key.caller)->id;
      flow.sink.site = seed.site;
      flow.sink.callee = seed.callee_ref;

      // Reconstruct the witness path by walking parent records backward.
      std::vector<FlowHop> reversed;
      std::string fn = seed.carrier.function;
      std::string var = seed.carrier.variable;
      const std::string& caller_file = file_of_.at(key.caller);
      std::string sink_var = var.empty() ? trimmed_symbol(flow.source) : var;
      reversed.push_back(FlowHop{caller_file, seed.site, sink_var});
      std::set<std::pair<std::string, std::string>> visited;
      while (!var.empty()) {
        if (!visited.insert({fn, var}).second) break;
        auto it = parents_.find(std::make_tuple(fn, var, key.source));
        if (it == parents_.end()) break;  // seeded fact: source occurrence
        const HopRecord& hop = it->second;
        reversed.push_back(FlowHop{hop.file, hop.span, var});
        if (!hop.has_prev) break;
        fn = hop.prev_function;
        var = hop.prev_variable;
      }
      flow.path.assign(reversed.rbegin(), reversed.rend());
      for (const auto& h : flow.path) {
        if (h.file != flow.source.file) flow.crosses_files = true;
      }
      out.push_back(std::move(flow));
    }
    std::sort(out.begin(), out.end(), [](const TaintFlow& a, const TaintFlow& b) {
      return std::tie(a.source.file, a.source.span.begin, a.sink.caller.qualified_name,
                      a.sink.site.begin, a.sink.callee.qualified_name) <
             std::tie(b.source.file, b.source.span.begin, b.sink.caller.qualified_name,
                      b.sink.site.begin, b.sink.callee.qualified_name);
    });
    return out;
  }

  static std::string trimmed_symbol(const PersonalDataSource& s) {
    if (s.kind == SourceKind::VariableIdentifier) return s.symbol;
    std::string t = s.symbol.substr(0, 24);
    return "\"" + t + (s.symbol.size() > 24 ? "…\"" : "\"");
  }

  std::span<const IRModule> modules_;
  std::span<const PersonalDataSource> sources_;
  const PrivacyCatalog& catalog_;
  const PrivacySets& sets_;
  const std::vector<LibraryInfo>& libraries_;

  std::map<std::string, const IRFunction*> functions_;
  std::map<std::string, std::string> file_of_;
  std::map<std::tuple<std::string, std::size_t, std::size_t>, const CallEdge*> edge_at_;
  std::map<std::string, std::set<std::string>> callers_of_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> literal_sources_;

  std::map<std::string, std::map<std::string, std::set<std::size_t>>> taint_;
  std::map<std::tuple<std::string, std::string, std::size_t>, HopRecord> parents_;
  std::map<FlowKey, FlowSeed> flows_;
};

}  // namespace

std::vector<TaintFlow> propagate_inter(const CallGraph& cg, std::span<const IRModule> modules,
                                       std::span<const PersonalDataSource> sources,
                                       const PrivacyCatalog& catalog, const PrivacySets& sets,
                                       const std::vector<LibraryInfo>& libraries) {
  InterEngine engine(cg, modules, sources, catalog, sets, libraries);
  return engine.run();
}

std::set<std::string> collect_am(std::span<const TaintFlow> flows) {
  std::set<std::string> out;
  for (const auto& f : flows) out.insert(f.sink.caller.qualified_name);
  return out;
}

std::size_t total_methods(std::span<const IRModule> modules) {
  std::size_t n = 0;
  for (const auto& m : modules) n += m.functions.size();
  return n;
}

}  // namespace plens
