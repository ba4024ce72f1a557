#include "plens/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "plens/api_closure.hpp"
#include "plens/catalog.hpp"
#include "plens/discover.hpp"
#include "plens/errors.hpp"
#include "plens/graphs.hpp"
#include "plens/parser.hpp"
#include "plens/pd_sources.hpp"
#include "plens/taint.hpp"
#include "plens/version.hpp"

namespace plens {

using ordered_json = nlohmann::ordered_json;

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const ScanError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScanError(ScanError::Kind::Internal, std::string(name) + ": " + e.what());
  }
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

std::string format_ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

SourceLoc locate(const std::map<std::string, LineIndex>& lines, const std::string& file,
                 std::size_t offset) {
  auto it = lines.find(file);
  if (it == lines.end()) return SourceLoc{file, 0, 0};
  LineCol lc = it->second.locate(offset);
  return SourceLoc{file, lc.line, lc.col};
}

std::vector<std::string> labels_to_strings(const std::set<ProcessingLabel>& labels) {
  std::vector<std::string> out;
  for (auto l : labels) out.push_back(to_string(l));
  return out;
}

std::vector<std::string> gdpr_for_labels(const std::set<ProcessingLabel>& labels) {
  std::vector<std::string> out;
  for (auto l : labels) {
    for (const auto& ref : gdpr_refs(l)) {
      if (std::find(out.begin(), out.end(), ref) == out.end()) out.push_back(ref);
    }
  }
  return out;
}

}  // namespace

ScanReport scan_files(std::vector<SourceFile> files, const ScanConfig& config) {
  ScanReport report;
  report.tool_name = kToolName;
  report.tool_version = kToolVersion;
  report.config = config;

  // Input order must not matter.
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });

  // -- data files --------------------------------------------------------
  PrivacyCatalog catalog = stage("load-catalog", [&] {
    return config.catalog_path.empty() ? default_catalog() : load_catalog(config.catalog_path);
  });
  RuleSet rules = stage("load-rules", [&] {
    return config.rules_path.empty() ? default_rules() : load_rules(config.rules_path);
  });
  std::vector<LibraryInfo> libraries = stage("load-libraries", [&] {
    return config.libraries_path.empty() ? default_libraries()
                                         : load_libraries(config.libraries_path);
  });

  std::vector<Diagnostic> scan_diags;
  std::vector<std::string> library_names;
  for (const auto& l : libraries) library_names.push_back(l.name);
  catalog.restrict_to_libraries(library_names, scan_diags);
  for (const auto& w : rules.warnings) {
    scan_diags.push_back(Diagnostic{"", 0, 0, "note", w});
  }

  // -- parse --------------------------------------------------------------
  std::vector<IRModule> modules = stage("parse", [&] {
    std::vector<IRModule> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(parse_file(f));
    return out;
  });

  std::map<std::string, LineIndex> lines;
  for (const auto& m : modules) lines.emplace(m.file.path, LineIndex(m.file.text));

  report.totals.files = modules.size();
  report.totals.functions = total_methods(modules);
  for (const auto& m : modules) report.totals.skipped_statements += m.skipped_statements;

  // -- graphs ---------------------------------------------------------------
  ImportGraph imports = stage("import-graph", [&] { return build_import_graph(modules); });
  DependencyOrder order = stage("dependency-order", [&] { return dependency_order(imports); });
  CallGraph calls = stage("call-graph", [&] { return build_call_graph(modules, catalog); });
  for (const auto& e : calls.edges) {
    if (e.resolution == Resolution::Unresolved) ++report.totals.unresolved_calls;
  }

  if (!config.emit_graphs_dir.empty()) {
    stage("emit-graphs", [&] {
      std::filesystem::create_directories(config.emit_graphs_dir);
      std::ofstream(std::filesystem::path(config.emit_graphs_dir) / "import_graph.dot")
          << to_dot(imports);
      std::ofstream(std::filesystem::path(config.emit_graphs_dir) / "call_graph.dot")
          << to_dot(calls);
      return 0;
    });
  }

  // -- closure ---------------------------------------------------------------
  PrivacySets sets = stage("api-closure", [&] { return compute_api_set(calls, catalog, order); });

  // -- sources ---------------------------------------------------------------
  std::vector<PersonalDataSource> sources = stage("pd-sources", [&] {
    RuleMatcher matcher(rules.categories);
    std::vector<PersonalDataSource> out;
    for (const auto& m : modules) {
      auto found = detect_sources(m, matcher);
      out.insert(out.end(), found.begin(), found.end());
    }
    return out;
  });
  report.totals.sources = sources.size();

  // -- taint ---------------------------------------------------------------
  std::vector<TaintFlow> flows = stage("taint", [&] {
    return propagate_inter(calls, modules, sources, catalog, sets, libraries);
  });
  report.totals.flows = flows.size();
  for (const auto& f : flows) {
    if (f.pii) ++report.totals.pii_flows;
  }

  // -- metrics ---------------------------------------------------------------
  std::set<std::string> am = collect_am(flows);
  std::set<std::string> pii_am;
  for (const auto& f : flows) {
    if (f.pii) pii_am.insert(f.sink.caller.qualified_name);
  }
  if (report.totals.functions > 0) {
    report.proportion = stage("metrics", [&] {
      return proportion(am.size(), report.totals.functions, pii_am.size());
    });
  }
  std::vector<MethodStats> mstats = method_stats(flows, sets);
  report.method_ranking = rank(std::move(mstats));
  auto cstats = category_stats(report.method_ranking);
  report.category_ranking = rank(std::move(cstats));

  std::map<std::string, std::size_t> package_counts;
  for (const auto& ms : report.method_ranking) {
    if (!ms.library.empty()) package_counts[ms.library] += ms.occurrence;
  }
  std::vector<std::pair<std::string, std::size_t>> packages(package_counts.begin(),
                                                            package_counts.end());
  std::sort(packages.begin(), packages.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (packages.size() > 5) packages.resize(5);
  report.top_packages = std::move(packages);

  // -- findings ---------------------------------------------------------------
  std::size_t finding_index = 0;
  for (const auto& f : flows) {
    ReportFinding finding;
    char idbuf[16];
    std::snprintf(idbuf, sizeof(idbuf), "F%04zu", ++finding_index);
    finding.id = idbuf;
    finding.category = f.source.category;
    finding.pii = f.pii;
    finding.source_kind =
        f.source.kind == SourceKind::VariableIdentifier ? "identifier" : "literal";
    finding.source_symbol = f.source.symbol;
    finding.source_loc = locate(lines, f.source.file, f.source.span.begin);
    finding.caller = f.sink.caller.qualified_name;
    finding.sink_method = f.sink.callee.qualified_name;
    finding.sink_library = f.sink.callee.module;
    // The final hop is the sink call; it carries the caller's file.
    std::string sink_file = f.path.empty() ? f.source.file : f.path.back().file;
    finding.sink_loc = locate(lines, sink_file, f.sink.site.begin);
    auto labels_it = sets.labels_of.find(f.sink.callee.qualified_name);
    if (labels_it != sets.labels_of.end()) {
      finding.labels = labels_to_strings(labels_it->second);
      finding.gdpr_refs = gdpr_for_labels(labels_it->second);
    }
    finding.crosses_files = f.crosses_files;
    for (const auto& hop : f.path) {
      finding.path.push_back(ReportHop{locate(lines, hop.file, hop.span.begin), hop.variable});
    }
    report.findings.push_back(std::move(finding));
  }
  std::stable_sort(report.findings.begin(), report.findings.end(),
                   [](const ReportFinding& a, const ReportFinding& b) {
                     return std::tie(a.source_loc.file, a.source_loc.line, a.source_loc.col) <
                            std::tie(b.source_loc.file, b.source_loc.line, b.source_loc.col);
                   });

  // -- diagnostics ---------------------------------------------------------------
  for (const auto& m : modules) {
    for (const auto& d : m.diagnostics) report.diagnostics.push_back(to_string(d));
  }
  for (const auto& d : order.diagnostics) report.diagnostics.push_back(to_string(d));
  for (const auto& d : scan_diags) report.diagnostics.push_back(to_string(d));

  return report;
}

ScanReport run_scan(const ScanConfig& config) {
  DiscoverOptions opts;
  opts.exclude_globs = config.exclude_globs;
  opts.exclude_tests = config.exclude_tests;
  if (config.language == "js") opts.language_filter = Language::JsLike;
  else if (config.language == "java") opts.language_filter = Language::JavaLike;

  std::vector<SourceFile> files = discover_files(config.root, opts);
  std::vector<SourceFile> loaded;
  std::vector<Diagnostic> read_errors;
  for (auto& f : files) {
    Diagnostic err;
    if (read_source(config.root, f, err)) {
      loaded.push_back(std::move(f));
    } else {
      read_errors.push_back(err);
    }
  }
  ScanReport report = scan_files(std::move(loaded), config);
  for (const auto& d : read_errors) report.diagnostics.push_back(to_string(d));
  return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

ordered_json loc_json(const SourceLoc& loc) {
  return ordered_json{{"file", loc.file}, {"line", loc.line}, {"col", loc.col}};
}

}  // namespace

std::string report_to_json(const ScanReport& r) {
  ordered_json j;
  j["tool"] = ordered_json{{"name", r.tool_name}, {"version", r.tool_version}};
  j["config"] = ordered_json{
      {"root", r.config.root},
      {"language", r.config.language},
      {"catalog", r.config.catalog_path.empty() ? "<default>" : r.config.catalog_path},
      {"rules", r.config.rules_path.empty() ? "<default>" : r.config.rules_path},
      {"libraries", r.config.libraries_path.empty() ? "<default>" : r.config.libraries_path},
      {"exclude", r.config.exclude_globs},
      {"exclude_tests", r.config.exclude_tests},
  };
  j["totals"] = ordered_json{
      {"files", r.totals.files},
      {"functions", r.totals.functions},
      {"skipped_statements", r.totals.skipped_statements},
      {"unresolved_calls", r.totals.unresolved_calls},
      {"sources", r.totals.sources},
      {"flows", r.totals.flows},
      {"pii_flows", r.totals.pii_flows},
  };
  if (r.proportion) {
    j["proportion"] = ordered_json{
        {"am_count", r.proportion->am_count},
        {"total_methods", r.proportion->total_methods},
        {"percent", r.proportion->percent},
        {"pii_percent", r.proportion->pii_percent},
    };
  } else {
    j["proportion"] = ordered_json{{"error", "no methods"}};
  }
  j["method_ranking"] = ordered_json::array();
  for (const auto& ms : r.method_ranking) {
    j["method_ranking"].push_back(ordered_json{
        {"method", ms.method},
        {"library", ms.library},
        {"labels", labels_to_strings(ms.labels)},
        {"occurrence", ms.occurrence},
        {"pii_occurrence", ms.pii_occurrence},
        {"pii_frequency", ms.pii_frequency},
    });
  }
  j["category_ranking"] = ordered_json::array();
  for (const auto& cs : r.category_ranking) {
    j["category_ranking"].push_back(ordered_json{
        {"label", to_string(cs.label)},
        {"name", label_full_name(cs.label)},
        {"gdpr_refs", gdpr_refs(cs.label)},
        {"occurrence", cs.occurrence},
        {"pii_frequency", cs.pii_frequency},
    });
  }
  j["top_packages"] = ordered_json::array();
  for (const auto& [pkg, count] : r.top_packages) {
    j["top_packages"].push_back(ordered_json{{"package", pkg}, {"count", count}});
  }
  j["findings"] = ordered_json::array();
  for (const auto& f : r.findings) {
    ordered_json path = ordered_json::array();
    for (const auto& hop : f.path) {
      ordered_json h = loc_json(hop.loc);
      h["variable"] = hop.variable;
      path.push_back(h);
    }
    j["findings"].push_back(ordered_json{
        {"id", f.id},
        {"category", f.category},
        {"pii", f.pii},
        {"source", ordered_json{{"kind", f.source_kind},
                                {"symbol", f.source_symbol},
                                {"location", loc_json(f.source_loc)}}},
        {"sink", ordered_json{{"method", f.sink_method},
                              {"library", f.sink_library},
                              {"caller", f.caller},
                              {"location", loc_json(f.sink_loc)}}},
        {"labels", f.labels},
        {"gdpr_refs", f.gdpr_refs},
        {"crosses_files", f.crosses_files},
        {"path", path},
    });
  }
  j["diagnostics"] = r.diagnostics;
  return j.dump(2) + "\n";
}

std::string render_markdown(const ScanReport& r) {
  std::ostringstream os;
  os << "# Privacy Scan Report\n\n";
  os << "Tool: " << r.tool_name << " " << r.tool_version << "  \n";
  os << "Root: `" << r.config.root << "`\n\n";

  os << "## Summary\n\n";
  if (r.proportion) {
    os << "- Methods invoking privacy-relevant methods with a confirmed personal-data flow: **"
       << r.proportion->am_count << " / " << r.proportion->total_methods << " ("
       << format_percent(r.proportion->percent) << "%)**\n";
    os << "- Restricted to PII flows: **" << format_percent(r.proportion->pii_percent)
       << "%**\n";
  } else {
    os << "- No methods parsed (empty scan).\n";
  }
  os << "- Files: " << r.totals.files << ", functions: " << r.totals.functions
     << ", personal-data sources: " << r.totals.sources << "\n";
  os << "- Flows: " << r.totals.flows << " (" << r.totals.pii_flows << " PII)\n\n";

  os << "## Category Breakdown\n\n";
  os << "| Category | Label | Occurrence | PII frequency | GDPR |\n";
  os << "|---|---|---:|---:|---|\n";
  for (const auto& cs : r.category_ranking) {
    os << "| " << label_full_name(cs.label) << " | " << to_string(cs.label) << " | "
       << cs.occurrence << " | " << format_ratio(cs.pii_frequency) << " | ";
    const auto& refs = gdpr_refs(cs.label);
    for (std::size_t i = 0; i < refs.size(); ++i) {
      if (i) os << "; ";
      os << refs[i];
    }
    os << " |\n";
  }
  os << "\n";

  os << "## Top Privacy-relevant Methods\n\n";
  os << "| Method | Library | Labels | Occurrence | PII occurrence |\n";
  os << "|---|---|---|---:|---:|\n";
  for (const auto& ms : r.method_ranking) {
    os << "| `" << ms.method << "` | " << ms.library << " | ";
    auto labels = labels_to_strings(ms.labels);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) os << ", ";
      os << labels[i];
    }
    os << " | " << ms.occurrence << " | " << ms.pii_occurrence << " |\n";
  }
  os << "\n";

  if (!r.top_packages.empty()) {
    os << "### Top packages\n\n";
    for (const auto& [pkg, count] : r.top_packages) {
      os << "- " << pkg << " (" << count << ")\n";
    }
    os << "\n";
  }

  os << "## Findings\n\n";
  if (r.findings.empty()) {
    os << "No personal-data flows found.\n\n";
  }
  for (const auto& f : r.findings) {
    os << "### " << f.id << (f.pii ? " [PII]" : "") << " " << f.category << " \xE2\x86\x92 `"
       << f.sink_method << "`\n\n";
    os << "- Source: `" << f.source_symbol << "` (" << f.source_kind << ") at "
       << f.source_loc.file << ":" << f.source_loc.line << ":" << f.source_loc.col << "\n";
    os << "- Sink: `" << f.sink_method << "` called from `" << f.caller << "` at "
       << f.sink_loc.file << ":" << f.sink_loc.line << "\n";
    os << "- Labels: ";
    for (std::size_t i = 0; i < f.labels.size(); ++i) {
      if (i) os << ", ";
      os << f.labels[i];
    }
    os << "; GDPR: ";
    for (std::size_t i = 0; i < f.gdpr_refs.size(); ++i) {
      if (i) os << "; ";
      os << f.gdpr_refs[i];
    }
    os << "\n- Path: ";
    for (std::size_t i = 0; i < f.path.size(); ++i) {
      if (i) os << " \xE2\x86\x92 ";
      os << f.path[i].loc.file << ":" << f.path[i].loc.line << " " << f.path[i].variable;
    }
    os << "\n\n";
  }

  os << "## Analysis Gaps\n\n";
  os << "- Skipped statements: " << r.totals.skipped_statements << "\n";
  os << "- Unresolved calls: " << r.totals.unresolved_calls << "\n";
  if (!r.diagnostics.empty()) {
    os << "\n<details><summary>Diagnostics (" << r.diagnostics.size() << ")</summary>\n\n";
    for (const auto& d : r.diagnostics) os << "- `" << d << "`\n";
    os << "\n</details>\n";
  }
  return os.str();
}

int exit_code_for(const ScanError& error) {
  return error.kind() == ScanError::Kind::Internal ? 3 : 2;
}

}  // namespace plens
