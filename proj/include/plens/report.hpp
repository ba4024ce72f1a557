#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plens/metrics.hpp"
#include "plens/source.hpp"

namespace plens {

enum class ReportFormat { Json, Markdown, Both };

struct ScanConfig {
  std::string root;
  std::string language = "auto";  // js | java | auto
  std::string catalog_path;       // empty = embedded default
  std::string rules_path;
  std::string libraries_path;
  std::string output_dir = ".";
  ReportFormat format = ReportFormat::Both;
  std::vector<std::string> exclude_globs;
  bool exclude_tests = false;
  std::string emit_graphs_dir;  // empty = off
};

struct SourceLoc {
  std::string file;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct ReportHop {
  SourceLoc loc;
  std::string variable;
};

struct ReportFinding {
  std::string id;  // F0001, ...
  std::string category;
  bool pii = false;
  std::string source_kind;  // "identifier" | "literal"
  std::string source_symbol;
  SourceLoc source_loc;
  std::string caller;
  std::string sink_method;
  std::string sink_library;
  SourceLoc sink_loc;
  std::vector<std::string> labels;
  std::vector<std::string> gdpr_refs;
  bool crosses_files = false;
  std::vector<ReportHop> path;
};

struct ScanTotals {
  std::size_t files = 0;
  std::size_t functions = 0;
  std::size_t skipped_statements = 0;
  std::size_t unresolved_calls = 0;
  std::size_t sources = 0;
  std::size_t flows = 0;
  std::size_t pii_flows = 0;
};

struct ScanReport {
  std::string tool_name;
  std::string tool_version;
  ScanConfig config;
  ScanTotals totals;
  std::optional<ProportionResult> proportion;  // absent when no methods parsed
  std::vector<MethodStats> method_ranking;
  std::vector<CategoryStats> category_ranking;
  std::vector<std::pair<std::string, std::size_t>> top_packages;
  std::vector<ReportFinding> findings;  // ordered by (file, span)
  std::vector<std::string> diagnostics;
};

// Runs the full pipeline: discover -> parse -> graphs -> closure ->
// sources -> taint -> metrics. Errors from stages are rethrown with the
// stage name prefixed.
ScanReport run_scan(const ScanConfig& config);

// Same pipeline over pre-read files (text already loaded); the pipeline
// sorts them, so input order cannot affect the report.
ScanReport scan_files(std::vector<SourceFile> files, const ScanConfig& config);

// Deterministic serializations.
std::string report_to_json(const ScanReport& report);
std::string render_markdown(const ScanReport& report);

// Exit code mapping used by the CLI: 0 success, 2 configuration/input
// error, 3 internal invariant violation.
int exit_code_for(const class ScanError& error);

}  // namespace plens
