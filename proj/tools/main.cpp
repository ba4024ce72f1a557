#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "plens/errors.hpp"
#include "plens/report.hpp"
#include "plens/version.hpp"

namespace fs = std::filesystem;

namespace {

bool color_enabled() {
  return std::getenv("PRIVACY_LENS_NO_COLOR") == nullptr;
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

void print_summary(const plens::ScanReport& report) {
  std::cout << plens::kToolName << " " << plens::kToolVersion << "\n";
  std::cout << "  files: " << report.totals.files
            << "  functions: " << report.totals.functions
            << "  sources: " << report.totals.sources << "\n";
  if (report.proportion) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%zu/%zu (%.1f%%)", report.proportion->am_count,
                  report.proportion->total_methods, report.proportion->percent);
    std::cout << "  privacy-relevant methods with confirmed flows: "
              << paint(buf, report.proportion->am_count ? "33" : "32") << "\n";
  } else {
    std::cout << "  no methods parsed\n";
  }
  std::cout << "  flows: " << report.totals.flows << " ("
            << paint(std::to_string(report.totals.pii_flows) + " PII",
                     report.totals.pii_flows ? "31" : "32")
            << ")\n";
}

int explain_flow(const plens::ScanReport& report, const std::string& id) {
  for (const auto& f : report.findings) {
    if (f.id != id) continue;
    std::cout << f.id << " " << f.category << (f.pii ? " [PII]" : "") << " -> "
              << f.sink_method << "\n";
    for (std::size_t i = 0; i < f.path.size(); ++i) {
      if (i) std::cout << " \xE2\x86\x92 ";
      std::cout << f.path[i].loc.file << ":" << f.path[i].loc.line << " "
                << f.path[i].variable;
    }
    std::cout << "\n";
    return 0;
  }
  std::cerr << "no finding with id " << id << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-lens: find and categorize privacy-relevant code"};
  app.require_subcommand(1);

  auto* scan = app.add_subcommand("scan", "scan a source tree and write reports");
  plens::ScanConfig config;
  std::string format = "both";
  std::string explain_id;
  scan->add_option("root", config.root, "directory to scan")->required();
  scan->add_option("--lang", config.language, "language filter: js|java|auto")
      ->check(CLI::IsMember({"js", "java", "auto"}))
      ->capture_default_str();
  scan->add_option("--catalog", config.catalog_path, "privacy catalog JSON file");
  scan->add_option("--rules", config.rules_path, "personal-data rule JSON file");
  scan->add_option("--libraries", config.libraries_path, "configured library list JSON file");
  scan->add_option("--format", format, "report format: json|md|both")
      ->check(CLI::IsMember({"json", "md", "both"}))
      ->capture_default_str();
  scan->add_option("--output", config.output_dir, "output directory")->capture_default_str();
  scan->add_option("--emit-graphs", config.emit_graphs_dir,
                   "write import/call graphs as DOT files into this directory");
  scan->add_option("--exclude", config.exclude_globs, "exclude glob (repeatable)");
  scan->add_flag("--exclude-tests", config.exclude_tests, "also exclude test directories");
  scan->add_option("--explain", explain_id, "print the witness path of one finding id");

  CLI11_PARSE(app, argc, argv);

  if (format == "json") config.format = plens::ReportFormat::Json;
  else if (format == "md") config.format = plens::ReportFormat::Markdown;
  else config.format = plens::ReportFormat::Both;

  try {
    plens::ScanReport report = plens::run_scan(config);

    if (!explain_id.empty()) {
      return explain_flow(report, explain_id);
    }

    fs::create_directories(config.output_dir);
    if (config.format != plens::ReportFormat::Markdown) {
      std::ofstream out(fs::path(config.output_dir) / "report.json", std::ios::binary);
      out << plens::report_to_json(report);
      if (!out) throw plens::ScanError(plens::ScanError::Kind::UnreadableFile,
                                       "cannot write report.json");
    }
    if (config.format != plens::ReportFormat::Json) {
      std::ofstream out(fs::path(config.output_dir) / "report.md", std::ios::binary);
      out << plens::render_markdown(report);
      if (!out) throw plens::ScanError(plens::ScanError::Kind::UnreadableFile,
                                       "cannot write report.md");
    }
    print_summary(report);
    return 0;
  } catch (const plens::ScanError& e) {
    std::cerr << paint("error: ", "31") << e.what() << "\n";
    return plens::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << paint("internal error: ", "31") << e.what() << "\n";
    return 3;
  }
}
