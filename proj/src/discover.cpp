#include "plens/discover.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plens/errors.hpp"

namespace fs = std::filesystem;

namespace plens {

namespace {

const std::vector<std::string>& always_excluded_dirs() {
  static const std::vector<std::string> dirs = {"node_modules", "target", "build", "dist",
                                                ".git"};
  return dirs;
}

const std::vector<std::string>& test_dirs() {
  static const std::vector<std::string> dirs = {"test", "tests", "__tests__"};
  return dirs;
}

bool segment_excluded(const std::string& segment, const DiscoverOptions& opts) {
  for (const auto& d : always_excluded_dirs()) {
    if (segment == d) return true;
  }
  if (opts.exclude_tests) {
    for (const auto& d : test_dirs()) {
      if (segment == d) return true;
    }
  }
  return false;
}

std::string to_relative(const fs::path& root, const fs::path& p) {
  std::string rel = fs::relative(p, root).generic_string();
  return rel;
}

}  // namespace

bool glob_match(std::string_view glob, std::string_view path) {
  // Iterative wildcard matcher with ** support.
  std::size_t g = 0, p = 0;
  std::size_t star_g = std::string_view::npos, star_p = 0;
  bool star_crosses = false;
  while (p < path.size()) {
    if (g < glob.size() && (glob[g] == path[p] || glob[g] == '?')) {
      ++g;
      ++p;
    } else if (g < glob.size() && glob[g] == '*') {
      bool double_star = g + 1 < glob.size() && glob[g + 1] == '*';
      star_crosses = double_star;
      g += double_star ? 2 : 1;
      if (double_star && g < glob.size() && glob[g] == '/') ++g;
      star_g = g;
      star_p = p;
    } else if (star_g != std::string_view::npos &&
               (star_crosses || path[star_p] != '/')) {
      ++star_p;
      p = star_p;
      g = star_g;
    } else {
      return false;
    }
  }
  while (g < glob.size() && glob[g] == '*') ++g;
  return g == glob.size();
}

std::vector<SourceFile> discover_files(const std::string& root, const DiscoverOptions& opts) {
  fs::path root_path(root);
  std::error_code ec;
  if (!fs::exists(root_path, ec) || !fs::is_directory(root_path, ec)) {
    throw ScanError(ScanError::Kind::RootNotFound, "scan root not found: " + root);
  }

  std::vector<SourceFile> out;
  std::vector<fs::path> stack = {root_path};
  while (!stack.empty()) {
    fs::path dir = stack.back();
    stack.pop_back();
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      const fs::path& p = entry.path();
      std::string name = p.filename().generic_string();
      if (entry.is_directory(ec)) {
        if (!segment_excluded(name, opts)) stack.push_back(p);
        continue;
      }
      auto lang = language_for_path(name);
      if (!lang) continue;
      if (opts.language_filter && *lang != *opts.language_filter) continue;
      std::string rel = to_relative(root_path, p);
      bool skipped = false;
      for (const auto& g : opts.exclude_globs) {
        if (glob_match(g, rel)) {
          skipped = true;
          break;
        }
      }
      if (skipped) continue;
      SourceFile f;
      f.path = rel;
      f.language = *lang;
      out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  return out;
}

bool read_source(const std::string& root, SourceFile& file, Diagnostic& error) {
  fs::path full = fs::path(root) / file.path;
  std::ifstream in(full, std::ios::binary);
  if (!in) {
    error = Diagnostic{file.path, 0, 0, "error", "unreadable file"};
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    error = Diagnostic{file.path, 0, 0, "error", "read failure"};
    return false;
  }
  file.text = sanitize_utf8(buf.str());
  return true;
}

}  // namespace plens
