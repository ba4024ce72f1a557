#pragma once

#include <string>
#include <vector>

#include "plens/diagnostics.hpp"
#include "plens/source.hpp"

namespace plens {

struct DiscoverOptions {
  std::vector<std::string> exclude_globs;  // relative-path globs
  bool exclude_tests = false;              // also skip test/tests/__tests__ dirs
  // When set, only files of this language are collected.
  std::optional<Language> language_filter;
};

// Walks `root` and returns the matching source files (text not yet loaded),
// sorted lexicographically by relative path. node_modules/target/build/dist
// directories are always excluded. Throws ScanError{RootNotFound}.
std::vector<SourceFile> discover_files(const std::string& root, const DiscoverOptions& opts);

// Loads and sanitizes a file's text. Returns false (and a diagnostic) on
// I/O failure.
bool read_source(const std::string& root, SourceFile& file, Diagnostic& error);

// Glob matching used by the exclude option: `*` matches within a path
// segment, `**` across segments, `?` a single character.
bool glob_match(std::string_view glob, std::string_view path);

}  // namespace plens
