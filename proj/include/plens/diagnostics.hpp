#pragma once

#include <string>

namespace plens {

// A non-fatal analysis note. Skips render as `path:line:col: skip: <reason>`.
struct Diagnostic {
  std::string file;  // empty for whole-scan notes
  std::size_t line = 0;
  std::size_t col = 0;
  std::string kind = "skip";
  std::string reason;
};

std::string to_string(const Diagnostic& d);

}  // namespace plens
