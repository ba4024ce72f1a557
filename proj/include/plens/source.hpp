#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plens {

enum class Language { JsLike, JavaLike };

std::string to_string(Language lang);

// Half-open byte range into a file's text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

struct SourceFile {
  std::string path;  // scan-root-relative, forward slashes
  Language language = Language::JsLike;
  std::string text;
};

struct LineCol {
  std::size_t line = 1;  // 1-based
  std::size_t col = 1;   // 1-based, byte column
};

// Byte offset -> line/column lookup table.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text);
  LineCol locate(std::size_t offset) const;

 private:
  std::vector<std::size_t> line_starts_;
};

// Language inferred from extension: .js/.jsx/.ts/.tsx -> JsLike, .java -> JavaLike.
std::optional<Language> language_for_path(std::string_view path);

// Replaces ill-formed UTF-8 sequences with U+FFFD so parsing sees valid text.
std::string sanitize_utf8(std::string_view bytes);

}  // namespace plens
