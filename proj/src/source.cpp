#include "plens/source.hpp"

#include <algorithm>

namespace plens {

std::string to_string(Language lang) {
  return lang == Language::JsLike ? "js" : "java";
}

LineIndex::LineIndex(std::string_view text) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') line_starts_.push_back(i + 1);
  }
}

LineCol LineIndex::locate(std::size_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
  std::size_t start = line_starts_[line - 1];
  return LineCol{line, offset - start + 1};
}

std::optional<Language> language_for_path(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string_view ext = path.substr(dot);
  if (ext == ".js" || ext == ".jsx" || ext == ".ts" || ext == ".tsx") return Language::JsLike;
  if (ext == ".java") return Language::JavaLike;
  return std::nullopt;
}

namespace {

// Length of a well-formed UTF-8 sequence starting at p, or 0.
std::size_t utf8_sequence_length(const unsigned char* p, std::size_t avail) {
  unsigned char c = p[0];
  if (c < 0x80) return 1;
  std::size_t len = 0;
  if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
  else if ((c & 0xF0) == 0xE0) len = 3;
  else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
  else return 0;
  if (avail < len) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    if ((p[i] & 0xC0) != 0x80) return 0;
  }
  // Reject overlong/surrogate encodings that pass the shape check.
  if (len == 3 && c == 0xE0 && p[1] < 0xA0) return 0;
  if (len == 3 && c == 0xED && p[1] >= 0xA0) return 0;
  if (len == 4 && c == 0xF0 && p[1] < 0x90) return 0;
  if (len == 4 && c == 0xF4 && p[1] >= 0x90) return 0;
  return len;
}

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
  static const char kReplacement[] = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  std::size_t i = 0;
  while (i < bytes.size()) {
    std::size_t len = utf8_sequence_length(p + i, bytes.size() - i);
    if (len == 0) {
      out.append(kReplacement, 3);
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

}  // namespace plens
