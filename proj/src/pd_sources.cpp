#include "plens/pd_sources.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "plens/defaults.hpp"
#include "plens/errors.hpp"

namespace plens {

using nlohmann::json;

std::string normalize_identifier(std::string_view identifier) {
  std::string out;
  out.reserve(identifier.size() + 4);
  for (std::size_t i = 0; i < identifier.size(); ++i) {
    unsigned char c = identifier[i];
    if (std::isupper(c)) {
      bool prev_lower_or_digit =
          i > 0 && (std::islower(static_cast<unsigned char>(identifier[i - 1])) ||
                    std::isdigit(static_cast<unsigned char>(identifier[i - 1])));
      bool acronym_end = i > 0 && i + 1 < identifier.size() &&
                         std::isupper(static_cast<unsigned char>(identifier[i - 1])) &&
                         std::islower(static_cast<unsigned char>(identifier[i + 1]));
      if ((prev_lower_or_digit || acronym_end) && !out.empty() && out.back() != '_') {
        out.push_back('_');
      }
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

namespace {

std::regex compile_pattern(const std::string& pattern, const std::string& category,
                           const std::string& origin_name) {
  std::string body = pattern;
  auto flags = std::regex::ECMAScript;
  if (body.rfind("(?i)", 0) == 0) {
    body = body.substr(4);
    flags |= std::regex::icase;
  }
  try {
    return std::regex(body, flags);
  } catch (const std::regex_error& e) {
    throw ScanError(ScanError::Kind::BadRegex, origin_name + ": category `" + category +
                                                   "` pattern `" + pattern +
                                                   "` failed to compile: " + e.what());
  }
}

}  // namespace

RuleSet parse_rules_json(const std::string& json_text, const std::string& origin_name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScanError(ScanError::Kind::Schema, origin_name + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array()) {
    throw ScanError(ScanError::Kind::Schema, origin_name + ": expected { categories: [...] }");
  }
  RuleSet out;
  std::set<std::string> names;
  for (const auto& j : doc["categories"]) {
    if (!j.is_object() || !j.contains("name") || !j.contains("pii")) {
      throw ScanError(ScanError::Kind::Schema, origin_name + ": category needs name and pii");
    }
    PdCategory cat;
    cat.name = j["name"].get<std::string>();
    cat.pii = j["pii"].get<bool>();
    cat.reconstructed = j.value("reconstructed", false);
    if (!names.insert(cat.name).second) {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": duplicate category `" + cat.name + "`");
    }
    for (const auto& p : j.value("identifier_patterns", json::array())) {
      cat.identifier_patterns.push_back(p.get<std::string>());
    }
    for (const auto& p : j.value("literal_patterns", json::array())) {
      cat.literal_patterns.push_back(p.get<std::string>());
    }
    if (cat.identifier_patterns.empty() && cat.literal_patterns.empty()) {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": category `" + cat.name + "` has no patterns");
    }
    for (const auto& p : cat.identifier_patterns) {
      cat.compiled_identifier.push_back(compile_pattern(p, cat.name, origin_name));
    }
    for (const auto& p : cat.literal_patterns) {
      cat.compiled_literal.push_back(compile_pattern(p, cat.name, origin_name));
    }
    out.categories.push_back(std::move(cat));
  }
  if (doc.contains("sanitizers")) {
    if (!doc["sanitizers"].is_array()) {
      throw ScanError(ScanError::Kind::Schema, origin_name + ": sanitizers must be an array");
    }
    for (const auto& s : doc["sanitizers"]) {
      out.sanitizers.push_back(s.get<std::string>());
    }
    if (!out.sanitizers.empty()) {
      out.warnings.push_back(origin_name +
                             ": sanitizers are configured but taint is never cleared; "
                             "the hook is reserved");
    }
  }
  if (out.categories.size() != 10) {
    std::ostringstream os;
    os << origin_name << ": expected 10 categories, found " << out.categories.size()
       << " (accepted; category count is data, not schema)";
    out.warnings.push_back(os.str());
  }
  return out;
}

RuleSet load_rules(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScanError(ScanError::Kind::UnreadableFile, "cannot open rule file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rules_json(buf.str(), path);
}

RuleSet default_rules() {
  return parse_rules_json(defaults::rules_json(), "<default rules>");
}

bool name_rule_reference(std::string_view identifier) {
  static const std::regex rule("(?:^|_|\\b)(?:first|given|full|last|sur(?!geon))[_]?name",
                               std::regex::ECMAScript | std::regex::icase);
  std::string normalized = normalize_identifier(identifier);
  return std::regex_search(normalized, rule);
}

RuleMatcher::RuleMatcher(const std::vector<PdCategory>& categories) : categories_(categories) {}

const std::vector<std::size_t>& RuleMatcher::match_identifier(const std::string& identifier) {
  auto it = identifier_cache_.find(identifier);
  if (it != identifier_cache_.end()) return it->second;
  std::string normalized = normalize_identifier(identifier);
  std::vector<std::size_t> matches;
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    for (const auto& re : categories_[i].compiled_identifier) {
      if (std::regex_search(normalized, re)) {
        matches.push_back(i);
        break;
      }
    }
  }
  return identifier_cache_.emplace(identifier, std::move(matches)).first->second;
}

const std::vector<std::size_t>& RuleMatcher::match_literal(const std::string& text) {
  auto it = literal_cache_.find(text);
  if (it != literal_cache_.end()) return it->second;
  std::vector<std::size_t> matches;
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    for (const auto& re : categories_[i].compiled_literal) {
      if (std::regex_search(text, re)) {
        matches.push_back(i);
        break;
      }
    }
  }
  return literal_cache_.emplace(text, std::move(matches)).first->second;
}

namespace {

bool synthetic_name(const std::string& name) {
  return !name.empty() && name[0] == '<';
}

struct Collector {
  RuleMatcher& matcher;
  const IRModule& module;
  const IRFunction& fn;
  std::vector<PersonalDataSource>& out;

  void identifier(const std::string& name, Span span) {
    if (synthetic_name(name)) return;
    for (std::size_t idx : matcher.match_identifier(name)) {
      const PdCategory& cat = matcher.categories()[idx];
      out.push_back(PersonalDataSource{cat.name, cat.pii, SourceKind::VariableIdentifier,
                                       module.file.path, span, name,
                                       fn.id.qualified_name});
    }
  }

  void literal(const std::string& text, Span span) {
    for (std::size_t idx : matcher.match_literal(text)) {
      const PdCategory& cat = matcher.categories()[idx];
      out.push_back(PersonalDataSource{cat.name, cat.pii, SourceKind::LiteralText,
                                       module.file.path, span, text,
                                       fn.id.qualified_name});
    }
  }

  void walk(const IRExpr& e) {
    switch (e.kind) {
      case IRExpr::Kind::Identifier:
        identifier(e.name, e.span);
        return;
      case IRExpr::Kind::Literal:
        if (e.literal_kind == LiteralKind::String) literal(e.name, e.span);
        return;
      case IRExpr::Kind::Member:
        if (e.base) walk(*e.base);
        return;
      case IRExpr::Kind::Call:
        if (e.base) walk(*e.base);
        for (const auto& a : e.args) walk(*a);
        return;
    }
  }
};

}  // namespace

std::vector<PersonalDataSource> detect_sources(const IRModule& module, RuleMatcher& matcher) {
  std::vector<PersonalDataSource> raw;
  for (const auto& fn : module.functions) {
    Collector c{matcher, module, fn, raw};
    for (const auto& p : fn.params) c.identifier(p.name, p.span);
    for (const auto& st : fn.body) {
      if ((st.kind == IRStatement::Kind::VarDecl || st.kind == IRStatement::Kind::Assign) &&
          !st.lhs.empty()) {
        c.identifier(st.lhs, st.span);
      }
      if (st.value) c.walk(*st.value);
    }
  }
  // Deduplicate per (symbol, function, category), keeping the earliest span.
  std::stable_sort(raw.begin(), raw.end(),
                   [](const PersonalDataSource& a, const PersonalDataSource& b) {
                     return a.span.begin < b.span.begin;
                   });
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::vector<PersonalDataSource> out;
  for (auto& s : raw) {
    if (seen.insert({s.symbol, s.function_qualified, s.category}).second) {
      out.push_back(std::move(s));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PersonalDataSource& a, const PersonalDataSource& b) {
                     if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
                     return a.category < b.category;
                   });
  return out;
}

std::vector<PersonalDataSource> detect_sources(const IRModule& module,
                                               const std::vector<PdCategory>& rules) {
  RuleMatcher matcher(rules);
  return detect_sources(module, matcher);
}

}  // namespace plens
