#pragma once

#include <map>
#include <regex>
#include <string>
#include <vector>

#include "plens/ir.hpp"

namespace plens {

// One personal-data category with its detection rules. Identifier patterns
// run against snake_case-normalized, lowercased identifiers; literal
// patterns run against string-literal contents.
struct PdCategory {
  std::string name;
  bool pii = false;
  bool reconstructed = false;
  std::vector<std::string> identifier_patterns;
  std::vector<std::string> literal_patterns;
  std::vector<std::regex> compiled_identifier;
  std::vector<std::regex> compiled_literal;
};

struct RuleSet {
  std::vector<PdCategory> categories;
  // Reserved hook; taint is never cleared, so configuring sanitizers only
  // produces a warning today.
  std::vector<std::string> sanitizers;
  std::vector<std::string> warnings;
};

// Loads and compiles a rule file. A leading `(?i)` in a pattern selects
// case-insensitive matching. Throws ScanError{Schema|BadRegex}.
RuleSet load_rules(const std::string& path);
RuleSet parse_rules_json(const std::string& json_text, const std::string& origin_name);
RuleSet default_rules();

// camelCase / PascalCase / SCREAMING_CASE -> lower snake_case.
std::string normalize_identifier(std::string_view identifier);

// The repaired human-name rule: (first|given|full|last|sur-not-geon)
// adjacent to "name", case-insensitive, allowing `_`, a camelCase
// boundary, or nothing in between.
bool name_rule_reference(std::string_view identifier);

enum class SourceKind { LiteralText, VariableIdentifier };

struct PersonalDataSource {
  std::string category;
  bool pii = false;
  SourceKind kind = SourceKind::VariableIdentifier;
  std::string file;
  Span span;
  std::string symbol;  // matched identifier, or literal excerpt
  std::string function_qualified;
};

// Pattern matcher with per-scan memoization (identifiers repeat heavily).
class RuleMatcher {
 public:
  explicit RuleMatcher(const std::vector<PdCategory>& categories);

  // Indices into categories() whose identifier/literal patterns match.
  const std::vector<std::size_t>& match_identifier(const std::string& identifier);
  const std::vector<std::size_t>& match_literal(const std::string& text);
  const std::vector<PdCategory>& categories() const { return categories_; }

 private:
  const std::vector<PdCategory>& categories_;
  std::map<std::string, std::vector<std::size_t>> identifier_cache_;
  std::map<std::string, std::vector<std::size_t>> literal_cache_;
};

// Scans one module for sources: parameters, VarDecl/Assign left-hand
// sides, identifier expressions, and string literals. Deduplicated per
// (symbol, function, category); ordered by span.
std::vector<PersonalDataSource> detect_sources(const IRModule& module, RuleMatcher& matcher);
std::vector<PersonalDataSource> detect_sources(const IRModule& module,
                                               const std::vector<PdCategory>& rules);

}  // namespace plens
