#include "plens/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "plens/defaults.hpp"
#include "plens/errors.hpp"

namespace plens {

using nlohmann::json;

std::string to_string(NativeDomain d) {
  switch (d) {
    case NativeDomain::IO: return "IO";
    case NativeDomain::Database: return "Database";
    case NativeDomain::Network: return "Network";
    case NativeDomain::Security: return "Security";
  }
  return "IO";
}

std::string to_string(ProcessingLabel l) {
  switch (l) {
    case ProcessingLabel::IAM: return "IAM";
    case ProcessingLabel::DEC: return "DEC";
    case ProcessingLabel::DSMD: return "DSMD";
    case ProcessingLabel::DPT: return "DPT";
    case ProcessingLabel::NC: return "NC";
    case ProcessingLabel::LM: return "LM";
  }
  return "DPT";
}

std::optional<NativeDomain> domain_from_string(const std::string& s) {
  if (s == "IO" || s == "io" || s == "I/O") return NativeDomain::IO;
  if (s == "Database" || s == "database") return NativeDomain::Database;
  if (s == "Network" || s == "network") return NativeDomain::Network;
  if (s == "Security" || s == "security") return NativeDomain::Security;
  return std::nullopt;
}

std::optional<ProcessingLabel> label_from_string(const std::string& s) {
  if (s == "IAM") return ProcessingLabel::IAM;
  if (s == "DEC") return ProcessingLabel::DEC;
  if (s == "DSMD") return ProcessingLabel::DSMD;
  if (s == "DPT") return ProcessingLabel::DPT;
  if (s == "NC") return ProcessingLabel::NC;
  if (s == "LM") return ProcessingLabel::LM;
  return std::nullopt;
}

std::string label_full_name(ProcessingLabel l) {
  switch (l) {
    case ProcessingLabel::IAM: return "Identity and Access Management";
    case ProcessingLabel::DEC: return "Data Encryption and Cryptography";
    case ProcessingLabel::DSMD: return "Data Storage, Management, and Deletion";
    case ProcessingLabel::DPT: return "Data Processing and Transformation";
    case ProcessingLabel::NC: return "Network Communication";
    case ProcessingLabel::LM: return "Logging and Monitoring";
  }
  return "";
}

const std::vector<std::string>& gdpr_refs(ProcessingLabel l) {
  static const std::map<ProcessingLabel, std::vector<std::string>> refs = {
      {ProcessingLabel::IAM, {"Art. 32"}},
      {ProcessingLabel::DEC, {"Art. 32"}},
      {ProcessingLabel::DSMD, {"Art. 5(1)(e)"}},
      {ProcessingLabel::DPT, {"Art. 30"}},
      {ProcessingLabel::NC, {"Art. 44"}},
      {ProcessingLabel::LM, {"Art. 5(1)(c)", "Art. 5(1)(e)"}},
  };
  return refs.at(l);
}

const std::set<ProcessingLabel>& domain_label_expansion(NativeDomain d) {
  static const std::map<NativeDomain, std::set<ProcessingLabel>> expansion = {
      {NativeDomain::IO, {ProcessingLabel::DPT, ProcessingLabel::LM, ProcessingLabel::DSMD}},
      {NativeDomain::Security, {ProcessingLabel::IAM, ProcessingLabel::DEC}},
      {NativeDomain::Database, {ProcessingLabel::DSMD, ProcessingLabel::DPT}},
      {NativeDomain::Network, {ProcessingLabel::NC}},
  };
  return expansion.at(d);
}

namespace {

std::vector<std::string> split_segments(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '.') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

struct PatternShape {
  bool leading_wildcard = false;
  bool trailing_wildcard = false;
  std::string fixed;  // pattern text minus the wildcard segment
};

// Validates the pattern; throws on malformed shapes.
PatternShape analyze_pattern(const std::string& pattern, const std::string& origin_name) {
  auto bad = [&](const std::string& why) {
    throw ScanError(ScanError::Kind::Schema,
                    origin_name + ": invalid pattern `" + pattern + "`: " + why);
  };
  if (pattern.empty()) bad("empty");
  auto segments = split_segments(pattern);
  PatternShape shape;
  int wildcards = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string& seg = segments[i];
    if (seg.empty()) bad("empty segment");
    if (seg == "*") {
      ++wildcards;
      if (i == 0) shape.leading_wildcard = true;
      else if (i + 1 == segments.size()) shape.trailing_wildcard = true;
      else bad("wildcard must be the first or last segment");
    } else if (seg.find('*') != std::string::npos) {
      bad("`*` must stand alone as a segment");
    }
  }
  if (wildcards > 1) bad("at most one wildcard segment");
  if (static_cast<std::size_t>(wildcards) == segments.size()) bad("pattern cannot be only a wildcard");
  if (shape.leading_wildcard) shape.fixed = pattern.substr(1);       // keep ".suffix"
  else if (shape.trailing_wildcard) shape.fixed = pattern.substr(0, pattern.size() - 1);  // "prefix."
  else shape.fixed = pattern;
  return shape;
}

bool pattern_matches(const std::string& pattern, const std::string& name) {
  if (pattern == name) return true;
  auto star = pattern.find('*');
  if (star == std::string::npos) return false;
  if (star == 0) {
    // `*.suffix`: name must end with ".suffix" and keep >= 1 extra segment
    std::string suffix = pattern.substr(1);  // ".a.b"
    return name.size() > suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  }
  // `prefix.*`: name must start with "prefix." and keep >= 1 extra segment
  std::string prefix = pattern.substr(0, pattern.size() - 1);  // "a.b."
  return name.size() > prefix.size() && name.compare(0, prefix.size(), prefix) == 0;
}

std::size_t pattern_specificity(const std::string& pattern) {
  std::size_t n = 0;
  for (char c : pattern) {
    if (c != '*') ++n;
  }
  return n;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void validate_entry(const CatalogEntry& e, const std::string& origin_name) {
  analyze_pattern(e.pattern, origin_name);
  if (e.labels.empty()) {
    throw ScanError(ScanError::Kind::Schema,
                    origin_name + ": entry `" + e.pattern + "` has no labels");
  }
  if (e.origin == EntryOrigin::Native) {
    if (!e.domain) {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": native entry `" + e.pattern + "` lacks a domain");
    }
    const auto& allowed = domain_label_expansion(*e.domain);
    for (auto l : e.labels) {
      if (!allowed.count(l)) {
        throw ScanError(ScanError::Kind::Schema,
                        origin_name + ": native entry `" + e.pattern + "` label " +
                            to_string(l) + " is outside domain " + to_string(*e.domain));
      }
    }
  } else if (e.domain) {
    throw ScanError(ScanError::Kind::Schema,
                    origin_name + ": api entry `" + e.pattern + "` must not carry a domain");
  }
}

}  // namespace

PrivacyCatalog::PrivacyCatalog(std::string version, std::vector<CatalogEntry> entries)
    : version_(std::move(version)), entries_(std::move(entries)) {}

const CatalogEntry* PrivacyCatalog::match(const std::string& qualified_name) const {
  const CatalogEntry* best = nullptr;
  std::size_t best_specificity = 0;
  bool best_exact = false;
  for (const auto& e : entries_) {
    if (!pattern_matches(e.pattern, qualified_name)) continue;
    bool exact = e.pattern == qualified_name;
    std::size_t spec = pattern_specificity(e.pattern);
    if (!best || (exact && !best_exact) ||
        (exact == best_exact && spec > best_specificity)) {
      best = &e;
      best_specificity = spec;
      best_exact = exact;
    }
  }
  return best;
}

std::vector<const CatalogEntry*> PrivacyCatalog::suffix_candidates(
    const std::string& receiver, const std::string& method) const {
  std::vector<const CatalogEntry*> out;
  std::string recv_lower = lower(receiver);
  for (const auto& e : entries_) {
    auto segments = split_segments(e.pattern);
    if (segments.size() < 2) continue;
    if (segments.back() == "*") continue;  // prefix wildcards carry no method name
    if (segments.back() != method) continue;
    const std::string& cls = segments[segments.size() - 2];
    if (cls == "*") continue;
    if (lower(cls) == recv_lower) out.push_back(&e);
  }
  return out;
}

std::size_t PrivacyCatalog::restrict_to_libraries(const std::vector<std::string>& library_names,
                                                  std::vector<Diagnostic>& diags) {
  std::set<std::string> allowed;
  for (const auto& n : library_names) allowed.insert(lower(n));
  std::vector<CatalogEntry> kept;
  std::size_t dropped = 0;
  for (auto& e : entries_) {
    if (e.origin == EntryOrigin::Api && !allowed.count(lower(e.library))) {
      diags.push_back(Diagnostic{"", 0, 0, "note",
                                 "catalog entry `" + e.pattern + "` dropped: library `" +
                                     e.library + "` is not configured"});
      ++dropped;
      continue;
    }
    kept.push_back(std::move(e));
  }
  entries_ = std::move(kept);
  return dropped;
}

PrivacyCatalog parse_catalog_json(const std::string& json_text, const std::string& origin_name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScanError(ScanError::Kind::Schema, origin_name + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw ScanError(ScanError::Kind::Schema, origin_name + ": expected { version, entries: [...] }");
  }
  std::string version = doc.value("version", "0");
  std::vector<CatalogEntry> entries;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& j : doc["entries"]) {
    if (!j.is_object() || !j.contains("pattern") || !j.contains("origin") ||
        !j.contains("labels")) {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": entry needs pattern/origin/labels");
    }
    CatalogEntry e;
    e.pattern = j["pattern"].get<std::string>();
    e.library = j.value("library", "");
    std::string origin = j["origin"].get<std::string>();
    if (origin == "native") e.origin = EntryOrigin::Native;
    else if (origin == "api") e.origin = EntryOrigin::Api;
    else {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": entry `" + e.pattern + "` origin must be native|api");
    }
    if (j.contains("domain") && !j["domain"].is_null()) {
      auto d = domain_from_string(j["domain"].get<std::string>());
      if (!d) {
        throw ScanError(ScanError::Kind::Schema,
                        origin_name + ": entry `" + e.pattern + "` has unknown domain");
      }
      e.domain = d;
    }
    for (const auto& lj : j["labels"]) {
      auto l = label_from_string(lj.get<std::string>());
      if (!l) {
        throw ScanError(ScanError::Kind::Schema,
                        origin_name + ": entry `" + e.pattern + "` has unknown label " +
                            lj.dump());
      }
      e.labels.insert(*l);
    }
    validate_entry(e, origin_name);
    auto key = std::make_pair(e.pattern, static_cast<int>(e.origin));
    if (!seen.insert(key).second) {
      throw ScanError(ScanError::Kind::DuplicateEntry,
                      origin_name + ": duplicate entry `" + e.pattern + "`");
    }
    entries.push_back(std::move(e));
  }
  return PrivacyCatalog(version, std::move(entries));
}

PrivacyCatalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScanError(ScanError::Kind::UnreadableFile, "cannot open catalog: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog_json(buf.str(), path);
}

PrivacyCatalog default_catalog() {
  return parse_catalog_json(defaults::catalog_json(), "<default catalog>");
}

const CatalogEntry* match_method(const PrivacyCatalog& catalog, const MethodRef& method) {
  return catalog.match(method.qualified_name);
}

std::vector<LibraryInfo> parse_libraries_json(const std::string& json_text,
                                              const std::string& origin_name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScanError(ScanError::Kind::Schema, origin_name + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw ScanError(ScanError::Kind::Schema, origin_name + ": expected a JSON array");
  }
  std::vector<LibraryInfo> out;
  for (const auto& j : doc) {
    if (!j.is_object() || !j.contains("name") || !j.contains("language") ||
        !j.contains("category")) {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": library rows need name/language/category");
    }
    LibraryInfo info;
    info.name = j["name"].get<std::string>();
    std::string lang = j["language"].get<std::string>();
    if (lang == "java") info.language = Language::JavaLike;
    else if (lang == "js") info.language = Language::JsLike;
    else {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": library `" + info.name + "` language must be java|js");
    }
    auto cat = label_from_string(j["category"].get<std::string>());
    if (!cat) {
      throw ScanError(ScanError::Kind::Schema,
                      origin_name + ": library `" + info.name + "` has unknown category");
    }
    info.category = *cat;
    out.push_back(std::move(info));
  }
  return out;
}

std::vector<LibraryInfo> load_libraries(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScanError(ScanError::Kind::UnreadableFile, "cannot open library list: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libraries_json(buf.str(), path);
}

std::vector<LibraryInfo> default_libraries() {
  return parse_libraries_json(defaults::libraries_json(), "<default libraries>");
}

bool library_configured(const std::vector<LibraryInfo>& libs, const std::string& name) {
  std::string n = lower(name);
  for (const auto& l : libs) {
    if (lower(l.name) == n) return true;
  }
  return false;
}

}  // namespace plens
