#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plens/diagnostics.hpp"
#include "plens/ir.hpp"
#include "plens/source.hpp"

namespace plens {

// The four domains native privacy-relevant methods fall into.
enum class NativeDomain { IO, Database, Network, Security };

// The six processing labels, each aligned with GDPR articles.
enum class ProcessingLabel { IAM, DEC, DSMD, DPT, NC, LM };

std::string to_string(NativeDomain d);
std::string to_string(ProcessingLabel l);
std::optional<NativeDomain> domain_from_string(const std::string& s);
std::optional<ProcessingLabel> label_from_string(const std::string& s);

// Long-form name, e.g. "Network Communication".
std::string label_full_name(ProcessingLabel l);

// GDPR article references carried by each label.
const std::vector<std::string>& gdpr_refs(ProcessingLabel l);

// Which labels a native domain may expand into. User catalogs violating
// this mapping are rejected at load.
const std::set<ProcessingLabel>& domain_label_expansion(NativeDomain d);

enum class EntryOrigin { Native, Api };

struct CatalogEntry {
  // Dotted qualified-name pattern. `*` is allowed as the whole first
  // segment (suffix match) or the whole last segment (prefix match).
  std::string pattern;
  std::string library;
  EntryOrigin origin = EntryOrigin::Native;
  std::optional<NativeDomain> domain;  // Native entries only
  std::set<ProcessingLabel> labels;
};

class PrivacyCatalog {
 public:
  PrivacyCatalog() = default;
  PrivacyCatalog(std::string version, std::vector<CatalogEntry> entries);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const std::string& version() const { return version_; }
  std::size_t size() const { return entries_.size(); }

  // Most-specific matching entry (longest non-wildcard text wins; exact
  // beats wildcard; ties broken by pattern order for determinism).
  const CatalogEntry* match(const std::string& qualified_name) const;

  // Entries whose pattern ends in `.Class.method` where `Class` equals the
  // receiver case-insensitively and `method` matches exactly. Used by the
  // call-graph suffix heuristic.
  std::vector<const CatalogEntry*> suffix_candidates(const std::string& receiver,
                                                     const std::string& method) const;

  // Drops api-origin entries whose library is not configured; one
  // diagnostic per dropped entry.
  std::size_t restrict_to_libraries(const std::vector<std::string>& library_names,
                                    std::vector<Diagnostic>& diags);

 private:
  std::string version_;
  std::vector<CatalogEntry> entries_;
};

// Loads and validates a catalog file (schema in the README). Throws
// ScanError{Schema|DuplicateEntry}.
PrivacyCatalog load_catalog(const std::string& path);
PrivacyCatalog parse_catalog_json(const std::string& json_text, const std::string& origin_name);

// The embedded default catalog.
PrivacyCatalog default_catalog();

const CatalogEntry* match_method(const PrivacyCatalog& catalog, const MethodRef& method);

struct LibraryInfo {
  std::string name;
  Language language = Language::JsLike;
  ProcessingLabel category = ProcessingLabel::DPT;
};

std::vector<LibraryInfo> load_libraries(const std::string& path);
std::vector<LibraryInfo> parse_libraries_json(const std::string& json_text,
                                              const std::string& origin_name);
std::vector<LibraryInfo> default_libraries();

// Case-insensitive membership test used for "defined in a configured
// library" checks.
bool library_configured(const std::vector<LibraryInfo>& libs, const std::string& name);

}  // namespace plens
