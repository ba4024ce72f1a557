#include "plens/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "plens/errors.hpp"

namespace plens {

double round1_percent(std::size_t numerator, std::size_t denominator) {
  // p10 = floor(1000*n/d + 1/2), computed without floating point.
  unsigned long long n = numerator, d = denominator;
  unsigned long long p10 = (2000ULL * n + d) / (2ULL * d);
  return static_cast<double>(p10) / 10.0;
}

std::vector<MethodStats> method_stats(std::span<const TaintFlow> flows,
                                      const PrivacySets& sets) {
  // callee -> distinct sites, and sites with a PII flow
  std::map<std::string, std::set<std::pair<std::string, std::size_t>>> sites;
  std::map<std::string, std::set<std::pair<std::string, std::size_t>>> pii_sites;
  std::map<std::string, std::string> library_of;
  for (const auto& f : flows) {
    const std::string& callee = f.sink.callee.qualified_name;
    auto site = std::make_pair(f.sink.caller.qualified_name, f.sink.site.begin);
    sites[callee].insert(site);
    if (f.pii) pii_sites[callee].insert(site);
    library_of.emplace(callee, f.sink.callee.module);
  }
  std::vector<MethodStats> out;
  for (const auto& [callee, s] : sites) {
    MethodStats ms;
    ms.method = callee;
    ms.library = library_of[callee];
    auto labels = sets.labels_of.find(callee);
    if (labels != sets.labels_of.end()) ms.labels = labels->second;
    ms.occurrence = s.size();
    auto p = pii_sites.find(callee);
    ms.pii_occurrence = p == pii_sites.end() ? 0 : p->second.size();
    ms.pii_frequency = ms.occurrence == 0
                           ? 0.0
                           : static_cast<double>(ms.pii_occurrence) /
                                 static_cast<double>(ms.occurrence);
    out.push_back(std::move(ms));
  }
  return out;
}

std::vector<CategoryStats> category_stats(std::span<const MethodStats> stats) {
  std::map<ProcessingLabel, CategoryStats> by_label;
  for (const auto& ms : stats) {
    for (auto label : ms.labels) {
      CategoryStats& cs = by_label[label];
      cs.label = label;
      cs.occurrence += ms.occurrence;
      cs.member_methods += 1;
      if (ms.pii_occurrence > 0) cs.pii_methods += 1;
    }
  }
  std::vector<CategoryStats> out;
  for (auto& [label, cs] : by_label) {
    cs.pii_frequency = cs.member_methods == 0
                           ? 0.0
                           : static_cast<double>(cs.pii_methods) /
                                 static_cast<double>(cs.member_methods);
    out.push_back(cs);
  }
  return out;
}

ProportionResult proportion(std::size_t am_count, std::size_t total, std::size_t pii_am) {
  if (total == 0) {
    throw ScanError(ScanError::Kind::ZeroTotal, "proportion over zero methods");
  }
  ProportionResult r;
  r.am_count = am_count;
  r.total_methods = total;
  r.percent = round1_percent(am_count, total);
  r.pii_percent = round1_percent(pii_am, total);
  return r;
}

std::vector<MethodStats> rank(std::vector<MethodStats> stats) {
  std::sort(stats.begin(), stats.end(), [](const MethodStats& a, const MethodStats& b) {
    if (a.occurrence != b.occurrence) return a.occurrence > b.occurrence;
    if (a.pii_occurrence != b.pii_occurrence) return a.pii_occurrence > b.pii_occurrence;
    return a.method < b.method;
  });
  return stats;
}

std::vector<CategoryStats> rank(std::vector<CategoryStats> stats) {
  std::sort(stats.begin(), stats.end(), [](const CategoryStats& a, const CategoryStats& b) {
    if (a.occurrence != b.occurrence) return a.occurrence > b.occurrence;
    if (a.pii_frequency != b.pii_frequency) return a.pii_frequency > b.pii_frequency;
    return to_string(a.label) < to_string(b.label);
  });
  return stats;
}

double corpus_average(std::span<const ProportionResult> results) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : results) sum += r.percent;
  double mean = sum / static_cast<double>(results.size());
  return std::floor(mean * 10.0 + 0.5) / 10.0;
}

}  // namespace plens
