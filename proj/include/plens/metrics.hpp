#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plens/api_closure.hpp"
#include "plens/catalog.hpp"
#include "plens/taint.hpp"

namespace plens {

// Usage statistics for one privacy-relevant callee.
struct MethodStats {
  std::string method;  // qualified callee name
  std::string library;
  std::set<ProcessingLabel> labels;
  std::size_t occurrence = 0;      // distinct (caller, call-site) pairs with >= 1 flow
  std::size_t pii_occurrence = 0;  // those with >= 1 PII flow
  double pii_frequency = 0.0;      // pii_occurrence / occurrence
};

struct CategoryStats {
  ProcessingLabel label = ProcessingLabel::DPT;
  std::size_t occurrence = 0;   // sum of member-method occurrences
  double pii_frequency = 0.0;   // fraction of member methods with >= 1 PII flow
  std::size_t member_methods = 0;
  std::size_t pii_methods = 0;
};

struct ProportionResult {
  std::size_t am_count = 0;
  std::size_t total_methods = 0;
  double percent = 0.0;      // round-half-up to one decimal
  double pii_percent = 0.0;
};

// One entry per distinct privacy-relevant callee with at least one flow.
std::vector<MethodStats> method_stats(std::span<const TaintFlow> flows,
                                      const PrivacySets& sets);

// A method with k labels contributes its occurrence to all k categories.
std::vector<CategoryStats> category_stats(std::span<const MethodStats> stats);

// percent = round1(100 * am / total), half-up; throws ScanError{ZeroTotal}
// when total is zero.
ProportionResult proportion(std::size_t am_count, std::size_t total, std::size_t pii_am);

// Half-up rounding of 100*num/den to one decimal, exact in integer space.
double round1_percent(std::size_t numerator, std::size_t denominator);

// Occurrence descending, then pii_occurrence descending, then name.
std::vector<MethodStats> rank(std::vector<MethodStats> stats);
// Occurrence descending, then pii_frequency descending, then label name.
std::vector<CategoryStats> rank(std::vector<CategoryStats> stats);

// Mean of per-scan percentages, rounded half-up to one decimal.
double corpus_average(std::span<const ProportionResult> results);

}  // namespace plens
