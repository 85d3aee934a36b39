#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dlat {

struct CriterionReport {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  double ms = 0;
};

enum class SuiteScope { All, Fast };
std::optional<SuiteScope> parse_scope(const std::string& s);

// The fifteen acceptance criteria, in order.
std::vector<CriterionReport> run_acceptance(unsigned threads = 0);
// Every registered identity on small structures (at most 500 poset elements).
std::vector<CriterionReport> run_fast_suite(unsigned threads = 0);
std::vector<CriterionReport> run_suite(SuiteScope scope, unsigned threads = 0);

nlohmann::json criterion_to_json(const CriterionReport& r);

}  // namespace dlat
