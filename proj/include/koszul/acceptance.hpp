#pragma once
#include <cstdint>
#include <functional>

#include "koszul/io.hpp"

namespace koszul {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  json data;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

// criteria 1..11; the callback sees each result as it finishes
std::vector<CriterionResult> run_criteria(std::uint64_t seed, const CriterionCallback& cb = {});
// 1..11 twice plus the determinism comparison as criterion 12
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const CriterionCallback& cb = {});

json acceptance_json(const std::vector<CriterionResult>& results, std::uint64_t seed);
std::string criterion_line(const CriterionResult& r);

}  // namespace koszul
