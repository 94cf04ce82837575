#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symdyn::verify {

inline constexpr int kCriterionCount = 13;

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;  // measured values at 12 significant digits
};

/// Runs one numbered check (1..kCriterionCount). Random inputs are drawn from
/// mt19937_64(seed + id), so results depend only on the seed.
CriterionResult run(int id, std::uint64_t seed = 1);
std::vector<CriterionResult> run_all(std::uint64_t seed = 1);

/// One "PASS"/"FAIL" line per result.
std::string render(const std::vector<CriterionResult>& results);

/// printf("%.12g").
std::string fmt(double v);

}  // namespace symdyn::verify
