#pragma once

#include <span>
#include <string>
#include <vector>

namespace mwi::acceptance {

enum class Level { kQuick, kFull };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

constexpr int kCriterionCount = 9;

// Runs one criterion (1..9). Quick level shrinks instance counts and sizes;
// full level uses the stated sizes and runtime limits.
CriterionResult run_criterion(int id, Level level);

// "[PASS] 3 blow-up slopes (1.2 s): ..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace mwi::acceptance
