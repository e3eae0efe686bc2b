#pragma once

// The acceptance check table: every published number and verdict the
// tool reproduces, keyed by a stable id, grouped into nine criteria and
// five report sections. The CLI `verify-paper` command and the
// acceptance test binary both run this table.

#include <string>
#include <vector>

#include "pclone/budget.hpp"

namespace pclone {

enum class CheckVerdict { kPass, kFail, kSkip };

const char* verdict_name(CheckVerdict v);

struct CheckInfo {
  std::string id;
  int criterion = 0;       // 1..9
  std::string section;     // "3", "4", "5", "6" or "appendix"
  std::string summary;
};

struct CheckResult {
  CheckInfo info;
  CheckVerdict verdict = CheckVerdict::kFail;
  std::string detail;
  double runtime_ms = 0.0;
};

const std::vector<CheckInfo>& check_catalog();
const std::vector<std::string>& check_sections();
std::string criterion_summary(int criterion);

// Runs every check whose section matches ("all" runs everything), in
// catalog order, sharing one result cache. A BudgetError marks a check
// skipped; any other error marks it failed with the message as detail.
std::vector<CheckResult> run_checks(const std::string& section,
                                    const Budget& budget = {});

}  // namespace pclone
