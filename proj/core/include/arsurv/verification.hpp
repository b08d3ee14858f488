#pragma once

#include <string>
#include <vector>

namespace arsurv {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
};

struct SuiteOptions {
  bool quick = false;  // reduced path counts
  unsigned workers = 1;
};

// Acceptance criteria, in order: P1 P2 P3 P4 E1 C1 O1 F1 R1 G1.
const std::vector<std::string>& criterion_ids();

// Throws PreconditionError for an unknown id.
CriterionResult run_criterion(const std::string& id, const SuiteOptions& options);

// "full" runs every criterion; "quick" runs P1-P4 and E1 with reduced path
// counts. Throws PreconditionError for an unknown suite name.
std::vector<CriterionResult> run_suite(const std::string& suite, const SuiteOptions& options);

}  // namespace arsurv
