#pragma once

// The end-to-end acceptance criteria, shared by the acceptance test binary
// and `semitall-rank selftest`.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace semitall {

struct AcceptanceConfig {
  std::uint64_t seed = 1;
  int jobs = 1;
  // Replaces the numerical thresholds used by the criteria (rank, reality,
  // span). Only meant for sensitivity runs.
  std::optional<double> tol_override;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

int acceptance_criterion_count();

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);

// Runs every criterion, printing one line per criterion to `log` if given.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, std::ostream* log = nullptr);

std::string format_result_line(const CriterionResult& r);

}  // namespace semitall
