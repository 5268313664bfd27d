#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qseries/quaternion.hpp"

namespace qseries {

/// One checked property: pass iff max_residual <= tolerance. Residuals are
/// defined so that "smaller is better"; the note carries the worst sample
/// for reproduction when a check fails.
struct PropertyResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long samples = 0;
  bool pass = false;
  double seconds = 0.0;  // diagnostic only; kept out of the canonical report
  std::string worst_note;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> results;
  bool passed() const;
};

/// Property suites. `samples` scales the main sweep of each suite; 0 selects
/// the built-in default (noted per suite).
SuiteReport verify_metric(std::uint64_t seed, long samples = 0);       // 1e5 triples
SuiteReport verify_star_power(std::uint64_t seed, long samples = 0);   // 1e4 pairs
SuiteReport verify_binomial(std::uint64_t seed, long samples = 0);     // 1e3
SuiteReport verify_leibniz(std::uint64_t seed, long samples = 0);      // 100 pairs
SuiteReport verify_representation(std::uint64_t seed, long samples = 0);  // 1e3
SuiteReport verify_reexpand(std::uint64_t seed, long samples = 0);     // 50 centers
/// fd_step is the largest step of the h-halving ladder.
SuiteReport verify_dbar(std::uint64_t seed, long samples = 0,
                        double fd_step = 1e-4);

const std::vector<std::string>& suite_names();

/// Runs one named suite or, for "all", every suite in canonical order.
/// fd_step > 0 overrides the finite-difference step of the dbar suite.
/// Throws std::invalid_argument for unknown names.
std::vector<SuiteReport> run_suites(const std::string& which,
                                    std::uint64_t seed, long samples = 0,
                                    double fd_step = 0.0);

/// Canonical fixed-format report: identical inputs produce identical bytes.
std::string format_reports(const std::vector<SuiteReport>& reports,
                           std::uint64_t seed, long samples);

}  // namespace qseries
