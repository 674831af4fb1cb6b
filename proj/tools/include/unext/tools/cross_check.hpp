#pragma once

// Self-check runs: closed-form anchors (quick) plus randomized oracle
// comparisons (full). Used by `unext check`.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "unext/bounds.hpp"

namespace unext::tools {

enum class CheckDepth { Quick, Full };

CheckDepth parse_check_depth(const std::string& text);

struct CheckOutcome {
  std::string module;
  std::string property;
  std::string inputs;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::vector<CheckOutcome> outcomes;
  /// Largest |NP - LP| deviation seen by the full suite; negative if not run.
  double max_np_lp_deviation = -1.0;

  bool passed() const;
  std::size_t failures() const;
};

/// Injection points so tests can verify that a broken component is caught.
struct CheckHooks {
  std::function<Matrix(std::int64_t, std::int64_t)> erasure_matrix = erasure_string_matrix;
};

CheckReport cross_check(CheckDepth depth, const CheckHooks& hooks = {});

/// One line per outcome plus a summary line.
void print_report(const CheckReport& report, std::ostream& out);

}  // namespace unext::tools
