#pragma once

// Parameter sweeps over blocklength and extendibility, emitted as CSV.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unext/bounds.hpp"

namespace unext::tools {

enum class SweepMode { PerK, BestK, CompareTbr };

std::string to_string(SweepMode mode);
SweepMode parse_sweep_mode(const std::string& text);
ChannelKind parse_channel(const std::string& text);
BoundMethod parse_method(const std::string& text);

/// Large k used as a stand-in for the k -> infinity comparator in per-k sweeps.
inline constexpr std::int64_t kTbrProxyK = 1000000;

struct SweepConfig {
  ChannelKind channel = ChannelKind::Depolarizing;
  double p = 0.15;
  double eps = 0.05;
  std::int64_t n_min = 1;
  std::int64_t n_max = 1;
  /// Empty means the mode default: 2..10, plus kTbrProxyK in per-k mode.
  std::vector<std::int64_t> k_list;
  std::size_t t_grid_size = 10000;
  /// Empty means standard output.
  std::string output;
  SweepMode mode = SweepMode::PerK;
  BoundMethod method = BoundMethod::HypothesisTesting;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
  std::vector<std::int64_t> effective_k_list() const;
};

/// Parses "2,3,5" and inclusive ranges "2..10" (mixed freely).
std::vector<std::int64_t> parse_k_list(const std::string& text);

struct SweepRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  BoundResult result;
  std::optional<double> tbr_rate;
};

/// Rows in ascending (n, k) order (one per n outside per-k mode) regardless of
/// how points were scheduled.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string csv_header(SweepMode mode);
std::string csv_row(const SweepRow& row, SweepMode mode);
void write_csv(const std::vector<SweepRow>& rows, SweepMode mode, std::ostream& out);

/// Compact, comma-free description of a witness, e.g. "t=0.75" or "C0=0.5;C2=0.5".
std::string witness_summary(const Witness& witness, std::int64_t n);

/// 12 significant digits, '.' decimal point, no grouping.
std::string format_number(double value);

}  // namespace unext::tools
