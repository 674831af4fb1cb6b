#include "unext/tools/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "unext/parallel.hpp"

namespace unext::tools {

std::string to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::PerK:
      return "per_k";
    case SweepMode::BestK:
      return "best_k";
    case SweepMode::CompareTbr:
      return "compare_tbr";
  }
  return "unknown";
}

SweepMode parse_sweep_mode(const std::string& text) {
  if (text == "per_k") return SweepMode::PerK;
  if (text == "best_k") return SweepMode::BestK;
  if (text == "compare_tbr") return SweepMode::CompareTbr;
  throw std::invalid_argument("unknown mode '" + text + "' (per_k, best_k, compare_tbr)");
}

ChannelKind parse_channel(const std::string& text) {
  if (text == "depolarizing" || text == "depol") return ChannelKind::Depolarizing;
  if (text == "erasure") return ChannelKind::Erasure;
  throw std::invalid_argument("unknown channel '" + text + "' (depolarizing, erasure)");
}

BoundMethod parse_method(const std::string& text) {
  if (text == "hypothesis") return BoundMethod::HypothesisTesting;
  if (text == "adaptive") return BoundMethod::Adaptive;
  throw std::invalid_argument("unknown method '" + text + "' (hypothesis, adaptive)");
}

std::vector<std::int64_t> parse_k_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [](const std::string& s) {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "' in k_list");
    return static_cast<std::int64_t>(v);
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const std::int64_t lo = to_int(item.substr(0, dots));
    const std::int64_t hi = to_int(item.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty range '" + item + "' in k_list");
    for (std::int64_t k = lo; k <= hi; ++k) out.push_back(k);
  }
  if (out.empty()) throw std::invalid_argument("k_list is empty");
  return out;
}

void SweepConfig::validate() const {
  if (std::isnan(p) || p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  if (std::isnan(eps) || eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0, 1)");
  if (n_min < 1) throw std::invalid_argument("n_min must be >= 1");
  if (n_min > n_max) throw std::invalid_argument("n_min must not exceed n_max");
  if (t_grid_size < 2) throw std::invalid_argument("t_grid_size must be >= 2");
  for (std::int64_t k : k_list) {
    if (k < 2) throw std::invalid_argument("every k in k_list must be >= 2");
  }
  if (method == BoundMethod::Adaptive && channel != ChannelKind::Depolarizing) {
    throw std::invalid_argument("the adaptive bound is implemented for the depolarizing channel only");
  }
}

std::vector<std::int64_t> SweepConfig::effective_k_list() const {
  std::vector<std::int64_t> ks = k_list;
  if (ks.empty()) {
    for (std::int64_t k = 2; k <= 10; ++k) ks.push_back(k);
    if (mode == SweepMode::PerK) ks.push_back(kTbrProxyK);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const auto ks = config.effective_k_list();
  const OptimizerOptions opts{config.t_grid_size};
  const auto num_n = static_cast<std::size_t>(config.n_max - config.n_min + 1);
  const std::size_t num_k = ks.size();

  auto params_for = [&](std::size_t ni, std::int64_t k) {
    return ChannelParams::make(config.channel, config.p, config.n_min + static_cast<std::int64_t>(ni),
                               config.eps, k);
  };

  const auto per_point = parallel_map(num_n * num_k, [&](std::size_t idx) {
    return evaluate_bound(params_for(idx / num_k, ks[idx % num_k]), config.method, opts);
  });

  std::vector<SweepRow> rows;
  if (config.mode == SweepMode::PerK) {
    rows.reserve(per_point.size());
    for (std::size_t idx = 0; idx < per_point.size(); ++idx) {
      const std::size_t ni = idx / num_k;
      rows.push_back({config.n_min + static_cast<std::int64_t>(ni), ks[idx % num_k], per_point[idx], {}});
    }
    return rows;
  }

  std::vector<std::optional<double>> tbr(num_n);
  if (config.mode == SweepMode::CompareTbr) {
    const auto limits = parallel_map(num_n, [&](std::size_t ni) {
      return tbr_limit_bound(params_for(ni, 2), opts);
    });
    for (std::size_t ni = 0; ni < num_n; ++ni) {
      if (limits[ni].valid()) tbr[ni] = limits[ni].rate_per_use;
    }
  }

  rows.reserve(num_n);
  for (std::size_t ni = 0; ni < num_n; ++ni) {
    // Same selection rule as best_over_k: smallest valid total, ties to the smaller k.
    const BoundResult* best = &per_point[ni * num_k];
    bool have_valid = false;
    for (std::size_t ki = 0; ki < num_k; ++ki) {
      const BoundResult& r = per_point[ni * num_k + ki];
      if (!r.valid()) continue;
      if (!have_valid || r.log2M_total < best->log2M_total) {
        best = &r;
        have_valid = true;
      }
    }
    SweepRow row{config.n_min + static_cast<std::int64_t>(ni), best->k_used, *best, tbr[ni]};
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string witness_summary(const Witness& witness, std::int64_t n) {
  switch (witness.kind) {
    case WitnessKind::None:
      return "";
    case WitnessKind::IsotropicWeight:
      return "t=" + format_number(witness.values.at(0));
    case WitnessKind::SeparableMixture:
      return "s=" + format_number(witness.values.at(0));
    case WitnessKind::ErasureCoefficients: {
      const auto row = log_binomial_row(static_cast<std::uint64_t>(n));
      std::string out;
      for (std::size_t j = 0; j < witness.values.size() && j < row.size(); ++j) {
        const double mass = witness.values[j] * std::exp2(row[j]);
        if (mass <= 1e-12) continue;
        if (!out.empty()) out += ';';
        out += "C" + std::to_string(j) + "=" + format_number(mass);
      }
      return out;
    }
  }
  return "";
}

std::string csv_header(SweepMode mode) {
  std::string h = "n,k,status,log2M_total,rate_per_use,divergence_E,witness_summary";
  if (mode == SweepMode::CompareTbr) h += ",tbr_rate";
  return h;
}

std::string csv_row(const SweepRow& row, SweepMode mode) {
  const BoundResult& r = row.result;
  const bool valid = r.valid();
  std::string line = std::to_string(row.n) + ",";
  // A best-k row without any valid k has no meaningful k.
  if (mode == SweepMode::PerK || valid) line += std::to_string(row.k);
  line += ",";
  line += to_string(r.status);
  line += ",";
  if (valid) {
    line += format_number(r.log2M_total) + "," + format_number(r.rate_per_use) + "," +
            format_number(r.divergence_E);
  } else {
    line += ",,";
  }
  line += "," + witness_summary(r.witness, row.n);
  if (mode == SweepMode::CompareTbr) {
    line += ",";
    if (row.tbr_rate) line += format_number(*row.tbr_rate);
  }
  return line;
}

void write_csv(const std::vector<SweepRow>& rows, SweepMode mode, std::ostream& out) {
  out << csv_header(mode) << '\n';
  for (const auto& row : rows) out << csv_row(row, mode) << '\n';
}

}  // namespace unext::tools
