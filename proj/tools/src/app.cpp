#include "unext/tools/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unext/bounds.hpp"
#include "unext/statefam.hpp"
#include "unext/tools/config.hpp"
#include "unext/tools/cross_check.hpp"
#include "unext/tools/sweep.hpp"

namespace unext::tools {

namespace {

struct PointArgs {
  double p = 0.15;
  std::int64_t n = 1;
  double eps = 0.05;
  std::int64_t k = 2;
  std::size_t t_grid_size = 10000;
};

void add_point_options(CLI::App* sub, PointArgs& args) {
  sub->add_option("--p", args.p, "channel parameter")->capture_default_str();
  sub->add_option("--n", args.n, "blocklength")->capture_default_str();
  sub->add_option("--eps", args.eps, "error tolerance")->capture_default_str();
  sub->add_option("--k", args.k, "extendibility")->capture_default_str();
  sub->add_option("--t_grid_size", args.t_grid_size, "grid points before refinement")->capture_default_str();
}

void print_point(const BoundResult& r, std::int64_t n, std::int64_t k, std::ostream& out) {
  write_csv({SweepRow{n, k, r, {}}}, SweepMode::PerK, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate bounds from k-unextendibility for depolarizing and erasure channels", "unext"};
  app.require_subcommand(1);

  // thresholds
  std::string family_name = "isotropic";
  int dim = 2;
  std::int64_t thr_k = 2;
  std::optional<double> param;
  auto* thresholds = app.add_subcommand("thresholds", "extendibility threshold and unextendible divergences");
  thresholds->add_option("--family", family_name, "isotropic or werner")
      ->check(CLI::IsMember({"isotropic", "werner"}))
      ->capture_default_str();
  thresholds->add_option("--d", dim, "local dimension")->capture_default_str();
  thresholds->add_option("--k", thr_k, "extendibility")->capture_default_str();
  thresholds->add_option("--param", param, "family parameter (t or p)");

  PointArgs depol_args, erasure_args, adaptive_args;
  depol_args.p = 0.15;
  erasure_args.p = 0.35;
  adaptive_args.p = 0.15;
  auto* depol = app.add_subcommand("depol", "hypothesis-testing bound, depolarizing channel");
  add_point_options(depol, depol_args);
  auto* erasure = app.add_subcommand("erasure", "hypothesis-testing bound, erasure channel");
  add_point_options(erasure, erasure_args);
  auto* adaptive = app.add_subcommand("adaptive", "bound for protocols interleaved with k-extendible channels");
  add_point_options(adaptive, adaptive_args);

  double psc_eps = 0.05;
  std::int64_t psc_n = 1;
  std::int64_t psc_k = 2;
  auto* psc = app.add_subcommand("psc", "pretty strong converse rate");
  psc->add_option("--eps", psc_eps)->capture_default_str();
  psc->add_option("--n", psc_n)->capture_default_str();
  psc->add_option("--k", psc_k)->capture_default_str();

  // sweep: every flag is kept as text and routed through the config setter, so
  // flags and config-file keys share one parser.
  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep as CSV");
  sweep->add_option("--config", config_path, "key=value file supplying defaults");
  const std::vector<std::string> sweep_keys = {"channel", "p",           "eps",    "n_min", "n_max",
                                               "k_list",  "t_grid_size", "output", "mode",  "method"};
  std::vector<std::string> sweep_values(sweep_keys.size());
  std::vector<CLI::Option*> sweep_opts;
  for (std::size_t i = 0; i < sweep_keys.size(); ++i) {
    sweep_opts.push_back(sweep->add_option("--" + sweep_keys[i], sweep_values[i]));
  }

  std::string depth_name = "quick";
  auto* check = app.add_subcommand("check", "self-check against independent oracles");
  check->add_option("--depth", depth_name, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "unext: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*thresholds) {
      const Family family = family_name == "werner" ? Family::Werner : Family::Isotropic;
      const double thr = extendibility_threshold(family, dim, thr_k);
      out << "threshold=" << format_number(thr) << '\n';
      if (param) {
        const auto point = StateFamilyPoint::make(family, dim, *param);
        out << "kl=" << format_number(unextendible_divergence(point, Divergence::kl(), thr_k)) << '\n';
        out << "max=" << format_number(unextendible_divergence(point, Divergence::max(), thr_k)) << '\n';
      }
      return kExitOk;
    }
    if (*depol || *erasure || *adaptive) {
      const PointArgs& a = *depol ? depol_args : (*erasure ? erasure_args : adaptive_args);
      if (a.t_grid_size < 2) throw std::invalid_argument("t_grid_size must be >= 2");
      const auto kind = *erasure ? ChannelKind::Erasure : ChannelKind::Depolarizing;
      const auto params = ChannelParams::make(kind, a.p, a.n, a.eps, a.k);
      const auto method = *adaptive ? BoundMethod::Adaptive : BoundMethod::HypothesisTesting;
      print_point(evaluate_bound(params, method, OptimizerOptions{a.t_grid_size}), a.n, a.k, out);
      return kExitOk;
    }
    if (*psc) {
      out << format_number(pretty_strong_converse(psc_eps, psc_n, psc_k)) << '\n';
      return kExitOk;
    }
    if (*sweep) {
      SweepConfig config;
      if (!config_path.empty()) {
        for (const auto& [key, value] : read_key_value_file(config_path)) apply_sweep_setting(config, key, value);
      }
      for (std::size_t i = 0; i < sweep_keys.size(); ++i) {
        if (sweep_opts[i]->count() > 0) apply_sweep_setting(config, sweep_keys[i], sweep_values[i]);
      }
      config.validate();
      const auto rows = run_sweep(config);
      if (config.output.empty()) {
        write_csv(rows, config.mode, out);
      } else {
        std::ofstream file(config.output);
        if (!file) throw std::invalid_argument("cannot open output file '" + config.output + "'");
        write_csv(rows, config.mode, file);
      }
      return kExitOk;
    }
    if (*check) {
      const CheckReport report = cross_check(parse_check_depth(depth_name));
      print_report(report, out);
      if (!report.passed()) {
        for (const auto& o : report.outcomes) {
          if (!o.passed) {
            err << "check failed: " << o.module << ": " << o.property << " [" << o.inputs
                << "] observed=" << format_number(o.observed) << " expected=" << format_number(o.expected)
                << '\n';
          }
        }
        return kExitCheckFailed;
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "unext: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "unext: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace unext::tools
