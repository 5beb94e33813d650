// mhd25: pseudo-spectral runs and diagnostics for the 2.5-D compressible
// viscous MHD perturbation system. Subcommands:
//
//   simulate <config>    integrate the configured experiment, write artifacts
//   oracle <config>      same setup, evolved with the exact linear flow
//   decay-fit <csv>      algebraic decay exponent of one records column
//   spectrum <config>    acoustic dispersion table for the configured box
//   verify               acceptance and property suite (--full for long runs)
//
// Exit codes: 0 ok, 2 configuration error, 3 validity-gate trip,
// 4 acceptance failure, 1 anything else.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mhd25/errors.hpp"
#include "mhd25/experiment.hpp"
#include "mhd25/linear_oracle.hpp"
#include "mhd25/verify.hpp"

namespace {

using nlohmann::ordered_json;

void print_run_summary(const mhd25::RunReport& report) {
  const auto& last = report.records.back();
  std::printf("records: %zu  final t=%.6g  X(t)=%.6g  min_rho=%.6g\n",
              report.records.size(), last.t, last.x_t, last.min_rho);
  std::printf("artifacts: %s\n", report.summary_path.c_str());
}

int cmd_simulate(const std::string& cfg_path, bool force_oracle) {
  mhd25::ExperimentConfig cfg = mhd25::parse_config_file(cfg_path);
  if (force_oracle) cfg.mode = mhd25::RunMode::linear_oracle;
  const mhd25::RunReport report = mhd25::run_experiment(cfg);
  print_run_summary(report);
  return 0;
}

int cmd_decay_fit(const std::string& csv_path, const std::string& quantity,
                  const std::string& window) {
  const auto colon = window.find(':');
  if (colon == std::string::npos)
    throw mhd25::ConfigError("--window expects t0:t1, got '" + window + "'");
  double t0 = 0, t1 = 0;
  try {
    t0 = std::stod(window.substr(0, colon));
    t1 = std::stod(window.substr(colon + 1));
  } catch (const std::exception&) {
    throw mhd25::ConfigError("--window expects numeric t0:t1, got '" + window +
                             "'");
  }
  const auto series = mhd25::read_csv_column(csv_path, quantity);
  const mhd25::DecayFit fit =
      mhd25::fit_decay_exponent(series, t0, t1, quantity);
  ordered_json j;
  j["quantity"] = fit.quantity;
  j["t_min"] = fit.t_min;
  j["t_max"] = fit.t_max;
  j["exponent"] = fit.exponent;
  j["r_squared"] = fit.r_squared;
  j["n_samples"] = fit.n_samples;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_spectrum(const std::string& cfg_path) {
  const mhd25::ExperimentConfig cfg = mhd25::parse_config_file(cfg_path);
  const double dxi = 2.0 * 3.14159265358979323846 / cfg.box_length;
  const double xi_max = dxi * (cfg.n / 2);
  const int samples = 200;
  std::printf("r,slow_re,slow_im,fast_re,fast_im,heat_rate\n");
  for (int i = 0; i < samples; ++i) {
    const double r =
        dxi * std::pow(xi_max / dxi, double(i) / double(samples - 1));
    const auto [slow, fast] = mhd25::acoustic_eigenvalues(r, cfg.params);
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, slow.real(),
                slow.imag(), fast.real(), fast.imag(),
                cfg.params.mu * r * r);
  }
  return 0;
}

int cmd_verify(bool full, const std::string& scratch) {
  const mhd25::VerifyReport report = mhd25::verify_suite(full, scratch);
  std::cout << mhd25::format_verify_report(report);

  ordered_json j;
  j["level"] = full ? "full" : "quick";
  j["all_passed"] = report.all_passed();
  j["criteria"] = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json c;
    c["id"] = r.id;
    c["status"] = r.skipped ? "skip" : (r.passed ? "pass" : "fail");
    c["detail"] = r.detail;
    j["criteria"].push_back(c);
  }
  std::ofstream out(scratch + "/verify_report.json", std::ios::binary);
  out << j.dump(2) << "\n";

  if (!report.all_passed()) {
    std::cout << "verification FAILED\n";
    return 4;
  }
  std::cout << "verification passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2.5-D compressible viscous MHD perturbation runs"};
  app.require_subcommand(1);

  std::string cfg_path, csv_path, quantity, window = "10:200";
  std::string scratch = "mhd25_verify_scratch";
  bool full = false;

  auto* sim = app.add_subcommand("simulate", "integrate a configured run");
  sim->add_option("config", cfg_path, "config file")->required();

  auto* orc = app.add_subcommand("oracle", "exact linear evolution of a run");
  orc->add_option("config", cfg_path, "config file")->required();

  auto* fit = app.add_subcommand("decay-fit", "fit exponent of a CSV column");
  fit->add_option("csv", csv_path, "records.csv from a run")->required();
  fit->add_option("--quantity", quantity, "column name")->required();
  fit->add_option("--window", window, "time window t0:t1");

  auto* spec = app.add_subcommand("spectrum", "acoustic dispersion table");
  spec->add_option("config", cfg_path, "config file")->required();

  auto* ver = app.add_subcommand("verify", "acceptance and property suite");
  ver->add_flag("--full", full, "include the long-running criteria");
  ver->add_option("--scratch", scratch, "directory for run artifacts");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(cfg_path, false);
    if (orc->parsed()) return cmd_simulate(cfg_path, true);
    if (fit->parsed()) return cmd_decay_fit(csv_path, quantity, window);
    if (spec->parsed()) return cmd_spectrum(cfg_path);
    if (ver->parsed()) return cmd_verify(full, scratch);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const mhd25::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mhd25::ValidityError& e) {
    std::cerr << "validity gate: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
