#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mhd25/diagnostics.hpp"
#include "mhd25/integrator.hpp"
#include "mhd25/state.hpp"

namespace mhd25 {

enum class InitKind { random_spectrum, single_mode, gaussian_blob };
enum class Polarization { compressible, solenoidal };
enum class RunMode { nonlinear, linear_oracle, heat_reference };

// Plain-text config, one `section.key = value` per line, `#` comments.
// Unknown keys are hard errors. Echoing and re-parsing round-trips.
struct ExperimentConfig {
  // grid
  int n = 64;
  double box_length = 2.0 * 3.14159265358979323846;
  // params
  PhysicalParams params;
  // time
  double t_end = 1.0;
  double cfl = 0.4;
  double dt_max = std::numeric_limits<double>::infinity();
  Scheme scheme = Scheme::if_ssprk3;
  // init
  InitKind kind = InitKind::random_spectrum;
  double amplitude = 1e-3;   // epsilon: X(0)-style norm for random_spectrum,
                             // L2 norm for single_mode, peak for gaussian_blob
  double sigma = 1.0;        // spectrum exponent, |f_hat| ~ |xi|^{sigma-1}
  std::uint64_t seed = 1;
  double cutoff = 1.0;       // spectral support radius of random data
  double mean_a = 0.0, mean_b = 0.0;
  int mode_kx = 1, mode_ky = 0;  // integer lattice frequency of single_mode
  Polarization polarization = Polarization::compressible;
  // lp
  int j0 = 0;
  double lp_sigma = 1.0;  // index of the negative-regularity panel
  // output
  std::string out_path = "mhd25_run";
  int stride = 1;
  // run
  RunMode mode = RunMode::nonlinear;

  StepControl step_control() const;
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string write_config_echo(const ExperimentConfig& cfg);

// Initial data at t = 0, dealiased, validity-checked.
//   random_spectrum - fixed modulus |f_hat| = |xi|^{sigma-1} under the cutoff
//     with seeded random phases (Hermitian-paired), scaled so the X(0)-style
//     norm equals amplitude;
//   single_mode - one compressible or solenoidal velocity mode with L2 norm
//     equal to amplitude;
//   gaussian_blob - a localized density/magnetic bump of the given peak.
// Means of a and b are then set from the config. Throws ConfigError if the
// scaled data violates sup|a0| <= 1/2.
PerturbationState generate_initial_data(const ExperimentConfig& cfg,
                                        std::shared_ptr<const SpectralGrid> grid);

struct RunReport {
  std::vector<DiagnosticsRecord> records;
  PerturbationState final_state;
  std::map<std::string, DecayFit> fits;      // only windows that succeeded
  std::map<std::string, std::string> fit_errors;
  std::string csv_path, echo_path, summary_path;
};

// Runs the configured mode, recording every stride-th step plus the first
// and last, and writes records.csv, config_echo.cfg and summary.json under
// cfg.out_path. On a validity-gate trip the partial records are written
// before the ValidityError is rethrown.
RunReport run_experiment(const ExperimentConfig& cfg);

// The pinned CSV schema.
extern const char* const kCsvHeader;
std::string format_records_csv(const std::vector<DiagnosticsRecord>& records);
void write_records_csv(const std::string& path,
                       const std::vector<DiagnosticsRecord>& records);

// Reads one named column of a records CSV as (t, value) pairs.
std::vector<std::pair<double, double>> read_csv_column(const std::string& path,
                                                       const std::string& column);

}  // namespace mhd25
