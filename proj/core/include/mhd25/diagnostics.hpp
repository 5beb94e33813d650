#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mhd25/littlewood_paley.hpp"
#include "mhd25/state.hpp"

namespace mhd25 {

// Time-stamped norm panel. besov_panel holds the named Besov components of
// the solution norm, the Lyapunov functional pieces and the decay panels;
// lk_table holds the per-block low-frequency energy functional for
// j = j_min .. j0. x_t is filled by the run loop (it needs history).
struct DiagnosticsRecord {
  double t = 0.0;
  double l2_phi = 0.0, l2_u = 0.0, l2_a = 0.0, l2_b = 0.0;
  std::map<std::string, double> besov_panel;
  std::vector<std::pair<int, double>> lk_table;
  double neg_idx_a = 0.0, neg_idx_b = 0.0, neg_idx_phi = 0.0, neg_idx_u = 0.0;
  double total_a = 0.0, total_b = 0.0, min_rho = 1.0;
  double lyapunov = 0.0;
  double x_t = 0.0;
};

// Panel keys written by build_record. The first five are CSV columns
// (prefixed besov_ there); the X_* entries feed solution_norm_X.
inline constexpr const char* kPanelLowPhiUB0 = "low_phi_u_B0";
inline constexpr const char* kPanelHighPhiB1 = "high_phi_B1";
inline constexpr const char* kPanelHighUB0 = "high_u_B0";
inline constexpr const char* kPanelLowPhiUB2 = "low_phi_u_B2";
inline constexpr const char* kPanelHighUB2 = "high_u_B2";
inline constexpr const char* kPanelXSupLowAQubB0 = "X_sup_low_a_Qu_b_B0";
inline constexpr const char* kPanelXSupHighAbB1 = "X_sup_high_a_b_B1";
inline constexpr const char* kPanelXSupPuQuhB0 = "X_sup_Pu_Quh_B0";
inline constexpr const char* kPanelXIntLowPhiQuB2 = "X_int_low_phi_Qu_B2";
inline constexpr const char* kPanelXIntHighPhiB1 = "X_int_high_phi_B1";
inline constexpr const char* kPanelXIntPuQuhB2 = "X_int_Pu_Quh_B2";
inline constexpr const char* kPanelLamM12PhiU = "lam_m12_phi_u";

// Low-frequency block energy
//   L2_k = 3||phi_k||^2 + 9||d_k||^2 - <d_k, Lambda phi_k>
//          + (2/3)||Lambda phi_k||^2,
// positive definite on blocks with frequencies <= 8/3. Requires j <= j0.
double energy_functional_Lk(const LittlewoodPaley& lp, const ScalarField& phi,
                            const ScalarField& d, int j);

struct ConservationTotals {
  double total_a, total_b, min_rho;
};
ConservationTotals conservation_report(const PerturbationState& s);

// B^{-sigma}_{2,inf} low-frequency seminorms of a, b, phi and u,
// keys "a", "b", "phi", "u".
std::map<std::string, double> negative_index_panel(const PerturbationState& s,
                                                   const ScalarField& phi,
                                                   const LittlewoodPaley& lp,
                                                   double sigma);

// Full panel at one instant; x_t is left 0 (see solution_norm_X).
DiagnosticsRecord build_record(const PerturbationState& s,
                               const PhysicalParams& params,
                               const LittlewoodPaley& lp, double sigma);

// Lyapunov functional ||(phi,u)||^l_{B0} + ||phi||^h_{B1} + ||u||^h_{B0}.
double lyapunov_functional(const DiagnosticsRecord& rec);

// Solution norm X(t) over a record history (last element = current time):
// running maxima of the sup-type components plus trapezoidal accumulation
// of the L1-in-time components. Empty history gives 0.
double solution_norm_X(const std::vector<DiagnosticsRecord>& history);

struct DecayFit {
  std::string quantity;
  double t_min = 0.0, t_max = 0.0;
  double exponent = 0.0;
  double r_squared = 0.0;
  int n_samples = 0;
};

// Least-squares slope of log(value) against log(1+t) over samples with
// t_min <= t <= t_max. Requires at least 20 samples in the window, all
// positive (a non-positive value means the quantity hit the noise floor).
DecayFit fit_decay_exponent(const std::vector<std::pair<double, double>>& series,
                            double t_min, double t_max,
                            const std::string& quantity = "");

}  // namespace mhd25
