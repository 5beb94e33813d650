#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "mhd25/state.hpp"

namespace mhd25 {

enum class Scheme { if_ssprk3, if_rk2 };

struct StepControl {
  double cfl_advective = 0.4;
  double dt_max = std::numeric_limits<double>::infinity();
  double t_end = 0.0;
  Scheme scheme = Scheme::if_ssprk3;
  double c0 = 0.5;  // validity floor for 1 + a

  void validate() const;  // 0 < cfl <= 1, dt_max > 0, 0 < c0 < 1
};

// Advisory step size min(dt_max, cfl * dx / (max|u| + max c_fast)), with the
// fast magnetosonic bound c_fast = sqrt(A gamma (1+a)^{gamma-1}
// + (1+b)^2/(1+a)). Viscous terms impose no limit: they are integrated
// exactly through the semigroup.
double compute_dt(const PerturbationState& s, const PhysicalParams& params,
                  const StepControl& ctl);

// One step of the integrating-factor SSP scheme. The viscous semigroup
// E(s) = exp(s(mu Lap + (lambda+mu) grad div)) acts mode-wise with factor
// exp(-mu|xi|^2 s) on the solenoidal part and exp(-nu|xi|^2 s) on the
// potential part; a, b and all nonlinear terms go through explicit
// Shu-Osher stages with non-decreasing abscissae so the semigroup is only
// ever applied forward in time. Warns on stderr when dt exceeds the
// advisory value. Throws ValidityError if the post-step state fails
// validation.
//
// When `stages` is non-null it receives the intermediate stage states
// (for ssprk3 both at t+2dt/3, for rk2 one at t+dt), letting callers
// co-evolve passive quantities with the same scheme.
PerturbationState step(const PerturbationState& s, double dt,
                       const PhysicalParams& params, const StepControl& ctl,
                       std::vector<PerturbationState>* stages = nullptr);

// Called with the state after every accepted step that lands on the record
// schedule (and once with the initial state, step_index 0).
using Observer =
    std::function<void(const PerturbationState& s, std::size_t step_index)>;

// Repeated stepping with recomputed dt up to ctl.t_end, the final step
// shortened to land exactly. The observer fires at the initial state, every
// observer_stride-th step, and the final step. Returns the final state.
PerturbationState integrate(PerturbationState s, const PhysicalParams& params,
                            const StepControl& ctl, int observer_stride,
                            const Observer& observer = {});

}  // namespace mhd25
