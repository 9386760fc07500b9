#pragma once

#include "stopwright/space.hpp"
#include "stopwright/stopping_time.hpp"

namespace stopwright {

// Densities of a stopping measure as a randomized stopping time. Throws
// Error(kNotAStoppingMeasure) when is_stopping_measure fails.
RandomizedStoppingTime measure_to_randomized(const StoppingMeasure& nu,
                                             const FilteredSpace& space);

// Clipping repair for externally supplied mass tables that may overshoot:
// each time-n density is clipped to [0, 1 - (earlier clipped densities)] and
// the never slot takes the residual. The densities must still be constant on
// F_n-atoms and the table must have the right shape; otherwise throws
// Error(kNotAStoppingMeasure). On a genuine stopping measure this returns
// exactly measure_to_randomized(nu).
RandomizedStoppingTime repair_to_randomized(const MassTable& mass,
                                            const FilteredSpace& space);

// Hazard rates beta_n = rho_n / (1 - rho_1 - ... - rho_{n-1}), with 0/0 = 0.
BehaviorStoppingTime randomized_to_behavior(const RandomizedStoppingTime& rho,
                                            const FilteredSpace& space);

// rho_n = prod_{j<n}(1 - beta_j) * beta_n, rho_inf = prod_j (1 - beta_j).
RandomizedStoppingTime behavior_to_randomized(const BehaviorStoppingTime& beta,
                                              const FilteredSpace& space);

// Quantile construction: section(r, w) = min{n : r <= rho_1(w)+...+rho_n(w)},
// never if no such n. Breakpoints are the sorted union of all cumulative sums
// over all atoms, so every section is constant on its interval.
MixedStoppingTime randomized_to_mixed(const RandomizedStoppingTime& rho,
                                      const FilteredSpace& space);

StoppingMeasure mixed_to_measure(const MixedStoppingTime& mu,
                                 const FilteredSpace& space);

// Any representation -> detailed distribution -> randomized -> target.
// Target kPure is rejected with Error(kValidation) unless the input is
// itself equivalent to a pure stopping time.
StoppingTime convert(const StoppingTime& st, Representation target,
                     const FilteredSpace& space);

}  // namespace stopwright
