#pragma once

#include <cstdint>
#include <vector>

#include "morlax/rng.hpp"

namespace morlax {

using ObjectiveVector = std::vector<double>;

// A set of return points plus the reference point used for hypervolume.
// All objectives are maximized; reference must be component-wise <= every
// point that should contribute volume.
struct ParetoFront {
    std::vector<ObjectiveVector> points;
    ObjectiveVector reference;
};

// Strict Pareto dominance: a >= b component-wise and a != b.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Points not dominated by any other input point. Input order is preserved
// among survivors; exact duplicates collapse to their first occurrence.
std::vector<ObjectiveVector> nondominated_filter(
    const std::vector<ObjectiveVector>& points);

// Points attaining max_w w^T J for some nonnegative weight vector w on the
// simplex (ties kept, per the non-strict max). Equals the upper boundary of
// the convex hull. Exact for m <= 2; for m >= 3 a dense weight sweep is
// used, which can under-select by a vanishing margin on adversarial inputs.
std::vector<ObjectiveVector> linear_dominance_filter(
    const std::vector<ObjectiveVector>& points);

struct HypervolumeResult {
    double value = 0.0;
    double stderr_est = 0.0;  // 0 for the exact algorithm
    bool exact = true;
    int clipped = 0;          // points dropped for falling below reference
};

inline constexpr std::uint64_t kHypervolumeMcSamples = 1'000'000;

// Dominated hypervolume of the region between `reference` and the points.
// Exact dimension-sweep for m <= 4, Monte-Carlo above. Points below the
// reference in any coordinate are clipped out and counted.
HypervolumeResult hypervolume_detailed(
    const ParetoFront& front,
    std::uint64_t mc_samples = kHypervolumeMcSamples,
    std::uint64_t mc_seed = 0x9E3779B9);
double hypervolume(const ParetoFront& front);

// Monte-Carlo estimate usable at any m (the oracle route for the exact
// algorithm). Returns the estimate; writes the standard error if asked.
double hypervolume_mc(const ParetoFront& front, std::uint64_t samples,
                      Rng rng, double* stderr_out = nullptr);

// Mean over objectives of the mean squared gap between consecutive sorted
// per-objective values. Lower is denser. Undefined for < 2 points.
double sparsity(const ParetoFront& front);

}  // namespace morlax
