// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "mfnerf/camera.hpp"
#include "mfnerf/rng.hpp"

namespace mfnerf {

/// Ordered samples along one ray: positions already mapped into the unit
/// query domain, marching distances, and the intervals delta_i between
/// successive samples (the last interval is the stratum width).
struct RaySampleSet {
    Eigen::VectorXf ts;          // marching distance of each sample
    Eigen::VectorXf deltas;      // positive intervals
    Eigen::Matrix3Xf positions;  // unit-domain coordinates, 3 x count

    int count() const { return static_cast<int>(ts.size()); }
    bool empty() const { return ts.size() == 0; }
};

/// Stratified sampling: [near, far] clipped against the scene box, split
/// into n_samples equal strata with one sample per stratum. `jitter` null
/// means deterministic midpoints; otherwise one uniform draw per stratum.
/// Rays that miss the box produce an empty set. Throws InvalidConfigError
/// when near >= far or n_samples < 1.
RaySampleSet sample_ray(const Ray& ray, float near, float far, int n_samples,
                        const SceneBox& box, CounterRng* jitter);

}  // namespace mfnerf
