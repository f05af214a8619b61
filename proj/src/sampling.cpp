// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/sampling.hpp"

namespace mfnerf {

RaySampleSet sample_ray(const Ray& ray, float near, float far, int n_samples,
                        const SceneBox& box, CounterRng* jitter) {
    if (!(near < far)) {
        throw InvalidConfigError("sampling bounds must satisfy near < far");
    }
    if (n_samples < 1) {
        throw InvalidConfigError("need at least one sample per ray");
    }
    RaySampleSet out;
    float t_entry = 0.0f, t_exit = 0.0f;
    if (!box.intersect(ray, t_entry, t_exit)) {
        return out;
    }
    const float lo = std::max(near, t_entry);
    const float hi = std::min(far, t_exit);
    if (!(lo < hi)) {
        return out;
    }

    const int n = n_samples;
    const float stratum = (hi - lo) / static_cast<float>(n);
    out.ts.resize(n);
    out.deltas.resize(n);
    out.positions.resize(3, n);
    for (int i = 0; i < n; ++i) {
        const float u = jitter ? jitter->next_float() : 0.5f;
        out.ts[i] = lo + (static_cast<float>(i) + u) * stratum;
    }
    for (int i = 0; i + 1 < n; ++i) {
        // adjacent jittered samples can collapse to the same float
        out.deltas[i] = std::max(out.ts[i + 1] - out.ts[i], 1e-12f);
    }
    out.deltas[n - 1] = stratum;
    for (int i = 0; i < n; ++i) {
        const Vec3f world = ray.origin + out.ts[i] * ray.direction;
        Vec3f unit = box.to_unit(world);
        // entry/exit points can fall a representation error outside [0,1]
        for (int d = 0; d < 3; ++d) unit[d] = std::min(std::max(unit[d], 0.0f), 1.0f);
        out.positions.col(i) = unit;
    }
    return out;
}

}  // namespace mfnerf
