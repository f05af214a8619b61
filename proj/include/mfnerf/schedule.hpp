// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "mfnerf/common.hpp"

namespace mfnerf {

/// Cosine decay from lr_init at step 0 to lr_final at total_steps:
///   lr(t) = lr_final + (lr_init - lr_final) * (1 + cos(pi t / T)) / 2
inline double lr_schedule(std::uint64_t step, std::uint64_t total_steps, double lr_init,
                          double lr_final) {
    if (step > total_steps) {
        throw InvalidConfigError("schedule step past total_steps");
    }
    if (total_steps == 0) {
        return lr_init;
    }
    const double phase = static_cast<double>(step) / static_cast<double>(total_steps);
    return lr_final + (lr_init - lr_final) * 0.5 * (1.0 + std::cos(M_PI * phase));
}

}  // namespace mfnerf
