// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mfnerf/common.hpp"

namespace mfnerf {

struct AdamHyperparams {
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eps = 1e-15;
};

/// Bias-corrected Adam over a contiguous span. `step` is 1-based.
inline void adam_step(float* params, const float* grads, float* m, float* v, std::size_t count,
                      double lr, std::uint64_t step, const AdamHyperparams& hp) {
    if (step < 1) {
        throw InvalidConfigError("adam step must be >= 1");
    }
    const double bc1 = 1.0 - std::pow(hp.beta1, static_cast<double>(step));
    const double bc2 = 1.0 - std::pow(hp.beta2, static_cast<double>(step));
    for (std::size_t i = 0; i < count; ++i) {
        const double g = static_cast<double>(grads[i]);
        if (!std::isfinite(g)) {
            throw DivergedError("non-finite gradient in optimizer step");
        }
        const double m_new = hp.beta1 * m[i] + (1.0 - hp.beta1) * g;
        const double v_new = hp.beta2 * v[i] + (1.0 - hp.beta2) * g * g;
        m[i] = static_cast<float>(m_new);
        v[i] = static_cast<float>(v_new);
        const double update = lr * (m_new / bc1) / (std::sqrt(v_new / bc2) + hp.eps);
        params[i] = static_cast<float>(params[i] - update);
    }
}

/// Sparse table variant: only the listed entries (columns) are updated;
/// moments of untouched entries are not decayed.
inline void adam_step_sparse(Eigen::MatrixXf& table, const Eigen::MatrixXf& grads,
                             Eigen::MatrixXf& m, Eigen::MatrixXf& v,
                             const std::vector<std::uint32_t>& entries, double lr,
                             std::uint64_t step, const AdamHyperparams& hp) {
    const std::size_t rows = static_cast<std::size_t>(table.rows());
    for (std::uint32_t e : entries) {
        const Eigen::Index col = static_cast<Eigen::Index>(e);
        adam_step(table.col(col).data(), grads.col(col).data(), m.col(col).data(),
                  v.col(col).data(), rows, lr, step, hp);
    }
}

}  // namespace mfnerf
