// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "mfnerf/common.hpp"

namespace mfnerf {

/// Front-to-back alpha compositing along one ray.
///
/// T_i = prod_{j<i} exp(-sigma_j * delta_j), w_i = T_i (1 - exp(-sigma_i delta_i)),
/// color = sum_i w_i c_i + T_final * background.
struct CompositeResult {
    Vec3f color = Vec3f::Zero();
    Eigen::VectorXf weights;          ///< w_i, zero beyond an early-termination cut
    Eigen::VectorXf transmittances;   ///< T_i (transmittance entering sample i)
    float final_transmittance = 1.0f;
    int evaluated = 0;                ///< samples actually consumed
};

/// `early_stop` < 1 cuts the march once transmittance drops below it
/// (inference-time optimization; keep the default 0 when gradients are
/// needed). Throws ShapeMismatchError on inconsistent sizes and
/// OutOfDomainError on non-positive intervals.
CompositeResult composite(const Eigen::VectorXf& sigmas, const Eigen::VectorXf& deltas,
                          const Eigen::Matrix3Xf& colors, const Vec3f& background,
                          float early_stop = 0.0f);

/// Gradients of a scalar loss w.r.t. per-sample densities and colors given
/// dL/dcolor of the composited ray. Single reverse sweep: the density
/// gradient combines the local alpha term with the suppression of all
/// later weights and the background.
void composite_backward(const Eigen::VectorXf& sigmas, const Eigen::VectorXf& deltas,
                        const Eigen::Matrix3Xf& colors, const Vec3f& background,
                        const CompositeResult& cache, const Vec3f& grad_color,
                        Eigen::VectorXf& grad_sigmas, Eigen::Matrix3Xf& grad_colors);

}  // namespace mfnerf
