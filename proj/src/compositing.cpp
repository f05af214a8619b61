// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/compositing.hpp"

#include <cmath>

namespace mfnerf {

CompositeResult composite(const Eigen::VectorXf& sigmas, const Eigen::VectorXf& deltas,
                          const Eigen::Matrix3Xf& colors, const Vec3f& background,
                          float early_stop) {
    const Eigen::Index n = sigmas.size();
    if (deltas.size() != n || colors.cols() != n) {
        throw ShapeMismatchError("per-sample arrays must share one length");
    }
    CompositeResult out;
    out.weights = Eigen::VectorXf::Zero(n);
    out.transmittances = Eigen::VectorXf::Zero(n);

    float transmittance = 1.0f;
    Vec3f accum = Vec3f::Zero();
    Eigen::Index i = 0;
    for (; i < n; ++i) {
        if (!(deltas[i] > 0.0f)) {
            throw OutOfDomainError("sample intervals must be positive");
        }
        out.transmittances[i] = transmittance;
        const float alpha = 1.0f - std::exp(-sigmas[i] * deltas[i]);
        const float w = transmittance * alpha;
        out.weights[i] = w;
        accum += w * colors.col(i);
        transmittance *= 1.0f - alpha;
        if (early_stop > 0.0f && transmittance < early_stop) {
            ++i;
            break;
        }
    }
    out.evaluated = static_cast<int>(i);
    out.final_transmittance = transmittance;
    out.color = accum + transmittance * background;
    return out;
}

void composite_backward(const Eigen::VectorXf& sigmas, const Eigen::VectorXf& deltas,
                        const Eigen::Matrix3Xf& colors, const Vec3f& background,
                        const CompositeResult& cache, const Vec3f& grad_color,
                        Eigen::VectorXf& grad_sigmas, Eigen::Matrix3Xf& grad_colors) {
    const Eigen::Index n = sigmas.size();
    if (cache.weights.size() != n) {
        throw ShapeMismatchError("composite cache does not match the sample count");
    }
    grad_sigmas = Eigen::VectorXf::Zero(n);
    grad_colors = Eigen::Matrix3Xf::Zero(3, n);

    // suffix = sum_{k>i} w_k c_k + T_final * background, accumulated in
    // reverse; d color / d sigma_i = delta_i * (T_{i+1} c_i - suffix).
    Vec3f suffix = cache.final_transmittance * background;
    for (Eigen::Index i = static_cast<Eigen::Index>(cache.evaluated) - 1; i >= 0; --i) {
        grad_colors.col(i) = cache.weights[i] * grad_color;
        const float alpha = 1.0f - std::exp(-sigmas[i] * deltas[i]);
        const float trans_after = cache.transmittances[i] * (1.0f - alpha);
        const Vec3f dcolor_dsigma = deltas[i] * (trans_after * colors.col(i) - suffix);
        grad_sigmas[i] = dcolor_dsigma.dot(grad_color);
        suffix += cache.weights[i] * colors.col(i);
    }
}

}  // namespace mfnerf
