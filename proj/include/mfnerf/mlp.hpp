// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mfnerf/common.hpp"
#include "mfnerf/direction_encoding.hpp"
#include "mfnerf/rng.hpp"

namespace mfnerf {

// Renderer network shapes. The density network maps the concatenated grid
// features to 16 values whose first channel drives the density; the color
// network consumes those 16 values together with the direction encoding.
inline constexpr int kDensityHidden = 64;
inline constexpr int kDensityFeatures = 16;
inline constexpr int kColorHidden = 128;
inline constexpr float kDensityLogitClamp = 15.0f;

/// Weights of the density/color MLP pair. Hidden layers carry biases;
/// output layers do not. Hidden activation is the rectifier; density is
/// exp(clamp(logit)) and color channels go through the logistic function.
struct MlpParameters {
    // density network: input -> 64 -> 16
    Eigen::MatrixXf density_w1;
    Eigen::VectorXf density_b1;
    Eigen::MatrixXf density_w2;
    // color network: (16 + 16) -> 128 -> 128 -> 3
    Eigen::MatrixXf color_w1;
    Eigen::VectorXf color_b1;
    Eigen::MatrixXf color_w2;
    Eigen::VectorXf color_b2;
    Eigen::MatrixXf color_w3;

    /// Fan-in-scaled uniform init (bound sqrt(6/fan_in)), biases zero, all
    /// draws taken in a fixed order from `rng`.
    static MlpParameters init(int input_dim, CounterRng& rng);

    /// Zero-valued parameters with the same shapes (gradient/moment buffers).
    static MlpParameters zeros_like(const MlpParameters& other);

    int input_dim() const { return static_cast<int>(density_w1.cols()); }
    std::size_t parameter_count() const;

    struct Span {
        float* data;
        std::size_t size;
    };
    struct ConstSpan {
        const float* data;
        std::size_t size;
    };
    /// Fixed iteration order over all parameter blocks (also the
    /// serialization order).
    std::vector<Span> spans();
    std::vector<ConstSpan> spans() const;

    void set_zero();
    void add(const MlpParameters& other);  // elementwise, shapes must match
};

/// Activations cached by the forward pass for the backward pass.
struct MlpForwardCache {
    Eigen::MatrixXf input;        // (L*F) x B
    Eigen::MatrixXf dir;          // 16 x B
    Eigen::MatrixXf density_z1;   // pre-activation, 64 x B
    Eigen::MatrixXf density_h1;   // rectified, 64 x B
    Eigen::MatrixXf features;     // f_c, 16 x B
    Eigen::MatrixXf color_z1, color_h1;  // 128 x B
    Eigen::MatrixXf color_z2, color_h2;  // 128 x B
    Eigen::MatrixXf logits;       // 3 x B
    Eigen::VectorXf sigma;        // B
    Eigen::Matrix3Xf color;       // 3 x B
    bool valid = false;
};

/// Radiance of one sample point.
struct PointRadiance {
    float sigma = 0.0f;
    Vec3f color = Vec3f::Zero();
    Eigen::Matrix<Real, kDensityFeatures, 1> features;
};

/// Batched forward pass; throws ShapeMismatchError on bad input sizes and
/// DivergedError when activations stop being finite.
void mlp_forward(const MlpParameters& params, const Eigen::MatrixXf& encoded,
                 const Eigen::MatrixXf& dir_encoded, MlpForwardCache& cache);

PointRadiance mlp_forward(const MlpParameters& params, const Eigen::VectorXf& encoded,
                          const Eigen::Matrix<Real, kDirEncodingDim, 1>& dir_encoded);

/// Exact reverse-mode gradients for all weights and biases plus the input
/// encoding. The direction encoding gradient is not produced (directions
/// are not trainable). Requires a valid cache from mlp_forward.
void mlp_backward(const MlpParameters& params, const MlpForwardCache& cache,
                  const Eigen::VectorXf& grad_sigma, const Eigen::Matrix3Xf& grad_color,
                  MlpParameters& grad_params, Eigen::MatrixXf& grad_input);

}  // namespace mfnerf
