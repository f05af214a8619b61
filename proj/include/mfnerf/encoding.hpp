// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "mfnerf/feature_table.hpp"

namespace mfnerf {

/// Encodes query positions through the mixed-feature pipeline: per level,
/// find the surrounding voxel corners and their interpolation weights in
/// that level's own grid, transform the corner indices to the finest level
/// of the level's table group, hash into the group table, and blend the
/// gathered feature vectors with the original level's weights. Level
/// outputs are concatenated in level order.
///
/// `positions` is dim x B with dim == bank.config.dim; the result is
/// (L*F) x B.
Eigen::MatrixXf encode_batch(const FeatureTableBank& bank, const Eigen::MatrixXf& positions);

/// Single-point convenience wrapper.
Eigen::VectorXf encode(const FeatureTableBank& bank, const Eigen::VectorXf& position);

/// Scatters dL/dy back onto the table gradient accumulators, weighting each
/// corner's contribution by its interpolation weight. Entries reached by
/// several (level, corner) pairs accumulate the sum. Touched entries are
/// recorded for sparse optimizer updates and sparse zeroing.
void encode_backward_batch(FeatureTableBank& bank, const Eigen::MatrixXf& positions,
                           const Eigen::MatrixXf& grad_output);

/// Variant scattering into caller-owned buffers (shaped like bank.grads),
/// so concurrent workers can accumulate privately and merge in a fixed
/// order afterwards.
void encode_backward_batch(const FeatureTableBank& bank, const Eigen::MatrixXf& positions,
                           const Eigen::MatrixXf& grad_output,
                           std::vector<Eigen::MatrixXf>& grads,
                           std::vector<std::vector<std::uint32_t>>& touched);

void encode_backward(FeatureTableBank& bank, const Eigen::VectorXf& position,
                     const Eigen::VectorXf& grad_output);

}  // namespace mfnerf
