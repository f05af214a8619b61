// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "mfnerf/common.hpp"

namespace mfnerf {

inline constexpr int kDirEncodingDim = 16;

/// Real spherical-harmonics basis, bands 0..3 (16 coefficients), evaluated
/// at a unit direction. Normalization constants follow the usual real
/// basis with Condon-Shortley phase folded in:
///   band 0:  0.28209479177387814
///   band 1: -0.48860251190291987 * {y, -z, x}
///   band 2:  1.0925484305920792 * {xy, -yz, xz}, 0.94617469575755997 z^2 - 0.31539156525251999,
///            0.54627421529603959 (x^2 - y^2)
///   band 3:  see implementation
/// Throws OutOfDomainError when |d| deviates from 1 by more than 1e-6.
Eigen::Matrix<Real, kDirEncodingDim, 1> encode_direction(const Vec3f& direction);

/// Column-per-direction batch variant.
Eigen::Matrix<Real, kDirEncodingDim, Eigen::Dynamic> encode_direction_batch(
    const Eigen::Matrix3Xf& directions);

}  // namespace mfnerf
