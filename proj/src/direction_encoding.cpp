// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/direction_encoding.hpp"

#include <cmath>

namespace mfnerf {

Eigen::Matrix<Real, kDirEncodingDim, 1> encode_direction(const Vec3f& direction) {
    if (std::abs(direction.norm() - 1.0f) > 1e-6f) {
        throw OutOfDomainError("direction must be unit length");
    }
    const float x = direction.x();
    const float y = direction.y();
    const float z = direction.z();
    const float xy = x * y, yz = y * z, xz = x * z;
    const float xx = x * x, yy = y * y, zz = z * z;

    Eigen::Matrix<Real, kDirEncodingDim, 1> v;
    v[0] = 0.28209479177387814f;
    v[1] = -0.48860251190291987f * y;
    v[2] = 0.48860251190291987f * z;
    v[3] = -0.48860251190291987f * x;
    v[4] = 1.0925484305920792f * xy;
    v[5] = -1.0925484305920792f * yz;
    v[6] = 0.94617469575755997f * zz - 0.31539156525251999f;
    v[7] = -1.0925484305920792f * xz;
    v[8] = 0.54627421529603959f * (xx - yy);
    v[9] = -0.59004358992664352f * y * (3.0f * xx - yy);
    v[10] = 2.8906114426405538f * xy * z;
    v[11] = -0.45704579946446572f * y * (5.0f * zz - 1.0f);
    v[12] = 0.37317633259011546f * z * (5.0f * zz - 3.0f);
    v[13] = -0.45704579946446572f * x * (5.0f * zz - 1.0f);
    v[14] = 1.4453057213202769f * z * (xx - yy);
    v[15] = -0.59004358992664352f * x * (xx - 3.0f * yy);
    return v;
}

Eigen::Matrix<Real, kDirEncodingDim, Eigen::Dynamic> encode_direction_batch(
    const Eigen::Matrix3Xf& directions) {
    Eigen::Matrix<Real, kDirEncodingDim, Eigen::Dynamic> out(kDirEncodingDim, directions.cols());
    for (Eigen::Index c = 0; c < directions.cols(); ++c) {
        out.col(c) = encode_direction(directions.col(c));
    }
    return out;
}

}  // namespace mfnerf
