// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "mfnerf/common.hpp"

namespace mfnerf {

struct Ray {
    Vec3f origin = Vec3f::Zero();
    Vec3f direction = Vec3f::UnitZ();  // unit length
};

/// Pinhole camera. Camera space is right-handed with +x right, +y up and
/// the view axis along -z; `cam_to_world` maps camera space to world space.
struct Camera {
    Eigen::Matrix4f cam_to_world = Eigen::Matrix4f::Identity();
    float fov_x = 0.6911112070083618f;  ///< horizontal field of view, radians
    int width = 0;
    int height = 0;
    float near = 0.0f;
    float far = 1e9f;

    /// Throws InvalidConfigError on a non-orthonormal rotation block,
    /// fov outside (0, pi), or near >= far.
    void validate() const;

    Vec3f position() const { return cam_to_world.block<3, 1>(0, 3); }
    Eigen::Matrix3f rotation() const { return cam_to_world.block<3, 3>(0, 0); }

    /// Focal length in pixels derived from fov_x.
    float focal() const { return 0.5f * static_cast<float>(width) / std::tan(0.5f * fov_x); }
};

/// Ray through the center of pixel (u, v); v counts rows from the top.
/// Throws OutOfDomainError for pixels outside the image.
Ray generate_ray(const Camera& camera, int u, int v);

/// Affine map between world coordinates and the unit-cube query domain.
/// The world-side box is the cube of edge 2*scale centered at `center`,
/// mirroring a single per-scene scale hyperparameter.
struct SceneBox {
    Vec3f center = Vec3f::Zero();
    float scale = 1.0f;

    Vec3f to_unit(const Vec3f& world) const {
        return (world - center) / (2.0f * scale) + Vec3f::Constant(0.5f);
    }
    Vec3f world_min() const { return center - Vec3f::Constant(scale); }
    Vec3f world_max() const { return center + Vec3f::Constant(scale); }

    /// Entry/exit distances of a ray against the world-side box; returns
    /// false on a miss. On a hit, t_entry >= 0.
    bool intersect(const Ray& ray, float& t_entry, float& t_exit) const;
};

/// Simple look-at pose builder used for procedural datasets.
Eigen::Matrix4f look_at_pose(const Vec3f& eye, const Vec3f& target, const Vec3f& up);

}  // namespace mfnerf
