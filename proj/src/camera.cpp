// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/camera.hpp"

#include <cmath>

namespace mfnerf {

void Camera::validate() const {
    const Eigen::Matrix3f r = rotation();
    if ((r * r.transpose() - Eigen::Matrix3f::Identity()).cwiseAbs().maxCoeff() > 1e-4f) {
        throw InvalidConfigError("camera rotation block is not orthonormal");
    }
    if (!(fov_x > 0.0f && fov_x < static_cast<float>(M_PI))) {
        throw InvalidConfigError("fov must lie in (0, pi)");
    }
    if (!(near < far)) {
        throw InvalidConfigError("near plane must be closer than far plane");
    }
    if (width < 1 || height < 1) {
        throw InvalidConfigError("image dimensions must be positive");
    }
}

Ray generate_ray(const Camera& camera, int u, int v) {
    if (u < 0 || u >= camera.width || v < 0 || v >= camera.height) {
        throw OutOfDomainError("pixel outside the image");
    }
    const float f = camera.focal();
    const float cx = 0.5f * static_cast<float>(camera.width);
    const float cy = 0.5f * static_cast<float>(camera.height);
    // pixel center; v grows downward while camera +y points up
    const Vec3f dir_cam((static_cast<float>(u) + 0.5f - cx) / f,
                        -(static_cast<float>(v) + 0.5f - cy) / f, -1.0f);
    Ray ray;
    ray.origin = camera.position();
    ray.direction = (camera.rotation() * dir_cam).normalized();
    return ray;
}

bool SceneBox::intersect(const Ray& ray, float& t_entry, float& t_exit) const {
    const Vec3f lo = world_min();
    const Vec3f hi = world_max();
    float t0 = 0.0f;
    float t1 = std::numeric_limits<float>::max();
    for (int d = 0; d < 3; ++d) {
        const float dir = ray.direction[d];
        if (std::abs(dir) < 1e-12f) {
            if (ray.origin[d] < lo[d] || ray.origin[d] > hi[d]) return false;
            continue;
        }
        float ta = (lo[d] - ray.origin[d]) / dir;
        float tb = (hi[d] - ray.origin[d]) / dir;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    t_entry = t0;
    t_exit = t1;
    return t1 > t0;
}

Eigen::Matrix4f look_at_pose(const Vec3f& eye, const Vec3f& target, const Vec3f& up) {
    const Vec3f forward = (target - eye).normalized();
    const Vec3f right = forward.cross(up).normalized();
    const Vec3f true_up = right.cross(forward);
    Eigen::Matrix4f m = Eigen::Matrix4f::Identity();
    m.block<3, 1>(0, 0) = right;
    m.block<3, 1>(0, 1) = true_up;
    m.block<3, 1>(0, 2) = -forward;
    m.block<3, 1>(0, 3) = eye;
    return m;
}

}  // namespace mfnerf
