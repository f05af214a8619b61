// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mfnerf/camera.hpp"
#include "mfnerf/dataset.hpp"
#include "mfnerf/image.hpp"

namespace mfnerf {

/// Closed-form density/color fields: soft-edged primitives inside the
/// scene box. Evaluable anywhere with no stored data, which makes it an
/// exact ground-truth generator for small-scale end-to-end runs.
struct OracleScene {
    struct Sphere {
        Vec3d center = Vec3d::Zero();
        double radius = 0.4;
        Vec3d color = Vec3d(0.8, 0.2, 0.2);
        double density = 20.0;
        double edge = 0.04;  ///< logistic edge width
    };
    struct Box {
        Vec3d center = Vec3d::Zero();
        Vec3d half_extents = Vec3d(0.25, 0.25, 0.25);
        Vec3d color = Vec3d(0.2, 0.4, 0.9);
        double density = 20.0;
        double edge = 0.04;
    };

    std::vector<Sphere> spheres;
    std::vector<Box> boxes;
    BackgroundColor background = BackgroundColor::kWhite;

    double density_at(const Vec3d& world) const;
    Vec3d color_at(const Vec3d& world) const;

    /// Parses the declarative text format:
    ///   sphere cx cy cz radius r g b density edge
    ///   box cx cy cz hx hy hz r g b density edge
    ///   background white|black
    /// '#' starts a comment. Throws DataError on malformed lines.
    static OracleScene parse_file(const std::string& path);
    static OracleScene parse(std::istream& in, const std::string& context);

    /// The committed two-primitive scene used by the end-to-end checks.
    static OracleScene default_scene();
};

/// Renders ground truth by dense compositing (n_samples >= 512 recommended)
/// against the analytic fields, accumulating in double precision.
Image render_oracle(const OracleScene& scene, const Camera& camera, const SceneBox& box,
                    int n_samples);

/// A ring of look-at cameras around the box center; train poses first, then
/// `n_test` held-out poses at interleaved angles.
struct OracleDataset {
    Dataset train;
    Dataset test;
};
OracleDataset make_oracle_dataset(const OracleScene& scene, const SceneBox& box, int n_train,
                                  int n_test, int image_size, int oracle_samples);

}  // namespace mfnerf
