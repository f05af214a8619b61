// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/oracle_scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mfnerf {

namespace {

inline double soft_step(double signed_distance, double edge) {
    // 1 well inside (positive distance), 0 well outside, logistic edge
    return 1.0 / (1.0 + std::exp(-signed_distance / edge));
}

double sphere_density(const OracleScene::Sphere& s, const Vec3d& p) {
    return s.density * soft_step(s.radius - (p - s.center).norm(), s.edge);
}

double box_density(const OracleScene::Box& b, const Vec3d& p) {
    double inside = 1.0;
    for (int d = 0; d < 3; ++d) {
        inside *= soft_step(b.half_extents[d] - std::abs(p[d] - b.center[d]), b.edge);
    }
    return b.density * inside;
}

}  // namespace

double OracleScene::density_at(const Vec3d& world) const {
    double total = 0.0;
    for (const auto& s : spheres) total += sphere_density(s, world);
    for (const auto& b : boxes) total += box_density(b, world);
    return total;
}

Vec3d OracleScene::color_at(const Vec3d& world) const {
    double total = 0.0;
    Vec3d mixed = Vec3d::Zero();
    for (const auto& s : spheres) {
        const double d = sphere_density(s, world);
        total += d;
        mixed += d * s.color;
    }
    for (const auto& b : boxes) {
        const double d = box_density(b, world);
        total += d;
        mixed += d * b.color;
    }
    if (total < 1e-12) {
        return Vec3d::Ones();  // weightless; any value composites to nothing
    }
    return mixed / total;
}

OracleScene OracleScene::parse(std::istream& in, const std::string& context) {
    OracleScene scene;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        auto fail = [&] {
            throw DataError(context + ":" + std::to_string(line_no) + ": malformed " + kind);
        };
        if (kind == "sphere") {
            Sphere s;
            if (!(ls >> s.center.x() >> s.center.y() >> s.center.z() >> s.radius >> s.color.x() >>
                  s.color.y() >> s.color.z() >> s.density >> s.edge)) {
                fail();
            }
            scene.spheres.push_back(s);
        } else if (kind == "box") {
            Box b;
            if (!(ls >> b.center.x() >> b.center.y() >> b.center.z() >> b.half_extents.x() >>
                  b.half_extents.y() >> b.half_extents.z() >> b.color.x() >> b.color.y() >>
                  b.color.z() >> b.density >> b.edge)) {
                fail();
            }
            scene.boxes.push_back(b);
        } else if (kind == "background") {
            std::string value;
            if (!(ls >> value) || (value != "white" && value != "black")) fail();
            scene.background =
                value == "white" ? BackgroundColor::kWhite : BackgroundColor::kBlack;
        } else {
            throw DataError(context + ":" + std::to_string(line_no) + ": unknown entry " + kind);
        }
    }
    if (scene.spheres.empty() && scene.boxes.empty()) {
        throw DataError(context + ": scene has no primitives");
    }
    return scene;
}

OracleScene OracleScene::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("missing file: " + path);
    }
    return parse(in, path);
}

OracleScene OracleScene::default_scene() {
    OracleScene scene;
    Sphere s;
    s.center = Vec3d(-0.28, 0.12, 0.05);
    s.radius = 0.42;
    s.color = Vec3d(0.85, 0.3, 0.2);
    s.density = 14.0;
    s.edge = 0.05;
    scene.spheres.push_back(s);
    Box b;
    b.center = Vec3d(0.4, -0.25, -0.12);
    b.half_extents = Vec3d(0.26, 0.3, 0.2);
    b.color = Vec3d(0.2, 0.45, 0.9);
    b.density = 12.0;
    b.edge = 0.05;
    scene.boxes.push_back(b);
    scene.background = BackgroundColor::kWhite;
    return scene;
}

Image render_oracle(const OracleScene& scene, const Camera& camera, const SceneBox& box,
                    int n_samples) {
    camera.validate();
    const Vec3d bg = background_rgb(scene.background).cast<double>();
    Image out(camera.width, camera.height, 3);
    for (int v = 0; v < camera.height; ++v) {
        for (int u = 0; u < camera.width; ++u) {
            const Ray ray = generate_ray(camera, u, v);
            float t_entry = 0.0f, t_exit = 0.0f;
            Vec3d color = bg;
            if (box.intersect(ray, t_entry, t_exit)) {
                const double lo = t_entry, hi = t_exit;
                const double step = (hi - lo) / static_cast<double>(n_samples);
                double transmittance = 1.0;
                Vec3d accum = Vec3d::Zero();
                for (int i = 0; i < n_samples; ++i) {
                    const double t = lo + (static_cast<double>(i) + 0.5) * step;
                    const Vec3d p =
                        (ray.origin + static_cast<float>(t) * ray.direction).cast<double>();
                    const double sigma = scene.density_at(p);
                    const double alpha = 1.0 - std::exp(-sigma * step);
                    accum += transmittance * alpha * scene.color_at(p);
                    transmittance *= 1.0 - alpha;
                    if (transmittance < 1e-7) break;
                }
                color = accum + transmittance * bg;
            }
            for (int c = 0; c < 3; ++c) {
                out.at(u, v, c) = static_cast<float>(color[c]);
            }
        }
    }
    return out;
}

OracleDataset make_oracle_dataset(const OracleScene& scene, const SceneBox& box, int n_train,
                                  int n_test, int image_size, int oracle_samples) {
    OracleDataset out;
    out.train.background = scene.background;
    out.test.background = scene.background;

    auto add_view = [&](Dataset& split, double angle, double elevation) {
        const double radius = 3.1 * static_cast<double>(box.scale);
        const Vec3f eye =
            box.center + Vec3f(static_cast<float>(radius * std::cos(angle) * std::cos(elevation)),
                               static_cast<float>(radius * std::sin(angle) * std::cos(elevation)),
                               static_cast<float>(radius * std::sin(elevation)));
        Frame f;
        f.camera.cam_to_world = look_at_pose(eye, box.center, Vec3f::UnitZ());
        f.camera.fov_x = 0.8f;
        f.camera.width = image_size;
        f.camera.height = image_size;
        f.image = render_oracle(scene, f.camera, box, oracle_samples);
        split.frames.push_back(std::move(f));
    };

    for (int i = 0; i < n_train; ++i) {
        const double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n_train);
        const double elevation = (i % 2 == 0) ? 0.32 : 0.75;
        add_view(out.train, angle, elevation);
    }
    for (int i = 0; i < n_test; ++i) {
        const double angle =
            2.0 * M_PI * (static_cast<double>(i) + 0.37) / static_cast<double>(n_test);
        add_view(out.test, angle, 0.5);
    }
    return out;
}

}  // namespace mfnerf
