// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/dataset.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace mfnerf {

namespace {

namespace fs = std::filesystem;

Eigen::Matrix4f parse_transform(const nlohmann::json& rows, const std::string& context) {
    if (!rows.is_array() || rows.size() != 4) {
        throw DataError("malformed transform_matrix in " + context);
    }
    Eigen::Matrix4f m;
    for (int r = 0; r < 4; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 4) {
            throw DataError("malformed transform_matrix in " + context);
        }
        for (int c = 0; c < 4; ++c) {
            m(r, c) = row[static_cast<std::size_t>(c)].get<float>();
        }
    }
    if (std::abs(m.determinant()) < 1e-8f) {
        throw DataError("non-invertible transform_matrix in " + context);
    }
    return m;
}

}  // namespace

Dataset load_nerf_synthetic(const std::string& directory, const std::string& split,
                            BackgroundColor background) {
    const fs::path transforms = fs::path(directory) / ("transforms_" + split + ".json");
    std::ifstream in(transforms);
    if (!in) {
        throw DataError("missing file: " + transforms.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("unparseable transforms file " + transforms.string() + ": " + e.what());
    }
    if (!doc.contains("camera_angle_x") || !doc.contains("frames")) {
        throw DataError("transforms file lacks camera_angle_x/frames: " + transforms.string());
    }
    const float fov_x = doc["camera_angle_x"].get<float>();

    Dataset out;
    out.background = background;
    const Vec3f bg = background_rgb(background);
    for (const auto& frame : doc["frames"]) {
        if (!frame.contains("file_path") || !frame.contains("transform_matrix")) {
            throw DataError("frame lacks file_path/transform_matrix: " + transforms.string());
        }
        std::string rel = frame["file_path"].get<std::string>();
        fs::path img_path = fs::path(directory) / rel;
        if (!img_path.has_extension()) {
            img_path += ".png";
        }
        Frame f;
        f.image = read_png(img_path.string()).composited_over(bg);
        f.camera.cam_to_world = parse_transform(frame["transform_matrix"], img_path.string());
        f.camera.fov_x = fov_x;
        f.camera.width = f.image.width;
        f.camera.height = f.image.height;
        f.camera.validate();
        if (!out.frames.empty() &&
            (f.image.width != out.width() || f.image.height != out.height())) {
            throw DataError("resolution mismatch within split at " + img_path.string());
        }
        out.frames.push_back(std::move(f));
    }
    if (out.frames.empty()) {
        throw DataError("no frames in " + transforms.string());
    }
    return out;
}

Image2dDataset make_image2d_dataset(const Image& image) {
    if (image.width < 1 || image.height < 1) {
        throw DataError("2d fitting target must be non-empty");
    }
    Image2dDataset out;
    out.target = image.composited_over(Vec3f::Zero());
    return out;
}

}  // namespace mfnerf
