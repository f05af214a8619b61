// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mfnerf/camera.hpp"
#include "mfnerf/image.hpp"

namespace mfnerf {

enum class BackgroundColor { kBlack, kWhite };

inline Vec3f background_rgb(BackgroundColor bg) {
    return bg == BackgroundColor::kWhite ? Vec3f::Ones() : Vec3f::Zero();
}

struct Frame {
    Camera camera;
    Image image;  ///< RGB, alpha already composited over the background
};

struct Dataset {
    std::vector<Frame> frames;
    BackgroundColor background = BackgroundColor::kWhite;

    int width() const { return frames.empty() ? 0 : frames.front().image.width; }
    int height() const { return frames.empty() ? 0 : frames.front().image.height; }
};

/// Loads a transforms-file dataset: `<dir>/transforms_<split>.json` with
/// camera_angle_x and per-frame file_path / transform_matrix, plus the PNG
/// frames (".png" appended when the path has no extension). RGBA frames
/// are composited over the requested background.
/// Throws DataError for missing files, non-invertible transforms, or
/// resolution mismatches within the split.
Dataset load_nerf_synthetic(const std::string& directory, const std::string& split,
                            BackgroundColor background);

/// The 2D fitting task: each example is a pixel-center coordinate in
/// [0,1]^2 with its RGB target.
struct Image2dDataset {
    Image target;  ///< RGB

    std::size_t count() const { return target.pixel_count(); }
    Vec2f coord(std::size_t index) const {
        const int x = static_cast<int>(index % static_cast<std::size_t>(target.width));
        const int y = static_cast<int>(index / static_cast<std::size_t>(target.width));
        return {(static_cast<float>(x) + 0.5f) / static_cast<float>(target.width),
                (static_cast<float>(y) + 0.5f) / static_cast<float>(target.height)};
    }
    Vec3f color(std::size_t index) const {
        const int x = static_cast<int>(index % static_cast<std::size_t>(target.width));
        const int y = static_cast<int>(index / static_cast<std::size_t>(target.width));
        return target.rgb(x, y);
    }
};

/// Throws DataError on an empty image; alpha, if present, is composited
/// over black.
Image2dDataset make_image2d_dataset(const Image& image);

}  // namespace mfnerf
