// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mfnerf/common.hpp"

namespace mfnerf {

/// Row-major, pixel-interleaved float image with values in [0, 1].
/// Channels is 3 (RGB) or 4 (RGBA).
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) *
                   static_cast<std::size_t>(c),
               fill) {}

    float& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(x)) *
                        static_cast<std::size_t>(channels) +
                    static_cast<std::size_t>(c)];
    }
    float at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(x)) *
                        static_cast<std::size_t>(channels) +
                    static_cast<std::size_t>(c)];
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    Vec3f rgb(int x, int y) const { return {at(x, y, 0), at(x, y, 1), at(x, y, 2)}; }

    /// Drops alpha by compositing over a background color.
    Image composited_over(const Vec3f& background) const;
};

/// Reads a PNG as float RGB or RGBA (16-bit files are reduced to 8).
/// Throws DataError when the file is missing or not a decodable PNG.
Image read_png(const std::string& path);

/// Writes 8-bit RGB; values are clamped to [0, 1] first.
void write_png(const std::string& path, const Image& image);

}  // namespace mfnerf
