// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mfnerf/common.hpp"

namespace mfnerf {

/// Hyperparameters of the multiresolution feature-grid encoding and the
/// derived mixed-table layout. `tables` grids share hash tables in groups
/// of `levels_per_table()` consecutive levels.
struct EncodingConfig {
    int dim = 3;                           ///< spatial dimension of queries (2 for image fitting)
    int levels = 16;                       ///< L, number of grid levels
    int tables = 8;                        ///< N, number of shared hash tables
    std::uint64_t max_table_size = 1u << 19;  ///< T, per-table entry cap (power of two)
    int features = 2;                      ///< F, values per entry
    int coarsest = 16;                     ///< N_min
    int finest = 1024;                     ///< N_max

    int levels_per_table() const { return levels / tables; }

    /// Throws InvalidConfigError with a single-line reason on violation.
    void validate() const;
};

/// The geometric ratio between consecutive level resolutions.
double compute_growth_factor(int coarsest, int finest, int levels);

/// Resolution of a level (1-based). A relative epsilon of 1e-9 is applied
/// before flooring so analytically exact powers (64, 256, 1024 for the
/// default config) are not lost to representation error.
int level_resolution(int level, int coarsest, double growth, int num_levels);

/// All level resolutions plus the growth factor they were derived from.
struct GridLevelSet {
    double growth = 1.0;
    std::vector<int> resolutions;

    static GridLevelSet from_config(const EncodingConfig& config);

    /// 1-based accessor.
    int resolution(int level) const { return resolutions.at(static_cast<std::size_t>(level - 1)); }

    /// Finest level index (1-based) of the table group that `level` belongs to.
    static int group_finest_level(const EncodingConfig& config, int level) {
        const int w = config.levels_per_table();
        return ((level - 1) / w + 1) * w;
    }
};

/// Integer corner coordinates within one level's grid. Corner coordinates
/// range 0..resolution inclusive, i.e. (resolution + 1) points per axis.
struct GridIndex {
    int level = 1;
    Vec3i coords = Vec3i::Zero();
};

/// The 2^Dim voxel corners surrounding a query point together with their
/// multilinear interpolation weights (non-negative, summing to 1).
template <int Dim>
struct CornerSet {
    static constexpr int kCorners = 1 << Dim;
    std::array<Eigen::Matrix<int, Dim, 1>, kCorners> corners;
    std::array<Real, kCorners> weights;
};

/// Corner enumeration order is fixed: corner index bit d selects the +1
/// offset along axis d. Weight for corner c is the product over axes of
/// frac[d] (bit set) or 1-frac[d] (bit clear).
template <int Dim>
CornerSet<Dim> voxel_corners(const Eigen::Matrix<Real, Dim, 1>& x, int resolution) {
    constexpr Real kTol = static_cast<Real>(1e-9);
    for (int d = 0; d < Dim; ++d) {
        if (!(x[d] >= -kTol && x[d] <= Real(1) + kTol)) {
            throw OutOfDomainError("query position outside the unit domain");
        }
    }
    Eigen::Matrix<int, Dim, 1> base;
    Eigen::Matrix<Real, Dim, 1> frac;
    for (int d = 0; d < Dim; ++d) {
        Real s = std::min(std::max(x[d], Real(0)), Real(1)) * static_cast<Real>(resolution);
        Real fl = std::floor(s);
        int b = static_cast<int>(fl);
        // Keep the base cell inside the grid so corner coords stay <= resolution.
        if (b >= resolution) {
            b = resolution - 1;
            fl = static_cast<Real>(b);
        }
        if (b < 0) b = 0;
        base[d] = b;
        frac[d] = s - fl;
    }
    CornerSet<Dim> out;
    for (int c = 0; c < CornerSet<Dim>::kCorners; ++c) {
        Real w = Real(1);
        Eigen::Matrix<int, Dim, 1> corner;
        for (int d = 0; d < Dim; ++d) {
            const bool high = (c >> d) & 1;
            corner[d] = base[d] + (high ? 1 : 0);
            w *= high ? frac[d] : Real(1) - frac[d];
        }
        out.corners[static_cast<std::size_t>(c)] = corner;
        out.weights[static_cast<std::size_t>(c)] = w;
    }
    return out;
}

/// Rescales a corner index from one level's grid space into another's.
/// Exact integer arithmetic: multiply first, then floor-divide, so large
/// resolutions cannot pick up off-by-one from float rounding.
template <int Dim>
Eigen::Matrix<int, Dim, 1> index_transform(const Eigen::Matrix<int, Dim, 1>& index,
                                           int res_from, int res_to) {
    Eigen::Matrix<int, Dim, 1> out;
    for (int d = 0; d < Dim; ++d) {
        out[d] = static_cast<int>(static_cast<std::int64_t>(index[d]) * res_to / res_from);
    }
    return out;
}

/// Number of grid points of a level: (resolution + 1)^dim corners.
std::uint64_t corner_count(int resolution, int dim);

/// Entry capacity of table n (1-based): min(T, corner_count(finest level of
/// the group)). The corner-count convention is what the verified parameter
/// totals require.
std::uint64_t group_capacity(const EncodingConfig& config, const GridLevelSet& levels,
                             int table_index);

/// Capacities of all N tables.
std::vector<std::uint64_t> table_capacities(const EncodingConfig& config,
                                            const GridLevelSet& levels);

}  // namespace mfnerf
