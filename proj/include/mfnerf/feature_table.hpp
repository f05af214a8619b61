// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mfnerf/grid_geometry.hpp"

namespace mfnerf {

/// The N mixed-feature tables. Table n stores group_capacity(config, n)
/// entries of `features` reals each; a column of the matrix is one entry,
/// so serialization order (entry-major, feature-minor) is the raw storage
/// order. Gradient accumulators live beside the tables and are zeroed
/// sparsely through the touched-entry lists.
struct FeatureTableBank {
    EncodingConfig config;
    GridLevelSet levels;
    std::vector<Eigen::MatrixXf> tables;  // features x capacity
    std::vector<Eigen::MatrixXf> grads;   // same shapes, zero between steps
    std::vector<std::vector<std::uint32_t>> touched;  // entries hit since last clear

    std::uint64_t entry_total() const;
    std::uint64_t scalar_total() const;

    /// Zeroes exactly the touched gradient entries and clears the lists.
    void clear_gradients();

    /// Allocates zero-valued gradients/touched lists shaped like `tables`.
    void allocate_gradients();
};

/// Builds a bank with every feature drawn i.i.d. uniform on [-1e-4, 1e-4]
/// from the counter generator, so identical (config, seed) pairs produce
/// bit-identical banks.
FeatureTableBank init_tables(const EncodingConfig& config, std::uint64_t seed);

struct ParameterCount {
    std::uint64_t entries = 0;
    std::uint64_t scalars = 0;
};

/// Total entries and scalars across all tables. Pure integer arithmetic.
ParameterCount count_parameters(const EncodingConfig& config);

/// Occupancy of one table after hashing a probe lattice through its group's
/// full index pipeline (transform to the group's finest level, then hash).
struct TableOccupancy {
    std::uint64_t capacity = 0;
    std::uint64_t probes = 0;    ///< (probe_resolution + 1)^dim, conserved across the histogram
    std::uint64_t occupied = 0;  ///< entries hit at least once
    double load_factor = 0.0;    ///< occupied / capacity
    std::uint32_t max_hits = 0;
    std::vector<std::uint64_t> histogram;  ///< histogram[h] = entries hit exactly h times
};

std::vector<TableOccupancy> collision_stats(const EncodingConfig& config, int probe_resolution);

}  // namespace mfnerf
