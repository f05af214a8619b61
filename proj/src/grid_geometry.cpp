// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/grid_geometry.hpp"

namespace mfnerf {

namespace {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

void EncodingConfig::validate() const {
    if (dim != 2 && dim != 3) {
        throw InvalidConfigError("dim must be 2 or 3");
    }
    if (levels < 2) {
        throw InvalidConfigError("L must be at least 2");
    }
    if (tables < 1 || tables > levels) {
        throw InvalidConfigError("N must satisfy 1 <= N <= L");
    }
    if (levels % tables != 0) {
        throw InvalidConfigError("L must be divisible by N");
    }
    if (!is_power_of_two(max_table_size) || max_table_size < (1u << 14) ||
        max_table_size > (1u << 24)) {
        throw InvalidConfigError("T must be a power of two in [2^14, 2^24]");
    }
    if (features < 1) {
        throw InvalidConfigError("F must be at least 1");
    }
    if (coarsest < 1) {
        throw InvalidConfigError("N_min must be at least 1");
    }
    if (finest < coarsest) {
        throw InvalidConfigError("N_max must be at least N_min");
    }
}

double compute_growth_factor(int coarsest, int finest, int levels) {
    if (levels < 2) {
        throw InvalidConfigError("L must be at least 2");
    }
    if (coarsest < 1 || finest < coarsest) {
        throw InvalidConfigError("N_max must be at least N_min (and N_min >= 1)");
    }
    return std::pow(static_cast<double>(finest) / static_cast<double>(coarsest),
                    1.0 / static_cast<double>(levels - 1));
}

int level_resolution(int level, int coarsest, double growth, int num_levels) {
    if (level < 1 || level > num_levels) {
        throw InvalidConfigError("level index out of range");
    }
    const double value = static_cast<double>(coarsest) * std::pow(growth, level - 1);
    return static_cast<int>(std::floor(value * (1.0 + 1e-9)));
}

GridLevelSet GridLevelSet::from_config(const EncodingConfig& config) {
    config.validate();
    GridLevelSet out;
    out.growth = compute_growth_factor(config.coarsest, config.finest, config.levels);
    out.resolutions.resize(static_cast<std::size_t>(config.levels));
    for (int l = 1; l <= config.levels; ++l) {
        out.resolutions[static_cast<std::size_t>(l - 1)] =
            level_resolution(l, config.coarsest, out.growth, config.levels);
    }
    return out;
}

std::uint64_t corner_count(int resolution, int dim) {
    const std::uint64_t points = static_cast<std::uint64_t>(resolution) + 1;
    std::uint64_t n = 1;
    for (int d = 0; d < dim; ++d) n *= points;
    return n;
}

std::uint64_t group_capacity(const EncodingConfig& config, const GridLevelSet& levels,
                             int table_index) {
    config.validate();
    if (table_index < 1 || table_index > config.tables) {
        throw InvalidConfigError("table index out of range");
    }
    const int finest_level = table_index * config.levels_per_table();
    const std::uint64_t cube = corner_count(levels.resolution(finest_level), config.dim);
    return std::min<std::uint64_t>(config.max_table_size, cube);
}

std::vector<std::uint64_t> table_capacities(const EncodingConfig& config,
                                            const GridLevelSet& levels) {
    std::vector<std::uint64_t> caps(static_cast<std::size_t>(config.tables));
    for (int n = 1; n <= config.tables; ++n) {
        caps[static_cast<std::size_t>(n - 1)] = group_capacity(config, levels, n);
    }
    return caps;
}

}  // namespace mfnerf
