// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/feature_table.hpp"

#include "mfnerf/hashing.hpp"
#include "mfnerf/rng.hpp"

namespace mfnerf {

std::uint64_t FeatureTableBank::entry_total() const {
    std::uint64_t n = 0;
    for (const auto& t : tables) n += static_cast<std::uint64_t>(t.cols());
    return n;
}

std::uint64_t FeatureTableBank::scalar_total() const {
    return entry_total() * static_cast<std::uint64_t>(config.features);
}

void FeatureTableBank::clear_gradients() {
    for (std::size_t t = 0; t < grads.size(); ++t) {
        for (std::uint32_t entry : touched[t]) {
            grads[t].col(entry).setZero();
        }
        touched[t].clear();
    }
}

void FeatureTableBank::allocate_gradients() {
    grads.resize(tables.size());
    touched.assign(tables.size(), {});
    for (std::size_t t = 0; t < tables.size(); ++t) {
        grads[t] = Eigen::MatrixXf::Zero(tables[t].rows(), tables[t].cols());
    }
}

FeatureTableBank init_tables(const EncodingConfig& config, std::uint64_t seed) {
    config.validate();
    FeatureTableBank bank;
    bank.config = config;
    bank.levels = GridLevelSet::from_config(config);

    const auto caps = table_capacities(config, bank.levels);
    bank.tables.resize(caps.size());
    std::uint64_t counter = 0;  // global scalar index: the draw position
    for (std::size_t t = 0; t < caps.size(); ++t) {
        auto& table = bank.tables[t];
        table.resize(config.features, static_cast<Eigen::Index>(caps[t]));
        float* data = table.data();
        const std::uint64_t n = caps[t] * static_cast<std::uint64_t>(config.features);
        for (std::uint64_t i = 0; i < n; ++i) {
            const float u = static_cast<float>(CounterRng::at(seed, counter++) >> 40) * 0x1.0p-24f;
            data[i] = (2.0f * u - 1.0f) * 1e-4f;
        }
    }
    bank.allocate_gradients();
    return bank;
}

ParameterCount count_parameters(const EncodingConfig& config) {
    config.validate();
    const GridLevelSet levels = GridLevelSet::from_config(config);
    ParameterCount out;
    for (int n = 1; n <= config.tables; ++n) {
        out.entries += group_capacity(config, levels, n);
    }
    out.scalars = out.entries * static_cast<std::uint64_t>(config.features);
    return out;
}

namespace {

template <int Dim>
void probe_table(const EncodingConfig& config, const GridLevelSet& levels, int table_index,
                 int probe_resolution, TableOccupancy& out) {
    const std::uint64_t capacity = group_capacity(config, levels, table_index);
    const int finest = levels.resolution(GridLevelSet::group_finest_level(
        config, (table_index - 1) * config.levels_per_table() + 1));

    std::vector<std::uint32_t> hits(static_cast<std::size_t>(capacity), 0);
    const int points = probe_resolution + 1;
    Eigen::Matrix<int, Dim, 1> idx = Eigen::Matrix<int, Dim, 1>::Zero();
    std::uint64_t probes = 1;
    for (int d = 0; d < Dim; ++d) probes *= static_cast<std::uint64_t>(points);

    for (std::uint64_t flat = 0; flat < probes; ++flat) {
        std::uint64_t rest = flat;
        for (int d = 0; d < Dim; ++d) {
            idx[d] = static_cast<int>(rest % static_cast<std::uint64_t>(points));
            rest /= static_cast<std::uint64_t>(points);
        }
        const auto transformed = index_transform<Dim>(idx, probe_resolution, finest);
        ++hits[spatial_hash<Dim>(transformed, capacity)];
    }

    out.capacity = capacity;
    out.probes = probes;
    for (std::uint32_t h : hits) {
        if (h > 0) ++out.occupied;
        out.max_hits = std::max(out.max_hits, h);
    }
    out.load_factor = static_cast<double>(out.occupied) / static_cast<double>(capacity);
    out.histogram.assign(static_cast<std::size_t>(out.max_hits) + 1, 0);
    for (std::uint32_t h : hits) ++out.histogram[h];
}

}  // namespace

std::vector<TableOccupancy> collision_stats(const EncodingConfig& config, int probe_resolution) {
    config.validate();
    if (probe_resolution < 1) {
        throw InvalidConfigError("probe resolution must be at least 1");
    }
    const GridLevelSet levels = GridLevelSet::from_config(config);
    std::vector<TableOccupancy> out(static_cast<std::size_t>(config.tables));
    for (int n = 1; n <= config.tables; ++n) {
        auto& slot = out[static_cast<std::size_t>(n - 1)];
        if (config.dim == 2) {
            probe_table<2>(config, levels, n, probe_resolution, slot);
        } else {
            probe_table<3>(config, levels, n, probe_resolution, slot);
        }
    }
    return out;
}

}  // namespace mfnerf
