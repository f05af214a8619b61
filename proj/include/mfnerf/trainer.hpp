// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "mfnerf/adam.hpp"
#include "mfnerf/dataset.hpp"
#include "mfnerf/encoding.hpp"
#include "mfnerf/mlp.hpp"
#include "mfnerf/rng.hpp"

namespace mfnerf {

enum class TrainMode { kNerf3d, kImage2d, kOracle3d };

/// Optimization hyperparameters plus the run attributes that must travel
/// with a checkpoint (mode, scene mapping, background).
struct TrainConfig {
    int batch_size = 16384;     ///< rays (or pixels) per step
    int total_steps = 20000;
    double lr_init = 2e-2;
    double lr_final = 2e-4;
    std::uint64_t seed = 1337;
    int samples_per_ray = 64;
    AdamHyperparams adam;

    TrainMode mode = TrainMode::kNerf3d;
    BackgroundColor background = BackgroundColor::kWhite;
    float scene_scale = 1.0f;
    Vec3f scene_center = Vec3f::Zero();

    void validate() const;
    SceneBox scene_box() const { return SceneBox{scene_center, scene_scale}; }
};

/// Adam moments for the feature tables, shaped like the bank.
struct TableMoments {
    std::vector<Eigen::MatrixXf> m;
    std::vector<Eigen::MatrixXf> v;

    static TableMoments zeros_like(const FeatureTableBank& bank);
};

/// Everything the optimizer evolves; serializable bit-exactly.
struct TrainState {
    EncodingConfig encoding;
    TrainConfig config;
    FeatureTableBank bank;
    MlpParameters mlp;
    MlpParameters mlp_m, mlp_v;
    TableMoments table_moments;
    std::uint64_t step = 0;
    CounterRng rng{0};
};

/// Fresh state: tables from init_tables(seed), network weights from the
/// same seeded stream (offset so draws never overlap the table stream).
TrainState init_train_state(const EncodingConfig& encoding, const TrainConfig& config);

struct MetricRow {
    std::uint64_t step = 0;
    double loss = 0.0;
    double psnr = 0.0;  ///< batch PSNR implied by the loss
    double lr = 0.0;
    double rays_per_sec = 0.0;  ///< 0 in deterministic mode
};

struct TrainOptions {
    int threads = 1;            ///< worker threads; <= 1 is the serial path
    bool deterministic = false; ///< force serial, zero wall-clock metrics
    int metric_interval = 100;
    std::function<void(const MetricRow&)> on_metric;
};

struct TrainResult {
    bool diverged = false;
    std::uint64_t steps_completed = 0;
    std::vector<MetricRow> log;
};

using TrainData = std::variant<Dataset, Image2dDataset>;

/// Batch L2 loss, summed (not averaged) over rays, and its gradient
/// 2*(rendered - target) per ray.
std::pair<double, Eigen::Matrix3Xf> l2_loss(const Eigen::Matrix3Xf& rendered,
                                            const Eigen::Matrix3Xf& target);

/// Advances the state to `to_step`. A metric row is emitted at step 0 and
/// every metric_interval steps. On a non-finite loss the state is rolled
/// back to the last emitted metric row's snapshot and `diverged` is set.
TrainResult train_steps(TrainState& state, const TrainData& data, std::uint64_t to_step,
                        const TrainOptions& options);

/// Full run from a fresh state.
inline TrainResult train(TrainState& state, const TrainData& data, const TrainOptions& options) {
    return train_steps(state, data, static_cast<std::uint64_t>(state.config.total_steps), options);
}

}  // namespace mfnerf
