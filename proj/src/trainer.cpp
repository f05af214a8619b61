// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mfnerf/compositing.hpp"
#include "mfnerf/parallel.hpp"
#include "mfnerf/sampling.hpp"
#include "mfnerf/schedule.hpp"

namespace mfnerf {

void TrainConfig::validate() const {
    if (batch_size < 1) {
        throw InvalidConfigError("batch size must be at least 1");
    }
    if (total_steps < 0) {
        throw InvalidConfigError("total_steps must be non-negative");
    }
    if (!(lr_final > 0.0 && lr_final <= lr_init)) {
        throw InvalidConfigError("learning rates must satisfy 0 < lr_final <= lr_init");
    }
    if (samples_per_ray < 1) {
        throw InvalidConfigError("samples_per_ray must be at least 1");
    }
    if (!(scene_scale > 0.0f)) {
        throw InvalidConfigError("scene scale must be positive");
    }
}

TableMoments TableMoments::zeros_like(const FeatureTableBank& bank) {
    TableMoments out;
    out.m.resize(bank.tables.size());
    out.v.resize(bank.tables.size());
    for (std::size_t t = 0; t < bank.tables.size(); ++t) {
        out.m[t] = Eigen::MatrixXf::Zero(bank.tables[t].rows(), bank.tables[t].cols());
        out.v[t] = Eigen::MatrixXf::Zero(bank.tables[t].rows(), bank.tables[t].cols());
    }
    return out;
}

namespace {

// Independent derived seeds so the table stream, the network-init stream
// and the training stream never reuse counters.
std::uint64_t mlp_seed(std::uint64_t seed) {
    return CounterRng::mix(seed ^ 0x7F4A7C15A02D31C3ull);
}
std::uint64_t train_stream_seed(std::uint64_t seed) {
    return CounterRng::mix(seed ^ 0x12F8D4A7C39B06E5ull);
}

}  // namespace

TrainState init_train_state(const EncodingConfig& encoding, const TrainConfig& config) {
    encoding.validate();
    config.validate();
    TrainState state;
    state.encoding = encoding;
    state.config = config;
    state.bank = init_tables(encoding, config.seed);
    CounterRng mlp_rng(mlp_seed(config.seed));
    state.mlp = MlpParameters::init(encoding.levels * encoding.features, mlp_rng);
    state.mlp_m = MlpParameters::zeros_like(state.mlp);
    state.mlp_v = MlpParameters::zeros_like(state.mlp);
    state.table_moments = TableMoments::zeros_like(state.bank);
    state.step = 0;
    state.rng = CounterRng(train_stream_seed(config.seed));
    return state;
}

std::pair<double, Eigen::Matrix3Xf> l2_loss(const Eigen::Matrix3Xf& rendered,
                                            const Eigen::Matrix3Xf& target) {
    if (rendered.cols() != target.cols()) {
        throw ShapeMismatchError("loss batches must have equal length");
    }
    Eigen::Matrix3Xf grad = 2.0f * (rendered - target);
    double loss = 0.0;
    for (Eigen::Index c = 0; c < rendered.cols(); ++c) {
        loss += (rendered.col(c) - target.col(c)).cast<double>().squaredNorm();
    }
    return {loss, std::move(grad)};
}

namespace {

struct Batch3d {
    Eigen::Matrix3Xf targets;  // 3 x rays
    Eigen::MatrixXf dir_enc;   // 16 x rays
    std::vector<int> offsets;  // rays + 1, sample ranges
    Eigen::Matrix3Xf positions;
    Eigen::VectorXf deltas;
    int rays = 0;
    int samples = 0;
};

Batch3d assemble_batch_3d(const Dataset& data, const TrainConfig& cfg, CounterRng& rng) {
    const SceneBox box = cfg.scene_box();
    const int rays = cfg.batch_size;
    Batch3d batch;
    batch.rays = rays;
    batch.targets.resize(3, rays);
    batch.dir_enc.resize(kDirEncodingDim, rays);
    batch.offsets.assign(static_cast<std::size_t>(rays) + 1, 0);

    std::vector<RaySampleSet> sets(static_cast<std::size_t>(rays));
    const std::uint64_t n_frames = data.frames.size();
    for (int r = 0; r < rays; ++r) {
        const auto& frame = data.frames[static_cast<std::size_t>(rng.next_below(n_frames))];
        const std::uint64_t pix = rng.next_below(frame.image.pixel_count());
        const int u = static_cast<int>(pix % static_cast<std::uint64_t>(frame.image.width));
        const int v = static_cast<int>(pix / static_cast<std::uint64_t>(frame.image.width));
        const Ray ray = generate_ray(frame.camera, u, v);
        batch.targets.col(r) = frame.image.rgb(u, v);
        batch.dir_enc.col(r) = encode_direction(ray.direction);
        sets[static_cast<std::size_t>(r)] =
            sample_ray(ray, frame.camera.near, frame.camera.far, cfg.samples_per_ray, box, &rng);
        batch.offsets[static_cast<std::size_t>(r) + 1] =
            batch.offsets[static_cast<std::size_t>(r)] + sets[static_cast<std::size_t>(r)].count();
    }
    batch.samples = batch.offsets.back();
    batch.positions.resize(3, batch.samples);
    batch.deltas.resize(batch.samples);
    for (int r = 0; r < rays; ++r) {
        const auto& s = sets[static_cast<std::size_t>(r)];
        if (s.empty()) continue;
        const int at = batch.offsets[static_cast<std::size_t>(r)];
        batch.positions.middleCols(at, s.count()) = s.positions;
        batch.deltas.segment(at, s.count()) = s.deltas;
    }
    return batch;
}

// Per-worker gradient buffers, allocated once and reused across steps.
struct WorkerGrads {
    MlpParameters mlp;
    std::vector<Eigen::MatrixXf> tables;
    std::vector<std::vector<std::uint32_t>> touched;
    double loss = 0.0;
    bool used = false;

    void ensure(const TrainState& state) {
        if (tables.empty()) {
            mlp = MlpParameters::zeros_like(state.mlp);
            tables.resize(state.bank.tables.size());
            touched.assign(state.bank.tables.size(), {});
            for (std::size_t t = 0; t < tables.size(); ++t) {
                tables[t] = Eigen::MatrixXf::Zero(state.bank.tables[t].rows(),
                                                  state.bank.tables[t].cols());
            }
        }
        loss = 0.0;
        used = false;
    }
};

double batch_psnr(double loss, int rays) {
    const double mse = loss / (3.0 * static_cast<double>(rays));
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

struct Snapshot {
    FeatureTableBank bank;
    MlpParameters mlp, mlp_m, mlp_v;
    TableMoments moments;
    std::uint64_t step;
    std::uint64_t rng_counter;
};

Snapshot take_snapshot(const TrainState& s) {
    return {s.bank, s.mlp, s.mlp_m, s.mlp_v, s.table_moments, s.step, s.rng.counter()};
}

void restore_snapshot(TrainState& s, const Snapshot& snap) {
    s.bank = snap.bank;
    s.mlp = snap.mlp;
    s.mlp_m = snap.mlp_m;
    s.mlp_v = snap.mlp_v;
    s.table_moments = snap.moments;
    s.step = snap.step;
    s.rng.set_counter(snap.rng_counter);
}

}  // namespace

TrainResult train_steps(TrainState& state, const TrainData& data, std::uint64_t to_step,
                        const TrainOptions& options) {
    state.config.validate();
    const bool image2d = std::holds_alternative<Image2dDataset>(data);
    if (image2d != (state.config.mode == TrainMode::kImage2d)) {
        throw InvalidConfigError("training data does not match the configured mode");
    }
    if (!image2d && std::get<Dataset>(data).frames.empty()) {
        throw InvalidConfigError("dataset is empty");
    }
    if (image2d && state.encoding.dim != 2) {
        throw InvalidConfigError("2d fitting requires dim = 2");
    }
    if (!image2d && state.encoding.dim != 3) {
        throw InvalidConfigError("volume training requires dim = 3");
    }

    TrainResult result;
    result.steps_completed = state.step;
    if (state.step >= to_step) {
        return result;
    }

    const int threads = options.deterministic ? 1 : std::max(1, options.threads);
    const Vec3f background = background_rgb(state.config.background);
    // 2d fitting has no view direction; the encoding of a fixed axis keeps
    // the color network input layout identical to the volume path.
    const Eigen::Matrix<Real, kDirEncodingDim, 1> flat_dir = encode_direction(Vec3f::UnitZ());

    std::vector<WorkerGrads> workers(static_cast<std::size_t>(threads));
    MlpParameters mlp_grads = MlpParameters::zeros_like(state.mlp);

    // Forward + backward over one batch; gradients land in the worker
    // buffers and are merged into bank.grads / mlp_grads in chunk order.
    auto run_batch = [&]() -> double {
        const int batch_rays = state.config.batch_size;
        for (auto& w : workers) w.ensure(state);

        if (image2d) {
            const auto& task = std::get<Image2dDataset>(data);
            Eigen::MatrixXf positions(2, batch_rays);
            Eigen::Matrix3Xf targets(3, batch_rays);
            for (int r = 0; r < batch_rays; ++r) {
                const auto pix = static_cast<std::size_t>(state.rng.next_below(task.count()));
                positions.col(r) = task.coord(pix);
                targets.col(r) = task.color(pix);
            }
            parallel_chunks(batch_rays, threads, [&](int begin, int end, int chunk) {
                WorkerGrads& w = workers[static_cast<std::size_t>(chunk)];
                w.used = true;
                const int count = end - begin;
                const Eigen::MatrixXf pos = positions.middleCols(begin, count);
                const Eigen::MatrixXf encoded = encode_batch(state.bank, pos);
                MlpForwardCache cache;
                mlp_forward(state.mlp, encoded, flat_dir.replicate(1, count), cache);
                auto [loss, dcolor] = l2_loss(cache.color, targets.middleCols(begin, count));
                w.loss = loss;
                Eigen::MatrixXf dinput;
                mlp_backward(state.mlp, cache, Eigen::VectorXf::Zero(count), dcolor, w.mlp,
                             dinput);
                encode_backward_batch(state.bank, pos, dinput, w.tables, w.touched);
            });
        } else {
            const auto& dataset = std::get<Dataset>(data);
            const Batch3d batch = assemble_batch_3d(dataset, state.config, state.rng);
            parallel_chunks(batch.rays, threads, [&](int begin, int end, int chunk) {
                WorkerGrads& w = workers[static_cast<std::size_t>(chunk)];
                w.used = true;
                const int s_begin = batch.offsets[static_cast<std::size_t>(begin)];
                const int s_count = batch.offsets[static_cast<std::size_t>(end)] - s_begin;
                double loss_chunk = 0.0;

                if (s_count == 0) {
                    for (int r = begin; r < end; ++r) {
                        loss_chunk += (background - Vec3f(batch.targets.col(r)))
                                          .cast<double>()
                                          .squaredNorm();
                    }
                    w.loss = loss_chunk;
                    return;
                }

                const Eigen::MatrixXf pos = batch.positions.middleCols(s_begin, s_count);
                const Eigen::MatrixXf encoded = encode_batch(state.bank, pos);
                Eigen::MatrixXf dirs(kDirEncodingDim, s_count);
                for (int r = begin; r < end; ++r) {
                    const int a = batch.offsets[static_cast<std::size_t>(r)] - s_begin;
                    const int n = batch.offsets[static_cast<std::size_t>(r) + 1] - s_begin - a;
                    if (n > 0) dirs.middleCols(a, n) = batch.dir_enc.col(r).replicate(1, n);
                }
                MlpForwardCache cache;
                mlp_forward(state.mlp, encoded, dirs, cache);
                Eigen::VectorXf dsigma = Eigen::VectorXf::Zero(s_count);
                Eigen::Matrix3Xf dcolor = Eigen::Matrix3Xf::Zero(3, s_count);

                for (int r = begin; r < end; ++r) {
                    const int a = batch.offsets[static_cast<std::size_t>(r)] - s_begin;
                    const int n = batch.offsets[static_cast<std::size_t>(r) + 1] - s_begin - a;
                    const Vec3f target = batch.targets.col(r);
                    if (n == 0) {
                        loss_chunk += (background - target).cast<double>().squaredNorm();
                        continue;
                    }
                    const Eigen::VectorXf sigmas = cache.sigma.segment(a, n);
                    const Eigen::VectorXf deltas = batch.deltas.segment(s_begin + a, n);
                    const Eigen::Matrix3Xf colors = cache.color.middleCols(a, n);
                    const CompositeResult comp = composite(sigmas, deltas, colors, background);
                    const Vec3f diff = comp.color - target;
                    loss_chunk += diff.cast<double>().squaredNorm();
                    const Vec3f dray = 2.0f * diff;
                    Eigen::VectorXf ds;
                    Eigen::Matrix3Xf dc;
                    composite_backward(sigmas, deltas, colors, background, comp, dray, ds, dc);
                    dsigma.segment(a, n) = ds;
                    dcolor.middleCols(a, n) = dc;
                }
                Eigen::MatrixXf dinput;
                mlp_backward(state.mlp, cache, dsigma, dcolor, w.mlp, dinput);
                encode_backward_batch(state.bank, pos, dinput, w.tables, w.touched);
                w.loss = loss_chunk;
            });
        }

        // deterministic merge in chunk order
        double loss_total = 0.0;
        mlp_grads.set_zero();
        for (auto& w : workers) {
            if (!w.used) continue;
            loss_total += w.loss;
            mlp_grads.add(w.mlp);
            for (std::size_t t = 0; t < w.tables.size(); ++t) {
                for (std::uint32_t entry : w.touched[t]) {
                    state.bank.grads[t].col(entry) += w.tables[t].col(entry);
                    state.bank.touched[t].push_back(entry);
                    w.tables[t].col(entry).setZero();
                }
                w.touched[t].clear();
            }
        }
        return loss_total;
    };

    auto emit = [&](const MetricRow& row) {
        result.log.push_back(row);
        if (options.on_metric) options.on_metric(row);
    };

    Snapshot last_good = take_snapshot(state);
    auto clock_mark = std::chrono::steady_clock::now();
    std::uint64_t rays_since_metric = 0;
    const std::uint64_t total = static_cast<std::uint64_t>(state.config.total_steps);
    const auto interval = static_cast<std::uint64_t>(std::max(1, options.metric_interval));

    while (state.step < to_step) {
        const bool row_due = state.step % interval == 0;
        if (row_due) {
            last_good = take_snapshot(state);
        }

        double loss = 0.0;
        bool diverged = false;
        try {
            loss = run_batch();
            if (!std::isfinite(loss)) diverged = true;
        } catch (const DivergedError&) {
            diverged = true;
        }
        if (diverged) {
            restore_snapshot(state, last_good);
            result.diverged = true;
            result.steps_completed = state.step;
            return result;
        }

        const double lr = lr_schedule(std::min(state.step, total), total, state.config.lr_init,
                                      state.config.lr_final);
        if (row_due) {
            const auto now = std::chrono::steady_clock::now();
            const double elapsed = std::chrono::duration<double>(now - clock_mark).count();
            MetricRow row;
            row.step = state.step;
            row.loss = loss;
            row.psnr = batch_psnr(loss, state.config.batch_size);
            row.lr = lr;
            row.rays_per_sec = (options.deterministic || elapsed <= 0.0 || rays_since_metric == 0)
                                   ? 0.0
                                   : static_cast<double>(rays_since_metric) / elapsed;
            emit(row);
            clock_mark = now;
            rays_since_metric = 0;
        }

        try {
            for (std::size_t t = 0; t < state.bank.tables.size(); ++t) {
                auto& touched = state.bank.touched[t];
                std::sort(touched.begin(), touched.end());
                touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
                adam_step_sparse(state.bank.tables[t], state.bank.grads[t],
                                 state.table_moments.m[t], state.table_moments.v[t], touched, lr,
                                 state.step + 1, state.config.adam);
            }
            auto params = state.mlp.spans();
            auto grads = mlp_grads.spans();
            auto ms = state.mlp_m.spans();
            auto vs = state.mlp_v.spans();
            for (std::size_t i = 0; i < params.size(); ++i) {
                adam_step(params[i].data, grads[i].data, ms[i].data, vs[i].data, params[i].size,
                          lr, state.step + 1, state.config.adam);
            }
        } catch (const DivergedError&) {
            restore_snapshot(state, last_good);
            result.diverged = true;
            result.steps_completed = state.step;
            return result;
        }
        state.bank.clear_gradients();
        ++state.step;
        rays_since_metric += static_cast<std::uint64_t>(state.config.batch_size);
    }

    result.steps_completed = state.step;
    return result;
}

}  // namespace mfnerf
