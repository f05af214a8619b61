// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/encoding.hpp"

#include "mfnerf/hashing.hpp"

namespace mfnerf {

namespace {

template <int Dim>
void encode_impl(const FeatureTableBank& bank, const Eigen::MatrixXf& positions,
                 Eigen::MatrixXf& out) {
    const EncodingConfig& cfg = bank.config;
    const int f = cfg.features;
    const Eigen::Index batch = positions.cols();
    out.setZero(static_cast<Eigen::Index>(cfg.levels) * f, batch);

    for (int level = 1; level <= cfg.levels; ++level) {
        const int table = (level - 1) / cfg.levels_per_table();
        const int res = bank.levels.resolution(level);
        const int finest = bank.levels.resolution(GridLevelSet::group_finest_level(cfg, level));
        const auto& entries = bank.tables[static_cast<std::size_t>(table)];
        const std::uint64_t capacity = static_cast<std::uint64_t>(entries.cols());
        const Eigen::Index row0 = static_cast<Eigen::Index>(level - 1) * f;

        for (Eigen::Index col = 0; col < batch; ++col) {
            const Eigen::Matrix<Real, Dim, 1> x = positions.col(col).template head<Dim>();
            const auto corners = voxel_corners<Dim>(x, res);
            auto dst = out.block(row0, col, f, 1);
            for (int c = 0; c < CornerSet<Dim>::kCorners; ++c) {
                const auto moved =
                    index_transform<Dim>(corners.corners[static_cast<std::size_t>(c)], res, finest);
                const std::uint32_t entry = spatial_hash<Dim>(moved, capacity);
                dst += corners.weights[static_cast<std::size_t>(c)] *
                       entries.col(static_cast<Eigen::Index>(entry));
            }
        }
    }
}

template <int Dim>
void backward_impl(const FeatureTableBank& bank, const Eigen::MatrixXf& positions,
                   const Eigen::MatrixXf& grad_output, std::vector<Eigen::MatrixXf>& out_grads,
                   std::vector<std::vector<std::uint32_t>>& out_touched) {
    const EncodingConfig& cfg = bank.config;
    const int f = cfg.features;
    const Eigen::Index batch = positions.cols();

    for (int level = 1; level <= cfg.levels; ++level) {
        const int table = (level - 1) / cfg.levels_per_table();
        const int res = bank.levels.resolution(level);
        const int finest = bank.levels.resolution(GridLevelSet::group_finest_level(cfg, level));
        auto& grads = out_grads[static_cast<std::size_t>(table)];
        auto& touched = out_touched[static_cast<std::size_t>(table)];
        const std::uint64_t capacity = static_cast<std::uint64_t>(grads.cols());
        const Eigen::Index row0 = static_cast<Eigen::Index>(level - 1) * f;

        for (Eigen::Index col = 0; col < batch; ++col) {
            const Eigen::Matrix<Real, Dim, 1> x = positions.col(col).template head<Dim>();
            const auto corners = voxel_corners<Dim>(x, res);
            const auto src = grad_output.block(row0, col, f, 1);
            for (int c = 0; c < CornerSet<Dim>::kCorners; ++c) {
                const Real w = corners.weights[static_cast<std::size_t>(c)];
                if (w == Real(0)) continue;
                const auto moved =
                    index_transform<Dim>(corners.corners[static_cast<std::size_t>(c)], res, finest);
                const std::uint32_t entry = spatial_hash<Dim>(moved, capacity);
                grads.col(static_cast<Eigen::Index>(entry)) += w * src;
                touched.push_back(entry);
            }
        }
    }
}

void check_positions(const FeatureTableBank& bank, const Eigen::MatrixXf& positions) {
    if (positions.rows() != bank.config.dim) {
        throw ShapeMismatchError("position rows must equal the configured dimension");
    }
}

}  // namespace

Eigen::MatrixXf encode_batch(const FeatureTableBank& bank, const Eigen::MatrixXf& positions) {
    check_positions(bank, positions);
    Eigen::MatrixXf out;
    if (bank.config.dim == 2) {
        encode_impl<2>(bank, positions, out);
    } else {
        encode_impl<3>(bank, positions, out);
    }
    return out;
}

Eigen::VectorXf encode(const FeatureTableBank& bank, const Eigen::VectorXf& position) {
    return encode_batch(bank, position);
}

void encode_backward_batch(const FeatureTableBank& bank, const Eigen::MatrixXf& positions,
                           const Eigen::MatrixXf& grad_output,
                           std::vector<Eigen::MatrixXf>& grads,
                           std::vector<std::vector<std::uint32_t>>& touched) {
    check_positions(bank, positions);
    if (grad_output.rows() != static_cast<Eigen::Index>(bank.config.levels) * bank.config.features ||
        grad_output.cols() != positions.cols()) {
        throw ShapeMismatchError("encoding gradient must be (L*F) x batch");
    }
    if (bank.config.dim == 2) {
        backward_impl<2>(bank, positions, grad_output, grads, touched);
    } else {
        backward_impl<3>(bank, positions, grad_output, grads, touched);
    }
}

void encode_backward_batch(FeatureTableBank& bank, const Eigen::MatrixXf& positions,
                           const Eigen::MatrixXf& grad_output) {
    encode_backward_batch(bank, positions, grad_output, bank.grads, bank.touched);
}

void encode_backward(FeatureTableBank& bank, const Eigen::VectorXf& position,
                     const Eigen::VectorXf& grad_output) {
    encode_backward_batch(bank, position, grad_output);
}

}  // namespace mfnerf
