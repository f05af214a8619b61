// SPDX-License-Identifier: Apache-2.0
#include "mfnerf/mlp.hpp"

#include <cmath>

namespace mfnerf {

namespace {

void fill_fan_in_uniform(Eigen::MatrixXf& w, CounterRng& rng) {
    const float bound = std::sqrt(6.0f / static_cast<float>(w.cols()));
    float* data = w.data();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        data[i] = (2.0f * rng.next_float() - 1.0f) * bound;
    }
}

inline Eigen::MatrixXf rectified(const Eigen::MatrixXf& z) { return z.cwiseMax(0.0f); }

}  // namespace

MlpParameters MlpParameters::init(int input_dim, CounterRng& rng) {
    MlpParameters p;
    p.density_w1.resize(kDensityHidden, input_dim);
    p.density_b1 = Eigen::VectorXf::Zero(kDensityHidden);
    p.density_w2.resize(kDensityFeatures, kDensityHidden);
    p.color_w1.resize(kColorHidden, kDensityFeatures + kDirEncodingDim);
    p.color_b1 = Eigen::VectorXf::Zero(kColorHidden);
    p.color_w2.resize(kColorHidden, kColorHidden);
    p.color_b2 = Eigen::VectorXf::Zero(kColorHidden);
    p.color_w3.resize(3, kColorHidden);

    fill_fan_in_uniform(p.density_w1, rng);
    fill_fan_in_uniform(p.density_w2, rng);
    fill_fan_in_uniform(p.color_w1, rng);
    fill_fan_in_uniform(p.color_w2, rng);
    fill_fan_in_uniform(p.color_w3, rng);
    return p;
}

MlpParameters MlpParameters::zeros_like(const MlpParameters& other) {
    MlpParameters p;
    p.density_w1 = Eigen::MatrixXf::Zero(other.density_w1.rows(), other.density_w1.cols());
    p.density_b1 = Eigen::VectorXf::Zero(other.density_b1.size());
    p.density_w2 = Eigen::MatrixXf::Zero(other.density_w2.rows(), other.density_w2.cols());
    p.color_w1 = Eigen::MatrixXf::Zero(other.color_w1.rows(), other.color_w1.cols());
    p.color_b1 = Eigen::VectorXf::Zero(other.color_b1.size());
    p.color_w2 = Eigen::MatrixXf::Zero(other.color_w2.rows(), other.color_w2.cols());
    p.color_b2 = Eigen::VectorXf::Zero(other.color_b2.size());
    p.color_w3 = Eigen::MatrixXf::Zero(other.color_w3.rows(), other.color_w3.cols());
    return p;
}

std::size_t MlpParameters::parameter_count() const {
    std::size_t n = 0;
    for (const auto& s : spans()) n += s.size;
    return n;
}

std::vector<MlpParameters::Span> MlpParameters::spans() {
    auto sp = [](Eigen::MatrixXf& m) {
        return Span{m.data(), static_cast<std::size_t>(m.size())};
    };
    auto spv = [](Eigen::VectorXf& v) {
        return Span{v.data(), static_cast<std::size_t>(v.size())};
    };
    return {sp(density_w1), spv(density_b1), sp(density_w2), sp(color_w1),
            spv(color_b1),  sp(color_w2),    spv(color_b2),  sp(color_w3)};
}

std::vector<MlpParameters::ConstSpan> MlpParameters::spans() const {
    auto sp = [](const Eigen::MatrixXf& m) {
        return ConstSpan{m.data(), static_cast<std::size_t>(m.size())};
    };
    auto spv = [](const Eigen::VectorXf& v) {
        return ConstSpan{v.data(), static_cast<std::size_t>(v.size())};
    };
    return {sp(density_w1), spv(density_b1), sp(density_w2), sp(color_w1),
            spv(color_b1),  sp(color_w2),    spv(color_b2),  sp(color_w3)};
}

void MlpParameters::set_zero() {
    for (auto& s : spans()) {
        std::fill(s.data, s.data + s.size, 0.0f);
    }
}

void MlpParameters::add(const MlpParameters& other) {
    auto mine = spans();
    auto theirs = other.spans();
    for (std::size_t i = 0; i < mine.size(); ++i) {
        if (mine[i].size != theirs[i].size) {
            throw ShapeMismatchError("mlp parameter shapes differ");
        }
        for (std::size_t j = 0; j < mine[i].size; ++j) mine[i].data[j] += theirs[i].data[j];
    }
}

void mlp_forward(const MlpParameters& params, const Eigen::MatrixXf& encoded,
                 const Eigen::MatrixXf& dir_encoded, MlpForwardCache& cache) {
    if (encoded.rows() != params.density_w1.cols()) {
        throw ShapeMismatchError("encoded feature rows do not match the density network input");
    }
    if (dir_encoded.rows() != kDirEncodingDim || dir_encoded.cols() != encoded.cols()) {
        throw ShapeMismatchError("direction encoding must be 16 x batch");
    }
    const Eigen::Index batch = encoded.cols();

    cache.input = encoded;
    cache.dir = dir_encoded;
    cache.density_z1 = (params.density_w1 * encoded).colwise() + params.density_b1;
    cache.density_h1 = rectified(cache.density_z1);
    cache.features = params.density_w2 * cache.density_h1;

    Eigen::MatrixXf color_in(kDensityFeatures + kDirEncodingDim, batch);
    color_in.topRows(kDensityFeatures) = cache.features;
    color_in.bottomRows(kDirEncodingDim) = dir_encoded;
    cache.color_z1 = (params.color_w1 * color_in).colwise() + params.color_b1;
    cache.color_h1 = rectified(cache.color_z1);
    cache.color_z2 = (params.color_w2 * cache.color_h1).colwise() + params.color_b2;
    cache.color_h2 = rectified(cache.color_z2);
    cache.logits = params.color_w3 * cache.color_h2;

    cache.sigma.resize(batch);
    cache.color.resize(3, batch);
    for (Eigen::Index c = 0; c < batch; ++c) {
        const float logit = std::min(std::max(cache.features(0, c), -kDensityLogitClamp),
                                     kDensityLogitClamp);
        cache.sigma[c] = std::exp(logit);
        for (int k = 0; k < 3; ++k) {
            cache.color(k, c) = 1.0f / (1.0f + std::exp(-cache.logits(k, c)));
        }
    }
    if (!cache.sigma.allFinite() || !cache.color.allFinite()) {
        throw DivergedError("non-finite activation in the renderer network");
    }
    cache.valid = true;
}

PointRadiance mlp_forward(const MlpParameters& params, const Eigen::VectorXf& encoded,
                          const Eigen::Matrix<Real, kDirEncodingDim, 1>& dir_encoded) {
    MlpForwardCache cache;
    mlp_forward(params, encoded, Eigen::MatrixXf(dir_encoded), cache);
    PointRadiance out;
    out.sigma = cache.sigma[0];
    out.color = cache.color.col(0);
    out.features = cache.features.col(0);
    return out;
}

void mlp_backward(const MlpParameters& params, const MlpForwardCache& cache,
                  const Eigen::VectorXf& grad_sigma, const Eigen::Matrix3Xf& grad_color,
                  MlpParameters& grad_params, Eigen::MatrixXf& grad_input) {
    if (!cache.valid) {
        throw ShapeMismatchError("mlp_backward requires a cached forward pass");
    }
    const Eigen::Index batch = cache.input.cols();
    if (grad_sigma.size() != batch || grad_color.rows() != 3 || grad_color.cols() != batch) {
        throw ShapeMismatchError("gradient shapes do not match the cached batch");
    }

    // logistic output: dlogits = dcolor * c * (1 - c)
    Eigen::MatrixXf dlogits =
        grad_color.cwiseProduct(cache.color.cwiseProduct((1.0f - cache.color.array()).matrix()));

    grad_params.color_w3.noalias() = dlogits * cache.color_h2.transpose();
    Eigen::MatrixXf dh2 = params.color_w3.transpose() * dlogits;
    Eigen::MatrixXf dz2 =
        (cache.color_z2.array() > 0.0f).select(dh2, Eigen::MatrixXf::Zero(dh2.rows(), dh2.cols()));
    grad_params.color_w2.noalias() = dz2 * cache.color_h1.transpose();
    grad_params.color_b2 = dz2.rowwise().sum();
    Eigen::MatrixXf dh1 = params.color_w2.transpose() * dz2;
    Eigen::MatrixXf dz1 =
        (cache.color_z1.array() > 0.0f).select(dh1, Eigen::MatrixXf::Zero(dh1.rows(), dh1.cols()));

    Eigen::MatrixXf color_in(kDensityFeatures + kDirEncodingDim, batch);
    color_in.topRows(kDensityFeatures) = cache.features;
    color_in.bottomRows(kDirEncodingDim) = cache.dir;
    grad_params.color_w1.noalias() = dz1 * color_in.transpose();
    grad_params.color_b1 = dz1.rowwise().sum();
    Eigen::MatrixXf dcolor_in = params.color_w1.transpose() * dz1;

    // features receive gradient from the color branch and, on channel 0,
    // from the density: d sigma / d f0 = sigma inside the clamp, 0 outside.
    Eigen::MatrixXf dfeatures = dcolor_in.topRows(kDensityFeatures);
    for (Eigen::Index c = 0; c < batch; ++c) {
        const float f0 = cache.features(0, c);
        if (f0 > -kDensityLogitClamp && f0 < kDensityLogitClamp) {
            dfeatures(0, c) += grad_sigma[c] * cache.sigma[c];
        }
    }

    grad_params.density_w2.noalias() = dfeatures * cache.density_h1.transpose();
    Eigen::MatrixXf dd_h1 = params.density_w2.transpose() * dfeatures;
    Eigen::MatrixXf dd_z1 = (cache.density_z1.array() > 0.0f)
                                .select(dd_h1, Eigen::MatrixXf::Zero(dd_h1.rows(), dd_h1.cols()));
    grad_params.density_w1.noalias() = dd_z1 * cache.input.transpose();
    grad_params.density_b1 = dd_z1.rowwise().sum();
    grad_input.noalias() = params.density_w1.transpose() * dd_z1;
}

}  // namespace mfnerf
