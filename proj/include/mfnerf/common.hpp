// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mfnerf {

// Trainable parameters and forward math are 32-bit; oracles and metrics
// accumulate in double where noted.
using Real = float;

using Vec2f = Eigen::Vector2f;
using Vec3f = Eigen::Vector3f;
using Vec3d = Eigen::Vector3d;
using Vec2i = Eigen::Vector2i;
using Vec3i = Eigen::Vector3i;

struct InvalidConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset / file-system problems (missing or malformed inputs).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorruptFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompatibleConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mfnerf
