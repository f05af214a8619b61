// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace mfnerf {

// Fixed hashing primes; never configurable. Products wrap modulo 2^32 --
// the de-facto convention for this corner hash, and what the committed
// golden vectors encode.
inline constexpr std::uint32_t kHashPrimeX = 1u;
inline constexpr std::uint32_t kHashPrimeY = 2654435761u;
inline constexpr std::uint32_t kHashPrimeZ = 805459861u;

inline std::uint32_t spatial_hash(std::uint32_t i, std::uint32_t j, std::uint32_t k,
                                  std::uint64_t table_size) {
    const std::uint32_t h = (i * kHashPrimeX) ^ (j * kHashPrimeY) ^ (k * kHashPrimeZ);
    return static_cast<std::uint32_t>(h % table_size);
}

/// 2D queries hash with the third coordinate fixed to zero, so 2D and 3D
/// share golden vectors.
template <int Dim>
std::uint32_t spatial_hash(const Eigen::Matrix<int, Dim, 1>& coords, std::uint64_t table_size) {
    static_assert(Dim == 2 || Dim == 3, "spatial_hash supports 2D and 3D grids");
    const auto u = [](int v) { return static_cast<std::uint32_t>(v); };
    if constexpr (Dim == 2) {
        return spatial_hash(u(coords[0]), u(coords[1]), 0u, table_size);
    } else {
        return spatial_hash(u(coords[0]), u(coords[1]), u(coords[2]), table_size);
    }
}

}  // namespace mfnerf
