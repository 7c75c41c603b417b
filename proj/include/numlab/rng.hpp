#pragma once

#include <cstdint>
#include <utility>

#include "numlab/linalg.hpp"

namespace numlab {

/// SplitMix64 generator state. Plain value: every draw returns the value
/// together with the successor state, so no hidden global state exists.
struct RngState {
    std::uint64_t state = 0;

    friend bool operator==(RngState, RngState) = default;
};

template <typename T>
struct Draw {
    T value;
    RngState next;
};

Draw<std::uint64_t> next_u64(RngState rng) noexcept;

/// Uniform on the 53-bit grid in [0, 1); never returns 1.0.
Draw<double> next_real(RngState rng) noexcept;

/// n x n matrix with entries drawn row-major from next_real.
Draw<Matrix> random_matrix(std::size_t n, RngState rng);

/// Independent stream for task k: the seed is next_u64 applied k times to
/// the master seed, taking the k-th output.
RngState split_stream(RngState master, std::size_t k) noexcept;

}  // namespace numlab
