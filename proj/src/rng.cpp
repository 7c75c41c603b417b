#include "numlab/rng.hpp"

namespace numlab {

Draw<std::uint64_t> next_u64(RngState rng) noexcept {
    std::uint64_t s = rng.state + 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return {z ^ (z >> 31), RngState{s}};
}

Draw<double> next_real(RngState rng) noexcept {
    const auto [bits, next] = next_u64(rng);
    return {static_cast<double>(bits >> 11) * 0x1.0p-53, next};
}

Draw<Matrix> random_matrix(std::size_t n, RngState rng) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto d = next_real(rng);
            m(i, j) = d.value;
            rng = d.next;
        }
    return {std::move(m), rng};
}

RngState split_stream(RngState master, std::size_t k) noexcept {
    std::uint64_t seed = master.state;
    for (std::size_t i = 0; i < k; ++i) {
        const auto d = next_u64(master);
        seed = d.value;
        master = d.next;
    }
    return RngState{seed};
}

}  // namespace numlab
