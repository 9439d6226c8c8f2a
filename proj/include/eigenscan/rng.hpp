#ifndef EIGENSCAN_RNG_HPP
#define EIGENSCAN_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace eigenscan {

// Deterministic random source. Every randomized operation in the toolkit
// draws from this wrapper so that seeds are portable across platforms and
// across implementations of the file formats:
//   - engine: std::mt19937_64 seeded with the single 64-bit seed (the
//     initialization sequence is fixed by the C++ standard),
//   - unit doubles: top 53 bits of one draw, u = (x >> 11) * 2^-53,
//   - bounded integers: 128-bit multiply reduction, (x * n) >> 64.
// std::uniform_*_distribution and std::shuffle are never used; their output
// is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n); n must be nonzero.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Fisher-Yates, one next_below(i) draw per step from the back.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace eigenscan

#endif
