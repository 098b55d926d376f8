#ifndef SFCLUST_RNG_HPP
#define SFCLUST_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace sfclust {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `stream` of master seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/**
 * Portable random stream. The engine is std::mt19937_64, whose output
 * sequence is fixed by the standard. The distributions are implemented
 * here rather than taken from <random>, because the standard library
 * distributions are free to differ between implementations:
 *
 *  - uniform(): top 53 bits of one engine draw, scaled to [0, 1).
 *  - index(n): rejection sampling on the 64-bit draw, unbiased.
 *  - normal(): Box-Muller, using both variates of each pair.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }
    double uniform();
    double uniform_open();  // (0, 1)
    std::size_t index(std::size_t n);
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Fisher-Yates shuffle driven by index().
    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sfclust

#endif
