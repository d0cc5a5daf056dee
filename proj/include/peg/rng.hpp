#ifndef PEG_RNG_HPP
#define PEG_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace peg {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG wrapper. Bounded draws and unit doubles are computed
// by hand so that identical seeds produce identical streams on every
// platform (std::uniform_*_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : engine_(splitmix64(seed)),
          child_base_(splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n), n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[bounded(i)]);
        }
    }

    // Independent child stream, e.g. one per scenario or per trace.
    Rng child(std::uint64_t index) const { return Rng(child_base_ + index); }

private:
    std::mt19937_64 engine_;
    std::uint64_t child_base_;
};

}  // namespace peg

#endif
