#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace simptop {

/// Deterministic splitmix64 generator. Used instead of <random> distributions
/// so that seeded reports are byte-identical across platforms and library
/// versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), n > 0. Rejection-free modulo is fine here;
    /// the slight bias is irrelevant for test-case generation.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform point of the standard simplex of dimension p (p+1 coordinates),
    /// via sorted-spacings sampling.
    std::vector<double> simplex_point(int p) {
        std::vector<double> cuts(static_cast<std::size_t>(p));
        for (auto& c : cuts) c = unit();
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> x(static_cast<std::size_t>(p) + 1);
        double prev = 0.0;
        for (int i = 0; i < p; ++i) {
            x[static_cast<std::size_t>(i)] = cuts[static_cast<std::size_t>(i)] - prev;
            prev = cuts[static_cast<std::size_t>(i)];
        }
        x[static_cast<std::size_t>(p)] = 1.0 - prev;
        return x;
    }

private:
    std::uint64_t state_;
};

} // namespace simptop
