#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fracdim {

// Seeded generator with hand-rolled distributions so that identical seeds
// give identical streams on every platform (std:: distributions are
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, m).
    std::size_t index(std::size_t m) {
        std::size_t k = static_cast<std::size_t>(uniform() * static_cast<double>(m));
        return k < m ? k : m - 1;
    }

    /// Sample from a probability vector by inverse CDF.
    std::size_t categorical(const std::vector<double>& p) {
        double u = uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            acc += p[i];
            if (u < acc) return i;
        }
        return p.empty() ? 0 : p.size() - 1;
    }

    /// Derive an independent stream (splitmix64 of seed and stream id).
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace fracdim
