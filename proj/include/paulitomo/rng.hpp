#pragma once

#include <cstdint>
#include <random>

namespace paulitomo {

/// Seeded random stream. Every stochastic routine takes one of these by
/// reference; a fixed seed fixes the whole transcript. `fork()` derives an
/// independent child stream so parallelizable stages (per-column tomography,
/// sweep rows) consume randomness in a schedule-independent way.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::mt19937_64& engine() { return gen_; }

    Rng fork() { return Rng(gen_()); }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    double gaussian() {
        return std::normal_distribution<double>(0.0, 1.0)(gen_);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return std::bernoulli_distribution(p)(gen_);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace paulitomo
