#pragma once

#include <cstdint>

#include "relmod/algebra.hpp"

namespace relmod {

/// Counter-based deterministic generator. Word i of stream `seed` is the
/// SplitMix64 finalizer applied to seed + (i+1) * 0x9E3779B97F4A7C15; the
/// stream therefore depends only on (seed, counter), never on call history
/// of other streams, and reproduces bit-exactly across platforms.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    static std::uint64_t word(std::uint64_t seed, std::uint64_t counter);

    std::uint64_t next_u64() { return word(seed_, counter_++); }

    /// Uniform in [0,1), 53 bits.
    double next_double();

    /// Uniform in (0,1]; safe to feed into log().
    double next_open_double();

    /// Standard normal via Box-Muller (both words always consumed).
    double next_gaussian();

    Complex next_complex_gaussian();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

/// Matrix with i.i.d. standard complex Gaussian entries (row-major fill order).
Matrix gaussian_matrix(CounterRng& rng, int rows, int cols);

/// PSD matrix G G* with G of shape dim x rank. rank = dim gives a generically
/// faithful density.
Matrix random_psd(CounterRng& rng, int dim, int rank);

/// Haar-ish unitary: QR of a Gaussian matrix with the phase convention
/// R_ii > 0, which makes the result deterministic.
Matrix random_unitary(CounterRng& rng, int dim);

/// Random positive functional; rank < 0 means full rank per block.
/// normalize makes the total mass 1.
NormalFunctional random_functional(CounterRng& rng, const Algebra& a, int rank = -1,
                                   bool normalize = false);

}  // namespace relmod
