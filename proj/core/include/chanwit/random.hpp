#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chanwit/matcore.hpp"

namespace chanwit::rnd {

using Rng = std::mt19937_64;

/// Independent, reproducible stream `stream` derived from `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Complex Ginibre matrix with i.i.d. standard normal real/imag parts.
mat::CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
mat::CMatrix haar_unitary(std::size_t d, Rng& rng);

mat::CVector random_pure_state(std::size_t d, Rng& rng);

/// Full-rank mixed state G G^dagger / Tr[G G^dagger].
mat::CMatrix random_density(std::size_t d, Rng& rng);

mat::CMatrix random_hermitian(std::size_t d, Rng& rng);

/// Uniform point of the probability simplex.
std::vector<double> random_probability(std::size_t n, Rng& rng);

/// Kraus operators of a random channel, from a Haar isometry
/// C^din -> C^dout (x) C^kraus_count.
std::vector<mat::CMatrix> random_kraus(std::size_t din, std::size_t dout,
                                       std::size_t kraus_count, Rng& rng);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace chanwit::rnd
