#include "chanwit/random.hpp"

#include <cmath>

namespace chanwit::rnd {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

mat::CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  mat::CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  return g;
}

mat::CMatrix haar_unitary(std::size_t d, Rng& rng) {
  const mat::CMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<mat::CMatrix> qr(g);
  mat::CMatrix q = qr.householderQ();
  const mat::CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

mat::CVector random_pure_state(std::size_t d, Rng& rng) {
  mat::CVector v = ginibre(d, 1, rng).col(0);
  return v.normalized();
}

mat::CMatrix random_density(std::size_t d, Rng& rng) {
  const mat::CMatrix g = ginibre(d, d, rng);
  mat::CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

mat::CMatrix random_hermitian(std::size_t d, Rng& rng) {
  const mat::CMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

std::vector<double> random_probability(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = expo(rng));
  for (auto& x : p) x /= total;
  return p;
}

std::vector<mat::CMatrix> random_kraus(std::size_t din, std::size_t dout,
                                       std::size_t kraus_count, Rng& rng) {
  const std::size_t big = dout * kraus_count;
  const mat::CMatrix u = haar_unitary(big, rng);
  const auto rows = static_cast<Eigen::Index>(dout);
  std::vector<mat::CMatrix> kraus;
  kraus.reserve(kraus_count);
  for (std::size_t k = 0; k < kraus_count; ++k)
    kraus.emplace_back(u.block(static_cast<Eigen::Index>(k) * rows, 0, rows,
                               static_cast<Eigen::Index>(din)));
  return kraus;
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

}  // namespace chanwit::rnd
