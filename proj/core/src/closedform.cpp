#include "chanwit/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "chanwit/error.hpp"
#include "chanwit/tolerances.hpp"

namespace chanwit::closedform {
namespace {

using mat::CVector;

constexpr double kSubsetBudget = 2e7;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_g0(double g0) {
  if (!(g0 >= -tol::kParameterSlack && g0 <= 1.0 + tol::kParameterSlack)) {
    std::ostringstream msg;
    msg << "binary game weight g0 = " << g0 << " is outside [0, 1]";
    throw RangeError(msg.str());
  }
}

void require_unit(const char* what, double v) {
  if (!(v >= -tol::kParameterSlack && v <= 1.0 + tol::kParameterSlack)) {
    std::ostringstream msg;
    msg << what << " = " << v << " is outside [0, 1]";
    throw RangeError(msg.str());
  }
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Advances a strictly increasing k-subset of [0, n); false when exhausted.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<DensityMatrix> basis_encoding(std::size_t d, const std::vector<std::size_t>& slot,
                                          const CMatrix& basis) {
  std::vector<DensityMatrix> enc;
  enc.reserve(slot.size());
  for (std::size_t s : slot) enc.push_back(DensityMatrix::pure(basis.col(idx(s))));
  (void)d;
  return enc;
}

// Binary-game helper: folds g0 below 1/2 onto 1 - g0 and attaches the
// Helstrom decoding of the (possibly swapped) analytic encoding.
struct Folded {
  double h;
  bool swapped;
};

Folded fold(double g0) {
  require_g0(g0);
  return g0 < 0.5 ? Folded{1.0 - g0, true} : Folded{g0, false};
}

UtilityResult binary_result(const Channel& ch, double g0, double value, const CVector& psi0,
                            const CVector& psi1, bool swapped, std::string provenance) {
  UtilityResult r;
  r.value = value;
  auto rho0 = DensityMatrix::pure(swapped ? psi1 : psi0);
  auto rho1 = DensityMatrix::pure(swapped ? psi0 : psi1);
  r.decoding = helstrom(ch, rho0, rho1, g0).povm;
  r.encoding = std::vector<DensityMatrix>{std::move(rho0), std::move(rho1)};
  r.provenance = std::move(provenance);
  return r;
}

const Channel& cached_cloning(std::size_t d) {
  static std::mutex mutex;
  static std::map<std::size_t, Channel> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, channels::cloning_1to2(d)).first;
  return it->second;
}

const Channel& cached_reduced_cloning(std::size_t d) {
  static std::mutex mutex;
  static std::map<std::size_t, Channel> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, channels::reduced_cloning(d)).first;
  return it->second;
}

std::size_t best_column(const Game& g) {
  const auto sums = games::column_sums(g);
  return static_cast<std::size_t>(std::distance(sums.begin(), std::max_element(sums.begin(), sums.end())));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double average_payoff(const Channel& ch, const Game& g, std::span<const DensityMatrix> encoding,
                      const Povm& decoding) {
  if (encoding.size() != g.n() || decoding.size() != g.m())
    throw ValidationError("average_payoff: strategy shape does not match the game");
  double total = 0.0;
  for (std::size_t x = 0; x < g.n(); ++x) {
    const CMatrix out = channels::apply(ch, encoding[x].matrix());
    for (std::size_t y = 0; y < g.m(); ++y)
      total += g(x, y) * (out * decoding[y]).trace().real();
  }
  return total;
}

HelstromResult helstrom_outputs(const CMatrix& out0, const CMatrix& out1, double g0) {
  CMatrix h = g0 * out0 - (1.0 - g0) * out1;
  h = 0.5 * (h + h.adjoint());
  const auto eig = mat::hermitian_eig(h);
  const Eigen::Index d = h.rows();
  CMatrix positive = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    if (eig.values(k) >= 0.0) positive += mat::projector(eig.vectors.col(k));
  const double value = 0.5 * (1.0 + eig.values.cwiseAbs().sum());
  CMatrix complement = CMatrix::Identity(d, d) - positive;
  return HelstromResult{std::move(h), value, Povm({positive, complement})};
}

HelstromResult helstrom(const Channel& ch, const DensityMatrix& rho0, const DensityMatrix& rho1,
                        double g0) {
  return helstrom_outputs(channels::apply(ch, rho0.matrix()), channels::apply(ch, rho1.matrix()), g0);
}

// ---------------------------------------------------------------------------

UtilityResult utility_identity(const Game& g, std::size_t d) {
  if (d < 1) throw RangeError("utility_identity: dimension must be positive");
  const std::size_t m = g.m();
  const std::size_t k = std::min(m, d);
  if (binomial(m, k) > kSubsetBudget) throw BudgetError("utility_identity: too many output subsets");

  std::vector<std::size_t> comb(k);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  std::vector<std::size_t> best_comb = comb;
  double best = -std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t x = 0; x < g.n(); ++x) {
      double row = -std::numeric_limits<double>::infinity();
      for (std::size_t y : comb) row = std::max(row, g(x, y));
      total += row;
    }
    if (total > best) {
      best = total;
      best_comb = comb;
    }
  } while (next_combination(comb, m));

  // Input x is sent as |j> where best_comb[j] is its favourite kept output.
  std::vector<std::size_t> slot(g.n());
  for (std::size_t x = 0; x < g.n(); ++x) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < k; ++j)
      if (g(x, best_comb[j]) > g(x, best_comb[arg])) arg = j;
    slot[x] = arg;
  }
  std::vector<CMatrix> elements(m, CMatrix::Zero(idx(d), idx(d)));
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t y = best_comb[j < k ? j : 0];
    elements[y](idx(j), idx(j)) = 1.0;
  }

  UtilityResult r;
  r.value = best;
  r.encoding = basis_encoding(d, slot, CMatrix::Identity(idx(d), idx(d)));
  r.decoding = Povm(std::move(elements));
  r.decision = best_comb;
  r.provenance = "identity:subset-enumeration";
  return r;
}

UtilityResult utility_unitary(const Game& g, const CMatrix& u) {
  if (mat::unitarity_residual(u) > tol::kUnitary)
    throw RangeError("utility_unitary: matrix is not unitary");
  auto r = utility_identity(g, static_cast<std::size_t>(u.rows()));
  std::vector<CMatrix> rotated;
  for (const auto& e : r.decoding->elements()) rotated.push_back(u * e * u.adjoint());
  r.decoding = Povm(std::move(rotated));
  r.provenance = "unitary:identity-subset-enumeration";
  return r;
}

UtilityResult utility_dephasing(double lambda, const Game& g, const CMatrix& basis) {
  require_unit("dephasing lambda", lambda);
  if (mat::unitarity_residual(basis) > tol::kUnitary)
    throw RangeError("utility_dephasing: basis is not orthonormal");
  auto r = utility_identity(g, static_cast<std::size_t>(basis.rows()));
  std::vector<DensityMatrix> enc;
  for (const auto& rho : *r.encoding) enc.emplace_back(basis * rho.matrix() * basis.adjoint());
  std::vector<CMatrix> dec;
  for (const auto& e : r.decoding->elements()) dec.push_back(basis * e * basis.adjoint());
  r.encoding = std::move(enc);
  r.decoding = Povm(std::move(dec));
  r.provenance = "dephasing:identity-subset-enumeration";
  return r;
}

UtilityResult utility_dephasing(double lambda, const Game& g, std::size_t d) {
  return utility_dephasing(lambda, g, CMatrix::Identity(idx(d), idx(d)));
}

UtilityResult utility_trace_class(const Game& g, std::size_t din, std::size_t dout) {
  if (din < 1 || dout < 1) throw RangeError("utility_trace_class: dimensions must be positive");
  const std::size_t ystar = best_column(g);
  UtilityResult r;
  r.value = games::column_sums(g)[ystar];
  r.encoding = std::vector<DensityMatrix>(
      g.n(), DensityMatrix::pure(mat::basis_vector(din, 0)));
  std::vector<CMatrix> elements(g.m(), CMatrix::Zero(idx(dout), idx(dout)));
  elements[ystar] = CMatrix::Identity(idx(dout), idx(dout));
  r.decoding = Povm(std::move(elements));
  r.decision = std::vector<std::size_t>{ystar};
  r.provenance = "trace_class:best-column";
  return r;
}

UtilityResult utility_erasure(double lambda, const Game& g, std::size_t d) {
  require_unit("erasure lambda", lambda);
  auto id = utility_identity(g, d);
  const std::size_t ystar = best_column(g);
  const double guess = games::column_sums(g)[ystar];

  std::vector<CMatrix> elements;
  for (std::size_t y = 0; y < g.m(); ++y) {
    CMatrix e = CMatrix::Zero(idx(d + 1), idx(d + 1));
    e.topLeftCorner(idx(d), idx(d)) = (*id.decoding)[y];
    if (y == ystar) e(idx(d), idx(d)) = 1.0;
    elements.push_back(std::move(e));
  }
  UtilityResult r;
  r.value = lambda * id.value + (1.0 - lambda) * guess;
  r.encoding = std::move(id.encoding);
  r.decoding = Povm(std::move(elements));
  r.provenance = "erasure:convex-combination";
  return r;
}

UtilityResult utility_qc(const Povm& povm, const Game& g) {
  const std::size_t k = povm.size();
  const std::size_t m = g.m();
  if (static_cast<double>(k) * std::log2(static_cast<double>(std::max<std::size_t>(m, 1))) > 20.0)
    throw BudgetError("utility_qc: m^k relabellings exceed the enumeration budget (k log2 m > 20)");

  std::vector<std::size_t> f(k, 0);
  std::vector<std::size_t> best_f = f;
  double best = -std::numeric_limits<double>::infinity();
  const Eigen::Index d = idx(povm.dim());
  for (;;) {
    double total = 0.0;
    for (std::size_t x = 0; x < g.n(); ++x) {
      CMatrix b = CMatrix::Zero(d, d);
      for (std::size_t y = 0; y < k; ++y) b += g(x, f[y]) * povm[y];
      total += mat::hermitian_eig(b).values(0);
    }
    if (total > best) {
      best = total;
      best_f = f;
    }
    std::size_t pos = 0;
    while (pos < k && ++f[pos] == m) f[pos++] = 0;
    if (pos == k) break;
  }

  std::vector<DensityMatrix> enc;
  for (std::size_t x = 0; x < g.n(); ++x) {
    CMatrix b = CMatrix::Zero(d, d);
    for (std::size_t y = 0; y < k; ++y) b += g(x, best_f[y]) * povm[y];
    enc.push_back(DensityMatrix::pure(mat::top_eigpair(b).second));
  }
  std::vector<CMatrix> elements(m, CMatrix::Zero(idx(k), idx(k)));
  for (std::size_t y = 0; y < k; ++y) elements[best_f[y]](idx(y), idx(y)) = 1.0;

  UtilityResult r;
  r.value = best;
  r.encoding = std::move(enc);
  r.decoding = Povm(std::move(elements));
  r.decision = best_f;
  r.provenance = "qc:deterministic-relabelling-enumeration";
  return r;
}

UtilityResult utility_depolarizing_unbiased(double lambda, const Game& g, std::size_t d) {
  require_unit("depolarizing lambda", lambda);
  const auto sums = games::column_sums(g);
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  if (*hi - *lo > tol::kUnbiased)
    throw ScopeError(
        "utility_depolarizing_unbiased: column sums differ; only unbiased games (or games with "
        "equal column sums) have a closed form");
  // Equal column sums c: shift each row by -c/n to reach an unbiased game.
  const double c = games::is_unbiased(g) ? 0.0 : std::accumulate(sums.begin(), sums.end(), 0.0) /
                                                     static_cast<double>(sums.size());
  auto r = utility_identity(g, d);
  r.value = lambda * (r.value - c) + c;
  r.provenance = c == 0.0 ? "depolarizing:unbiased" : "depolarizing:unbiased-after-shift";
  return r;
}

UtilityResult utility_unitary_discrimination(std::span<const double> gdiag, std::size_t d) {
  if (gdiag.empty()) throw ValidationError("utility_unitary_discrimination: empty game");
  if (d < 1) throw RangeError("utility_unitary_discrimination: dimension must be positive");
  std::vector<double> sorted(gdiag.begin(), gdiag.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  UtilityResult r;
  if (sorted.size() == 1 || d == 1) {
    r.value = sorted.front();
    r.provenance = "discrimination:single-signal";
  } else {
    double total = 0.0;
    for (std::size_t x = 0; x < std::min(d, sorted.size()); ++x)
      if (sorted[x] >= 0.0) total += sorted[x];
    r.value = total;
    r.provenance = "discrimination:heaviside-sum";
  }
  const Game g = games::discrimination(gdiag);
  if (binomial(g.m(), std::min(g.m(), d)) <= kSubsetBudget) {
    auto witness = utility_identity(g, d);
    r.encoding = std::move(witness.encoding);
    r.decoding = std::move(witness.decoding);
  }
  return r;
}

// ---------------------------------------------------------------------------

UtilityResult utility_pauli_binary(const std::array<double, 4>& lambda, double g0) {
  const auto [h, swapped] = fold(g0);
  const Channel ch = channels::pauli(lambda);
  int kmax = 1;
  double cmax = -1.0;
  for (int k = 1; k <= 3; ++k) {
    const double c = std::abs(2.0 * (lambda[0] + lambda[static_cast<std::size_t>(k)]) - 1.0);
    if (c > cmax) {
      cmax = c;
      kmax = k;
    }
  }
  const double value = std::max(h, 0.5 * (1.0 + cmax));
  const auto eig = mat::hermitian_eig(mat::pauli(kmax));
  return binary_result(ch, g0, value, eig.vectors.col(0), eig.vectors.col(1), swapped,
                       "pauli:binary");
}

UtilityResult utility_ampdamp_binary(double eta, double g0) {
  const auto [h, swapped] = fold(g0);
  const Channel ch = channels::amplitude_damping(eta);
  const double inner = 1.0 - 4.0 * h * (1.0 - eta) + 4.0 * h * h * (1.0 - eta);
  const double value = 0.5 * (1.0 + std::sqrt(std::max(0.0, inner)));
  CVector psi0(2), psi1(2);
  psi0 << std::sqrt(h), std::sqrt(1.0 - h);
  psi1 << std::sqrt(1.0 - h), -std::sqrt(h);
  return binary_result(ch, g0, value, psi0, psi1, swapped, "amplitude_damping:binary");
}

UtilityResult utility_shifted_depolarizing_binary(double lambda, const DensityMatrix& sigma,
                                                  double g0) {
  const auto [h, swapped] = fold(g0);
  const Channel ch = channels::shifted_depolarizing(lambda, sigma);
  const auto eig = mat::hermitian_eig(sigma.matrix());
  const double smin = eig.values(eig.values.size() - 1);
  const double value =
      std::max(h, 0.5 * (1.0 + lambda + (1.0 - lambda) * (1.0 - 2.0 * smin) * (2.0 * h - 1.0)));
  if (sigma.dim() < 2)
    throw RangeError("utility_shifted_depolarizing_binary: dimension must be at least 2");
  return binary_result(ch, g0, value, eig.vectors.col(0), eig.vectors.col(eig.values.size() - 1),
                       swapped, "shifted_depolarizing:binary");
}

UtilityResult utility_depolarizing_binary(double lambda, std::size_t d, double g0) {
  if (d < 2) throw RangeError("utility_depolarizing_binary: dimension must be at least 2");
  const auto [h, swapped] = fold(g0);
  const Channel ch = channels::depolarizing(lambda, d);
  const double smin = 1.0 / static_cast<double>(d);
  const double value =
      std::max(h, 0.5 * (1.0 + lambda + (1.0 - lambda) * (1.0 - 2.0 * smin) * (2.0 * h - 1.0)));
  return binary_result(ch, g0, value, mat::basis_vector(d, 0), mat::basis_vector(d, 1), swapped,
                       "depolarizing:binary");
}

UtilityResult utility_cloning_binary(std::size_t d, double g0) {
  if (d < 2) throw RangeError("utility_cloning_binary: dimension must be at least 2");
  const auto [h, swapped] = fold(g0);
  const double dd = static_cast<double>(d);
  return binary_result(cached_cloning(d), g0, (dd + h) / (dd + 1.0), mat::basis_vector(d, 0),
                       mat::basis_vector(d, 1), swapped, "cloning_1to2:binary");
}

UtilityResult utility_partialtrace_cloning_binary(std::size_t d, double g0) {
  if (d < 2) throw RangeError("utility_partialtrace_cloning_binary: dimension must be at least 2");
  const auto [h, swapped] = fold(g0);
  const double dd = static_cast<double>(d);
  const double value = std::max(h, ((dd - 2.0) * h + dd + 3.0) / (2.0 * (dd + 1.0)));
  return binary_result(cached_reduced_cloning(d), g0, value, mat::basis_vector(d, 0),
                       mat::basis_vector(d, 1), swapped, "reduced_cloning:binary");
}

UtilityResult lift_binary(const Game& g, const games::BinaryReduction& reduction,
                          const UtilityResult& reduced) {
  UtilityResult r;
  r.provenance = reduced.provenance + "+binary-reduction";
  r.lower_bound = reduced.lower_bound;
  r.converged = reduced.converged;
  if (reduction.trivial) {
    r.value = reduction.b;
    r.provenance = "trivial-binary-game";
    if (reduced.encoding) {
      r.encoding = std::vector<DensityMatrix>(g.n(), reduced.encoding->front());
      const auto d = reduced.decoding ? reduced.decoding->dim() : 1;
      r.decoding = Povm({CMatrix::Identity(idx(d), idx(d)), CMatrix::Zero(idx(d), idx(d))});
    }
    return r;
  }
  r.value = reduction.lift(reduced.value);
  if (reduced.encoding) {
    std::vector<DensityMatrix> enc;
    for (std::size_t x = 0; x < g.n(); ++x)
      enc.push_back((*reduced.encoding)[games::prefers_first_output(g, x) ? 0 : 1]);
    r.encoding = std::move(enc);
  }
  r.decoding = reduced.decoding;
  return r;
}

std::optional<UtilityResult> dispatch(const Channel& ch, const Game& g) {
  namespace lbl = channels::label;
  const auto binary = [&](auto&& formula) -> std::optional<UtilityResult> {
    if (g.m() != 2) return std::nullopt;
    const auto red = games::reduce_binary_output(g);
    return lift_binary(g, red, formula(red.trivial ? 1.0 : red.g0));
  };
  try {
    return std::visit(
        Overloaded{
            [&](const lbl::Raw&) -> std::optional<UtilityResult> { return std::nullopt; },
            [&](const lbl::Identity& l) -> std::optional<UtilityResult> {
              return utility_identity(g, l.d);
            },
            [&](const lbl::Unitary& l) -> std::optional<UtilityResult> {
              return utility_unitary(g, l.u);
            },
            [&](const lbl::Dephasing& l) -> std::optional<UtilityResult> {
              return utility_dephasing(l.lambda, g, l.basis);
            },
            [&](const lbl::TraceClass& l) -> std::optional<UtilityResult> {
              return utility_trace_class(g, l.din, static_cast<std::size_t>(l.sigma.rows()));
            },
            [&](const lbl::Erasure& l) -> std::optional<UtilityResult> {
              return utility_erasure(l.lambda, g, l.din);
            },
            [&](const lbl::QuantumClassical& l) -> std::optional<UtilityResult> {
              return utility_qc(l.povm, g);
            },
            [&](const lbl::Depolarizing& l) -> std::optional<UtilityResult> {
              const auto sums = games::column_sums(g);
              const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
              if (*hi - *lo <= tol::kUnbiased) return utility_depolarizing_unbiased(l.lambda, g, l.d);
              if (l.d < 2) return std::nullopt;
              return binary([&](double g0) { return utility_depolarizing_binary(l.lambda, l.d, g0); });
            },
            [&](const lbl::Pauli& l) {
              return binary([&](double g0) { return utility_pauli_binary(l.lambda, g0); });
            },
            [&](const lbl::AmplitudeDamping& l) {
              return binary([&](double g0) { return utility_ampdamp_binary(l.eta, g0); });
            },
            [&](const lbl::ShiftedDepolarizing& l) {
              return binary([&](double g0) {
                return utility_shifted_depolarizing_binary(l.lambda, DensityMatrix(l.sigma), g0);
              });
            },
            [&](const lbl::Cloning& l) {
              return binary([&](double g0) { return utility_cloning_binary(l.d, g0); });
            },
            [&](const lbl::ReducedCloning& l) {
              return binary([&](double g0) { return utility_partialtrace_cloning_binary(l.d, g0); });
            },
        },
        ch.label());
  } catch (const BudgetError&) {
    return std::nullopt;
  }
}

}  // namespace chanwit::closedform
