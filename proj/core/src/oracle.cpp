#include "chanwit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "chanwit/error.hpp"
#include "chanwit/random.hpp"
#include "chanwit/tolerances.hpp"

namespace chanwit::oracle {
namespace {

using mat::CMatrix;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

CMatrix herm(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

double objective(const std::vector<CMatrix>& a, const std::vector<CMatrix>& pi) {
  double v = 0.0;
  for (std::size_t y = 0; y < a.size(); ++y) v += (a[y] * pi[y]).trace().real();
  return v;
}

double completeness(const std::vector<CMatrix>& pi) {
  CMatrix sum = CMatrix::Zero(pi.front().rows(), pi.front().cols());
  for (const auto& p : pi) sum += p;
  return (sum - CMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

// Exact two-outcome decoding: projector onto the nonnegative part of A0 - A1.
void helstrom_step(const std::vector<CMatrix>& a, std::vector<CMatrix>& pi) {
  const CMatrix p0 = mat::nonnegative_projector(herm(a[0] - a[1]));
  pi[0] = p0;
  pi[1] = CMatrix::Identity(p0.rows(), p0.cols()) - p0;
}

// pi_y <- R^{-1/2} A_y pi_y A_y R^{-1/2}, R = sum_y A_y pi_y A_y, with R^{-1/2}
// a pseudo-inverse: eigenvalues below tol::kRegularize * max(1, |R|) are
// dropped, since flooring them amplifies round-off in ker R by ~1e12 per
// step. The projector onto ker R goes to the outcome that values it most.
// The map is expansive on negative directions when some A_y is singular, so
// each element is clipped back to PSD and the set renormalised by S^{-1/2}
// with S = sum_y pi_y (within round-off of the identity).
void ascent_step(const std::vector<CMatrix>& a, std::vector<CMatrix>& pi) {
  const Eigen::Index d = pi.front().rows();
  std::vector<CMatrix> t(pi.size());
  CMatrix r = CMatrix::Zero(d, d);
  for (std::size_t y = 0; y < pi.size(); ++y) {
    t[y] = herm(a[y] * pi[y] * a[y]);
    r += t[y];
  }
  const auto eig = mat::hermitian_eig(herm(r));
  const double cutoff = tol::kRegularize * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  mat::RVector inv_sqrt(eig.values.size());
  CMatrix kernel = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const bool kept = eig.values(i) > cutoff;
    inv_sqrt(i) = kept ? 1.0 / std::sqrt(eig.values(i)) : 0.0;
    if (!kept) kernel += mat::projector(eig.vectors.col(i));
  }
  const CMatrix s = eig.vectors * inv_sqrt.cast<mat::Complex>().asDiagonal() * eig.vectors.adjoint();
  for (std::size_t y = 0; y < pi.size(); ++y)
    pi[y] = mat::hermitian_function(herm(s * t[y] * s), [](double mu) { return std::max(mu, 0.0); });

  if (kernel.cwiseAbs().maxCoeff() > 0.0) {
    std::size_t best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < pi.size(); ++y) {
      const double gain = (a[y] * kernel).trace().real();
      if (gain > best_gain) {
        best_gain = gain;
        best = y;
      }
    }
    pi[best] += kernel;
  }

  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& p : pi) sum += p;
  const CMatrix norm = mat::hermitian_function(
      herm(sum), [](double mu) { return 1.0 / std::sqrt(std::max(mu, tol::kRegularize)); });
  for (auto& p : pi) p = herm(norm * p * norm);
}

std::vector<CMatrix> channel_outputs(const Channel& ch, const std::vector<CMatrix>& rho) {
  std::vector<CMatrix> out;
  out.reserve(rho.size());
  for (const auto& r : rho) out.push_back(channels::apply(ch, r));
  return out;
}

std::vector<CMatrix> weighted_outputs(const games::Game& g, const std::vector<CMatrix>& out) {
  const Eigen::Index d = out.front().rows();
  std::vector<CMatrix> a(g.m(), CMatrix::Zero(d, d));
  for (std::size_t y = 0; y < g.m(); ++y)
    for (std::size_t x = 0; x < g.n(); ++x)
      if (g(x, y) != 0.0) a[y] += g(x, y) * out[x];
  for (auto& m : a) m = herm(m);
  return a;
}

// Returns the payoff after optimising the decoding for fixed A_y.
double decoding_step(const std::vector<CMatrix>& a, std::vector<CMatrix>& pi,
                     const OracleConfig& cfg, std::size_t inner_iters) {
  if (a.size() == 2) {
    helstrom_step(a, pi);
    return objective(a, pi);
  }
  // Each element stays PSD by construction (s t s and the kernel projector).
  // A step that lowers the payoff or breaks completeness is retried on
  // A_y + c I: the shift adds c d to every payoff, so the maximiser is
  // unchanged, but the step shrinks as c grows. Accepted steps never decrease
  // the objective.
  constexpr int kMaxDamping = 40;
  const Eigen::Index d = pi.front().rows();
  double scale = 0.0;
  for (const auto& m : a) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  double value = objective(a, pi);
  for (std::size_t it = 0; it < inner_iters; ++it) {
    bool accepted = false;
    double next = value;
    std::vector<CMatrix> trial;
    double c = 0.0;
    for (int attempt = 0; attempt < kMaxDamping && !accepted; ++attempt) {
      std::vector<CMatrix> shifted = a;
      if (c > 0.0)
        for (auto& m : shifted) m += c * CMatrix::Identity(d, d);
      trial = pi;
      ascent_step(shifted, trial);
      next = objective(a, trial);
      accepted = next >= value && completeness(trial) <= tol::kPovmSum;
      c = c == 0.0 ? std::max(scale, tol::kRegularize) : 2.0 * c;
    }
    if (!accepted) break;
    const bool stalled = next - value < 0.1 * cfg.tol;
    pi = std::move(trial);
    value = next;
    if (stalled) break;
  }
  return value;
}

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<CMatrix> rho;
  std::vector<CMatrix> pi;
  bool converged = false;
  std::vector<double> history;
  double worst_decrease = -std::numeric_limits<double>::infinity();
  double max_povm_residual = 0.0;
  double min_povm_eigenvalue = std::numeric_limits<double>::infinity();
};

RestartOutcome run_restart(const Channel& ch, const games::Game& g, double offset,
                           const OracleConfig& cfg, std::size_t restart) {
  auto rng = rnd::make_rng(cfg.seed, restart);
  const Eigen::Index dout = idx(ch.dout());
  const Eigen::Index din = idx(ch.din());

  // Haar-random orthonormal basis, each projector assigned to a random outcome.
  const CMatrix u = rnd::haar_unitary(ch.dout(), rng);
  std::uniform_int_distribution<std::size_t> pick(0, g.m() - 1);
  std::vector<CMatrix> pi(g.m(), CMatrix::Zero(dout, dout));
  for (Eigen::Index k = 0; k < dout; ++k) pi[pick(rng)] += mat::projector(u.col(k));

  RestartOutcome out;
  std::vector<CMatrix> rho(g.n(), CMatrix::Zero(din, din));
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    std::vector<CMatrix> dual(g.m());
    for (std::size_t y = 0; y < g.m(); ++y) dual[y] = channels::adjoint_apply(ch, pi[y]);
    for (std::size_t x = 0; x < g.n(); ++x) {
      CMatrix b = CMatrix::Zero(din, din);
      for (std::size_t y = 0; y < g.m(); ++y)
        if (g(x, y) != 0.0) b += g(x, y) * dual[y];
      rho[x] = mat::projector(mat::top_eigpair(herm(b)).second);
    }
    const auto a = weighted_outputs(g, channel_outputs(ch, rho));
    const double value = decoding_step(a, pi, cfg, cfg.inner_iters) - offset;
    out.max_povm_residual = std::max(out.max_povm_residual, completeness(pi));
    for (const auto& p : pi)
      out.min_povm_eigenvalue = std::min(out.min_povm_eigenvalue, mat::hermitian_eig(p).values.minCoeff());
    for (const auto& p : pi)
      out.min_povm_eigenvalue = std::min(out.min_povm_eigenvalue, mat::hermitian_eig(p).values.minCoeff());
    if (!out.history.empty()) out.worst_decrease = std::max(out.worst_decrease, prev - value);
    out.history.push_back(value);
    if (value > out.value) {
      out.value = value;
      out.rho = rho;
      out.pi = pi;
    }
    if (value - prev < cfg.tol) {
      out.converged = true;
      break;
    }
    prev = value;
  }
  return out;
}

double trace_norm_2x2_or_general(const CMatrix& h) {
  if (h.rows() == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(h(0, 1)));
    return 0.5 * (std::abs(a + d + disc) + std::abs(a + d - disc));
  }
  return mat::trace_norm(h);
}

}  // namespace

void OracleConfig::validate() const {
  if (restarts < 1) throw ValidationError("OracleConfig: restarts must be at least 1");
  if (!(tol > 0.0)) throw ValidationError("OracleConfig: tol must be positive");
  if (grid_points < 2) throw ValidationError("OracleConfig: grid_points must be at least 2");
  if (max_iters < 1) throw ValidationError("OracleConfig: max_iters must be at least 1");
}

SeesawReport seesaw_report(const Channel& ch, const Game& g, const OracleConfig& cfg) {
  cfg.validate();
  const auto shift = games::normalize_to_nonneg(g);

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, cfg.restarts));
  if (threads == 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r)
      outcomes[r] = run_restart(ch, shift.game, shift.offset, cfg, r);
  } else {
    for (std::size_t start = 0; start < cfg.restarts; start += threads) {
      std::vector<std::future<RestartOutcome>> batch;
      for (std::size_t r = start; r < std::min(cfg.restarts, start + threads); ++r)
        batch.push_back(std::async(std::launch::async, run_restart, std::cref(ch),
                                   std::cref(shift.game), shift.offset, std::cref(cfg), r));
      for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
    }
  }

  SeesawReport report;
  report.worst_decrease = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].value > outcomes[report.best_restart].value) report.best_restart = r;
    report.worst_decrease = std::max(report.worst_decrease, outcomes[r].worst_decrease);
    report.max_povm_residual = std::max(report.max_povm_residual, outcomes[r].max_povm_residual);
    report.min_povm_eigenvalue = std::min(report.min_povm_eigenvalue, outcomes[r].min_povm_eigenvalue);
    report.min_povm_eigenvalue = std::min(report.min_povm_eigenvalue, outcomes[r].min_povm_eigenvalue);
    report.histories.push_back(std::move(outcomes[r].history));
  }
  auto& best = outcomes[report.best_restart];

  UtilityResult& res = report.result;
  res.value = best.value;
  std::vector<DensityMatrix> enc;
  for (const auto& r : best.rho) enc.emplace_back(r);
  res.encoding = std::move(enc);
  res.decoding = Povm(best.pi);
  res.lower_bound = true;
  res.converged = best.converged;
  std::ostringstream prov;
  prov << "seesaw(seed=" << cfg.seed << ",restarts=" << cfg.restarts << ")";
  res.provenance = prov.str();
  return report;
}

UtilityResult seesaw(const Channel& ch, const Game& g, const OracleConfig& cfg) {
  return seesaw_report(ch, g, cfg).result;
}

DecodingResult best_decoding(const Channel& ch, const Game& g,
                             std::span<const DensityMatrix> encoding, const OracleConfig& cfg) {
  cfg.validate();
  if (encoding.size() != g.n()) throw ValidationError("best_decoding: encoding size mismatch");
  const auto shift = games::normalize_to_nonneg(g);
  std::vector<CMatrix> rho;
  for (const auto& e : encoding) rho.push_back(e.matrix());
  const auto a = weighted_outputs(shift.game, channel_outputs(ch, rho));
  const Eigen::Index d = idx(ch.dout());
  std::vector<CMatrix> pi(g.m(), CMatrix::Identity(d, d) / static_cast<double>(g.m()));
  const double value = decoding_step(a, pi, cfg, cfg.max_iters * cfg.inner_iters) - shift.offset;
  return DecodingResult{Povm(std::move(pi)), value};
}

UtilityResult qubit_binary_grid(const Channel& ch, double g0, std::size_t grid_points) {
  if (ch.din() != 2) throw ValidationError("qubit_binary_grid: channel input must be a qubit");
  if (grid_points < 2) throw ValidationError("qubit_binary_grid: grid_points must be at least 2");
  if (!(g0 >= 0.0 && g0 <= 1.0)) throw RangeError("qubit_binary_grid: g0 outside [0, 1]");

  // rho_{0,1} = (1 +- n.sigma)/2, so by linearity
  // H = (2 g0 - 1)/2 C(1) + 1/2 sum_i n_i C(sigma_i).
  const CMatrix base = 0.5 * (2.0 * g0 - 1.0) * channels::apply(ch, mat::pauli(0));
  const CMatrix cx = 0.5 * channels::apply(ch, mat::pauli(1));
  const CMatrix cy = 0.5 * channels::apply(ch, mat::pauli(2));
  const CMatrix cz = 0.5 * channels::apply(ch, mat::pauli(3));
  CMatrix h(base.rows(), base.cols());
  const auto score = [&](double theta, double phi) {
    const double st = std::sin(theta);
    h = base + (st * std::cos(phi)) * cx + (st * std::sin(phi)) * cy + std::cos(theta) * cz;
    return 0.5 * (1.0 + trace_norm_2x2_or_general(herm(h)));
  };

  struct Cell {
    double value, theta, phi;
  };
  const double dtheta = std::numbers::pi / static_cast<double>(grid_points - 1);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(grid_points);
  std::vector<Cell> cells;
  cells.reserve(grid_points * grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
    for (std::size_t j = 0; j < grid_points; ++j) {
      const double theta = dtheta * static_cast<double>(i);
      const double phi = dphi * static_cast<double>(j);
      cells.push_back({score(theta, phi), theta, phi});
    }
  constexpr std::size_t kCandidates = 4;
  const auto top = std::min(kCandidates, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(top), cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value > b.value; });

  Cell best = cells.front();
  for (std::size_t c = 0; c < top; ++c) {
    Cell center = cells[c];
    double wt = dtheta;
    double wp = dphi;
    constexpr int kSide = 2;  // 5 x 5 local grid
    while (wt > 1e-12 || wp > 1e-12) {
      Cell local = center;
      for (int a = -kSide; a <= kSide; ++a)
        for (int b = -kSide; b <= kSide; ++b) {
          const double theta = center.theta + wt * a / kSide;
          const double phi = center.phi + wp * b / kSide;
          const double v = score(theta, phi);
          if (v > local.value) local = {v, theta, phi};
        }
      center = local;
      wt *= 0.5;
      wp *= 0.5;
    }
    if (center.value > best.value) best = center;
  }

  mat::CVector n0(2), n1(2);
  const double c = std::cos(best.theta / 2.0);
  const double s = std::sin(best.theta / 2.0);
  n0 << c, std::polar(s, best.phi);
  n1 << -std::polar(s, -best.phi), c;
  auto rho0 = DensityMatrix::pure(n0);
  auto rho1 = DensityMatrix::pure(n1);
  UtilityResult r;
  const auto hel = closedform::helstrom(ch, rho0, rho1, g0);
  r.value = std::max(best.value, hel.value);
  r.decoding = hel.povm;
  r.encoding = std::vector<DensityMatrix>{std::move(rho0), std::move(rho1)};
  r.lower_bound = true;
  r.provenance = "qubit-grid(" + std::to_string(grid_points) + ")+local-refinement";
  return r;
}

double classical_utility(const Eigen::MatrixXd& p_cond, const Game& g) {
  const auto k = static_cast<std::size_t>(p_cond.rows());
  const auto n_in = static_cast<std::size_t>(p_cond.cols());
  if (k == 0 || n_in == 0) throw ValidationError("classical_utility: empty conditional matrix");
  if ((p_cond.array() < 0.0).any())
    throw ValidationError("classical_utility: probabilities must be nonnegative");
  for (Eigen::Index w = 0; w < p_cond.cols(); ++w) {
    const double s = p_cond.col(w).sum();
    if (std::abs(s - 1.0) > tol::kProbabilitySum) {
      std::ostringstream msg;
      msg << "classical_utility: column " << w << " sums to " << s << ", expected 1";
      throw ValidationError(msg.str());
    }
  }
  const std::size_t m = g.m();
  if (static_cast<double>(k) * std::log10(static_cast<double>(m)) > 7.0)
    throw BudgetError("classical_utility: m^k decodings exceed the enumeration budget (1e7)");

  std::vector<std::size_t> f(k, 0);
  double best = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd q(idx(n_in), idx(m));
  for (;;) {
    q.setZero();
    for (std::size_t z = 0; z < k; ++z) q.col(idx(f[z])) += p_cond.row(idx(z)).transpose();
    // value(w, x) = sum_y q(w, y) g(x, y); each input picks its best w.
    const Eigen::MatrixXd payoff = q * g.matrix().transpose();
    const double total = payoff.colwise().maxCoeff().sum();
    best = std::max(best, total);
    std::size_t pos = 0;
    while (pos < k && ++f[pos] == m) f[pos++] = 0;
    if (pos == k) break;
  }
  return best;
}

}  // namespace chanwit::oracle
