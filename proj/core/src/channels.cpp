#include "chanwit/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chanwit/error.hpp"
#include "chanwit/tolerances.hpp"

namespace chanwit::channels {
namespace {

using mat::Complex;
using mat::CVector;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_unit_interval(const char* what, double value) {
  if (!(value >= -tol::kParameterSlack && value <= 1.0 + tol::kParameterSlack)) {
    std::ostringstream msg;
    msg << what << " = " << value << " is outside [0, 1]";
    throw RangeError(msg.str());
  }
}

void require_dimension(const char* what, std::size_t d) {
  if (d < 1) throw RangeError(std::string(what) + ": dimension must be positive");
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

// sqrt(weight) * sqrt(s_i) |v_i><j| for every eigenpair of sigma and input index j.
void append_replacement_kraus(std::vector<CMatrix>& out, const CMatrix& sigma, std::size_t din,
                              double weight) {
  if (weight <= 0.0) return;
  const auto eig = mat::hermitian_eig(sigma);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double s = eig.values(i);
    if (s <= 0.0) continue;
    for (std::size_t j = 0; j < din; ++j) {
      CMatrix k = std::sqrt(weight * s) * eig.vectors.col(i) * mat::basis_vector(din, j).adjoint();
      out.push_back(std::move(k));
    }
  }
}

std::string join(std::initializer_list<double> values) {
  std::ostringstream os;
  bool first = true;
  for (double v : values) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  return os.str();
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix / Povm

DensityMatrix::DensityMatrix(CMatrix m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw ValidationError("DensityMatrix: expected a non-empty square matrix");
  const double asym = mat::max_asymmetry(m);
  if (asym > tol::kHermitianInput) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian (max |A - A^dagger| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  mat_ = hermitian_part(m);
  const double trace = mat_.trace().real();
  if (std::abs(trace - 1.0) > tol::kUnitTrace) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace is " << trace << ", expected 1";
    throw ValidationError(msg.str());
  }
  const double min_eig = mat::hermitian_eig(mat_).values.minCoeff();
  if (min_eig < tol::kPsdFloor) {
    std::ostringstream msg;
    msg << "DensityMatrix: not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const mat::CVector& psi) {
  return DensityMatrix(mat::projector(psi.normalized()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  require_dimension("maximally_mixed", d);
  return DensityMatrix(CMatrix::Identity(idx(d), idx(d)) / static_cast<double>(d));
}

Povm::Povm(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("Povm: needs at least one element");
  const Eigen::Index d = elements_.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (std::size_t y = 0; y < elements_.size(); ++y) {
    auto& e = elements_[y];
    if (e.rows() != d || e.cols() != d)
      throw ValidationError("Povm: elements must share one square dimension");
    const double asym = mat::max_asymmetry(e);
    if (asym > tol::kHermitianInput) {
      std::ostringstream msg;
      msg << "Povm: element " << y << " not Hermitian (max asymmetry " << asym << ")";
      throw ValidationError(msg.str());
    }
    e = hermitian_part(e);
    const double min_eig = mat::hermitian_eig(e).values.minCoeff();
    if (min_eig < tol::kPsdFloor) {
      std::ostringstream msg;
      msg << "Povm: element " << y << " not PSD (min eigenvalue " << min_eig << ")";
      throw ValidationError(msg.str());
    }
    sum += e;
  }
  const double residual = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residual > tol::kPovmSum) {
    std::ostringstream msg;
    msg << "Povm: elements sum to identity only within " << residual;
    throw ValidationError(msg.str());
  }
}

Povm Povm::from_basis(const CMatrix& unitary) {
  if (mat::unitarity_residual(unitary) > tol::kUnitary)
    throw ValidationError("Povm::from_basis: columns are not orthonormal");
  std::vector<CMatrix> elements;
  for (Eigen::Index k = 0; k < unitary.cols(); ++k)
    elements.push_back(mat::projector(unitary.col(k)));
  return Povm(std::move(elements));
}

Povm Povm::trine() {
  const double angle = 2.0 * std::numbers::pi / 3.0;
  CMatrix rotation(2, 2);
  rotation << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  std::vector<CMatrix> elements;
  CVector t = mat::basis_vector(2, 0);
  for (int y = 0; y < 3; ++y) {
    elements.push_back((2.0 / 3.0) * mat::projector(t));
    t = rotation * t;
  }
  return Povm(std::move(elements));
}

std::size_t Povm::dim() const { return static_cast<std::size_t>(elements_.front().rows()); }

double Povm::completeness_residual() const {
  const Eigen::Index d = elements_.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& e : elements_) sum += e;
  return (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Channel

std::string describe(const ChannelLabel& label) {
  return std::visit(
      Overloaded{
          [](const label::Raw&) { return std::string("kraus"); },
          [](const label::Identity& l) { return "identity(" + std::to_string(l.d) + ")"; },
          [](const label::Unitary& l) { return "unitary(" + std::to_string(l.u.rows()) + ")"; },
          [](const label::Dephasing& l) {
            return "dephasing(" + join({l.lambda, double(l.basis.rows())}) + ")";
          },
          [](const label::TraceClass& l) {
            return "trace_class(" + std::to_string(l.din) + "->" +
                   std::to_string(l.sigma.rows()) + ")";
          },
          [](const label::Erasure& l) { return "erasure(" + join({l.lambda, double(l.din)}) + ")"; },
          [](const label::QuantumClassical& l) {
            return "qc(" + std::to_string(l.povm.size()) + " outcomes)";
          },
          [](const label::Depolarizing& l) {
            return "depolarizing(" + join({l.lambda, double(l.d)}) + ")";
          },
          [](const label::Pauli& l) {
            return "pauli(" + join({l.lambda[0], l.lambda[1], l.lambda[2], l.lambda[3]}) + ")";
          },
          [](const label::AmplitudeDamping& l) {
            return "amplitude_damping(" + join({l.eta}) + ")";
          },
          [](const label::ShiftedDepolarizing& l) {
            return "shifted_depolarizing(" + join({l.lambda, double(l.sigma.rows())}) + ")";
          },
          [](const label::Cloning& l) { return "cloning_1to2(" + std::to_string(l.d) + ")"; },
          [](const label::ReducedCloning& l) {
            return "reduced_cloning(" + std::to_string(l.d) + ")";
          },
      },
      label);
}

Channel::Channel(std::size_t din, std::size_t dout, std::vector<CMatrix> kraus,
                 ChannelLabel label)
    : din_(din), dout_(dout), kraus_(std::move(kraus)), label_(std::move(label)) {
  if (din_ < 1 || dout_ < 1) throw ValidationError("Channel: dimensions must be positive");
  if (kraus_.empty()) throw ValidationError("Channel: needs at least one Kraus operator");
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    if (kraus_[k].rows() != idx(dout_) || kraus_[k].cols() != idx(din_)) {
      std::ostringstream msg;
      msg << "Channel: Kraus operator " << k << " is " << kraus_[k].rows() << "x"
          << kraus_[k].cols() << ", expected " << dout_ << "x" << din_;
      throw ValidationError(msg.str());
    }
  }
  const auto report = validate_cptp(din_, dout_, kraus_);
  if (!report.ok()) throw ValidationError("Channel: " + report.message);
}

CMatrix apply(const Channel& ch, const CMatrix& x) {
  if (x.rows() != idx(ch.din()) || x.cols() != idx(ch.din()))
    throw ValidationError("apply: operator dimension does not match channel input");
  CMatrix out = CMatrix::Zero(idx(ch.dout()), idx(ch.dout()));
  for (const auto& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  return DensityMatrix(hermitian_part(apply(ch, rho.matrix())));
}

CMatrix adjoint_apply(const Channel& ch, const CMatrix& x) {
  if (x.rows() != idx(ch.dout()) || x.cols() != idx(ch.dout()))
    throw ValidationError("adjoint_apply: operator dimension does not match channel output");
  CMatrix out = CMatrix::Zero(idx(ch.din()), idx(ch.din()));
  for (const auto& k : ch.kraus()) out.noalias() += k.adjoint() * x * k;
  return out;
}

CMatrix choi(const Channel& ch) {
  const Eigen::Index din = idx(ch.din());
  const Eigen::Index dout = idx(ch.dout());
  CMatrix j = CMatrix::Zero(din * dout, din * dout);
  for (const auto& k : ch.kraus()) {
    // vec(K) with index (i * dout + a) = K(a, i)
    CVector v(din * dout);
    for (Eigen::Index i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.din() != b.din() || a.dout() != b.dout())
    throw ValidationError("choi_distance: channels have different dimensions");
  return mat::trace_norm(choi(a) - choi(b));
}

std::vector<CMatrix> kraus_from_choi(const CMatrix& choi_matrix, std::size_t din,
                                     std::size_t dout, double discard) {
  const Eigen::Index di = idx(din);
  const Eigen::Index dd = idx(dout);
  if (choi_matrix.rows() != di * dd)
    throw ValidationError("kraus_from_choi: Choi matrix size does not equal din * dout");
  const auto eig = mat::hermitian_eig(choi_matrix);
  std::vector<CMatrix> kraus;
  for (Eigen::Index e = 0; e < eig.values.size(); ++e) {
    const double mu = eig.values(e);
    if (mu <= discard) continue;
    CMatrix k(dd, di);
    for (Eigen::Index i = 0; i < di; ++i) k.col(i) = eig.vectors.col(e).segment(i * dd, dd);
    kraus.push_back(std::sqrt(mu) * k);
  }
  return kraus;
}

CptpReport validate_cptp(std::size_t din, std::size_t dout, const std::vector<CMatrix>& kraus) {
  CptpReport report;
  const Eigen::Index di = idx(din);
  const Eigen::Index dd = idx(dout);
  CMatrix sum = CMatrix::Zero(di, di);
  CMatrix j = CMatrix::Zero(di * dd, di * dd);
  for (const auto& k : kraus) {
    sum.noalias() += k.adjoint() * k;
    CVector v(di * dd);
    for (Eigen::Index i = 0; i < di; ++i) v.segment(i * dd, dd) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  report.tp_residual = (sum - CMatrix::Identity(di, di)).cwiseAbs().maxCoeff();
  report.choi_min_eigenvalue = mat::hermitian_eig(j).values.minCoeff();
  report.trace_preserving = report.tp_residual <= tol::kTracePreserving;
  report.completely_positive = report.choi_min_eigenvalue >= tol::kChoiFloor;
  std::ostringstream msg;
  if (!report.trace_preserving)
    msg << "trace preservation violated: max |sum K^dagger K - I| = " << report.tp_residual;
  if (!report.completely_positive) {
    if (!report.trace_preserving) msg << "; ";
    msg << "complete positivity violated: min Choi eigenvalue = " << report.choi_min_eigenvalue;
  }
  report.message = msg.str();
  return report;
}

CptpReport validate_cptp(const Channel& ch) { return validate_cptp(ch.din(), ch.dout(), ch.kraus()); }

double check_covariance(const Channel& ch, const CMatrix& u, const CMatrix& v,
                        std::size_t samples, rnd::Rng& rng) {
  if (u.rows() != idx(ch.din()) || v.rows() != idx(ch.dout()))
    throw ValidationError("check_covariance: representation dimensions do not match channel");
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const CMatrix rho = rnd::random_density(ch.din(), rng);
    const CMatrix lhs = channels::apply(ch, CMatrix(u * rho * u.adjoint()));
    const CMatrix rhs = v * channels::apply(ch, rho) * v.adjoint();
    worst = std::max(worst, mat::trace_norm(hermitian_part(lhs - rhs)));
  }
  return worst;
}

Channel trace_out_output(const Channel& ch, mat::Subsystem traced, std::size_t dim_first,
                         std::size_t dim_second, ChannelLabel label) {
  if (dim_first * dim_second != ch.dout())
    throw ValidationError("trace_out_output: output does not factor as requested");
  const Eigen::Index d1 = idx(dim_first);
  const Eigen::Index d2 = idx(dim_second);
  const bool second = traced == mat::Subsystem::Second;
  const Eigen::Index kept = second ? d1 : d2;
  const Eigen::Index removed = second ? d2 : d1;
  std::vector<CMatrix> kraus;
  for (const auto& k : ch.kraus()) {
    for (Eigen::Index j = 0; j < removed; ++j) {
      CMatrix kj(kept, k.cols());
      for (Eigen::Index a = 0; a < kept; ++a)
        kj.row(a) = second ? k.row(a * d2 + j) : k.row(j * d2 + a);
      if (kj.norm() > 0.0) kraus.push_back(std::move(kj));
    }
  }
  return Channel(ch.din(), static_cast<std::size_t>(kept), std::move(kraus), std::move(label));
}

// ---------------------------------------------------------------------------
// Named constructors

Channel identity(std::size_t d) {
  require_dimension("identity", d);
  return Channel(d, d, {CMatrix::Identity(idx(d), idx(d))}, label::Identity{d});
}

Channel unitary(const CMatrix& u) {
  const double residual = mat::unitarity_residual(u);
  if (residual > tol::kUnitary) {
    std::ostringstream msg;
    msg << "unitary: matrix is not unitary (residual " << residual << ")";
    throw RangeError(msg.str());
  }
  const auto d = static_cast<std::size_t>(u.rows());
  return Channel(d, d, {u}, label::Unitary{u});
}

Channel dephasing(double lambda, const CMatrix& basis) {
  require_unit_interval("dephasing lambda", lambda);
  if (mat::unitarity_residual(basis) > tol::kUnitary)
    throw RangeError("dephasing: basis columns are not orthonormal");
  const auto d = static_cast<std::size_t>(basis.rows());
  std::vector<CMatrix> kraus;
  if (lambda > 0.0) kraus.push_back(std::sqrt(lambda) * CMatrix::Identity(idx(d), idx(d)));
  if (lambda < 1.0)
    for (Eigen::Index k = 0; k < basis.cols(); ++k)
      kraus.push_back(std::sqrt(1.0 - lambda) * mat::projector(basis.col(k)));
  return Channel(d, d, std::move(kraus), label::Dephasing{lambda, basis});
}

Channel dephasing(double lambda, std::size_t d) {
  require_dimension("dephasing", d);
  return dephasing(lambda, CMatrix::Identity(idx(d), idx(d)));
}

Channel trace_class(const DensityMatrix& sigma, std::size_t din) {
  require_dimension("trace_class", din);
  std::vector<CMatrix> kraus;
  append_replacement_kraus(kraus, sigma.matrix(), din, 1.0);
  return Channel(din, sigma.dim(), std::move(kraus), label::TraceClass{sigma.matrix(), din});
}

Channel erasure(double lambda, std::size_t din) {
  require_unit_interval("erasure lambda", lambda);
  require_dimension("erasure", din);
  const Eigen::Index di = idx(din);
  std::vector<CMatrix> kraus;
  if (lambda > 0.0) {
    CMatrix embed = CMatrix::Zero(di + 1, di);
    embed.topRows(di) = CMatrix::Identity(di, di);
    kraus.push_back(std::sqrt(lambda) * embed);
  }
  if (lambda < 1.0) {
    for (Eigen::Index j = 0; j < di; ++j) {
      CMatrix flag = CMatrix::Zero(di + 1, di);
      flag(di, j) = std::sqrt(1.0 - lambda);
      kraus.push_back(std::move(flag));
    }
  }
  return Channel(din, din + 1, std::move(kraus), label::Erasure{lambda, din});
}

Channel quantum_classical(const Povm& povm) {
  const Eigen::Index d = idx(povm.dim());
  const Eigen::Index k = idx(povm.size());
  std::vector<CMatrix> kraus;
  for (Eigen::Index y = 0; y < k; ++y) {
    const CMatrix root = mat::psd_sqrt(povm[static_cast<std::size_t>(y)]);
    for (Eigen::Index w = 0; w < d; ++w) {
      if (root.row(w).norm() == 0.0) continue;
      CMatrix op = CMatrix::Zero(k, d);
      op.row(y) = root.row(w);
      kraus.push_back(std::move(op));
    }
  }
  return Channel(povm.dim(), povm.size(), std::move(kraus), label::QuantumClassical{povm});
}

CMatrix weyl(std::size_t d, std::size_t a, std::size_t b) {
  const Eigen::Index n = idx(d);
  CMatrix out = CMatrix::Zero(n, n);
  const double angle = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (std::size_t j = 0; j < d; ++j) {
    const Complex phase = std::polar(1.0, angle * static_cast<double>((b * j) % d));
    out(idx((j + a) % d), idx(j)) = phase;
  }
  return out;
}

Channel depolarizing(double lambda, std::size_t d) {
  require_unit_interval("depolarizing lambda", lambda);
  require_dimension("depolarizing", d);
  const double dd = static_cast<double>(d * d);
  std::vector<CMatrix> kraus;
  kraus.push_back(std::sqrt(lambda + (1.0 - lambda) / dd) * CMatrix::Identity(idx(d), idx(d)));
  if (lambda < 1.0) {
    const double w = std::sqrt((1.0 - lambda) / dd);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        if (a != 0 || b != 0) kraus.push_back(w * weyl(d, a, b));
  }
  return Channel(d, d, std::move(kraus), label::Depolarizing{lambda, d});
}

Channel pauli(const std::array<double, 4>& lambda) {
  double total = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0)) throw RangeError("pauli: weights must be nonnegative");
    total += l;
  }
  if (std::abs(total - 1.0) > tol::kProbabilitySum) {
    std::ostringstream msg;
    msg << "pauli: weights sum to " << total << ", expected 1";
    throw RangeError(msg.str());
  }
  std::vector<CMatrix> kraus;
  for (int k = 0; k < 4; ++k)
    if (lambda[static_cast<std::size_t>(k)] > 0.0)
      kraus.push_back(std::sqrt(lambda[static_cast<std::size_t>(k)]) * mat::pauli(k));
  return Channel(2, 2, std::move(kraus), label::Pauli{lambda});
}

Channel amplitude_damping(double eta) {
  require_unit_interval("amplitude damping eta", eta);
  CMatrix k0(2, 2);
  k0 << 1.0, 0.0, 0.0, std::sqrt(eta);
  CMatrix k1(2, 2);
  k1 << 0.0, std::sqrt(1.0 - eta), 0.0, 0.0;
  return Channel(2, 2, {k0, k1}, label::AmplitudeDamping{eta});
}

Channel shifted_depolarizing(double lambda, const DensityMatrix& sigma) {
  require_unit_interval("shifted depolarizing lambda", lambda);
  const std::size_t d = sigma.dim();
  std::vector<CMatrix> kraus;
  if (lambda > 0.0) kraus.push_back(std::sqrt(lambda) * CMatrix::Identity(idx(d), idx(d)));
  append_replacement_kraus(kraus, sigma.matrix(), d, 1.0 - lambda);
  return Channel(d, d, std::move(kraus), label::ShiftedDepolarizing{lambda, sigma.matrix()});
}

CMatrix symmetric_projector(std::size_t d) {
  const Eigen::Index n = idx(d);
  CMatrix swap = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) swap(j * n + i, i * n + j) = 1.0;
  return 0.5 * (CMatrix::Identity(n * n, n * n) + swap);
}

Channel cloning_1to2(std::size_t d) {
  require_dimension("cloning_1to2", d);
  const Eigen::Index n = idx(d);
  const CMatrix ps = symmetric_projector(d);
  const CMatrix id = CMatrix::Identity(n, n);
  const double scale = 2.0 / static_cast<double>(d + 1);
  const Eigen::Index dout = n * n;
  CMatrix j = CMatrix::Zero(n * dout, n * dout);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      CMatrix eab = CMatrix::Zero(n, n);
      eab(a, b) = 1.0;
      j.block(a * dout, b * dout, dout, dout) = scale * ps * mat::kron(eab, id) * ps;
    }
  auto kraus = kraus_from_choi(j, d, d * d, tol::kKrausDiscard);
  return Channel(d, d * d, std::move(kraus), label::Cloning{d});
}

Channel reduced_cloning(std::size_t d) {
  return trace_out_output(cloning_1to2(d), mat::Subsystem::Second, d, d, label::ReducedCloning{d});
}

}  // namespace chanwit::channels
