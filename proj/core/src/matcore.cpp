#include "chanwit/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chanwit/error.hpp"
#include "chanwit/tolerances.hpp"

namespace chanwit::mat {
namespace {

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw ValidationError(msg.str());
  }
}

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One two-sided rotation zeroing a(p, q). The rotation is G = D R with
// D = diag(1, e^{-i phi}) removing the phase of a(p, q) and R the real
// Jacobi rotation of the resulting symmetric 2x2 block.
void rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double zeta = (aqq - app) / (2.0 * r);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex conj_phase = std::conj(phase);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * conj_phase * akq;
    a(k, q) = s * akp + c * conj_phase * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < v.rows(); ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * conj_phase * vkq;
    v(k, q) = s * vkp + c * conj_phase * vkq;
  }
}

}  // namespace

double max_asymmetry(const CMatrix& a) {
  require_square(a, "max_asymmetry");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

bool is_hermitian(const CMatrix& a, double tolerance) {
  return a.rows() == a.cols() && max_asymmetry(a) <= tolerance;
}

EigenDecomposition hermitian_eig(const CMatrix& input) {
  require_square(input, "hermitian_eig");
  const double asym = max_asymmetry(input);
  if (asym > tol::kHermitianInput) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (max asymmetry |A - A^dagger| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  const Eigen::Index n = input.rows();
  CMatrix a = 0.5 * (input + input.adjoint());
  CMatrix v = CMatrix::Identity(n, n);

  const double threshold = tol::kJacobiOffDiagonal * std::max(1.0, a.norm());
  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep++ >= tol::kJacobiMaxSweeps) {
      throw ConvergenceError("hermitian_eig: Jacobi sweeps exhausted");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigenDecomposition out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    CVector col = v.col(src);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(col(i));
      if (mag > tol::kPhaseComponent) {
        col *= std::conj(col(i)) / mag;
        break;
      }
    }
    out.vectors.col(k) = col.normalized();
  }
  return out;
}

double trace_norm(const CMatrix& a) {
  return hermitian_eig(a).values.cwiseAbs().sum();
}

std::pair<double, CVector> top_eigpair(const CMatrix& a) {
  auto eig = hermitian_eig(a);
  return {eig.values(0), eig.vectors.col(0)};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& a, Subsystem traced, std::size_t dim_first,
                      std::size_t dim_second) {
  require_square(a, "partial_trace");
  const auto d1 = static_cast<Eigen::Index>(dim_first);
  const auto d2 = static_cast<Eigen::Index>(dim_second);
  if (d1 <= 0 || d2 <= 0 || a.rows() != d1 * d2) {
    std::ostringstream msg;
    msg << "partial_trace: operator of size " << a.rows() << " does not factor as "
        << dim_first << "x" << dim_second;
    throw ValidationError(msg.str());
  }
  if (traced == Subsystem::Second) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d1; ++j)
        out(i, j) = a.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (Eigen::Index k = 0; k < d1; ++k) out += a.block(k * d2, k * d2, d2, d2);
  return out;
}

CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

CMatrix psd_sqrt(const CMatrix& a) {
  return hermitian_function(a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

CMatrix nonnegative_projector(const CMatrix& a) {
  return hermitian_function(a, [](double x) { return x >= 0.0 ? 1.0 : 0.0; });
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CVector basis_vector(std::size_t d, std::size_t k) {
  if (k >= d) throw ValidationError("basis_vector: index out of range");
  CVector e = CVector::Zero(static_cast<Eigen::Index>(d));
  e(static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return (a * b - b * a).norm();
}

double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

CMatrix pauli(int k) {
  CMatrix s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw ValidationError("pauli: index must be 0..3");
  }
  return s;
}

}  // namespace chanwit::mat
