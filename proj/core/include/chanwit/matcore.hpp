#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace chanwit::mat {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline const Complex kI{0.0, 1.0};

/// Spectral decomposition A = V diag(values) V^dagger.
///
/// Eigenvalues are sorted descending. Each eigenvector column has its first
/// component of modulus above tol::kPhaseComponent rotated to be real and
/// positive, so the output is deterministic for a given input.
struct EigenDecomposition {
  RVector values;
  CMatrix vectors;
};

/// Largest entrywise modulus of A - A^dagger (A must be square).
double max_asymmetry(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tolerance);

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Throws ValidationError if A is not square or deviates from Hermitian by
/// more than tol::kHermitianInput, and ConvergenceError if the off-diagonal
/// norm does not drop below tolerance within tol::kJacobiMaxSweeps sweeps.
EigenDecomposition hermitian_eig(const CMatrix& a);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const CMatrix& a);

/// Largest eigenvalue and a unit eigenvector for it.
std::pair<double, CVector> top_eigpair(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

enum class Subsystem { First, Second };

/// Partial trace of an operator on H_first (x) H_second, removing `traced`.
CMatrix partial_trace(const CMatrix& a, Subsystem traced, std::size_t dim_first,
                      std::size_t dim_second);

CMatrix adjoint(const CMatrix& a);

/// f(A) = V diag(f(lambda)) V^dagger for Hermitian A.
template <typename F>
CMatrix hermitian_function(const CMatrix& a, F&& f) {
  const auto eig = hermitian_eig(a);
  RVector mapped(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) mapped(i) = f(eig.values(i));
  return eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

/// Unique PSD square root; negative eigenvalues are clipped to zero.
CMatrix psd_sqrt(const CMatrix& a);

/// Projector onto the eigenspace with eigenvalue >= 0.
CMatrix nonnegative_projector(const CMatrix& a);

/// |v><v|
CMatrix projector(const CVector& v);

/// Computational basis vector e_k in dimension d.
CVector basis_vector(std::size_t d, std::size_t k);

/// Frobenius norm of [A, B].
double commutator_norm(const CMatrix& a, const CMatrix& b);

/// max |U^dagger U - I|.
double unitarity_residual(const CMatrix& u);

/// Pauli matrices indexed 0 (identity), 1 (X), 2 (Y), 3 (Z).
CMatrix pauli(int k);

}  // namespace chanwit::mat
