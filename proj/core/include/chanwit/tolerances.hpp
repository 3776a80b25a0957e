#pragma once

// Named numerical tolerances shared by every module. Comparisons against
// magic numbers elsewhere in the code base should be replaced by one of these.

namespace chanwit::tol {

/// Max entrywise |A - A^dagger| for a matrix to count as Hermitian.
inline constexpr double kHermitian = 1e-12;
/// Looser Hermiticity gate applied to eigensolver input.
inline constexpr double kHermitianInput = 1e-10;

/// Jacobi sweep stops once the off-diagonal Frobenius norm falls below
/// kJacobiOffDiagonal * max(1, ||A||_F).
inline constexpr double kJacobiOffDiagonal = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Eigenvector phase normalisation ignores components smaller than this.
inline constexpr double kPhaseComponent = 1e-12;

inline constexpr double kTracePreserving = 1e-10;
/// Smallest admissible Choi eigenvalue (complete positivity).
inline constexpr double kChoiFloor = -1e-10;
inline constexpr double kUnitTrace = 1e-10;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kPovmSum = 1e-10;
inline constexpr double kProbabilitySum = 1e-12;
inline constexpr double kUnbiased = 1e-10;
/// Choi eigenvalues below this are dropped when extracting Kraus operators.
inline constexpr double kKrausDiscard = 1e-10;
/// Relative cutoff below which eigenvalues of R are treated as kernel in the
/// POVM ascent pseudo-inverse R^{-1/2}.
inline constexpr double kRegularize = 1e-12;
/// Unitarity residual accepted by unitary-valued inputs.
inline constexpr double kUnitary = 1e-10;
/// Parameter range slack (lambda, eta, g0 in [0,1]).
inline constexpr double kParameterSlack = 1e-12;

}  // namespace chanwit::tol
