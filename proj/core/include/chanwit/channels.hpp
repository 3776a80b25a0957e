#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "chanwit/matcore.hpp"
#include "chanwit/random.hpp"

namespace chanwit::channels {

using mat::CMatrix;

/// Positive semidefinite unit-trace operator.
class DensityMatrix {
 public:
  /// Throws ValidationError unless mat is Hermitian, PSD (eigenvalues
  /// >= tol::kPsdFloor) and has unit trace within tol::kUnitTrace.
  explicit DensityMatrix(CMatrix mat);
  static DensityMatrix pure(const mat::CVector& psi);
  static DensityMatrix maximally_mixed(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  const CMatrix& matrix() const { return mat_; }

 private:
  CMatrix mat_;
};

/// Family of PSD operators summing to the identity.
class Povm {
 public:
  /// Throws ValidationError on PSD or completeness violations.
  explicit Povm(std::vector<CMatrix> elements);
  /// Projective measurement onto the columns of a unitary.
  static Povm from_basis(const CMatrix& unitary);
  /// Symmetric qubit trine: (2/3)|t_y><t_y| with |t_y> = R^y |0>, R = exp(-i 2pi/3 sigma_Y).
  static Povm trine();

  std::size_t dim() const;
  std::size_t size() const { return elements_.size(); }
  const CMatrix& operator[](std::size_t y) const { return elements_[y]; }
  const std::vector<CMatrix>& elements() const { return elements_; }

  /// max |sum_y pi_y - I|.
  double completeness_residual() const;

 private:
  std::vector<CMatrix> elements_;
};

// Constructor labels. Closed-form dispatch keys on these, never on Kraus data.
namespace label {
struct Raw {};
struct Identity { std::size_t d; };
struct Unitary { CMatrix u; };
struct Dephasing { double lambda; CMatrix basis; };
struct TraceClass { CMatrix sigma; std::size_t din; };
struct Erasure { double lambda; std::size_t din; };
struct QuantumClassical { Povm povm; };
struct Depolarizing { double lambda; std::size_t d; };
struct Pauli { std::array<double, 4> lambda; };
struct AmplitudeDamping { double eta; };
struct ShiftedDepolarizing { double lambda; CMatrix sigma; };
struct Cloning { std::size_t d; };
/// Second clone traced out of Cloning{d}.
struct ReducedCloning { std::size_t d; };
}  // namespace label

using ChannelLabel =
    std::variant<label::Raw, label::Identity, label::Unitary, label::Dephasing,
                 label::TraceClass, label::Erasure, label::QuantumClassical,
                 label::Depolarizing, label::Pauli, label::AmplitudeDamping,
                 label::ShiftedDepolarizing, label::Cloning, label::ReducedCloning>;

std::string describe(const ChannelLabel& label);

/// CPTP map L(C^din) -> L(C^dout) stored as Kraus operators (dout x din).
class Channel {
 public:
  /// Validates shapes and CPTP-ness; throws ValidationError on failure.
  Channel(std::size_t din, std::size_t dout, std::vector<CMatrix> kraus,
          ChannelLabel label = label::Raw{});

  std::size_t din() const { return din_; }
  std::size_t dout() const { return dout_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const ChannelLabel& label() const { return label_; }
  std::string name() const { return describe(label_); }

 private:
  std::size_t din_;
  std::size_t dout_;
  std::vector<CMatrix> kraus_;
  ChannelLabel label_;
};

/// sum_k K X K^dagger for any din x din operator X.
CMatrix apply(const Channel& ch, const CMatrix& x);
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

/// Heisenberg picture sum_k K^dagger X K, so Tr[C(rho) X] = Tr[rho C^dagger(X)].
CMatrix adjoint_apply(const Channel& ch, const CMatrix& x);

/// sum_ij |i><j| (x) C(|i><j|), indexed (i * dout + a, j * dout + b).
CMatrix choi(const Channel& ch);

/// Trace norm of the Choi difference; throws on dimension mismatch.
double choi_distance(const Channel& a, const Channel& b);

/// Kraus operators sqrt(mu) reshape(v) from the Choi eigenpairs with mu above `discard`.
std::vector<CMatrix> kraus_from_choi(const CMatrix& choi, std::size_t din, std::size_t dout,
                                     double discard);

struct CptpReport {
  /// max |sum K^dagger K - I|.
  double tp_residual = 0.0;
  double choi_min_eigenvalue = 0.0;
  bool trace_preserving = false;
  bool completely_positive = false;
  /// Empty when valid; otherwise names each violated invariant with its magnitude.
  std::string message;

  bool ok() const { return trace_preserving && completely_positive; }
};

CptpReport validate_cptp(std::size_t din, std::size_t dout, const std::vector<CMatrix>& kraus);
CptpReport validate_cptp(const Channel& ch);

/// max over `samples` random states rho of ||C(U rho U^dagger) - V C(rho) V^dagger||_1.
double check_covariance(const Channel& ch, const CMatrix& u, const CMatrix& v,
                        std::size_t samples, rnd::Rng& rng);

/// Traces one tensor factor out of the output space dout = dim_first * dim_second.
Channel trace_out_output(const Channel& ch, mat::Subsystem traced, std::size_t dim_first,
                         std::size_t dim_second, ChannelLabel label = label::Raw{});

// Named constructors. All throw RangeError for parameters outside their domain.

Channel identity(std::size_t d);
Channel unitary(const CMatrix& u);
/// Dephasing along the columns of `basis` (a unitary).
Channel dephasing(double lambda, const CMatrix& basis);
Channel dephasing(double lambda, std::size_t d);
/// rho -> Tr[rho] sigma, input dimension din.
Channel trace_class(const DensityMatrix& sigma, std::size_t din);
/// Output space C^din (+) span{|din>}; the flag state is the last basis vector.
Channel erasure(double lambda, std::size_t din);
/// rho -> sum_y Tr[rho pi_y] |y><y|.
Channel quantum_classical(const Povm& povm);
Channel depolarizing(double lambda, std::size_t d);
/// lambda = (identity, X, Y, Z) weights, a probability vector.
Channel pauli(const std::array<double, 4>& lambda);
Channel amplitude_damping(double eta);
Channel shifted_depolarizing(double lambda, const DensityMatrix& sigma);
/// Optimal universal 1 -> 2 cloner 2/(d+1) P_s (rho (x) 1) P_s.
Channel cloning_1to2(std::size_t d);
/// Partial trace over the second clone of cloning_1to2(d).
Channel reduced_cloning(std::size_t d);

/// Projector onto the symmetric subspace of C^d (x) C^d.
CMatrix symmetric_projector(std::size_t d);
/// Generalised Pauli X^a Z^b on C^d.
CMatrix weyl(std::size_t d, std::size_t a, std::size_t b);

}  // namespace chanwit::channels
