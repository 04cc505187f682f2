// Copyright 2026 The entwit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTWIT_OPERATOR_CORE_HPP
#define ENTWIT_OPERATOR_CORE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entwit/errors.hpp"

namespace entwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Sites are 1-based. Site 1 is the most significant bit of a basis index, so
// for n = 2 the computational basis is ordered |00>, |01>, |10>, |11>.
class QubitRegister {
 public:
  static constexpr int kMaxQubits = 12;

  explicit QubitRegister(int n);

  int size() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << n_; }

  // Bit position of `site` inside a basis index.
  int bit(int site) const noexcept { return n_ - site; }
  bool contains(int site) const noexcept { return site >= 1 && site <= n_; }

  friend bool operator==(const QubitRegister &, const QubitRegister &) = default;

 private:
  int n_;
};

void require_same_register(const QubitRegister &a, const QubitRegister &b,
                           const char *context);

/// Largest absolute entry.
double max_abs(const Matrix &m);

/// Operator norm (largest singular value).
double operator_norm(const Matrix &m);

Matrix commutator(const Matrix &a, const Matrix &b);

/// Dense self-adjoint operator on a qubit register. Entries are validated on
/// construction: max |A - A^dagger| must not exceed `tolerance` times
/// max(1, max |A|). The stored matrix is the exact Hermitian part.
class HermitianOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  HermitianOperator(QubitRegister reg, Matrix entries,
                    double tolerance = kDefaultTolerance);

  static HermitianOperator zero(QubitRegister reg);
  static HermitianOperator identity(QubitRegister reg);

  const QubitRegister &reg() const noexcept { return reg_; }
  const Matrix &matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  HermitianOperator &operator+=(const HermitianOperator &other);
  HermitianOperator &operator-=(const HermitianOperator &other);
  HermitianOperator &operator*=(double s);

  friend HermitianOperator operator+(HermitianOperator a,
                                     const HermitianOperator &b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a,
                                     const HermitianOperator &b) {
    return a -= b;
  }
  friend HermitianOperator operator*(double s, HermitianOperator a) {
    return a *= s;
  }

 private:
  QubitRegister reg_;
  Matrix m_;
};

struct SpectralDecomposition;

class UnitaryOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  UnitaryOperator(QubitRegister reg, Matrix entries,
                  double tolerance = kDefaultTolerance);

  static UnitaryOperator identity(QubitRegister reg);

  const QubitRegister &reg() const noexcept { return reg_; }
  const Matrix &matrix() const noexcept { return m_; }

  /// max |U^dagger U - I|.
  double unitarity_error() const;

  // `later * earlier` applies `earlier` first.
  friend UnitaryOperator operator*(const UnitaryOperator &later,
                                   const UnitaryOperator &earlier);

 private:
  struct Trusted {};
  UnitaryOperator(Trusted, QubitRegister reg, Matrix entries)
      : reg_(reg), m_(std::move(entries)) {}
  friend UnitaryOperator evolution_operator(QubitRegister,
                                            const SpectralDecomposition &,
                                            double);

  QubitRegister reg_;
  Matrix m_;
};

/// Unit-trace positive semidefinite operator. Construction checks trace
/// (1e-12), Hermiticity (1e-12) and a minimum eigenvalue of at least -1e-10.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kNegativityTolerance = 1e-10;

  DensityMatrix(QubitRegister reg, Matrix entries);

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(QubitRegister reg, const Vector &psi);
  /// I / 2^n.
  static DensityMatrix maximally_mixed(QubitRegister reg);

  const QubitRegister &reg() const noexcept { return reg_; }
  const Matrix &matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, QubitRegister reg, Matrix entries)
      : reg_(reg), m_(std::move(entries)) {}
  friend DensityMatrix density_from_spectrum(QubitRegister, const Matrix &,
                                             const RealVector &);

  QubitRegister reg_;
  Matrix m_;
};

/// Builds V diag(p) V^dagger for non-negative weights p summing to one.
DensityMatrix density_from_spectrum(QubitRegister reg, const Matrix &vectors,
                                    const RealVector &weights);

/// Real expectation value tr(rho A).
double expectation(const DensityMatrix &rho, const HermitianOperator &a);

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, orthonormal
  double degeneracy_tolerance = 1e-9;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }

  Matrix reconstruct() const;

  /// Half-open index ranges [first, last) of eigenvalues that agree within
  /// degeneracy_tolerance.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> degenerate_blocks() const;
};

SpectralDecomposition spectral_decompose(const HermitianOperator &a);
SpectralDecomposition spectral_decompose(const DensityMatrix &rho);

using RealFunction = std::function<double(double)>;

/// V f(diag E) V^dagger. Throws InvalidArgument if f is not finite at some
/// eigenvalue.
HermitianOperator hermitian_function(const HermitianOperator &a,
                                     const RealFunction &f);
HermitianOperator hermitian_function(QubitRegister reg,
                                     const SpectralDecomposition &spectrum,
                                     const RealFunction &f);

/// exp(-i A t) assembled from the spectrum of A.
UnitaryOperator evolution_operator(QubitRegister reg,
                                   const SpectralDecomposition &spectrum,
                                   double time);
UnitaryOperator evolution_operator(const HermitianOperator &a, double time);

enum class PauliAxis { x, y, z };

/// 2x2 Pauli matrix.
Matrix pauli(PauliAxis axis);

/// I (x) ... (x) sigma^axis (x) ... (x) I with the Pauli at `site`.
HermitianOperator embed_pauli(QubitRegister reg, int site, PauliAxis axis);

/// Embeds an operator acting on `sites.size()` qubits into `reg`. Qubit j of
/// `local` (1-based, most significant first) is placed at `sites[j-1]`.
Matrix embed_operator(QubitRegister reg, const Matrix &local,
                      std::span<const int> sites);

/// Kronecker product a (x) b; a occupies the leading sites.
Matrix tensor(const Matrix &a, const Matrix &b);

/// Traces out every site not in `keep`. Kept sites appear in the result in
/// the order listed. Works on any operator; unit trace is not required.
Matrix partial_trace(QubitRegister reg, const Matrix &op,
                     std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/// Normalized symmetric superposition of all basis states with `k_ones`
/// ones.
Vector dicke_state(QubitRegister reg, int k_ones);

}  // namespace entwit

#endif  // ENTWIT_OPERATOR_CORE_HPP
