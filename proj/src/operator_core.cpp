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

#include "entwit/operator_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entwit {

namespace {

std::string describe(const char *what, double value, double limit) {
  std::ostringstream os;
  os.precision(3);
  os << what << ": deviation " << value << " exceeds tolerance " << limit;
  return os.str();
}

void require_square(const QubitRegister &reg, const Matrix &m,
                    const char *context) {
  if (m.rows() != reg.dim() || m.cols() != reg.dim()) {
    std::ostringstream os;
    os << context << ": expected " << reg.dim() << "x" << reg.dim()
       << " matrix for " << reg.size() << " qubits, got " << m.rows() << "x"
       << m.cols();
    throw InvalidArgument(os.str());
  }
}

void require_sites(const QubitRegister &reg, std::span<const int> sites,
                   const char *context) {
  std::uint64_t seen = 0;
  for (int s : sites) {
    if (!reg.contains(s)) {
      std::ostringstream os;
      os << context << ": site " << s << " outside 1.." << reg.size();
      throw InvalidArgument(os.str());
    }
    const std::uint64_t mask = std::uint64_t{1} << s;
    if (seen & mask) {
      std::ostringstream os;
      os << context << ": site " << s << " listed twice";
      throw InvalidArgument(os.str());
    }
    seen |= mask;
  }
}

// Offsets of the selected sites (indexed by a local basis index over those
// sites) and of the remaining sites (indexed by a basis index over the rest).
struct SiteSplit {
  std::vector<Eigen::Index> selected;
  std::vector<Eigen::Index> rest;
};

SiteSplit split_sites(const QubitRegister &reg, std::span<const int> sites) {
  std::vector<int> others;
  for (int s = 1; s <= reg.size(); ++s) {
    if (std::find(sites.begin(), sites.end(), s) == sites.end()) {
      others.push_back(s);
    }
  }
  auto offsets = [&](std::span<const int> group) {
    const int g = static_cast<int>(group.size());
    std::vector<Eigen::Index> out(std::size_t{1} << g, 0);
    for (std::size_t a = 0; a < out.size(); ++a) {
      Eigen::Index idx = 0;
      for (int j = 0; j < g; ++j) {
        if ((a >> (g - 1 - j)) & 1U) idx |= Eigen::Index{1} << reg.bit(group[j]);
      }
      out[a] = idx;
    }
    return out;
  };
  return {offsets(sites), offsets(others)};
}

Matrix hermitian_part(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

QubitRegister::QubitRegister(int n) : n_(n) {
  if (n < 1) throw InvalidArgument("qubit register needs at least one qubit");
  if (n > kMaxQubits) {
    std::ostringstream os;
    os << "qubit register of " << n << " qubits exceeds the dense ceiling of "
       << kMaxQubits;
    throw InvalidArgument(os.str());
  }
}

void require_same_register(const QubitRegister &a, const QubitRegister &b,
                           const char *context) {
  if (!(a == b)) {
    std::ostringstream os;
    os << context << ": register mismatch (" << a.size() << " vs " << b.size()
       << " qubits)";
    throw InvalidArgument(os.str());
  }
}

double max_abs(const Matrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix &m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

HermitianOperator::HermitianOperator(QubitRegister reg, Matrix entries,
                                     double tolerance)
    : reg_(reg), m_(std::move(entries)) {
  require_square(reg_, m_, "HermitianOperator");
  if (!m_.allFinite()) throw InvalidArgument("HermitianOperator: non-finite entry");
  const double dev = max_abs(m_ - m_.adjoint());
  const double limit = tolerance * std::max(1.0, max_abs(m_));
  if (dev > limit) throw NumericalError("hermiticity", describe("HermitianOperator", dev, limit));
  m_ = hermitian_part(m_);
}

HermitianOperator HermitianOperator::zero(QubitRegister reg) {
  return {reg, Matrix::Zero(reg.dim(), reg.dim())};
}

HermitianOperator HermitianOperator::identity(QubitRegister reg) {
  return {reg, Matrix::Identity(reg.dim(), reg.dim())};
}

HermitianOperator &HermitianOperator::operator+=(const HermitianOperator &o) {
  require_same_register(reg_, o.reg_, "operator sum");
  m_ += o.m_;
  return *this;
}

HermitianOperator &HermitianOperator::operator-=(const HermitianOperator &o) {
  require_same_register(reg_, o.reg_, "operator difference");
  m_ -= o.m_;
  return *this;
}

HermitianOperator &HermitianOperator::operator*=(double s) {
  if (!std::isfinite(s)) throw InvalidArgument("operator scale: non-finite scalar");
  m_ *= s;
  return *this;
}

// ---------------------------------------------------------------------------

UnitaryOperator::UnitaryOperator(QubitRegister reg, Matrix entries,
                                 double tolerance)
    : reg_(reg), m_(std::move(entries)) {
  require_square(reg_, m_, "UnitaryOperator");
  if (!m_.allFinite()) throw InvalidArgument("UnitaryOperator: non-finite entry");
  const double dev = unitarity_error();
  if (!(dev <= tolerance)) {
    throw NumericalError("unitarity", describe("unitarity check failed", dev, tolerance));
  }
}

UnitaryOperator UnitaryOperator::identity(QubitRegister reg) {
  return {Trusted{}, reg, Matrix::Identity(reg.dim(), reg.dim())};
}

double UnitaryOperator::unitarity_error() const {
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols()));
}

UnitaryOperator operator*(const UnitaryOperator &later,
                          const UnitaryOperator &earlier) {
  require_same_register(later.reg_, earlier.reg_, "unitary product");
  return {UnitaryOperator::Trusted{}, later.reg_, later.m_ * earlier.m_};
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(QubitRegister reg, Matrix entries)
    : reg_(reg), m_(std::move(entries)) {
  require_square(reg_, m_, "DensityMatrix");
  if (!m_.allFinite()) throw InvalidArgument("DensityMatrix: non-finite entry");
  const double herm = max_abs(m_ - m_.adjoint());
  if (herm > kTraceTolerance) {
    throw NumericalError("hermiticity", describe("DensityMatrix hermiticity", herm, kTraceTolerance));
  }
  m_ = hermitian_part(m_);
  const Complex tr = m_.trace();
  const double trace_dev = std::abs(tr - Complex{1.0, 0.0});
  if (trace_dev > kTraceTolerance) {
    throw NumericalError("trace", describe("DensityMatrix trace", trace_dev, kTraceTolerance));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver", "DensityMatrix: eigensolver did not converge");
  }
  const double lowest = es.eigenvalues()(0);
  if (lowest < -kNegativityTolerance) {
    throw NumericalError("positivity", describe("DensityMatrix positivity", -lowest, kNegativityTolerance));
  }
}

DensityMatrix DensityMatrix::pure(QubitRegister reg, const Vector &psi) {
  if (psi.size() != reg.dim()) throw InvalidArgument("pure state: vector length does not match register");
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("pure state: zero or non-finite vector");
  const Vector v = psi / norm;
  return {Trusted{}, reg, v * v.adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(QubitRegister reg) {
  const auto d = reg.dim();
  return {Trusted{}, reg, Matrix::Identity(d, d) / static_cast<double>(d)};
}

double DensityMatrix::purity() const {
  return (m_ * m_).trace().real();
}

DensityMatrix density_from_spectrum(QubitRegister reg, const Matrix &vectors,
                                    const RealVector &weights) {
  require_square(reg, vectors, "density_from_spectrum");
  if (weights.size() != reg.dim()) throw InvalidArgument("density_from_spectrum: weight count mismatch");
  if ((weights.array() < 0.0).any()) throw InvalidArgument("density_from_spectrum: negative weight");
  const double total = weights.sum();
  if (std::abs(total - 1.0) > DensityMatrix::kTraceTolerance) {
    throw NumericalError("trace", describe("density_from_spectrum weights", std::abs(total - 1.0), DensityMatrix::kTraceTolerance));
  }
  Matrix m = vectors * weights.cast<Complex>().asDiagonal() * vectors.adjoint();
  return {DensityMatrix::Trusted{}, reg, hermitian_part(m)};
}

double expectation(const DensityMatrix &rho, const HermitianOperator &a) {
  require_same_register(rho.reg(), a.reg(), "expectation");
  // tr(rho A) = sum_ij rho_ij A_ji = sum_ij rho_ij conj(A_ij)
  return (rho.matrix().array() * a.matrix().conjugate().array()).sum().real();
}

// ---------------------------------------------------------------------------

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

std::vector<std::pair<Eigen::Index, Eigen::Index>>
SpectralDecomposition::degenerate_blocks() const {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  Eigen::Index first = 0;
  for (Eigen::Index i = 1; i <= eigenvalues.size(); ++i) {
    if (i == eigenvalues.size() ||
        eigenvalues(i) - eigenvalues(i - 1) > degeneracy_tolerance) {
      blocks.emplace_back(first, i);
      first = i;
    }
  }
  return blocks;
}

namespace {

SpectralDecomposition decompose(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver failed to converge on " << m.rows() << "x" << m.cols()
       << " matrix with max entry " << max_abs(m);
    throw NumericalError("eigensolver", os.str());
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

SpectralDecomposition spectral_decompose(const HermitianOperator &a) {
  return decompose(a.matrix());
}

SpectralDecomposition spectral_decompose(const DensityMatrix &rho) {
  return decompose(rho.matrix());
}

HermitianOperator hermitian_function(QubitRegister reg,
                                     const SpectralDecomposition &spectrum,
                                     const RealFunction &f) {
  RealVector mapped(spectrum.dim());
  for (Eigen::Index i = 0; i < spectrum.dim(); ++i) {
    mapped(i) = f(spectrum.eigenvalues(i));
    if (!std::isfinite(mapped(i))) {
      std::ostringstream os;
      os << "hermitian_function: function undefined at eigenvalue "
         << spectrum.eigenvalues(i);
      throw InvalidArgument(os.str());
    }
  }
  const Matrix &v = spectrum.eigenvectors;
  Matrix m = v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
  return {reg, hermitian_part(m)};
}

HermitianOperator hermitian_function(const HermitianOperator &a,
                                     const RealFunction &f) {
  return hermitian_function(a.reg(), spectral_decompose(a), f);
}

UnitaryOperator evolution_operator(QubitRegister reg,
                                   const SpectralDecomposition &spectrum,
                                   double time) {
  require_square(reg, spectrum.eigenvectors, "evolution_operator");
  Vector phases(spectrum.dim());
  for (Eigen::Index i = 0; i < spectrum.dim(); ++i) {
    phases(i) = std::polar(1.0, -spectrum.eigenvalues(i) * time);
  }
  const Matrix &v = spectrum.eigenvectors;
  return {UnitaryOperator::Trusted{}, reg, v * phases.asDiagonal() * v.adjoint()};
}

UnitaryOperator evolution_operator(const HermitianOperator &a, double time) {
  return evolution_operator(a.reg(), spectral_decompose(a), time);
}

// ---------------------------------------------------------------------------

Matrix pauli(PauliAxis axis) {
  const Complex i{0.0, 1.0};
  Matrix p(2, 2);
  switch (axis) {
    case PauliAxis::x: p << 0.0, 1.0, 1.0, 0.0; break;
    case PauliAxis::y: p << 0.0, -i, i, 0.0; break;
    case PauliAxis::z: p << 1.0, 0.0, 0.0, -1.0; break;
  }
  return p;
}

HermitianOperator embed_pauli(QubitRegister reg, int site, PauliAxis axis) {
  const int sites[] = {site};
  return {reg, embed_operator(reg, pauli(axis), sites)};
}

Matrix embed_operator(QubitRegister reg, const Matrix &local,
                      std::span<const int> sites) {
  require_sites(reg, sites, "embed_operator");
  const auto k = static_cast<Eigen::Index>(sites.size());
  if (k == 0) throw InvalidArgument("embed_operator: empty site list");
  if (local.rows() != (Eigen::Index{1} << k) || local.cols() != local.rows()) {
    throw InvalidArgument("embed_operator: local operator size does not match site count");
  }
  const SiteSplit split = split_sites(reg, sites);
  Matrix out = Matrix::Zero(reg.dim(), reg.dim());
  for (Eigen::Index r : split.rest) {
    for (Eigen::Index a = 0; a < local.rows(); ++a) {
      for (Eigen::Index b = 0; b < local.cols(); ++b) {
        const Complex v = local(a, b);
        if (v != Complex{}) out(split.selected[a] | r, split.selected[b] | r) = v;
      }
    }
  }
  return out;
}

Matrix tensor(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(QubitRegister reg, const Matrix &op,
                     std::span<const int> keep) {
  require_square(reg, op, "partial_trace");
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  require_sites(reg, keep, "partial_trace");
  const SiteSplit split = split_sites(reg, keep);
  const auto d = static_cast<Eigen::Index>(split.selected.size());
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      Complex acc{};
      for (Eigen::Index r : split.rest) {
        acc += op(split.selected[a] | r, split.selected[b] | r);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
  Matrix reduced = partial_trace(rho.reg(), rho.matrix(), keep);
  return {QubitRegister(static_cast<int>(keep.size())), std::move(reduced)};
}

Vector dicke_state(QubitRegister reg, int k_ones) {
  if (k_ones < 0 || k_ones > reg.size()) {
    std::ostringstream os;
    os << "dicke_state: k_ones = " << k_ones << " outside 0.." << reg.size();
    throw InvalidArgument(os.str());
  }
  Vector v = Vector::Zero(reg.dim());
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < reg.dim(); ++i) {
    if (std::popcount(static_cast<std::uint64_t>(i)) == k_ones) {
      v(i) = 1.0;
      ++count;
    }
  }
  return v / std::sqrt(static_cast<double>(count));
}

}  // namespace entwit
