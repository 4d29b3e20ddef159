// Copyright 2026 The XXZ Gatesmith Authors.
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

#ifndef GATESMITH_CORE_HPP
#define GATESMITH_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace gatesmith {

// Fixed-size complex algebra for one and two spins-1/2.
//
// Basis ordering for two spins is |up up>, |up down>, |down up>, |down down>
// with spin 1 as the left Kronecker factor, so the basis index of a product
// state is 2*s1 + s2 where s = 0 for up and 1 for down.

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

template <typename Scalar>
using Vector4 = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

using Complexd = Complex<double>;
using Matrix2cd = Matrix2<double>;
using Matrix4cd = Matrix4<double>;
using Vector4cd = Vector4<double>;

enum class Axis { X, Y, Z };

enum BasisState : int { kUpUp = 0, kUpDown = 1, kDownUp = 2, kDownDown = 3 };

class NonUnitaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Max-norm tolerance on U^dagger U - I used when validating a Unitary4.
template <typename Scalar>
constexpr Scalar unitarity_tolerance() {
  if constexpr (std::numeric_limits<Scalar>::digits >= 53) {
    return Scalar(1e-12);
  } else {
    return Scalar(1e4) * std::numeric_limits<Scalar>::epsilon();
  }
}

template <typename Scalar>
Matrix2<Scalar> pauli(Axis axis) {
  using C = Complex<Scalar>;
  Matrix2<Scalar> m;
  switch (axis) {
    case Axis::X:
      m << C(0), C(1), C(1), C(0);
      break;
    case Axis::Y:
      m << C(0), C(0, -1), C(0, 1), C(0);
      break;
    case Axis::Z:
      m << C(1), C(0), C(0), C(-1);
      break;
  }
  return m;
}

/// Kronecker product with `a` acting on spin 1.
template <typename Scalar>
Matrix4<Scalar> kron(const Matrix2<Scalar>& a, const Matrix2<Scalar>& b) {
  Matrix4<Scalar> out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
  }
  return out;
}

template <typename Derived>
typename Derived::RealScalar max_abs_diff(const Eigen::MatrixBase<Derived>& a,
                                          const Eigen::MatrixBase<Derived>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Tr[W^dagger U] evaluated without forming the product.
template <typename DerivedW, typename DerivedU>
auto trace_overlap(const Eigen::MatrixBase<DerivedW>& w, const Eigen::MatrixBase<DerivedU>& u) {
  return w.conjugate().cwiseProduct(u).sum();
}

/// A 4x4 complex matrix that is unitary to within unitarity_tolerance().
/// Construction from a non-unitary or non-finite matrix throws NonUnitaryError.
template <typename Scalar>
class Unitary4 {
 public:
  using MatrixType = Matrix4<Scalar>;

  explicit Unitary4(const MatrixType& m) : m_(m) {
    if (!m_.allFinite()) {
      throw NonUnitaryError("matrix has non-finite entries");
    }
    const Scalar deviation =
        (m_.adjoint() * m_ - MatrixType::Identity()).cwiseAbs().maxCoeff();
    if (!(deviation <= unitarity_tolerance<Scalar>())) {
      throw NonUnitaryError("matrix is not unitary: max |U^+U - I| = " +
                            std::to_string(static_cast<double>(deviation)));
    }
  }

  static Unitary4 identity() { return Unitary4(MatrixType::Identity()); }

  const MatrixType& matrix() const { return m_; }
  operator const MatrixType&() const { return m_; }  // NOLINT: Eigen interop

  const Complex<Scalar>& operator()(int row, int col) const { return m_(row, col); }

  Unitary4 adjoint() const { return Unitary4(MatrixType(m_.adjoint())); }

  /// e^{i chi} U
  Unitary4 with_phase(Scalar chi) const {
    return Unitary4(MatrixType(std::polar(Scalar(1), chi) * m_));
  }

  friend Unitary4 operator*(const Unitary4& a, const Unitary4& b) {
    return Unitary4(MatrixType(a.m_ * b.m_));
  }

 private:
  MatrixType m_;
};

using Unitary4d = Unitary4<double>;

/// True iff some e^{i chi} brings `b` within `tol` of `a` in max-norm. The
/// candidate phase is arg Tr[b^dagger a], which is optimal in Frobenius norm.
template <typename Scalar>
bool approx_equal_up_to_phase(const Unitary4<Scalar>& a, const Unitary4<Scalar>& b, Scalar tol) {
  if (!(tol > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  const Complex<Scalar> overlap = trace_overlap(b.matrix(), a.matrix());
  if (std::abs(overlap) == Scalar(0)) {
    return false;
  }
  const Complex<Scalar> phase = overlap / std::abs(overlap);
  return max_abs_diff(a.matrix(), Matrix4<Scalar>(phase * b.matrix())) <= tol;
}

template <typename Scalar>
Vector4<Scalar> basis_vector(BasisState state) {
  Vector4<Scalar> v = Vector4<Scalar>::Zero();
  v(static_cast<int>(state)) = Scalar(1);
  return v;
}

}  // namespace gatesmith

#endif  // GATESMITH_CORE_HPP
