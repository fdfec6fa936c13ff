// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Two-by-two unitary coin operators acting on the internal qubit.
//
// Basis ordering is {|up>, |down>} (equivalently {|H>, |V>} polarization).
// Everything here is header-only and templated on the real scalar type so
// the same constructors serve double-precision simulation and any
// extended-precision checks.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qwalk {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Coin2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using Spinor2 = Eigen::Matrix<Complex<Scalar>, 2, 1>;

using Coin = Coin2<double>;
using Spinor = Spinor2<double>;

/// Max entrywise deviation of U U^dagger from the identity.
template <typename Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  const auto eye = Derived::PlainObject::Identity(u.rows(), u.cols());
  return (u * u.adjoint() - eye).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = 1e-9) {
  return u.rows() == u.cols() && static_cast<double>(unitarity_defect(u)) <= tol;
}

template <typename Derived>
void require_unitary(const Eigen::MatrixBase<Derived>& u, const char* what,
                     double tol = 1e-9) {
  if (!is_unitary(u, tol)) {
    throw std::invalid_argument(std::string(what) + ": operator is not unitary");
  }
}

namespace pauli {

template <typename Scalar = double>
Coin2<Scalar> x() {
  Coin2<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
Coin2<Scalar> y() {
  const Complex<Scalar> i(0, 1);
  Coin2<Scalar> m;
  m << Complex<Scalar>(0), -i, i, Complex<Scalar>(0);
  return m;
}

template <typename Scalar = double>
Coin2<Scalar> z() {
  Coin2<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

/// exp(-i a sigma_y) as a real rotation matrix.
template <typename Scalar = double>
Coin2<Scalar> exp_minus_i_sigma_y(Scalar a) {
  using std::cos;
  using std::sin;
  Coin2<Scalar> m;
  m << cos(a), -sin(a), sin(a), cos(a);
  return m;
}

/// exp(-i a sigma_z) = diag(e^{-ia}, e^{ia}).
template <typename Scalar = double>
Coin2<Scalar> exp_minus_i_sigma_z(Scalar a) {
  Coin2<Scalar> m = Coin2<Scalar>::Zero();
  m(0, 0) = std::polar(Scalar(1), -a);
  m(1, 1) = std::polar(Scalar(1), a);
  return m;
}

/// (1/sqrt2) [[1, 1], [1, -1]]
template <typename Scalar = double>
Coin2<Scalar> hadamard_coin() {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  Coin2<Scalar> m;
  m << s, s, s, -s;
  return m;
}

/// (1/sqrt2) [[1, i], [i, 1]]
template <typename Scalar = double>
Coin2<Scalar> fourier_coin() {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  const Complex<Scalar> is(0, s);
  Coin2<Scalar> m;
  m << Complex<Scalar>(s), is, is, Complex<Scalar>(s);
  return m;
}

/// Half-wave plate with its optical axis at `angle` radians:
/// exp(-i 2 angle sigma_y) sigma_z.
template <typename Scalar = double>
Coin2<Scalar> hwp_coin(Scalar angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("hwp_coin: angle must be finite");
  return exp_minus_i_sigma_y<Scalar>(2 * angle) * pauli::z<Scalar>();
}

/// Quarter-wave plate with its optical axis at `angle` radians:
/// exp(-i angle sigma_y) exp(-i pi/4 sigma_z) exp(i angle sigma_y).
template <typename Scalar = double>
Coin2<Scalar> qwp_coin(Scalar angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("qwp_coin: angle must be finite");
  const Scalar quarter = std::numbers::pi_v<Scalar> / 4;
  return exp_minus_i_sigma_y<Scalar>(angle) * exp_minus_i_sigma_z<Scalar>(quarter) *
         exp_minus_i_sigma_y<Scalar>(-angle);
}

/// The unit-modulus c minimizing ||u - c v||_F, i.e. the phase of Tr(v^dagger u).
template <typename Scalar>
Complex<Scalar> relative_phase(const Coin2<Scalar>& u, const Coin2<Scalar>& v) {
  const Complex<Scalar> tr = (v.adjoint() * u).trace();
  const Scalar mag = std::abs(tr);
  if (mag == Scalar(0)) return Complex<Scalar>(1);
  return tr / mag;
}

/// min over |c| = 1 of ||u - c v||_F, equal to
/// sqrt(||u||^2 + ||v||^2 - 2 |Tr(u^dagger v)|). Evaluated as ||u - c* v|| at
/// the optimal phase c*, which avoids cancellation when u and v nearly coincide.
template <typename Scalar>
Scalar phase_invariant_distance(const Coin2<Scalar>& u, const Coin2<Scalar>& v) {
  require_unitary(u, "phase_invariant_distance");
  require_unitary(v, "phase_invariant_distance");
  return (u - relative_phase(u, v) * v).norm();
}

}  // namespace qwalk
