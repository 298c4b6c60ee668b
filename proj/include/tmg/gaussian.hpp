// Copyright 2026 The tmg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Zero-mean two-mode Gaussian states with real squeezing parameters.
//
// A state is rho = S1(z1, z2) S2(r) sigma(nu1, nu2) S2^dag S1^dag, where S1 is
// a product of single-mode squeezers, S2 the two-mode squeezer and sigma a
// product of thermal states. Its second moments are kept as six real numbers
// in the (a1, a1^dag, a2, a2^dag) ordering:
//
//   n_i = <a_i^dag a_i>,  m_i = -<a_i^2>,  ms = -<a1 a2^dag>,  mc = <a1 a2>.
//
// All arithmetic uses `Real` (long double). Entanglement of states relaxing
// towards the vacuum is decided by quantities of order exp(-4 gamma t); the
// extended exponent range keeps them representable for gamma t up to ~2800.

#ifndef TMG_GAUSSIAN_HPP
#define TMG_GAUSSIAN_HPP

#include <Eigen/Core>

namespace tmg {

using Real = long double;
using Matrix2 = Eigen::Matrix<Real, 2, 2>;
using Matrix4 = Eigen::Matrix<Real, 4, 4>;

struct GaussianParams {
  Real z1 = 0;   // mode-1 single-mode squeezing
  Real z2 = 0;   // mode-2 single-mode squeezing
  Real r = 0;    // two-mode squeezing
  Real nu1 = 0;  // mode-1 thermal photons of the core state
  Real nu2 = 0;  // mode-2 thermal photons of the core state
};

/// Throws InvalidArgument unless all fields are finite and nu1, nu2 >= 0.
void validate(const GaussianParams& p);

struct CovarianceMatrix {
  Real n1 = 0;
  Real n2 = 0;
  Real m1 = 0;
  Real m2 = 0;
  Real ms = 0;
  Real mc = 0;

  /// The full 4x4 matrix V_rho in the (a1, a1^dag, a2, a2^dag) ordering.
  Matrix4 assemble() const;
  Matrix2 block1() const;
  Matrix2 block2() const;
  Matrix2 correlation() const;

  /// det V1, evaluated as (n1 + 1/2 - m1)(n1 + 1/2 + m1).
  Real det_v1() const;
  Real det_v2() const;
};

/// Physicality: n_i >= 0, det V_i >= 1/4 and V_rho positive semidefinite,
/// each within `tol` scaled by the magnitude of the entries.
bool is_physical(const CovarianceMatrix& cm, Real tol = 1e-12L);

/// Smallest eigenvalue of the assembled 4x4 matrix.
Real min_eigenvalue(const CovarianceMatrix& cm);

struct SymplecticInvariants {
  Real i1 = 0;  // det V1
  Real i2 = 0;  // det V2
  Real i3 = 0;  // det C
  Real i4 = 0;  // tr[V1 Z C Z V2 Z C^dag Z], Z = diag(1, -1)
  Real iv = 0;  // det V_rho
};

CovarianceMatrix cm_from_params(const GaussianParams& p);

enum class ExtractionMethod {
  /// Local symplectic eigenvalues sqrt(det V_i) and the un-squeezed
  /// correlation mc cosh(z1+z2) + ms sinh(z1+z2). Inverts cm_from_params.
  Corrected,
  /// The closed forms for z_i, nu_i, r and the auxiliary x exactly as
  /// printed in the source derivation. Kept for comparison only: they do not
  /// invert cm_from_params (sign of z_i, missing square roots in nu_i).
  Printed,
};

/// Recovers (z1, z2, r, nu1, nu2) from the six moments.
///
/// Throws NonPhysicalCM when `cm` fails the physicality test, and
/// ExtractionOutOfDomain when an arctanh/arccosh/sqrt argument (or a
/// recovered nu_i) leaves its domain by more than 1e-9; arguments inside that
/// band are clamped onto the domain.
GaussianParams params_from_cm(const CovarianceMatrix& cm,
                              ExtractionMethod method = ExtractionMethod::Corrected);

SymplecticInvariants invariants(const CovarianceMatrix& cm);

/// Simon's separability function evaluated literally from the invariants:
///   I1 I2 + (1/4 - |I3|)^2 - I4 - (I1 + I2)/4.
Real simon_from_invariants(const SymplecticInvariants& inv);

/// The same quantity expanded in the moments with all constant terms
/// cancelled, so its sign stays resolvable when the state is close to the
/// vacuum. S >= 0 iff the state is separable.
Real simon_criterion(const CovarianceMatrix& cm);

/// (m+n)(m+n+1)(m-n)(m-n-1): S for the symmetric form n1 = n2 = n,
/// m1 = m2 = ms = 0, mc = m.
Real simon_symmetric_factorized(Real n, Real m);

}  // namespace tmg

#endif  // TMG_GAUSSIAN_HPP
