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

// Brute-force reference for the closed-form moments: the two-mode density
// operator in a truncated Fock basis |n1, n2>, n_i < cutoff, evolved by
// direct RK4 integration of
//
//   d rho/dt = sum_i g_i (nb_i + 1)(2 a_i rho a_i^dag - a_i^dag a_i rho - rho a_i^dag a_i)
//            + g_i nb_i (2 a_i^dag rho a_i - a_i a_i^dag rho - rho a_i a_i^dag).
//
// No Hamiltonian term: the closed forms carry no free-rotation phases.
// Operators are the truncated ladder matrices, so a a^dag has a zero in its
// last diagonal entry and the dissipator is exactly trace preserving.

#ifndef TMG_FOCK_HPP
#define TMG_FOCK_HPP

#include <Eigen/Core>
#include <complex>
#include <cstddef>

#include "tmg/channel.hpp"
#include "tmg/gaussian.hpp"

namespace tmg::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxCutoff = 32;

/// Density operator on C^N (x) C^N; row/column index n1 * N + n2.
class FockDensityMatrix {
 public:
  FockDensityMatrix(int cutoff, Matrix data);

  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return static_cast<std::size_t>(cutoff_) * cutoff_; }
  const Matrix& data() const { return data_; }
  Matrix& data() { return data_; }

  static std::size_t index(int cutoff, int n1, int n2) {
    return static_cast<std::size_t>(n1) * cutoff + n2;
  }

  Complex trace() const { return data_.trace(); }
  /// max |rho - rho^dag|
  double hermiticity_defect() const;
  /// Largest population of levels >= cutoff - 2 in either mode.
  double tail_population() const;
  double min_eigenvalue() const;

 private:
  int cutoff_;
  Matrix data_;
};

struct Tolerances {
  double hermiticity = 1e-10;
  double trace = 1e-8;
  double eigenvalue = 1e-8;
  double tail = 1e-6;
  /// When false the truncation symptoms (a tail above `tail`, an eigenvalue
  /// below -`eigenvalue`) are recorded in the diagnostics instead of raising
  /// CutoffInsufficient.
  bool enforce_tail = true;
};

struct Diagnostics {
  double max_tail = 0;
  double max_trace_error = 0;
  double max_hermiticity_defect = 0;
  double min_eigenvalue = 0;
  double step_change = 0;  // max moment change under step halving
  int steps = 0;
};

/// rho = S1(z1, z2) S2(r) sigma(nu1, nu2) S2^dag S1^dag with the squeezers
/// exponentiated from their truncated generators. Throws CutoffInsufficient
/// if the tail invariant fails (when enforced) and InvalidArgument for a
/// cutoff outside [2, kMaxCutoff].
FockDensityMatrix build_initial_state(const GaussianParams& p, int cutoff,
                                      const Tolerances& tol = {},
                                      Diagnostics* diag = nullptr);

/// Right-hand side of the master equation at rho.
Matrix lindblad_rhs(const FockDensityMatrix& rho, const ChannelParams& ch);

/// Fixed-step classical RK4 from 0 to t with steps no larger than dt, and no
/// larger than 2.5 over a Gershgorin bound on the dissipator's rates. The run
/// is repeated at dt/2 and the halved result is returned; if the six moments
/// move by 1e-6 or more between the two the step is rejected with
/// StepTooLarge. CutoffInsufficient is raised if the tail grows past the
/// bound at any step (when enforced).
FockDensityMatrix integrate(const FockDensityMatrix& rho0, const ChannelParams& ch,
                            double t, double dt, const Tolerances& tol = {},
                            Diagnostics* diag = nullptr);

/// Expectation values n_i = <a_i^dag a_i>, m_i = -<a_i^2>, ms = -<a1 a2^dag>,
/// mc = <a1 a2>. Imaginary parts are dropped; above 1e-6 they raise
/// NonNegligibleImaginaryPart. `max_imaginary`, when given, receives the
/// largest one discarded.
CovarianceMatrix moments(const FockDensityMatrix& rho, double* max_imaginary = nullptr);

}  // namespace tmg::fock

#endif  // TMG_FOCK_HPP
