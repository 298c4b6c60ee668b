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

// Entanglement sudden death: when does S(t) of an evolving state first
// become non-negative?
//
// For symmetric pure states (z1 = z2 = z0, nu = 0) in equal zero-temperature
// channels there is a closed form. With eta = e^{2 r0} and zeta = e^{2 z0},
//
//   e^{-2 gamma t_esd} = eta (1 + zeta^2 - 2 eta zeta)
//                        / (eta - zeta - eta^2 zeta + zeta^2 eta),
//
// which has a solution in (0, 1) iff 1 <= eta <= (zeta + 1/zeta) / 2, i.e.
// iff 0 < r0 < log(cosh 2 z0) / 2. Everything else goes through a bracketed
// root search on S(t).

#ifndef TMG_ESD_HPP
#define TMG_ESD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tmg/channel.hpp"
#include "tmg/gaussian.hpp"

namespace tmg {

enum class EsdKind { FiniteTime, Asymptotic, InitiallySeparable };
enum class EsdMethod { Analytic, NumericRoot };

const char* to_string(EsdKind kind) noexcept;
const char* to_string(EsdMethod method) noexcept;

struct EsdResult {
  EsdKind kind = EsdKind::Asymptotic;
  std::optional<Real> t_esd;  // present iff kind == FiniteTime
  EsdMethod method = EsdMethod::NumericRoot;

  // Analytic path: the (eta, zeta) ratio and, for comparison, the ratio from
  // the alternative closed form in (r0, z0) that does not reproduce the
  // numeric root.
  std::optional<Real> ratio;
  std::optional<Real> first_form_ratio;
  // Numeric path: scan horizon and number of bisection steps taken.
  std::optional<Real> horizon;
  int iterations = 0;
};

/// log(cosh 2 z0) / 2: the largest r0 that still dies in finite time.
Real esd_threshold_r0(Real z0);
/// acosh(e^{2 r0}) / 2: the smallest z0 with finite-time death at given r0.
Real esd_threshold_z0(Real r0);

/// True iff 0 < r0 < log(cosh 2 z0) / 2. Throws InvalidArgument for r0 <= 0.
bool esd_condition_symmetric(Real z0, Real r0);

/// The (eta, zeta) right-hand side. Throws DomainError when the denominator
/// vanishes (r0 = +-z0).
Real esd_ratio_eta_zeta(Real z0, Real r0);

/// (2 e^{r0} cosh 2z0 sinh r0 - 2 sinh^2 z0) / (e^{2 r0}(cosh 2r0 - sinh 2z0)).
/// Diagnostic only: it predicts finite-time death for z0 = 0, where the decay
/// is provably asymptotic.
Real esd_ratio_first_form(Real z0, Real r0);

EsdResult t_esd_analytic_symmetric(Real z0, Real r0, Real gamma);

struct NumericEsdOptions {
  Real grid_ratio = 1.25L;
  Real start_factor = 1e-3L;  // first sample at start_factor / mean(gamma)
  Real time_tolerance = 1e-10L;
  int max_iterations = 200;
};

/// Scans S(t) on a geometric grid up to t_max and bisects the first sign
/// change. Throws BudgetExceeded if bisection does not reach the time
/// tolerance within max_iterations.
EsdResult t_esd_numeric(const GaussianParams& p0, const ChannelParams& ch,
                        Real t_max, const NumericEsdOptions& options = {});

/// r_min(nu1, nu2) = acosh(A) / 4 with
///   A = ((1+nu2)^2 + 2 nu1 (1+nu2)(1+4 nu2) + nu1^2 (1 + 8 nu2 (1+nu2)))
///       / (1 + nu1 + nu2)^2.
/// A state with z1 = z2 = 0 is entangled iff r0 > r_min.
Real initial_entanglement_threshold(Real nu1, Real nu2);

/// sign(S) over a (z, t) grid for z1 = z2 = z, nu = 0.
struct SignGrid {
  std::vector<Real> z;
  std::vector<Real> t;
  std::vector<std::int8_t> sign;  // row-major, rows indexed by z

  int at(std::size_t iz, std::size_t it) const { return sign[iz * t.size() + it]; }
};

/// Throws InvalidGrid unless both grids are non-empty, finite and strictly
/// increasing, with t >= 0. `workers` = 0 picks the hardware concurrency.
SignGrid esd_boundary_sweep(Real r0, const ChannelParams& ch,
                            std::span<const Real> z_grid,
                            std::span<const Real> t_grid, unsigned workers = 0);

}  // namespace tmg

#endif  // TMG_ESD_HPP
