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

#include "tmg/esd.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "tmg/error.hpp"

namespace tmg {

namespace {

Real simon_at(const GaussianParams& p0, const ChannelParams& ch, Real t) {
  return simon_criterion(evolve(p0, ch, t));
}

void check_grid(std::span<const Real> grid, const char* name, bool non_negative) {
  if (grid.empty()) {
    throw Error(ErrorCode::InvalidGrid, std::string(name) + " grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (non_negative && grid[i] < 0) ||
        (i > 0 && !(grid[i] > grid[i - 1]))) {
      std::ostringstream os;
      os << name << " grid must be finite"
         << (non_negative ? ", non-negative" : "")
         << " and strictly increasing (entry " << i << ")";
      throw Error(ErrorCode::InvalidGrid, os.str());
    }
  }
}

}  // namespace

const char* to_string(EsdKind kind) noexcept {
  switch (kind) {
    case EsdKind::FiniteTime: return "FiniteTime";
    case EsdKind::Asymptotic: return "Asymptotic";
    case EsdKind::InitiallySeparable: return "InitiallySeparable";
  }
  return "Unknown";
}

const char* to_string(EsdMethod method) noexcept {
  return method == EsdMethod::Analytic ? "Analytic" : "NumericRoot";
}

Real esd_threshold_r0(Real z0) { return 0.5L * std::log(std::cosh(2 * z0)); }

Real esd_threshold_z0(Real r0) { return 0.5L * std::acosh(std::exp(2 * r0)); }

bool esd_condition_symmetric(Real z0, Real r0) {
  if (!(r0 > 0) || !std::isfinite(r0) || !std::isfinite(z0)) {
    throw Error(ErrorCode::InvalidArgument, "ESD condition needs finite z0 and r0 > 0");
  }
  return r0 < esd_threshold_r0(z0);
}

Real esd_ratio_eta_zeta(Real z0, Real r0) {
  const Real eta = std::exp(2 * r0);
  const Real zeta = std::exp(2 * z0);
  // eta (1 + zeta^2) - zeta (1 + eta^2) = (eta - zeta)(1 - eta zeta)
  const Real den = (eta - zeta) * (1 - eta * zeta);
  const Real scale = eta * (1 + zeta * zeta) + zeta * (1 + eta * eta);
  if (std::fabs(den) <= 64 * std::numeric_limits<Real>::epsilon() * scale) {
    std::ostringstream os;
    os << "t_esd denominator vanishes at z0 = " << static_cast<double>(z0)
       << ", r0 = " << static_cast<double>(r0);
    throw Error(ErrorCode::DomainError, os.str());
  }
  return eta * (1 + zeta * zeta - 2 * eta * zeta) / den;
}

Real esd_ratio_first_form(Real z0, Real r0) {
  const Real num = 2 * std::exp(r0) * std::cosh(2 * z0) * std::sinh(r0) -
                   2 * std::sinh(z0) * std::sinh(z0);
  const Real den = std::exp(2 * r0) * (std::cosh(2 * r0) - std::sinh(2 * z0));
  return num / den;
}

EsdResult t_esd_analytic_symmetric(Real z0, Real r0, Real gamma) {
  if (!(r0 > 0) || !(gamma > 0) || !std::isfinite(z0) || !std::isfinite(r0) ||
      !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument,
                "analytic t_esd needs finite z0, r0 > 0 and gamma > 0");
  }
  EsdResult res;
  res.method = EsdMethod::Analytic;
  res.ratio = esd_ratio_eta_zeta(z0, r0);
  res.first_form_ratio = esd_ratio_first_form(z0, r0);

  const Real eta = std::exp(2 * r0);
  const Real zeta = std::exp(2 * z0);
  const bool in_window = eta >= 1 && eta <= 0.5L * (zeta + 1 / zeta);
  const Real ratio = *res.ratio;
  if (in_window && ratio > 0 && ratio < 1) {
    res.kind = EsdKind::FiniteTime;
    res.t_esd = -std::log(ratio) / (2 * gamma);
  } else {
    res.kind = EsdKind::Asymptotic;
  }
  return res;
}

EsdResult t_esd_numeric(const GaussianParams& p0, const ChannelParams& ch,
                        Real t_max, const NumericEsdOptions& options) {
  validate(p0);
  validate(ch);
  if (!(t_max > 0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::InvalidArgument, "t_max must be finite and > 0");
  }
  EsdResult res;
  res.method = EsdMethod::NumericRoot;
  if (simon_at(p0, ch, 0) >= 0) {
    res.kind = EsdKind::InitiallySeparable;
    return res;
  }

  const Real mean_gamma = 0.5L * (ch.gamma1 + ch.gamma2);
  Real lo = 0;
  Real hi = -1;
  for (Real t = options.start_factor / mean_gamma;; t *= options.grid_ratio) {
    const bool last = t >= t_max;
    if (last) t = t_max;
    if (simon_at(p0, ch, t) >= 0) {
      hi = t;
      break;
    }
    lo = t;
    if (last) break;
  }
  if (hi < 0) {
    res.kind = EsdKind::Asymptotic;
    res.horizon = t_max;
    return res;
  }

  while (hi - lo > options.time_tolerance) {
    if (res.iterations >= options.max_iterations) {
      throw Error(ErrorCode::BudgetExceeded,
                  "bisection did not reach the time tolerance");
    }
    ++res.iterations;
    const Real mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    (simon_at(p0, ch, mid) >= 0 ? hi : lo) = mid;
  }
  res.kind = EsdKind::FiniteTime;
  res.t_esd = 0.5L * (lo + hi);
  return res;
}

Real initial_entanglement_threshold(Real nu1, Real nu2) {
  if (!std::isfinite(nu1) || !std::isfinite(nu2) || nu1 < 0 || nu2 < 0) {
    throw Error(ErrorCode::InvalidArgument, "mixedness nu1, nu2 must be finite and >= 0");
  }
  const Real mix = 1 + nu1 + nu2;
  const Real arg = ((1 + nu2) * (1 + nu2) + 2 * nu1 * (1 + nu2) * (1 + 4 * nu2) +
                    nu1 * nu1 * (1 + 8 * nu2 * (1 + nu2))) /
                   (mix * mix);
  if (!(arg >= 1 - 1e-9L)) {
    throw Error(ErrorCode::DomainError, "arccosh argument below 1");
  }
  // The argument is 1 + 8 nu1 nu2 (1+nu1)(1+nu2) / (1+nu1+nu2)^2; taking the
  // excess directly keeps r_min exact on the nu1 = 0 and nu2 = 0 edges.
  const Real excess = 8 * nu1 * nu2 * (1 + nu1) * (1 + nu2) / (mix * mix);
  return 0.25L * std::log1p(excess + std::sqrt(excess * (excess + 2)));
}

SignGrid esd_boundary_sweep(Real r0, const ChannelParams& ch,
                            std::span<const Real> z_grid,
                            std::span<const Real> t_grid, unsigned workers) {
  check_grid(z_grid, "z", false);
  check_grid(t_grid, "t", true);
  validate(ch);
  if (!std::isfinite(r0)) {
    throw Error(ErrorCode::InvalidArgument, "r0 must be finite");
  }
  SignGrid grid;
  grid.z.assign(z_grid.begin(), z_grid.end());
  grid.t.assign(t_grid.begin(), t_grid.end());
  grid.sign.assign(grid.z.size() * grid.t.size(), 0);
  detail::parallel_for(grid.z.size(), workers, [&](std::size_t iz) {
    GaussianParams p;
    p.z1 = p.z2 = grid.z[iz];
    p.r = r0;
    for (std::size_t it = 0; it < grid.t.size(); ++it) {
      const Real s = simon_at(p, ch, grid.t[it]);
      grid.sign[iz * grid.t.size() + it] = static_cast<std::int8_t>((s > 0) - (s < 0));
    }
  });
  return grid;
}

}  // namespace tmg
