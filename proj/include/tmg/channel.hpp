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

#ifndef TMG_CHANNEL_HPP
#define TMG_CHANNEL_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "tmg/gaussian.hpp"

namespace tmg {

/// Two independent Markovian thermal reservoirs, one per mode.
struct ChannelParams {
  Real gamma1 = 0.1L;  // dissipation rate, inverse time units
  Real gamma2 = 0.1L;
  Real nb1 = 0;  // reservoir thermal occupation
  Real nb2 = 0;
};

/// Throws InvalidArgument unless gamma_i > 0 and nb_i >= 0 (all finite).
void validate(const ChannelParams& ch);

/// Closed-form second moments at time t of the state `p0` evolving under
/// the two-reservoir master equation:
///
///   n_i(t)  = (1 - e^{-2 g_i t}) nb_i + e^{-2 g_i t} n_i(0)
///   m_i(t)  = e^{-2 g_i t} m_i(0)
///   mc, ms  scale with e^{-(g1 + g2) t}
///
/// with the t = 0 moments of cm_from_params(p0).
CovarianceMatrix evolve(const GaussianParams& p0, const ChannelParams& ch, Real t);

/// Symmetric zero-temperature special case: both moments decay as e^{-2 g t}.
std::pair<Real, Real> evolve_symmetric(Real n0, Real m0, Real gamma, Real t);

struct Trajectory {
  std::vector<Real> times;
  std::vector<CovarianceMatrix> states;
  std::vector<Real> simon;

  std::size_t size() const { return times.size(); }
};

/// Samples evolve() and simon_criterion() on the uniform grid
/// t_k = t_max k / (n_points - 1). Throws InvalidGrid for t_max <= 0 or
/// n_points < 2.
Trajectory sample_trajectory(const GaussianParams& p0, const ChannelParams& ch,
                             Real t_max, std::size_t n_points);

}  // namespace tmg

#endif  // TMG_CHANNEL_HPP
