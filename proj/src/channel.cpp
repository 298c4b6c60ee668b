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

#include "tmg/channel.hpp"

#include <cmath>

#include "tmg/error.hpp"

namespace tmg {

void validate(const ChannelParams& ch) {
  for (Real x : {ch.gamma1, ch.gamma2, ch.nb1, ch.nb2}) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::InvalidArgument, "channel parameters must be finite");
    }
  }
  if (ch.gamma1 <= 0 || ch.gamma2 <= 0) {
    throw Error(ErrorCode::InvalidArgument, "gamma1, gamma2 must be > 0");
  }
  if (ch.nb1 < 0 || ch.nb2 < 0) {
    throw Error(ErrorCode::InvalidArgument, "nb1, nb2 must be >= 0");
  }
}

CovarianceMatrix evolve(const GaussianParams& p0, const ChannelParams& ch, Real t) {
  validate(ch);
  if (!(t >= 0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "evolution time must be finite and >= 0");
  }
  const CovarianceMatrix start = cm_from_params(p0);
  const Real decay1 = std::exp(-2 * ch.gamma1 * t);
  const Real decay2 = std::exp(-2 * ch.gamma2 * t);
  const Real decay12 = std::exp(-(ch.gamma1 + ch.gamma2) * t);

  // e^{-2gt}((e^{2gt} - 1) nb + n0), rearranged so nothing overflows.
  CovarianceMatrix cm;
  cm.n1 = -std::expm1(-2 * ch.gamma1 * t) * ch.nb1 + decay1 * start.n1;
  cm.n2 = -std::expm1(-2 * ch.gamma2 * t) * ch.nb2 + decay2 * start.n2;
  cm.m1 = decay1 * start.m1;
  cm.m2 = decay2 * start.m2;
  cm.mc = decay12 * start.mc;
  cm.ms = decay12 * start.ms;
  return cm;
}

std::pair<Real, Real> evolve_symmetric(Real n0, Real m0, Real gamma, Real t) {
  const Real decay = std::exp(-2 * gamma * t);
  return {n0 * decay, m0 * decay};
}

Trajectory sample_trajectory(const GaussianParams& p0, const ChannelParams& ch,
                             Real t_max, std::size_t n_points) {
  if (!(t_max > 0) || !std::isfinite(t_max) || n_points < 2) {
    throw Error(ErrorCode::InvalidGrid,
                "trajectory needs t_max > 0 and at least 2 points");
  }
  validate(p0);
  validate(ch);
  Trajectory traj;
  traj.times.reserve(n_points);
  traj.states.reserve(n_points);
  traj.simon.reserve(n_points);
  const Real last = static_cast<Real>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    const Real t = k + 1 == n_points ? t_max : t_max * static_cast<Real>(k) / last;
    traj.times.push_back(t);
    traj.states.push_back(evolve(p0, ch, t));
    traj.simon.push_back(simon_criterion(traj.states.back()));
  }
  return traj;
}

}  // namespace tmg
