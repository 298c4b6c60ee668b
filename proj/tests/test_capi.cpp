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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "tmg/tmg.h"

extern "C" int tmg_c_vacuum_simon(double* out);

namespace {

const tmg_channel kCold{0.1, 0.1, 0, 0};

TEST(CApi, HeaderCompilesAsC) {
  double s = 1;
  EXPECT_EQ(tmg_c_vacuum_simon(&s), TMG_OK);
  EXPECT_EQ(s, 0);
}

TEST(CApi, StatusStringsAreDistinct) {
  std::vector<std::string> seen;
  for (int k = TMG_OK; k <= TMG_ERR_INTERNAL; ++k) {
    const char* s = tmg_status_string(static_cast<tmg_status>(k));
    ASSERT_NE(s, nullptr);
    for (const auto& prev : seen) EXPECT_NE(prev, s);
    seen.emplace_back(s);
  }
  EXPECT_STREQ(tmg_version(), "1.0.0");
}

TEST(CApi, NullPointersAreRejected) {
  tmg_cm cm{};
  tmg_params p{};
  double x = 0;
  EXPECT_EQ(tmg_cm_from_params(nullptr, &cm), TMG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tmg_cm_from_params(&p, nullptr), TMG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tmg_simon(nullptr, &x), TMG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tmg_evolve(&p, nullptr, 1, &cm), TMG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tmg_esd_boundary_sweep(1, &kCold, nullptr, 3, &x, 1, 1, nullptr),
            TMG_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::strlen(tmg_last_error()), 0u);
}

TEST(CApi, ErrorsMapToStatusesAndLeaveOutputsAlone) {
  tmg_params p{0, 0, 1, -1, 0};
  tmg_cm cm{7, 7, 7, 7, 7, 7};
  EXPECT_EQ(tmg_cm_from_params(&p, &cm), TMG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cm.n1, 7);
  EXPECT_NE(std::string(tmg_last_error()).find("nu"), std::string::npos);

  tmg_params out{};
  const tmg_cm bad{0, 0, 1, 0, 0, 0};
  EXPECT_EQ(tmg_params_from_cm(&bad, TMG_EXTRACT_CORRECTED, &out), TMG_ERR_NON_PHYSICAL_CM);
  EXPECT_EQ(tmg_params_from_cm(&bad, static_cast<tmg_extraction>(9), &out),
            TMG_ERR_INVALID_ARGUMENT);

  tmg_esd_result res{};
  EXPECT_EQ(tmg_t_esd_analytic(0.7, 0.7, 0.1, &res), TMG_ERR_DOMAIN);
  const double z[] = {1, 0};
  const double t[] = {0};
  tmg_sign_grid* grid = nullptr;
  EXPECT_EQ(tmg_esd_boundary_sweep(1, &kCold, z, 2, t, 1, 1, &grid), TMG_ERR_INVALID_GRID);
  EXPECT_EQ(grid, nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
  tmg_cm cm{};
  EXPECT_EQ(tmg_cm_from_params(nullptr, &cm), TMG_ERR_INVALID_ARGUMENT);
  const std::string here = tmg_last_error();
  std::string there = "unset";
  std::thread([&] { there = tmg_last_error(); }).join();
  EXPECT_FALSE(here.empty());
  EXPECT_TRUE(there.empty());
}

TEST(CApi, RoundTripThroughParameters) {
  const tmg_params p{0.4, -0.2, 0.7, 0.3, 0.1};
  tmg_cm cm{};
  ASSERT_EQ(tmg_cm_from_params(&p, &cm), TMG_OK);
  int physical = 0;
  ASSERT_EQ(tmg_is_physical(&cm, 1e-12, &physical), TMG_OK);
  EXPECT_EQ(physical, 1);
  tmg_params back{};
  ASSERT_EQ(tmg_params_from_cm(&cm, TMG_EXTRACT_CORRECTED, &back), TMG_OK);
  EXPECT_NEAR(back.z1, p.z1, 1e-12);
  EXPECT_NEAR(back.z2, p.z2, 1e-12);
  EXPECT_NEAR(back.r, p.r, 1e-12);
  EXPECT_NEAR(back.nu1, p.nu1, 1e-12);
  EXPECT_NEAR(back.nu2, p.nu2, 1e-12);

  tmg_invariants inv{};
  ASSERT_EQ(tmg_cm_invariants(&cm, &inv), TMG_OK);
  double s1 = 0, s2 = 0;
  ASSERT_EQ(tmg_simon(&cm, &s1), TMG_OK);
  ASSERT_EQ(tmg_simon_from_invariants(&inv, &s2), TMG_OK);
  EXPECT_NEAR(s1, s2, 1e-9 * std::fabs(s1));
  EXPECT_LT(s1, 0);
}

TEST(CApi, EvolveSimonKeepsSignBelowDoubleRange) {
  const tmg_params p{0, 0, 1, 0, 0};
  double s = 1;
  int sign = 0;
  ASSERT_EQ(tmg_evolve_simon(&p, &kCold, 2000, &s, &sign), TMG_OK);
  EXPECT_EQ(s, 0);
  EXPECT_EQ(sign, -1);
}

TEST(CApi, EvolveSymmetric) {
  double n = 0, m = 0;
  ASSERT_EQ(tmg_evolve_symmetric(2, 1, 0.1, 0, &n, &m), TMG_OK);
  EXPECT_EQ(n, 2);
  EXPECT_EQ(m, 1);
  EXPECT_EQ(tmg_evolve_symmetric(2, 1, 0.1, 1, nullptr, &m), TMG_ERR_INVALID_ARGUMENT);
}

TEST(CApi, TrajectoryHandle) {
  const tmg_params p{0, 0, 1, 0, 0};
  const tmg_channel warm{0.1, 0.1, 0.2, 0.2};
  tmg_trajectory* traj = nullptr;
  ASSERT_EQ(tmg_trajectory_sample(&p, &warm, 30, 301, &traj), TMG_OK);
  ASSERT_EQ(tmg_trajectory_size(traj), 301u);
  double t = -1;
  tmg_cm cm{};
  int first = 0, last = 0;
  ASSERT_EQ(tmg_trajectory_point(traj, 0, &t, &cm, nullptr, &first), TMG_OK);
  EXPECT_EQ(t, 0);
  ASSERT_EQ(tmg_trajectory_point(traj, 300, &t, nullptr, nullptr, &last), TMG_OK);
  EXPECT_EQ(t, 30);
  EXPECT_EQ(first, -1);
  EXPECT_EQ(last, 1);
  EXPECT_EQ(tmg_trajectory_point(traj, 301, &t, nullptr, nullptr, nullptr),
            TMG_ERR_INVALID_ARGUMENT);
  tmg_trajectory_free(traj);
  tmg_trajectory_free(nullptr);
  EXPECT_EQ(tmg_trajectory_size(nullptr), 0u);
  EXPECT_EQ(tmg_trajectory_sample(&p, &warm, 30, 1, &traj), TMG_ERR_INVALID_GRID);
}

TEST(CApi, EsdEntryPoints) {
  int cond = -1;
  ASSERT_EQ(tmg_esd_condition_symmetric(2, 1, &cond), TMG_OK);
  EXPECT_EQ(cond, 1);
  double z = 0;
  ASSERT_EQ(tmg_esd_threshold_z0(1, &z), TMG_OK);
  EXPECT_NEAR(z, 0.5 * std::acosh(std::exp(2.0)), 1e-15);

  tmg_esd_result ana{};
  ASSERT_EQ(tmg_t_esd_analytic(2, 1, 0.1, &ana), TMG_OK);
  EXPECT_EQ(ana.kind, TMG_ESD_FINITE_TIME);
  EXPECT_EQ(ana.method, TMG_ESD_ANALYTIC);
  EXPECT_EQ(ana.has_time, 1);
  EXPECT_TRUE(std::isnan(ana.horizon));

  tmg_esd_result num{};
  const tmg_params p{2, 2, 1, 0, 0};
  ASSERT_EQ(tmg_t_esd_numeric(&p, &kCold, 100, &num), TMG_OK);
  EXPECT_EQ(num.method, TMG_ESD_NUMERIC_ROOT);
  EXPECT_NEAR(num.t_esd, ana.t_esd, 1e-8);
  EXPECT_TRUE(std::isnan(num.ratio));

  const tmg_params tmsv{0, 0, 1, 0, 0};
  ASSERT_EQ(tmg_t_esd_numeric(&tmsv, &kCold, 100, &num), TMG_OK);
  EXPECT_EQ(num.kind, TMG_ESD_ASYMPTOTIC);
  EXPECT_EQ(num.has_time, 0);
  EXPECT_EQ(num.horizon, 100);

  double r = 0;
  ASSERT_EQ(tmg_initial_entanglement_threshold(1, 1, &r), TMG_OK);
  EXPECT_NEAR(r, 0.25 * std::acosh(41.0 / 9.0), 1e-15);
}

TEST(CApi, SignGridHandle) {
  const double z[] = {0, 2};
  const double t[] = {0, 0.5, 1.0, 1.5};
  tmg_sign_grid* grid = nullptr;
  ASSERT_EQ(tmg_esd_boundary_sweep(1, &kCold, z, 2, t, 4, 1, &grid), TMG_OK);
  EXPECT_EQ(tmg_sign_grid_rows(grid), 2u);
  EXPECT_EQ(tmg_sign_grid_cols(grid), 4u);
  for (size_t k = 0; k < 4; ++k) EXPECT_EQ(tmg_sign_grid_at(grid, 0, k), -1);
  EXPECT_EQ(tmg_sign_grid_at(grid, 1, 0), -1);
  EXPECT_EQ(tmg_sign_grid_at(grid, 1, 1), -1);  // t_esd is about 0.836
  EXPECT_EQ(tmg_sign_grid_at(grid, 1, 2), 1);
  EXPECT_EQ(tmg_sign_grid_at(grid, 2, 0), 0);
  tmg_sign_grid_free(grid);
}

TEST(CApi, FockHandle) {
  tmg_fock_options opts = tmg_fock_default_options();
  EXPECT_EQ(opts.cutoff, 20);
  EXPECT_EQ(opts.enforce_tail, 1);
  opts.cutoff = 16;
  const tmg_params p{0.1, 0.1, 0.3, 0, 0};
  tmg_fock_state* state = nullptr;
  ASSERT_EQ(tmg_fock_build(&p, &opts, &state), TMG_OK);
  EXPECT_EQ(tmg_fock_cutoff(state), 16);
  const tmg_channel ch{0.2, 0.1, 0.3, 0};
  ASSERT_EQ(tmg_fock_integrate(state, &ch, 1, 0.01), TMG_OK);
  tmg_cm fock{}, exact{};
  ASSERT_EQ(tmg_fock_moments(state, &fock), TMG_OK);
  ASSERT_EQ(tmg_evolve(&p, &ch, 1, &exact), TMG_OK);
  EXPECT_NEAR(fock.n1, exact.n1, 1e-5);
  EXPECT_NEAR(fock.mc, exact.mc, 1e-5);
  tmg_fock_report rep{};
  ASSERT_EQ(tmg_fock_report_get(state, &rep), TMG_OK);
  EXPECT_GT(rep.steps, 0);
  EXPECT_LT(rep.max_tail, 1e-6);
  tmg_fock_free(state);

  opts.cutoff = 4;
  const tmg_params big{0.4, 0.4, 0.6, 0, 0};
  EXPECT_EQ(tmg_fock_build(&big, &opts, &state), TMG_ERR_CUTOFF_INSUFFICIENT);
  opts.cutoff = 64;
  EXPECT_EQ(tmg_fock_build(&p, &opts, &state), TMG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tmg_fock_cutoff(nullptr), 0);
}

}  // namespace
