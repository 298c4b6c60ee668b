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

#include "tmg/tmg.h"

#include <cmath>
#include <limits>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "tmg/channel.hpp"
#include "tmg/error.hpp"
#include "tmg/esd.hpp"
#include "tmg/fock.hpp"
#include "tmg/gaussian.hpp"

struct tmg_trajectory {
  tmg::Trajectory traj;
};

struct tmg_sign_grid {
  tmg::SignGrid grid;
};

struct tmg_fock_state {
  tmg::fock::FockDensityMatrix rho;
  tmg::fock::Tolerances tol;
  tmg::fock::Diagnostics diag;
};

namespace {

thread_local std::string last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

tmg_status map_code(tmg::ErrorCode code) {
  using tmg::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return TMG_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonPhysicalCM: return TMG_ERR_NON_PHYSICAL_CM;
    case ErrorCode::ExtractionOutOfDomain: return TMG_ERR_EXTRACTION_OUT_OF_DOMAIN;
    case ErrorCode::DomainError: return TMG_ERR_DOMAIN;
    case ErrorCode::BudgetExceeded: return TMG_ERR_BUDGET_EXCEEDED;
    case ErrorCode::InvalidGrid: return TMG_ERR_INVALID_GRID;
    case ErrorCode::CutoffInsufficient: return TMG_ERR_CUTOFF_INSUFFICIENT;
    case ErrorCode::StepTooLarge: return TMG_ERR_STEP_TOO_LARGE;
    case ErrorCode::NonNegligibleImaginaryPart: return TMG_ERR_IMAGINARY_PART;
  }
  return TMG_ERR_INTERNAL;
}

tmg_status fail(tmg_status status, const char* what) {
  last_error = what;
  return status;
}

template <class Body>
tmg_status guarded(Body&& body) {
  try {
    body();
    return TMG_OK;
  } catch (const tmg::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TMG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TMG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TMG_ERR_INTERNAL, "unknown error");
  }
}

#define TMG_REQUIRE(ptr)                                                    \
  do {                                                                      \
    if ((ptr) == nullptr) return fail(TMG_ERR_INVALID_ARGUMENT, #ptr " is null"); \
  } while (0)

tmg::GaussianParams to_cpp(const tmg_params& p) {
  return {p.z1, p.z2, p.r, p.nu1, p.nu2};
}

tmg::CovarianceMatrix to_cpp(const tmg_cm& c) {
  tmg::CovarianceMatrix cm;
  cm.n1 = c.n1;
  cm.n2 = c.n2;
  cm.m1 = c.m1;
  cm.m2 = c.m2;
  cm.ms = c.ms;
  cm.mc = c.mc;
  return cm;
}

tmg::ChannelParams to_cpp(const tmg_channel& c) {
  return {c.gamma1, c.gamma2, c.nb1, c.nb2};
}

tmg_params to_c(const tmg::GaussianParams& p) {
  return {static_cast<double>(p.z1), static_cast<double>(p.z2),
          static_cast<double>(p.r), static_cast<double>(p.nu1),
          static_cast<double>(p.nu2)};
}

tmg_cm to_c(const tmg::CovarianceMatrix& c) {
  return {static_cast<double>(c.n1), static_cast<double>(c.n2),
          static_cast<double>(c.m1), static_cast<double>(c.m2),
          static_cast<double>(c.ms), static_cast<double>(c.mc)};
}

int sign_of(tmg::Real x) { return (x > 0) - (x < 0); }

double opt(const std::optional<tmg::Real>& x) {
  return x ? static_cast<double>(*x) : kNaN;
}

tmg_esd_result to_c(const tmg::EsdResult& r) {
  tmg_esd_result out{};
  switch (r.kind) {
    case tmg::EsdKind::FiniteTime: out.kind = TMG_ESD_FINITE_TIME; break;
    case tmg::EsdKind::Asymptotic: out.kind = TMG_ESD_ASYMPTOTIC; break;
    case tmg::EsdKind::InitiallySeparable: out.kind = TMG_ESD_INITIALLY_SEPARABLE; break;
  }
  out.method = r.method == tmg::EsdMethod::Analytic ? TMG_ESD_ANALYTIC
                                                    : TMG_ESD_NUMERIC_ROOT;
  out.has_time = r.t_esd.has_value() ? 1 : 0;
  out.t_esd = opt(r.t_esd);
  out.ratio = opt(r.ratio);
  out.first_form_ratio = opt(r.first_form_ratio);
  out.horizon = opt(r.horizon);
  out.iterations = r.iterations;
  return out;
}

}  // namespace

extern "C" {

const char* tmg_status_string(tmg_status status) {
  switch (status) {
    case TMG_OK: return "ok";
    case TMG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TMG_ERR_NON_PHYSICAL_CM: return "non-physical covariance matrix";
    case TMG_ERR_EXTRACTION_OUT_OF_DOMAIN: return "extraction out of domain";
    case TMG_ERR_DOMAIN: return "domain error";
    case TMG_ERR_BUDGET_EXCEEDED: return "iteration budget exceeded";
    case TMG_ERR_INVALID_GRID: return "invalid grid";
    case TMG_ERR_CUTOFF_INSUFFICIENT: return "Fock cutoff insufficient";
    case TMG_ERR_STEP_TOO_LARGE: return "integration step too large";
    case TMG_ERR_IMAGINARY_PART: return "non-negligible imaginary part";
    case TMG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tmg_last_error(void) { return last_error.c_str(); }

const char* tmg_version(void) { return "1.0.0"; }

tmg_status tmg_cm_from_params(const tmg_params* p, tmg_cm* out) {
  TMG_REQUIRE(p);
  TMG_REQUIRE(out);
  return guarded([&] { *out = to_c(tmg::cm_from_params(to_cpp(*p))); });
}

tmg_status tmg_params_from_cm(const tmg_cm* cm, tmg_extraction method,
                              tmg_params* out) {
  TMG_REQUIRE(cm);
  TMG_REQUIRE(out);
  if (method != TMG_EXTRACT_CORRECTED && method != TMG_EXTRACT_PRINTED) {
    return fail(TMG_ERR_INVALID_ARGUMENT, "unknown extraction method");
  }
  return guarded([&] {
    const auto m = method == TMG_EXTRACT_PRINTED ? tmg::ExtractionMethod::Printed
                                                 : tmg::ExtractionMethod::Corrected;
    *out = to_c(tmg::params_from_cm(to_cpp(*cm), m));
  });
}

tmg_status tmg_is_physical(const tmg_cm* cm, double tol, int* out) {
  TMG_REQUIRE(cm);
  TMG_REQUIRE(out);
  return guarded([&] { *out = tmg::is_physical(to_cpp(*cm), tol) ? 1 : 0; });
}

tmg_status tmg_cm_invariants(const tmg_cm* cm, tmg_invariants* out) {
  TMG_REQUIRE(cm);
  TMG_REQUIRE(out);
  return guarded([&] {
    const auto inv = tmg::invariants(to_cpp(*cm));
    *out = {static_cast<double>(inv.i1), static_cast<double>(inv.i2),
            static_cast<double>(inv.i3), static_cast<double>(inv.i4),
            static_cast<double>(inv.iv)};
  });
}

tmg_status tmg_simon(const tmg_cm* cm, double* out) {
  TMG_REQUIRE(cm);
  TMG_REQUIRE(out);
  return guarded([&] { *out = static_cast<double>(tmg::simon_criterion(to_cpp(*cm))); });
}

tmg_status tmg_simon_from_invariants(const tmg_invariants* inv, double* out) {
  TMG_REQUIRE(inv);
  TMG_REQUIRE(out);
  return guarded([&] {
    const tmg::SymplecticInvariants in{inv->i1, inv->i2, inv->i3, inv->i4, inv->iv};
    *out = static_cast<double>(tmg::simon_from_invariants(in));
  });
}

tmg_status tmg_evolve(const tmg_params* p0, const tmg_channel* ch, double t,
                      tmg_cm* out) {
  TMG_REQUIRE(p0);
  TMG_REQUIRE(ch);
  TMG_REQUIRE(out);
  return guarded([&] { *out = to_c(tmg::evolve(to_cpp(*p0), to_cpp(*ch), t)); });
}

tmg_status tmg_evolve_simon(const tmg_params* p0, const tmg_channel* ch, double t,
                            double* s, int* sign) {
  TMG_REQUIRE(p0);
  TMG_REQUIRE(ch);
  return guarded([&] {
    const tmg::Real value = tmg::simon_criterion(tmg::evolve(to_cpp(*p0), to_cpp(*ch), t));
    if (s) *s = static_cast<double>(value);
    if (sign) *sign = sign_of(value);
  });
}

tmg_status tmg_evolve_symmetric(double n0, double m0, double gamma, double t,
                                double* n, double* m) {
  TMG_REQUIRE(n);
  TMG_REQUIRE(m);
  return guarded([&] {
    const auto [nn, mm] = tmg::evolve_symmetric(n0, m0, gamma, t);
    *n = static_cast<double>(nn);
    *m = static_cast<double>(mm);
  });
}

tmg_status tmg_trajectory_sample(const tmg_params* p0, const tmg_channel* ch,
                                 double t_max, size_t n_points,
                                 tmg_trajectory** out) {
  TMG_REQUIRE(p0);
  TMG_REQUIRE(ch);
  TMG_REQUIRE(out);
  return guarded([&] {
    auto handle = std::make_unique<tmg_trajectory>();
    handle->traj = tmg::sample_trajectory(to_cpp(*p0), to_cpp(*ch), t_max, n_points);
    *out = handle.release();
  });
}

size_t tmg_trajectory_size(const tmg_trajectory* traj) {
  return traj ? traj->traj.size() : 0;
}

tmg_status tmg_trajectory_point(const tmg_trajectory* traj, size_t k, double* t,
                                tmg_cm* cm, double* s, int* sign) {
  TMG_REQUIRE(traj);
  if (k >= traj->traj.size()) {
    return fail(TMG_ERR_INVALID_ARGUMENT, "trajectory index out of range");
  }
  if (t) *t = static_cast<double>(traj->traj.times[k]);
  if (cm) *cm = to_c(traj->traj.states[k]);
  if (s) *s = static_cast<double>(traj->traj.simon[k]);
  if (sign) *sign = sign_of(traj->traj.simon[k]);
  return TMG_OK;
}

void tmg_trajectory_free(tmg_trajectory* traj) { delete traj; }

tmg_status tmg_esd_condition_symmetric(double z0, double r0, int* out) {
  TMG_REQUIRE(out);
  return guarded([&] { *out = tmg::esd_condition_symmetric(z0, r0) ? 1 : 0; });
}

tmg_status tmg_esd_threshold_z0(double r0, double* out) {
  TMG_REQUIRE(out);
  return guarded([&] { *out = static_cast<double>(tmg::esd_threshold_z0(r0)); });
}

tmg_status tmg_t_esd_analytic(double z0, double r0, double gamma,
                              tmg_esd_result* out) {
  TMG_REQUIRE(out);
  return guarded([&] { *out = to_c(tmg::t_esd_analytic_symmetric(z0, r0, gamma)); });
}

tmg_status tmg_t_esd_numeric(const tmg_params* p0, const tmg_channel* ch,
                             double t_max, tmg_esd_result* out) {
  TMG_REQUIRE(p0);
  TMG_REQUIRE(ch);
  TMG_REQUIRE(out);
  return guarded(
      [&] { *out = to_c(tmg::t_esd_numeric(to_cpp(*p0), to_cpp(*ch), t_max)); });
}

tmg_status tmg_initial_entanglement_threshold(double nu1, double nu2, double* out) {
  TMG_REQUIRE(out);
  return guarded(
      [&] { *out = static_cast<double>(tmg::initial_entanglement_threshold(nu1, nu2)); });
}

tmg_status tmg_esd_boundary_sweep(double r0, const tmg_channel* ch, const double* z,
                                  size_t nz, const double* t, size_t nt,
                                  unsigned workers, tmg_sign_grid** out) {
  TMG_REQUIRE(ch);
  TMG_REQUIRE(out);
  if ((nz > 0 && z == nullptr) || (nt > 0 && t == nullptr)) {
    return fail(TMG_ERR_INVALID_ARGUMENT, "grid pointer is null");
  }
  return guarded([&] {
    const std::vector<tmg::Real> zs(z, z + nz);
    const std::vector<tmg::Real> ts(t, t + nt);
    auto handle = std::make_unique<tmg_sign_grid>();
    handle->grid = tmg::esd_boundary_sweep(r0, to_cpp(*ch), zs, ts, workers);
    *out = handle.release();
  });
}

size_t tmg_sign_grid_rows(const tmg_sign_grid* grid) {
  return grid ? grid->grid.z.size() : 0;
}

size_t tmg_sign_grid_cols(const tmg_sign_grid* grid) {
  return grid ? grid->grid.t.size() : 0;
}

int tmg_sign_grid_at(const tmg_sign_grid* grid, size_t iz, size_t it) {
  if (!grid || iz >= grid->grid.z.size() || it >= grid->grid.t.size()) return 0;
  return grid->grid.at(iz, it);
}

void tmg_sign_grid_free(tmg_sign_grid* grid) { delete grid; }

tmg_fock_options tmg_fock_default_options(void) {
  const tmg::fock::Tolerances tol;
  return {20, tol.tail, 1};
}

tmg_status tmg_fock_build(const tmg_params* p, const tmg_fock_options* options,
                          tmg_fock_state** out) {
  TMG_REQUIRE(p);
  TMG_REQUIRE(out);
  const tmg_fock_options opts = options ? *options : tmg_fock_default_options();
  return guarded([&] {
    tmg::fock::Tolerances tol;
    tol.tail = opts.tail_tolerance;
    tol.enforce_tail = opts.enforce_tail != 0;
    tmg::fock::Diagnostics diag;
    auto rho = tmg::fock::build_initial_state(to_cpp(*p), opts.cutoff, tol, &diag);
    *out = new tmg_fock_state{std::move(rho), tol, diag};
  });
}

tmg_status tmg_fock_integrate(tmg_fock_state* state, const tmg_channel* ch, double t,
                              double dt) {
  TMG_REQUIRE(state);
  TMG_REQUIRE(ch);
  return guarded([&] {
    auto next = tmg::fock::integrate(state->rho, to_cpp(*ch), t, dt, state->tol,
                                     &state->diag);
    state->rho = std::move(next);
  });
}

tmg_status tmg_fock_moments(const tmg_fock_state* state, tmg_cm* out) {
  TMG_REQUIRE(state);
  TMG_REQUIRE(out);
  return guarded([&] { *out = to_c(tmg::fock::moments(state->rho)); });
}

tmg_status tmg_fock_report_get(const tmg_fock_state* state, tmg_fock_report* out) {
  TMG_REQUIRE(state);
  TMG_REQUIRE(out);
  const auto& d = state->diag;
  *out = {d.max_tail, d.max_trace_error, d.max_hermiticity_defect,
          d.min_eigenvalue, d.step_change, d.steps};
  return TMG_OK;
}

int tmg_fock_cutoff(const tmg_fock_state* state) {
  return state ? state->rho.cutoff() : 0;
}

void tmg_fock_free(tmg_fock_state* state) { delete state; }

}  // extern "C"
