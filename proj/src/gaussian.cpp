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

#include "tmg/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tmg/error.hpp"

namespace tmg {

namespace {

constexpr Real kHalf = 0.5L;
constexpr Real kDomainTol = 1e-9L;

bool finite(Real x) { return std::isfinite(x); }

// Clamps an arctanh argument into (-1, 1).
Real clamp_unit(Real x, const char* what) {
  if (!finite(x)) {
    throw Error(ErrorCode::ExtractionOutOfDomain,
                std::string(what) + ": non-finite arctanh argument");
  }
  if (std::fabs(x) < 1) return x;
  if (std::fabs(x) - 1 > kDomainTol) {
    std::ostringstream os;
    os << what << ": arctanh argument " << static_cast<double>(x)
       << " outside (-1, 1)";
    throw Error(ErrorCode::ExtractionOutOfDomain, os.str());
  }
  return std::copysign(1 - std::numeric_limits<Real>::epsilon(), x);
}

Real clamp_nonnegative(Real x, const char* what) {
  if (!finite(x) || x < -kDomainTol) {
    std::ostringstream os;
    os << what << ": value " << static_cast<double>(x) << " is negative";
    throw Error(ErrorCode::ExtractionOutOfDomain, os.str());
  }
  return std::max<Real>(x, 0);
}

Real entry_scale(const CovarianceMatrix& cm) {
  return std::max({Real(1), std::fabs(cm.n1) + kHalf, std::fabs(cm.n2) + kHalf,
                   std::fabs(cm.m1), std::fabs(cm.m2), std::fabs(cm.ms),
                   std::fabs(cm.mc)});
}

GaussianParams extract_corrected(const CovarianceMatrix& cm) {
  GaussianParams p;
  p.z1 = -kHalf * std::atanh(clamp_unit(cm.m1 / (cm.n1 + kHalf), "z1"));
  p.z2 = -kHalf * std::atanh(clamp_unit(cm.m2 / (cm.n2 + kHalf), "z2"));

  // Occupations of the two-mode squeezed thermal core.
  const Real core1 = std::sqrt(clamp_nonnegative(cm.det_v1(), "det V1")) - kHalf;
  const Real core2 = std::sqrt(clamp_nonnegative(cm.det_v2(), "det V2")) - kHalf;
  const Real occ1 = clamp_nonnegative(core1, "core occupation 1");
  const Real occ2 = clamp_nonnegative(core2, "core occupation 2");

  // <a1 a2> of the core, with the local squeezers undone.
  const Real zsum = p.z1 + p.z2;
  const Real corr = cm.mc * std::cosh(zsum) + cm.ms * std::sinh(zsum);
  const Real total = occ1 + occ2 + 1;
  p.r = kHalf * std::atanh(clamp_unit(2 * corr / total, "r"));

  // 1 + nu1 + nu2 = sqrt(total^2 - 4 corr^2), factored against cancellation.
  const Real mixed = std::sqrt(
      clamp_nonnegative((total - 2 * corr) * (total + 2 * corr), "1+nu1+nu2"));
  p.nu1 = clamp_nonnegative(kHalf * (occ1 - occ2 + mixed - 1), "nu1");
  p.nu2 = clamp_nonnegative(kHalf * (occ2 - occ1 + mixed - 1), "nu2");
  return p;
}

GaussianParams extract_printed(const CovarianceMatrix& cm) {
  GaussianParams p;
  p.z1 = kHalf * std::atanh(clamp_unit(cm.m1 / (cm.n1 + kHalf), "z1"));
  p.z2 = kHalf * std::atanh(clamp_unit(cm.m2 / (cm.n2 + kHalf), "z2"));
  const Real d1 = cm.det_v1();
  const Real d2 = cm.det_v2();
  const Real root_sum = std::sqrt(clamp_nonnegative(d1, "det V1")) +
                        std::sqrt(clamp_nonnegative(d2, "det V2"));
  const Real zsum = p.z1 + p.z2;
  Real x;
  if (std::fabs(std::sinh(zsum)) > 1e-12L) {
    x = 2 * cm.ms / (root_sum * std::sinh(zsum));
  } else {
    // x is 0/0 here; take it from mc instead.
    x = 2 * cm.mc / (root_sum * std::cosh(zsum));
  }
  x = clamp_unit(x, "x");
  p.r = kHalf * std::atanh(x);
  const Real shrink = std::sqrt(1 - x * x);
  p.nu1 = kHalf * (d1 - d2) + kHalf * shrink * (d1 + d2) - kHalf;
  p.nu2 = kHalf * (d2 - d1) + kHalf * shrink * (d1 + d2) - kHalf;
  return p;
}

}  // namespace

void validate(const GaussianParams& p) {
  if (!finite(p.z1) || !finite(p.z2) || !finite(p.r) || !finite(p.nu1) ||
      !finite(p.nu2)) {
    throw Error(ErrorCode::InvalidArgument, "state parameters must be finite");
  }
  if (p.nu1 < 0 || p.nu2 < 0) {
    throw Error(ErrorCode::InvalidArgument, "mixedness nu1, nu2 must be >= 0");
  }
}

Matrix4 CovarianceMatrix::assemble() const {
  Matrix4 v;
  // clang-format off
  v << n1 + kHalf, m1,         ms,         mc,
       m1,         n1 + kHalf, mc,         ms,
       ms,         mc,         n2 + kHalf, m2,
       mc,         ms,         m2,         n2 + kHalf;
  // clang-format on
  return v;
}

Matrix2 CovarianceMatrix::block1() const {
  Matrix2 b;
  b << n1 + kHalf, m1, m1, n1 + kHalf;
  return b;
}

Matrix2 CovarianceMatrix::block2() const {
  Matrix2 b;
  b << n2 + kHalf, m2, m2, n2 + kHalf;
  return b;
}

Matrix2 CovarianceMatrix::correlation() const {
  Matrix2 c;
  c << ms, mc, mc, ms;
  return c;
}

Real CovarianceMatrix::det_v1() const {
  return (n1 + kHalf - m1) * (n1 + kHalf + m1);
}

Real CovarianceMatrix::det_v2() const {
  return (n2 + kHalf - m2) * (n2 + kHalf + m2);
}

Real min_eigenvalue(const CovarianceMatrix& cm) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(cm.assemble(),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const CovarianceMatrix& cm, Real tol) {
  for (Real x : {cm.n1, cm.n2, cm.m1, cm.m2, cm.ms, cm.mc}) {
    if (!finite(x)) return false;
  }
  const Real scale = entry_scale(cm);
  if (cm.n1 < -tol * scale || cm.n2 < -tol * scale) return false;
  const Real quarter = 0.25L;
  if (cm.det_v1() < quarter - tol * scale * scale) return false;
  if (cm.det_v2() < quarter - tol * scale * scale) return false;
  return min_eigenvalue(cm) >= -tol * scale;
}

CovarianceMatrix cm_from_params(const GaussianParams& p) {
  validate(p);
  const Real ch2 = std::cosh(p.r) * std::cosh(p.r);
  const Real sh2 = std::sinh(p.r) * std::sinh(p.r);
  const Real mix = 1 + p.nu1 + p.nu2;
  CovarianceMatrix cm;
  cm.n1 = std::cosh(2 * p.z1) * (p.nu1 * ch2 + (1 + p.nu2) * sh2) +
          std::sinh(p.z1) * std::sinh(p.z1);
  cm.n2 = std::cosh(2 * p.z2) * (p.nu2 * ch2 + (1 + p.nu1) * sh2) +
          std::sinh(p.z2) * std::sinh(p.z2);
  cm.m1 = -(p.nu1 - p.nu2 + mix * std::cosh(2 * p.r)) * std::cosh(p.z1) *
          std::sinh(p.z1);
  cm.m2 = -(p.nu2 - p.nu1 + mix * std::cosh(2 * p.r)) * std::cosh(p.z2) *
          std::sinh(p.z2);
  cm.mc = kHalf * mix * std::cosh(p.z1 + p.z2) * std::sinh(2 * p.r);
  cm.ms = -kHalf * mix * std::sinh(2 * p.r) * std::sinh(p.z1 + p.z2);
  return cm;
}

GaussianParams params_from_cm(const CovarianceMatrix& cm,
                              ExtractionMethod method) {
  if (!is_physical(cm, kDomainTol)) {
    throw Error(ErrorCode::NonPhysicalCM,
                "covariance matrix violates det V_i >= 1/4 or positivity");
  }
  return method == ExtractionMethod::Corrected ? extract_corrected(cm)
                                               : extract_printed(cm);
}

SymplecticInvariants invariants(const CovarianceMatrix& cm) {
  Matrix2 z = Matrix2::Zero();
  z(0, 0) = 1;
  z(1, 1) = -1;
  const Matrix2 v1 = cm.block1();
  const Matrix2 v2 = cm.block2();
  const Matrix2 c = cm.correlation();
  SymplecticInvariants inv;
  inv.i1 = cm.det_v1();
  inv.i2 = cm.det_v2();
  inv.i3 = (cm.ms - cm.mc) * (cm.ms + cm.mc);
  // C is real here, so C^dag is its transpose.
  inv.i4 = (v1 * z * c * z * v2 * z * c.transpose() * z).trace();
  inv.iv = cm.assemble().determinant();
  return inv;
}

Real simon_from_invariants(const SymplecticInvariants& inv) {
  const Real q = 0.25L - std::fabs(inv.i3);
  return inv.i1 * inv.i2 + q * q - inv.i4 - 0.25L * (inv.i1 + inv.i2);
}

Real simon_criterion(const CovarianceMatrix& cm) {
  const Real local1 = cm.n1 * (cm.n1 + 1) - cm.m1 * cm.m1;  // det V1 - 1/4
  const Real local2 = cm.n2 * (cm.n2 + 1) - cm.m2 * cm.m2;  // det V2 - 1/4
  const Real c2 = cm.mc * cm.mc;
  const Real s2 = cm.ms * cm.ms;
  const Real diff = c2 - s2;
  return local1 * local2 + diff * diff -
         (c2 + s2) * (2 * cm.m1 * cm.m2 + 2 * cm.n1 * cm.n2 + cm.n1 + cm.n2) +
         2 * cm.ms * cm.mc *
             (cm.m1 * (2 * cm.n2 + 1) + cm.m2 * (2 * cm.n1 + 1)) -
         std::max(s2, c2);
}

Real simon_symmetric_factorized(Real n, Real m) {
  return (m + n) * (m + n + 1) * (m - n) * (m - n - 1);
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPhysicalCM: return "NonPhysicalCM";
    case ErrorCode::ExtractionOutOfDomain: return "ExtractionOutOfDomain";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::CutoffInsufficient: return "CutoffInsufficient";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NonNegligibleImaginaryPart: return "NonNegligibleImaginaryPart";
  }
  return "Unknown";
}

}  // namespace tmg
