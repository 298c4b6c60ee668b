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

#include "tmg/fock.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "tmg/error.hpp"

namespace tmg::fock {

namespace {

using RealMatrix = Eigen::MatrixXd;

RealMatrix annihilation(int n) {
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  return a;
}

void check_cutoff(int cutoff) {
  if (cutoff < 2 || cutoff > kMaxCutoff) {
    std::ostringstream os;
    os << "cutoff " << cutoff << " outside [2, " << kMaxCutoff << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

std::vector<double> thermal_populations(double nu, int cutoff) {
  std::vector<double> p(cutoff, 0.0);
  const double q = nu / (nu + 1);
  double w = 1.0 / (nu + 1);
  double sum = 0;
  for (int k = 0; k < cutoff; ++k) {
    p[k] = w;
    sum += w;
    w *= q;
  }
  for (double& x : p) x /= sum;
  return p;
}

// Damping coefficients for one mode.
struct ModeRates {
  double loss;  // g (nb + 1)
  double gain;  // g nb
};

// Dissipator. With flat index i = (a, b), every term is a diagonal scaling of
// rho or of a shifted block of it: mode-1 jumps shift the index by cutoff,
// mode-2 jumps by one (the weights vanish across the b = cutoff - 1 wrap).
template <typename M>
void dissipator(const M& rho, int cutoff, ModeRates m1, ModeRates m2,
                const std::vector<double>& root, M& out) {
  using Scalar = typename M::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int n = cutoff;
  const Eigen::Index dim = rho.rows();
  // a a^dag in the truncated space: diag(1, ..., n-1, 0).
  auto raise_lower = [n](int k) { return k + 1 < n ? k + 1.0 : 0.0; };
  Vector rate(dim), up1(dim - n), down1(dim - n), up2(dim - 1), down2(dim - 1);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int a = static_cast<int>(i / n);
    const int b = static_cast<int>(i % n);
    rate(i) = m1.loss * a + m1.gain * raise_lower(a) + m2.loss * b +
              m2.gain * raise_lower(b);
    if (i < dim - n) up1(i) = std::sqrt(2 * m1.loss) * root[a + 1];
    if (i >= n) down1(i - n) = std::sqrt(2 * m1.gain) * root[a];
    if (i < dim - 1) up2(i) = b + 1 < n ? std::sqrt(2 * m2.loss) * root[b + 1] : 0.0;
    if (i >= 1) down2(i - 1) = std::sqrt(2 * m2.gain) * root[b];
  }
  const Eigen::Index k1 = dim - n;
  const Eigen::Index k2 = dim - 1;
  out.resize(dim, dim);
  // Column by column, so each output column is built while its sources are
  // still in cache.
  for (Eigen::Index j = 0; j < dim; ++j) {
    auto o = out.col(j).array();
    o = -(rate.array() + rate(j)) * rho.col(j).array();
    if (j < k1) {
      o.head(k1) += up1(j) * up1.array() * rho.col(j + n).tail(k1).array();
    }
    if (j >= n) {
      o.tail(k1) += down1(j - n) * down1.array() * rho.col(j - n).head(k1).array();
    }
    if (j < k2) {
      o.head(k2) += up2(j) * up2.array() * rho.col(j + 1).tail(k2).array();
    }
    if (j >= 1) {
      o.tail(k2) += down2(j - 1) * down2.array() * rho.col(j - 1).head(k2).array();
    }
  }
}

std::vector<double> sqrt_table(int cutoff) {
  std::vector<double> root(cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) root[k] = std::sqrt(static_cast<double>(k));
  return root;
}

template <typename M>
double max_abs_hermiticity_defect(const M& m) {
  double worst = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

// Replaces m by its Hermitian part and returns the defect it had.
template <typename M>
double symmetrize(M& m) {
  double worst = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const auto x = m(i, j);
      const auto y = m(j, i);
      worst = std::max(worst, static_cast<double>(std::abs(x - Eigen::numext::conj(y))));
      const auto mean = 0.5 * (x + Eigen::numext::conj(y));
      m(i, j) = mean;
      m(j, i) = Eigen::numext::conj(mean);
    }
    worst = std::max(worst, static_cast<double>(std::abs(Eigen::numext::imag(m(j, j)))));
    m(j, j) = Eigen::numext::real(m(j, j));
  }
  return worst;
}

template <typename M>
double tail_of(const M& m, int cutoff) {
  double tail1 = 0;
  double tail2 = 0;
  for (int a = 0; a < cutoff; ++a) {
    for (int b = 0; b < cutoff; ++b) {
      const auto i = static_cast<Eigen::Index>(FockDensityMatrix::index(cutoff, a, b));
      const double pop = std::real(m(i, i));
      if (a >= cutoff - 2) tail1 += pop;
      if (b >= cutoff - 2) tail2 += pop;
    }
  }
  return std::max(tail1, tail2);
}

void check_tail(double tail, const Tolerances& tol, Diagnostics* diag) {
  if (diag) diag->max_tail = std::max(diag->max_tail, tail);
  if (tol.enforce_tail && !(tail < tol.tail)) {
    std::ostringstream os;
    os << "tail population " << tail << " exceeds " << tol.tail;
    throw Error(ErrorCode::CutoffInsufficient, os.str());
  }
}

// `herm` is the defect of the latest step before it was symmetrized away.
template <typename M>
void check_state(const M& m, double herm, const Tolerances& tol, Diagnostics* diag) {
  const double trace_error = std::abs(m.trace() - typename M::Scalar(1.0));
  if (diag) {
    diag->max_trace_error = std::max(diag->max_trace_error, trace_error);
    diag->max_hermiticity_defect = std::max(diag->max_hermiticity_defect, herm);
  }
  if (!(trace_error <= tol.trace) || !(herm <= tol.hermiticity)) {
    std::ostringstream os;
    os << "density matrix drifted: |tr - 1| = " << trace_error
       << ", hermiticity defect = " << herm;
    throw Error(ErrorCode::StepTooLarge, os.str());
  }
}

void check_positive(const FockDensityMatrix& rho, const Tolerances& tol,
                    Diagnostics* diag) {
  const double lowest = rho.min_eigenvalue();
  if (diag) diag->min_eigenvalue = std::min(diag->min_eigenvalue, lowest);
  if (tol.enforce_tail && lowest < -tol.eigenvalue) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << lowest;
    throw Error(ErrorCode::CutoffInsufficient, os.str());
  }
}

double max_moment_change(const CovarianceMatrix& x, const CovarianceMatrix& y) {
  const Real diffs[] = {x.n1 - y.n1, x.n2 - y.n2, x.m1 - y.m1,
                        x.m2 - y.m2, x.ms - y.ms, x.mc - y.mc};
  Real worst = 0;
  for (Real d : diffs) worst = std::max(worst, std::fabs(d));
  return static_cast<double>(worst);
}

// Real initial states stay real under the dissipator, so they are integrated
// in real arithmetic.
template <typename M>
M run_rk4(const M& rho0, int cutoff, const ChannelParams& ch, double t, long steps,
          const Tolerances& tol, Diagnostics* diag) {
  const ModeRates mode1{static_cast<double>(ch.gamma1 * (ch.nb1 + 1)),
                        static_cast<double>(ch.gamma1 * ch.nb1)};
  const ModeRates mode2{static_cast<double>(ch.gamma2 * (ch.nb2 + 1)),
                        static_cast<double>(ch.gamma2 * ch.nb2)};
  const auto root = sqrt_table(cutoff);
  const double h = t / static_cast<double>(steps);
  M rho = rho0;
  M k1, k2, k3, k4, stage;
  for (long s = 0; s < steps; ++s) {
    dissipator(rho, cutoff, mode1, mode2, root, k1);
    stage = rho + (0.5 * h) * k1;
    dissipator(stage, cutoff, mode1, mode2, root, k2);
    stage = rho + (0.5 * h) * k2;
    dissipator(stage, cutoff, mode1, mode2, root, k3);
    stage = rho + h * k3;
    dissipator(stage, cutoff, mode1, mode2, root, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double herm = symmetrize(rho);
    check_state(rho, herm, tol, diag);
    check_tail(tail_of(rho, cutoff), tol, diag);
  }
  if (diag) diag->steps += static_cast<int>(steps);
  return rho;
}

Matrix evolve_rk4(const Matrix& rho0, int cutoff, const ChannelParams& ch, double t,
                  long steps, const Tolerances& tol, Diagnostics* diag) {
  if (rho0.imag().isZero(0.0)) {
    const RealMatrix real = rho0.real();
    return run_rk4(real, cutoff, ch, t, steps, tol, diag).cast<Complex>();
  }
  return run_rk4(rho0, cutoff, ch, t, steps, tol, diag);
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(int cutoff, Matrix data)
    : cutoff_(cutoff), data_(std::move(data)) {
  check_cutoff(cutoff);
  const auto d = static_cast<Eigen::Index>(dim());
  if (data_.rows() != d || data_.cols() != d) {
    throw Error(ErrorCode::InvalidArgument, "density matrix shape does not match cutoff");
  }
}

double FockDensityMatrix::hermiticity_defect() const {
  return max_abs_hermiticity_defect(data_);
}

double FockDensityMatrix::tail_population() const { return tail_of(data_, cutoff_); }

double FockDensityMatrix::min_eigenvalue() const {
  const Matrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

FockDensityMatrix build_initial_state(const GaussianParams& p, int cutoff,
                                      const Tolerances& tol, Diagnostics* diag) {
  validate(p);
  check_cutoff(cutoff);
  const int n = cutoff;
  const auto dim = static_cast<Eigen::Index>(n) * n;
  const RealMatrix a = annihilation(n);
  const RealMatrix single = 0.5 * (a.transpose() * a.transpose() - a * a);
  const RealMatrix sq1 = (static_cast<double>(p.z1) * single).exp();
  const RealMatrix sq2 = (static_cast<double>(p.z2) * single).exp();

  const auto pop1 = thermal_populations(static_cast<double>(p.nu1), n);
  const auto pop2 = thermal_populations(static_cast<double>(p.nu2), n);

  // The two-mode squeezer conserves a - b, so T sigma T^T is block diagonal
  // over the sectors k = a - b; each block is exponentiated on its own.
  RealMatrix core = RealMatrix::Zero(dim, dim);
  for (int k = -(n - 1); k < n; ++k) {
    std::vector<Eigen::Index> idx;
    std::vector<double> weight;
    for (int ma = std::max(0, k); ma < n && ma - k < n; ++ma) {
      idx.push_back(static_cast<Eigen::Index>(FockDensityMatrix::index(n, ma, ma - k)));
      weight.push_back(pop1[ma] * pop2[ma - k]);
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    RealMatrix gen = RealMatrix::Zero(m, m);
    for (Eigen::Index q = 0; q + 1 < m; ++q) {
      const int ma = std::max(0, k) + static_cast<int>(q);
      const double amp = std::sqrt(static_cast<double>(ma + 1) * (ma - k + 1));
      gen(q + 1, q) = amp;
      gen(q, q + 1) = -amp;
    }
    const RealMatrix t_block = (static_cast<double>(p.r) * gen).exp();
    const Eigen::Map<const Eigen::VectorXd> w(weight.data(), m);
    const RealMatrix block = t_block * w.asDiagonal() * t_block.transpose();
    for (Eigen::Index q = 0; q < m; ++q) {
      for (Eigen::Index s = 0; s < m; ++s) core(idx[q], idx[s]) = block(q, s);
    }
  }

  // rho = L core L^T with L = sq1 (x) sq2. A column v of index (a, b) read
  // as an n x n matrix V(b, a) maps to sq2 V sq1^T.
  auto apply_local = [&](const RealMatrix& x) {
    RealMatrix y(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      Eigen::Map<const RealMatrix> v(x.col(j).data(), n, n);
      Eigen::Map<RealMatrix> out(y.col(j).data(), n, n);
      out.noalias() = sq2 * v * sq1.transpose();
    }
    return y;
  };
  const RealMatrix half = apply_local(core);
  const RealMatrix rho = apply_local(half.transpose());

  FockDensityMatrix state(cutoff, rho.cast<Complex>());
  check_state(state.data(), state.hermiticity_defect(), tol, diag);
  check_tail(state.tail_population(), tol, diag);
  check_positive(state, tol, diag);
  return state;
}

Matrix lindblad_rhs(const FockDensityMatrix& rho, const ChannelParams& ch) {
  validate(ch);
  const ModeRates mode1{static_cast<double>(ch.gamma1 * (ch.nb1 + 1)),
                        static_cast<double>(ch.gamma1 * ch.nb1)};
  const ModeRates mode2{static_cast<double>(ch.gamma2 * (ch.nb2 + 1)),
                        static_cast<double>(ch.gamma2 * ch.nb2)};
  Matrix out;
  dissipator(rho.data(), rho.cutoff(), mode1, mode2, sqrt_table(rho.cutoff()), out);
  return out;
}

FockDensityMatrix integrate(const FockDensityMatrix& rho0, const ChannelParams& ch,
                            double t, double dt, const Tolerances& tol,
                            Diagnostics* diag) {
  validate(ch);
  if (!(t >= 0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "integration time must be finite and >= 0");
  }
  if (!(dt > 0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidArgument, "time step must be finite and > 0");
  }
  if (t == 0) return rho0;

  const int n = rho0.cutoff();
  // RK4 stays stable for h |lambda| below about 2.8. Gershgorin bounds the
  // dissipator's spectrum by twice its largest diagonal rate.
  const double top = 2.0 * (n - 1);
  const double rate = 2.0 * static_cast<double>((ch.gamma1 * (2 * ch.nb1 + 1) +
                                                 ch.gamma2 * (2 * ch.nb2 + 1)) * top);
  const double h = std::min(dt, 2.5 / rate);
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / h)));
  FockDensityMatrix coarse(n, evolve_rk4(rho0.data(), n, ch, t, steps, tol, diag));
  FockDensityMatrix fine(n, evolve_rk4(rho0.data(), n, ch, t, 2 * steps, tol, diag));
  const double change = max_moment_change(moments(coarse), moments(fine));
  if (diag) diag->step_change = std::max(diag->step_change, change);
  if (!(change < 1e-6)) {
    std::ostringstream os;
    os << "halving dt = " << dt << " moved the moments by " << change;
    throw Error(ErrorCode::StepTooLarge, os.str());
  }
  check_positive(fine, tol, diag);
  return fine;
}

CovarianceMatrix moments(const FockDensityMatrix& rho, double* max_imaginary) {
  const int n = rho.cutoff();
  const Matrix& m = rho.data();
  const auto root = sqrt_table(n);
  Complex n1, n2, sq1, sq2, cross, swap;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto i = static_cast<Eigen::Index>(FockDensityMatrix::index(n, a, b));
      n1 += static_cast<double>(a) * m(i, i);
      n2 += static_cast<double>(b) * m(i, i);
      if (a + 2 < n) sq1 += root[a + 1] * root[a + 2] * m(i + 2 * n, i);
      if (b + 2 < n) sq2 += root[b + 1] * root[b + 2] * m(i + 2, i);
      if (a + 1 < n && b + 1 < n) cross += root[a + 1] * root[b + 1] * m(i + n + 1, i);
      // <a1 a2^dag> = sum sqrt(a+1) sqrt(b+1) rho_{(a+1,b),(a,b+1)}
      if (a + 1 < n && b + 1 < n) swap += root[a + 1] * root[b + 1] * m(i + n, i + 1);
    }
  }
  double worst = 0;
  for (const Complex& v : {n1, n2, sq1, sq2, cross, swap}) {
    worst = std::max(worst, std::fabs(v.imag()));
  }
  if (max_imaginary) *max_imaginary = worst;
  if (worst > 1e-6) {
    std::ostringstream os;
    os << "moment has imaginary part " << worst;
    throw Error(ErrorCode::NonNegligibleImaginaryPart, os.str());
  }
  CovarianceMatrix cm;
  cm.n1 = n1.real();
  cm.n2 = n2.real();
  cm.m1 = -sq1.real();
  cm.m2 = -sq2.real();
  cm.ms = -swap.real();
  cm.mc = cross.real();
  return cm;
}

}  // namespace tmg::fock
