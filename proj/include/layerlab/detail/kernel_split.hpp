#pragma once

// Shared per-pair decomposition of the gradient kernel
//   d/dx_l S_a(psi(t) - psi(s)) |psi'(s)|
// into a strong (cotangent) part, a log part, and smooth remainders, with
// analytic diagonal limits. Used by the principal-value single layer gradient
// and by the auxiliary operator Q.

#include <cmath>

#include "layerlab/fundsol.hpp"
#include "layerlab/geometry.hpp"

namespace layerlab::detail {

using specfun::pi;

// For component l and nodes (i, j):
//   dS_l(t_i, s_j) |psi'(s_j)| = ctilde_l(i) * (1/2) cot((t_i - t_j)/2)
//                                + phig_l(i,j) * ln(4 sin^2((t_i-t_j)/2))
//                                + asm_l(i,j) + rest_l(i,j)
// where asm and rest are smooth biperiodic (rest carries the |psi'(s)| weight
// separately: see integrate conventions below).
//
// Integration conventions: the cot part pairs with the spectral Hilbert
// transform of mu (no speed factor), asm pairs with plain h-weighted sums of
// mu (speed already folded in), phig/rest pair with Kress resp. trapezoid
// sums of mu * speed.
class GradKernelTable {
 public:
  GradKernelTable(const fundsol::FundamentalSolution& fs,
                  const geom::BoundaryCurve& curve)
      : fs_(fs), curve_(curve) {
    const int N = curve.N;
    ctilde_.resize(N);
    p_.resize(N);
    diag_asm_.resize(N);
    diag_phig_.resize(N);
    diag_rest_.resize(N);
    const auto& rf = fs.reduced;
    const double df = rf.det_factor;
    for (int i = 0; i < N; ++i) {
      const Vec2 Bdx = rf.B.apply(curve.dx[i]);
      const Vec2 Bddx = rf.B.apply(curve.ddx[i]);
      const double p = dot(curve.dx[i], Bdx);
      const double q = dot(curve.dx[i], Bddx);
      const double sp = curve.speed[i];
      const double sigma_p = dot(curve.dx[i], curve.ddx[i]) / sp;
      const Complex mu_dx = dot(rf.mu, curve.dx[i]);
      p_[i] = p;
      for (int l = 0; l < 2; ++l) {
        ctilde_[i][l] = df * Bdx[l] * sp / (2.0 * pi * p);
        const Complex C1 = mu_dx * Bdx[l] * sp - 0.5 * Bddx[l] * sp - Bdx[l] * sigma_p;
        diag_asm_[i][l] = df / (2.0 * pi * p) * (C1 + Bdx[l] * sp * q / p);
        diag_phig_[i][l] = df * rf.mu[l] / (4.0 * pi);
        diag_rest_[i][l] = df * rf.mu[l] *
                           (std::log(p) / (4.0 * pi) + specfun::profile_G0(fs.kappa));
      }
    }
  }

  double ctilde(int i, int l) const { return ctilde_[i][l]; }

  struct PairValues {
    Complex asm_part[2];
    Complex phig[2];
    Complex rest[2];
  };

  PairValues pair(int i, int j) const {
    PairValues out;
    if (i == j) {
      for (int l = 0; l < 2; ++l) {
        out.asm_part[l] = diag_asm_[i][l];
        out.phig[l] = diag_phig_[i][l];
        out.rest[l] = diag_rest_[i][l];
      }
      return out;
    }
    const auto& rf = fs_.reduced;
    const Vec2 d = curve_.x[i] - curve_.x[j];
    const double rho = norm(rf.Tinv.apply(d));
    const auto ps = specfun::profile_split(fs_.kappa, rho);
    const Vec2 Bd = rf.B.apply(d);
    const Complex E = rf.det_factor * std::exp(dot(rf.mu, d));
    const double u = curve_.t[i] - curve_.t[j];
    const double sin2 = 4.0 * std::pow(std::sin(0.5 * u), 2);
    const double ln_m = std::log(rho * rho / sin2);
    const double half_cot = 0.5 / std::tan(0.5 * u);
    for (int l = 0; l < 2; ++l) {
      const Complex strong = E * ps.L * Bd[l] / (rho * rho) * curve_.speed[j];
      out.asm_part[l] = strong - ctilde_[i][l] * half_cot;
      out.phig[l] = 0.5 * E * (rf.mu[l] * ps.L + Bd[l] * ps.Lp_over_r);
      out.rest[l] = out.phig[l] * ln_m + E * (rf.mu[l] * ps.G + Bd[l] * ps.Gp_over_r);
    }
    return out;
  }

  const fundsol::FundamentalSolution& fs() const { return fs_; }
  const geom::BoundaryCurve& curve() const { return curve_; }

 private:
  const fundsol::FundamentalSolution& fs_;
  const geom::BoundaryCurve& curve_;
  std::vector<std::array<double, 2>> ctilde_;
  std::vector<double> p_;
  std::vector<std::array<Complex, 2>> diag_asm_, diag_phig_, diag_rest_;
};

} // namespace layerlab::detail
