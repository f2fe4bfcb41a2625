#include "layerlab/layer_potentials.hpp"

#include <algorithm>
#include <cmath>

#include "layerlab/detail/kernel_split.hpp"
#include "layerlab/errors.hpp"

namespace layerlab::potentials {

using detail::GradKernelTable;
using specfun::pi;

namespace {

void check_off_curve(const BoundaryCurve& curve, const Vec2& x) {
  for (int j = 0; j < curve.N; ++j)
    if (norm(x - curve.x[j]) < 1e-12)
      throw PointOnCurve("target lies on a curve node");
}

Complex a1_dot_nu(const FundamentalSolution& fs, const Vec2& nu) {
  return dot(fs.coeffs.a1, nu);
}

// Off-boundary double layer kernel at target x against source node j.
Complex double_layer_kernel(const FundamentalSolution& fs,
                            const BoundaryCurve& curve, const Vec2& x, int j) {
  const Vec2 d = x - curve.x[j];
  const CVec2 g = fundsol::grad(fs, d);
  const Vec2 a2nu = fs.coeffs.a2.apply(curve.normal[j]);
  const Complex s = fundsol::eval(fs, d);
  return -(g[0] * a2nu[0] + g[1] * a2nu[1] + a1_dot_nu(fs, curve.normal[j]) * s);
}

// Polynomial (Neville) extrapolation of values(h) to h = 0.
Complex extrapolate_to_zero(const std::vector<double>& h,
                            std::vector<Complex> v) {
  const int n = static_cast<int>(h.size());
  for (int level = 1; level < n; ++level)
    for (int i = 0; i < n - level; ++i)
      v[i] = (h[i + level] * v[i] - h[i] * v[i + 1]) / (h[i + level] - h[i]);
  return v[0];
}

} // namespace

BoundaryFunction single_layer(const FundamentalSolution& fs,
                              const BoundaryCurve& curve,
                              const BoundaryFunction& mu) {
  const int N = curve.N;
  const auto R = geom::kress_weights(N);
  const double h = 2.0 * pi / N;
  BoundaryFunction out(N);
  for (int i = 0; i < N; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j) {
      const auto [phi1, phi2] = fundsol::log_split(fs, curve, curve.t[i], curve.t[j]);
      const int d = ((i - j) % N + N) % N;
      acc += (R[d] * phi1 + h * phi2) * curve.speed[j] * mu[j];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> single_layer(const FundamentalSolution& fs,
                                  const BoundaryCurve& curve,
                                  const BoundaryFunction& mu,
                                  const std::vector<Vec2>& targets) {
  std::vector<Complex> out(targets.size());
  for (size_t p = 0; p < targets.size(); ++p) {
    check_off_curve(curve, targets[p]);
    Complex acc = 0.0;
    for (int j = 0; j < curve.N; ++j)
      acc += fundsol::eval(fs, targets[p] - curve.x[j]) * mu[j] * curve.weight[j];
    out[p] = acc;
  }
  return out;
}

std::vector<CVec2> single_layer_grad(const FundamentalSolution& fs,
                                     const BoundaryCurve& curve,
                                     const BoundaryFunction& mu,
                                     const std::vector<Vec2>& targets) {
  std::vector<CVec2> out(targets.size());
  for (size_t p = 0; p < targets.size(); ++p) {
    check_off_curve(curve, targets[p]);
    CVec2 acc{0.0, 0.0};
    for (int j = 0; j < curve.N; ++j) {
      const CVec2 g = fundsol::grad(fs, targets[p] - curve.x[j]);
      acc[0] += g[0] * mu[j] * curve.weight[j];
      acc[1] += g[1] * mu[j] * curve.weight[j];
    }
    out[p] = acc;
  }
  return out;
}

std::pair<BoundaryFunction, BoundaryFunction>
single_layer_grad(const FundamentalSolution& fs, const BoundaryCurve& curve,
                  const BoundaryFunction& mu, Side side) {
  const int N = curve.N;
  const GradKernelTable table(fs, curve);
  const auto R = geom::kress_weights(N);
  const double h = 2.0 * pi / N;
  const BoundaryFunction cot_int = geom::hilbert_cot(mu);

  BoundaryFunction g1(N), g2(N);
  for (int i = 0; i < N; ++i) {
    Complex acc[2] = {0.0, 0.0};
    for (int j = 0; j < N; ++j) {
      const auto pv = table.pair(i, j);
      const int d = ((i - j) % N + N) % N;
      for (int l = 0; l < 2; ++l)
        acc[l] += h * pv.asm_part[l] * mu[j] +
                  (R[d] * pv.phig[l] + h * pv.rest[l]) * curve.speed[j] * mu[j];
    }
    for (int l = 0; l < 2; ++l) acc[l] += table.ctilde(i, l) * 0.5 * cot_int[i];

    if (side != Side::PV) {
      const Vec2 a2nu = fs.coeffs.a2.apply(curve.normal[i]);
      const double q2 = dot(curve.normal[i], a2nu);
      const double sgn = side == Side::Plus ? -1.0 : 1.0;
      for (int l = 0; l < 2; ++l)
        acc[l] += sgn * curve.normal[i][l] * mu[i] / (2.0 * q2);
    }
    g1[i] = acc[0];
    g2[i] = acc[1];
  }
  return {g1, g2};
}

BoundaryFunction double_layer(const FundamentalSolution& fs,
                              const BoundaryCurve& curve,
                              const BoundaryFunction& mu) {
  const int N = curve.N;
  const auto R = geom::kress_weights(N);
  const double h = 2.0 * pi / N;
  const auto& rf = fs.reduced;
  const double df = rf.det_factor;

  BoundaryFunction out(N);
  for (int i = 0; i < N; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j) {
      Complex phi1, phi2;
      if (i == j) {
        const Vec2 Bdx = rf.B.apply(curve.dx[i]);
        const double p = dot(curve.dx[i], Bdx);
        const Complex a1nu = a1_dot_nu(fs, curve.normal[i]);
        phi1 = -df * a1nu / (8.0 * pi);
        const double curv = dot(curve.ddx[i], curve.normal[i]); // psi'' . nu
        phi2 = phi1 * std::log(p) -
               df * (0.5 * a1nu * specfun::profile_G0(fs.kappa) +
                     curv / (4.0 * pi * p));
      } else {
        const Vec2 d = curve.x[i] - curve.x[j];
        const double rho = norm(rf.Tinv.apply(d));
        const auto ps = specfun::profile_split(fs.kappa, rho);
        const Complex E = df * std::exp(dot(rf.mu, d));
        const Complex a1nu = a1_dot_nu(fs, curve.normal[j]);
        const double dnu = dot(d, curve.normal[j]);
        const double u = curve.t[i] - curve.t[j];
        const double ln_m =
            std::log(rho * rho / (4.0 * std::pow(std::sin(0.5 * u), 2)));
        phi1 = -0.5 * E * (0.5 * a1nu * ps.L + dnu * ps.Lp_over_r);
        const Complex rest =
            -E * (0.5 * a1nu * ps.G + dnu * (ps.L / (rho * rho) + ps.Gp_over_r));
        phi2 = phi1 * ln_m + rest;
      }
      const int d = ((i - j) % N + N) % N;
      acc += (R[d] * phi1 + h * phi2) * curve.speed[j] * mu[j];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> double_layer(const FundamentalSolution& fs,
                                  const BoundaryCurve& curve,
                                  const BoundaryFunction& mu,
                                  const std::vector<Vec2>& targets) {
  std::vector<Complex> out(targets.size());
  for (size_t p = 0; p < targets.size(); ++p) {
    check_off_curve(curve, targets[p]);
    Complex acc = 0.0;
    for (int j = 0; j < curve.N; ++j)
      acc += double_layer_kernel(fs, curve, targets[p], j) * mu[j] * curve.weight[j];
    out[p] = acc;
  }
  return out;
}

BoundaryFunction w_star(const FundamentalSolution& fs, const BoundaryCurve& curve,
                        const BoundaryFunction& mu) {
  const int N = curve.N;
  const auto R = geom::kress_weights(N);
  const double h = 2.0 * pi / N;
  const auto& rf = fs.reduced;
  const double df = rf.det_factor;

  BoundaryFunction out(N);
  for (int i = 0; i < N; ++i) {
    const Complex a1nu = a1_dot_nu(fs, curve.normal[i]);
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j) {
      Complex phi1, phi2;
      if (i == j) {
        const Vec2 Bdx = rf.B.apply(curve.dx[i]);
        const double p = dot(curve.dx[i], Bdx);
        phi1 = -df * a1nu / (8.0 * pi);
        const double curv = dot(curve.ddx[i], curve.normal[i]);
        phi2 = phi1 * std::log(p) +
               df * (-0.5 * a1nu * specfun::profile_G0(fs.kappa) -
                     curv / (4.0 * pi * p));
      } else {
        const Vec2 d = curve.x[i] - curve.x[j];
        const double rho = norm(rf.Tinv.apply(d));
        const auto ps = specfun::profile_split(fs.kappa, rho);
        const Complex E = df * std::exp(dot(rf.mu, d));
        const double dnu = dot(d, curve.normal[i]);
        const double u = curve.t[i] - curve.t[j];
        const double ln_m =
            std::log(rho * rho / (4.0 * std::pow(std::sin(0.5 * u), 2)));
        phi1 = 0.5 * E * (-0.5 * a1nu * ps.L + dnu * ps.Lp_over_r);
        const Complex rest =
            E * (-0.5 * a1nu * ps.G + dnu * (ps.L / (rho * rho) + ps.Gp_over_r));
        phi2 = phi1 * ln_m + rest;
      }
      const int d = ((i - j) % N + N) % N;
      acc += (R[d] * phi1 + h * phi2) * curve.speed[j] * mu[j];
    }
    out[i] = acc;
  }
  return out;
}

namespace {

// The trapezoid error for a target at distance d from the curve decays like
// e^{-M d / max|psi'|}; pick the fine node count per offset accordingly.
int fine_node_count(const BoundaryCurve& curve, double offset) {
  double vmax = 0.0;
  for (double s : curve.speed) vmax = std::max(vmax, s);
  const double needed = 35.0 * vmax / offset;
  const int M = static_cast<int>(std::min(needed, 60000.0));
  return std::max({8 * curve.N, 4096, 2 * ((M + 1) / 2)});
}

} // namespace

JumpReport double_layer_jump_residual(const FundamentalSolution& fs,
                                      const BoundaryCurve& curve,
                                      const BoundaryFunction& mu,
                                      const std::vector<double>& offsets,
                                      int target_stride) {
  const int N = curve.N;
  const BoundaryFunction wb = double_layer(fs, curve, mu);

  std::vector<int> targets;
  for (int i = 0; i < N; i += target_stride) targets.push_back(i);
  const int T = static_cast<int>(targets.size());
  const int K = static_cast<int>(offsets.size());

  // win[k][p], wout[k][p]: values at offset k, target p.
  std::vector<std::vector<Complex>> win(K), wout(K);
  for (int k = 0; k < K; ++k) {
    const double h = offsets[k];
    const int M = fine_node_count(curve, h);
    const BoundaryCurve fine = curve.resampled(M);
    BoundaryFunction mu_f;
    mu_f.v = geom::upsample(mu.v, M);
    std::vector<Vec2> pts;
    for (int i : targets) pts.push_back(curve.x[i] - h * curve.normal[i]);
    for (int i : targets) pts.push_back(curve.x[i] + h * curve.normal[i]);
    const auto vals = double_layer(fs, fine, mu_f, pts);
    win[k].assign(vals.begin(), vals.begin() + T);
    wout[k].assign(vals.begin() + T, vals.end());
  }

  JumpReport rep;
  for (int p = 0; p < T; ++p) {
    const int i = targets[p];
    std::vector<Complex> vi(K), vo(K);
    for (int k = 0; k < K; ++k) {
      vi[k] = win[k][p];
      vo[k] = wout[k][p];
    }
    const Complex wp = extrapolate_to_zero(offsets, vi);
    const Complex wm = extrapolate_to_zero(offsets, vo);
    rep.residual_plus =
        std::max(rep.residual_plus, std::abs(wp - (0.5 * mu[i] + wb[i])));
    rep.residual_minus =
        std::max(rep.residual_minus, std::abs(wm - (-0.5 * mu[i] + wb[i])));
  }
  return rep;
}

JumpReport single_layer_grad_jump_residual(const FundamentalSolution& fs,
                                           const BoundaryCurve& curve,
                                           const BoundaryFunction& mu,
                                           const std::vector<double>& offsets,
                                           int target_stride) {
  const int N = curve.N;
  const auto [pv1, pv2] = single_layer_grad(fs, curve, mu, Side::PV);

  std::vector<int> targets;
  for (int i = 0; i < N; i += target_stride) targets.push_back(i);
  const int T = static_cast<int>(targets.size());
  const int K = static_cast<int>(offsets.size());

  std::vector<std::vector<CVec2>> gin(K), gout(K);
  for (int k = 0; k < K; ++k) {
    const double h = offsets[k];
    const int M = fine_node_count(curve, h);
    const BoundaryCurve fine = curve.resampled(M);
    BoundaryFunction mu_f;
    mu_f.v = geom::upsample(mu.v, M);
    std::vector<Vec2> pts;
    for (int i : targets) pts.push_back(curve.x[i] - h * curve.normal[i]);
    for (int i : targets) pts.push_back(curve.x[i] + h * curve.normal[i]);
    const auto vals = single_layer_grad(fs, fine, mu_f, pts);
    gin[k].assign(vals.begin(), vals.begin() + T);
    gout[k].assign(vals.begin() + T, vals.end());
  }

  JumpReport rep;
  for (int p = 0; p < T; ++p) {
    const int i = targets[p];
    const Vec2 a2nu = fs.coeffs.a2.apply(curve.normal[i]);
    const double q2 = dot(curve.normal[i], a2nu);
    for (int l = 0; l < 2; ++l) {
      std::vector<Complex> vin(K), vout(K);
      for (int k = 0; k < K; ++k) {
        vin[k] = gin[k][p][l];
        vout[k] = gout[k][p][l];
      }
      const Complex gp = extrapolate_to_zero(offsets, vin);
      const Complex gm = extrapolate_to_zero(offsets, vout);
      const Complex pvl = l == 0 ? pv1[i] : pv2[i];
      const Complex jump = curve.normal[i][l] * mu[i] / (2.0 * q2);
      rep.residual_plus = std::max(rep.residual_plus, std::abs(gp - (pvl - jump)));
      rep.residual_minus = std::max(rep.residual_minus, std::abs(gm - (pvl + jump)));
    }
  }
  return rep;
}

double double_layer_gradient_identity_residual(const FundamentalSolution& fs,
                                               const BoundaryCurve& curve,
                                               const BoundaryFunction& mu,
                                               const std::vector<Vec2>& probes,
                                               double fd_step) {
  const int N = curve.N;
  const auto& a2 = fs.coeffs.a2;
  const auto& a1 = fs.coeffs.a1;

  // Densities of the right side; M_{rr} = 0 so only M_12 and M_21 appear.
  BoundaryFunction m_r1[3], nu_r_mu[3];
  m_r1[1] = geom::tangential_M(curve, mu, 1, 2);
  m_r1[2] = geom::tangential_M(curve, mu, 2, 1);
  BoundaryFunction nua1_mu(N);
  for (int i = 0; i < N; ++i) {
    nua1_mu[i] = dot(fs.coeffs.a1, curve.normal[i]) * mu[i];
  }
  for (int r = 1; r <= 2; ++r) {
    nu_r_mu[r] = BoundaryFunction(N);
    for (int i = 0; i < N; ++i)
      nu_r_mu[r][i] = curve.normal[i][r - 1] * mu[i];
  }

  double worst = 0.0;
  for (const Vec2& x : probes) {
    for (int r = 1; r <= 2; ++r) {
      // Left side: 4-point central difference of w in direction r.
      std::vector<Vec2> stencil;
      const Vec2 er = r == 1 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
      const double h = fd_step;
      stencil.push_back(x + (-2.0 * h) * er);
      stencil.push_back(x + (-h) * er);
      stencil.push_back(x + h * er);
      stencil.push_back(x + 2.0 * h * er);
      const auto wv = double_layer(fs, curve, mu, stencil);
      const Complex lhs = (wv[0] - 8.0 * wv[1] + 8.0 * wv[2] - wv[3]) / (12.0 * h);

      // Right side of the gradient identity.
      Complex rhs = 0.0;
      for (int j = 1; j <= 2; ++j) {
        // M_{rj}[mu]: zero for r == j; M_21 = -M_12.
        if (r == j) continue;
        const BoundaryFunction& mrj = m_r1[r];
        const auto g = single_layer_grad(fs, curve, mrj, {x})[0];
        for (int l = 1; l <= 2; ++l)
          rhs += a2.m[l - 1][j - 1] * g[l - 1];
      }
      const auto g_nur = single_layer_grad(fs, curve, nu_r_mu[r], {x})[0];
      rhs += g_nur[0] * a1[0] + g_nur[1] * a1[1];
      rhs += fs.coeffs.a0 * single_layer(fs, curve, nu_r_mu[r], {x})[0];
      rhs -= single_layer_grad(fs, curve, nua1_mu, {x})[0][r - 1];

      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

} // namespace layerlab::potentials
