#include "layerlab/commutator_ops.hpp"

#include <algorithm>
#include <cmath>

#include "layerlab/detail/kernel_split.hpp"

namespace layerlab::commutators {

using detail::GradKernelTable;
using specfun::pi;

namespace {

BoundaryFunction nu_component(const BoundaryCurve& curve, int l) {
  BoundaryFunction f(curve.N);
  for (int i = 0; i < curve.N; ++i) f[i] = curve.normal[i][l - 1];
  return f;
}

BoundaryFunction mul(const BoundaryFunction& a, const BoundaryFunction& b) {
  BoundaryFunction out(a.size());
  for (int i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

BoundaryFunction sub(const BoundaryFunction& a, const BoundaryFunction& b) {
  BoundaryFunction out(a.size());
  for (int i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void add_to(BoundaryFunction& a, const BoundaryFunction& b, Complex c = 1.0) {
  for (int i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

// Cached per-pair split values so that repeated Q applications against the
// same (fs, curve) cost only the quadrature sums.
struct QCache {
  const BoundaryCurve& curve;
  GradKernelTable table;
  std::vector<double> kress;
  std::vector<double> halfcot; // indexed by i*N+j, zero on the diagonal
  std::vector<detail::GradKernelTable::PairValues> pairs;

  QCache(const FundamentalSolution& fs, const BoundaryCurve& c)
      : curve(c), table(fs, c), kress(geom::kress_weights(c.N)) {
    const int N = c.N;
    halfcot.resize(static_cast<size_t>(N) * N, 0.0);
    pairs.resize(static_cast<size_t>(N) * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        pairs[static_cast<size_t>(i) * N + j] = table.pair(i, j);
        if (i != j)
          halfcot[static_cast<size_t>(i) * N + j] =
              0.5 / std::tan(0.5 * (c.t[i] - c.t[j]));
      }
  }

  BoundaryFunction q_apply(const BoundaryFunction& g, const BoundaryFunction& mu,
                           int r) const {
    const int N = curve.N;
    const int l = r - 1;
    const double h = 2.0 * pi / N;
    const BoundaryFunction gdot = geom::spectral_ddt(g);
    BoundaryFunction out(N);
    for (int i = 0; i < N; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < N; ++j) {
        const auto& pv = pairs[static_cast<size_t>(i) * N + j];
        if (j == i) {
          // Diagonal limit of (g(t)-g(s)) times the strong part.
          acc += h * gdot[i] * table.ctilde(i, l) * mu[i];
          continue;
        }
        const Complex gd = g[i] - g[j];
        const Complex strong =
            table.ctilde(i, l) * halfcot[static_cast<size_t>(i) * N + j] +
            pv.asm_part[l];
        const int d = ((i - j) % N + N) % N;
        acc += h * gd * strong * mu[j] +
               (kress[d] * pv.phig[l] + h * pv.rest[l]) * gd * curve.speed[j] * mu[j];
      }
      out[i] = acc;
    }
    return out;
  }
};

} // namespace

BoundaryFunction q_op(const FundamentalSolution& fs, const BoundaryCurve& curve,
                      const BoundaryFunction& g, const BoundaryFunction& mu, int r) {
  return QCache(fs, curve).q_apply(g, mu, r);
}

BoundaryFunction r_op(const FundamentalSolution& fs, const BoundaryCurve& curve,
                      const BoundaryFunction& g, const BoundaryFunction& h,
                      const BoundaryFunction& mu) {
  const QCache cache(fs, curve);
  BoundaryFunction out(curve.N);
  for (int r = 1; r <= 2; ++r) {
    const Complex ar = fs.coeffs.a1[r - 1];
    if (ar == 0.0) continue;
    add_to(out, cache.q_apply(mul(g, h), mu, r), ar);
    add_to(out, mul(g, cache.q_apply(h, mu, r)), -ar);
    add_to(out, cache.q_apply(h, mul(g, mu), r), -ar);
  }
  if (fs.coeffs.a0 != 0.0) {
    add_to(out, mul(g, potentials::single_layer(fs, curve, mul(h, mu))),
           fs.coeffs.a0);
    add_to(out, mul(h, potentials::single_layer(fs, curve, mul(g, mu))),
           -fs.coeffs.a0);
  }
  return out;
}

double formula1_residual(const FundamentalSolution& fs, const BoundaryCurve& curve,
                         const BoundaryFunction& g, const BoundaryFunction& mu,
                         int l, int j, int r) {
  const int N = curve.N;
  const QCache cache(fs, curve);
  const auto& a2 = fs.coeffs.a2;

  const BoundaryFunction lhs =
      geom::tangential_M(curve, cache.q_apply(g, mu, r), l, j);

  const BoundaryFunction nul = nu_component(curve, l);
  const BoundaryFunction nuj = nu_component(curve, j);
  const BoundaryFunction nur = nu_component(curve, r);

  std::vector<double> q2(N);
  for (int i = 0; i < N; ++i)
    q2[i] = quad_form(curve.normal[i], a2, curve.normal[i]);

  const auto over_q2 = [&](const BoundaryFunction& f) {
    BoundaryFunction out(N);
    for (int i = 0; i < N; ++i) out[i] = f[i] / q2[i];
    return out;
  };

  BoundaryFunction rhs(N);

  // nu_l Q[., D_{a,j} g, mu] - nu_j Q[., D_{a,l} g, mu]
  const auto [dg1, dg2] = geom::projected_grad_Da(curve, g, fs.coeffs);
  const BoundaryFunction& dgl = (l == 1) ? dg1 : dg2;
  const BoundaryFunction& dgj = (j == 1) ? dg1 : dg2;
  add_to(rhs, mul(nul, cache.q_apply(dgj, mu, r)));
  add_to(rhs, mul(nuj, cache.q_apply(dgl, mu, r)), -1.0);

  // nu_l Q[., g, sum_s M_sj[(a2 nu)_s mu / q2]] - (l <-> j)
  const auto weighted_density = [&](int idx) {
    BoundaryFunction dens(N);
    for (int s = 1; s <= 2; ++s) {
      if (s == idx) continue; // M_ss = 0
      BoundaryFunction ws_mu(N);
      for (int i = 0; i < N; ++i) {
        const Vec2 a2nu = a2.apply(curve.normal[i]);
        ws_mu[i] = a2nu[s - 1] / q2[i] * mu[i];
      }
      add_to(dens, geom::tangential_M(curve, ws_mu, s, idx));
    }
    return dens;
  };
  add_to(rhs, mul(nul, cache.q_apply(g, weighted_density(j), r)));
  add_to(rhs, mul(nuj, cache.q_apply(g, weighted_density(l), r)), -1.0);

  // sum_{s,h} a_sh { nu_l (Q[., nu_j, M_hr[g] mu / q2] + Q[., g, M_hr[nu_j mu / q2]])
  //                 - nu_j (same with l) }
  for (int s = 1; s <= 2; ++s)
    for (int hh = 1; hh <= 2; ++hh) {
      const double ash = a2.m[s - 1][hh - 1];
      if (ash == 0.0) continue;
      const BoundaryFunction mhr_g_mu =
          (hh == r) ? BoundaryFunction(N)
                    : mul(geom::tangential_M(curve, g, hh, r), mu);
      const auto part = [&](const BoundaryFunction& nu_idx,
                            const BoundaryFunction& nu_fun) {
        BoundaryFunction acc = cache.q_apply(nu_fun, over_q2(mhr_g_mu), s);
        const BoundaryFunction inner =
            (hh == r) ? BoundaryFunction(N)
                      : geom::tangential_M(curve, over_q2(mul(nu_fun, mu)), hh, r);
        add_to(acc, cache.q_apply(g, inner, s));
        return mul(nu_idx, acc);
      };
      add_to(rhs, part(nul, nuj), ash);
      add_to(rhs, part(nuj, nul), -ash);
    }

  // - sum_s a_s { nu_l Q[., g, nu_j nu_r mu / q2] - nu_j Q[., g, nu_l nu_r mu / q2] }
  const BoundaryFunction dj = over_q2(mul(mul(nuj, nur), mu));
  const BoundaryFunction dl = over_q2(mul(mul(nul, nur), mu));
  for (int s = 1; s <= 2; ++s) {
    const Complex as = fs.coeffs.a1[s - 1];
    if (as == 0.0) continue;
    add_to(rhs, mul(nul, cache.q_apply(g, dj, s)), -as);
    add_to(rhs, mul(nuj, cache.q_apply(g, dl, s)), as);
  }

  // - a { g (nu_l v[dj] - nu_j v[dl]) - (nu_l v[g dj] - nu_j v[g dl]) }
  if (fs.coeffs.a0 != 0.0) {
    const Complex a0 = fs.coeffs.a0;
    BoundaryFunction term(N);
    add_to(term, mul(g, mul(nul, potentials::single_layer(fs, curve, dj))));
    add_to(term, mul(g, mul(nuj, potentials::single_layer(fs, curve, dl))), -1.0);
    add_to(term, mul(nul, potentials::single_layer(fs, curve, mul(g, dj))), -1.0);
    add_to(term, mul(nuj, potentials::single_layer(fs, curve, mul(g, dl))));
    add_to(rhs, term, -a0);
  }

  double worst = 0.0;
  for (int i = 0; i < N; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  return worst;
}

BoundaryFunction wtg_rhs(const FundamentalSolution& fs, const BoundaryCurve& curve,
                         const BoundaryFunction& mu, int l, int j) {
  const int N = curve.N;
  const QCache cache(fs, curve);
  const auto& a2 = fs.coeffs.a2;

  const BoundaryFunction nul = nu_component(curve, l);
  const BoundaryFunction nuj = nu_component(curve, j);
  BoundaryFunction nua1(N);
  for (int i = 0; i < N; ++i) nua1[i] = dot(fs.coeffs.a1, curve.normal[i]);

  const BoundaryFunction mlj =
      (l == j) ? BoundaryFunction(N) : geom::tangential_M(curve, mu, l, j);

  BoundaryFunction rhs = potentials::double_layer(fs, curve, mlj);

  // sum_{b,r} a_br { Q[d_b, nu_l, M_jr[mu]] - Q[d_b, nu_j, M_lr[mu]] }
  for (int b = 1; b <= 2; ++b)
    for (int r = 1; r <= 2; ++r) {
      const double abr = a2.m[b - 1][r - 1];
      if (abr == 0.0) continue;
      if (j != r)
        add_to(rhs, cache.q_apply(nul, geom::tangential_M(curve, mu, j, r), b), abr);
      if (l != r)
        add_to(rhs, cache.q_apply(nuj, geom::tangential_M(curve, mu, l, r), b), -abr);
    }

  // nu_l Q[d_j, nu.a1, mu] - nu_j Q[d_l, nu.a1, mu]
  add_to(rhs, mul(nul, cache.q_apply(nua1, mu, j)));
  add_to(rhs, mul(nuj, cache.q_apply(nua1, mu, l)), -1.0);

  // (nu.a1) { Q[d_l, nu_j, mu] - Q[d_j, nu_l, mu] }
  add_to(rhs, mul(nua1, cache.q_apply(nuj, mu, l)));
  add_to(rhs, mul(nua1, cache.q_apply(nul, mu, j)), -1.0);

  // -(nu.a1) v[M_lj[mu]] + v[(nu.a1) M_lj[mu]]
  add_to(rhs, mul(nua1, potentials::single_layer(fs, curve, mlj)), -1.0);
  add_to(rhs, potentials::single_layer(fs, curve, mul(nua1, mlj)));

  // R[nu_l, nu_j, mu]
  add_to(rhs, r_op(fs, curve, nul, nuj, mu));

  return rhs;
}

double wtg_residual(const FundamentalSolution& fs, const BoundaryCurve& curve,
                    const BoundaryFunction& mu, int l, int j) {
  const BoundaryFunction lhs =
      geom::tangential_M(curve, potentials::double_layer(fs, curve, mu), l, j);
  const BoundaryFunction rhs = wtg_rhs(fs, curve, mu, l, j);
  double worst = 0.0;
  for (int i = 0; i < curve.N; ++i)
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  return worst;
}

double w_star_identity_residual(const FundamentalSolution& fs,
                                const BoundaryCurve& curve,
                                const BoundaryFunction& mu) {
  const int N = curve.N;
  const QCache cache(fs, curve);
  const BoundaryFunction ws = potentials::w_star(fs, curve, mu);

  BoundaryFunction rhs(N);
  for (int b = 1; b <= 2; ++b)
    for (int r = 1; r <= 2; ++r) {
      const double abr = fs.coeffs.a2.m[b - 1][r - 1];
      if (abr == 0.0) continue;
      add_to(rhs, cache.q_apply(nu_component(curve, r), mu, b), abr);
    }
  add_to(rhs, potentials::double_layer(fs, curve, mu), -1.0);
  BoundaryFunction a1nu_mu(N);
  for (int i = 0; i < N; ++i)
    a1nu_mu[i] = dot(fs.coeffs.a1, curve.normal[i]) * mu[i];
  add_to(rhs, potentials::single_layer(fs, curve, a1nu_mu), -1.0);

  double worst = 0.0;
  for (int i = 0; i < N; ++i) worst = std::max(worst, std::abs(ws[i] - rhs[i]));
  return worst;
}

} // namespace layerlab::commutators
