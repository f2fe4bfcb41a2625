#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "layerlab/commutator_ops.hpp"
#include "layerlab/experiments.hpp"

using namespace layerlab;
using namespace layerlab::commutators;

namespace {

fundsol::FundamentalSolution make(const Mat2& a2, const CVec2& a1, Complex a0) {
  return fundsol::build(validate(a2, a1, a0));
}

BoundaryFunction trace(const BoundaryCurve& c,
                       const std::function<Complex(double)>& f) {
  BoundaryFunction out(c.N);
  for (int i = 0; i < c.N; ++i) out[i] = f(c.t[i]);
  return out;
}

} // namespace

TEST_CASE("Q with a constant multiplier vanishes") {
  const auto fs = make(Mat2::identity(), {0.0, 0.0}, 1.0);
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 64);
  const auto g = trace(c, [](double) { return Complex(3.7); });
  const auto mu = trace(c, [](double t) { return Complex(std::cos(t)); });
  for (int r : {1, 2}) {
    const auto q = q_op(fs, c, g, mu, r);
    for (int i = 0; i < 64; ++i) CHECK(std::abs(q[i]) < 1e-13);
  }
}

TEST_CASE("Q is linear in the multiplier and in the density") {
  const auto fs = make(Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0);
  const auto c = geom::preset_curve(geom::CurveKind::Ellipse, 2.0, 1.0, 64);
  const auto g1 = trace(c, [](double t) { return Complex(std::sin(t)); });
  const auto g2 = trace(c, [](double t) { return Complex(std::cos(2.0 * t)); });
  const auto mu = trace(c, [](double t) { return Complex(std::cos(t)); });
  BoundaryFunction gsum(64);
  for (int i = 0; i < 64; ++i) gsum[i] = 2.0 * g1[i] - g2[i];
  const auto qa = q_op(fs, c, gsum, mu, 1);
  const auto q1 = q_op(fs, c, g1, mu, 1);
  const auto q2 = q_op(fs, c, g2, mu, 1);
  for (int i = 0; i < 64; ++i)
    CHECK(std::abs(qa[i] - (2.0 * q1[i] - q2[i])) < 1e-12);
}

TEST_CASE("commutator formula residual is spectrally small") {
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 256);
  BoundaryFunction x1(256);
  for (int i = 0; i < 256; ++i) x1[i] = c.x[i][0];
  const auto mu = trace(c, [](double t) { return Complex(std::cos(t)); });
  struct Case { Mat2 a2; CVec2 a1; Complex a0; double tol; };
  const Case cases[] = {
      {Mat2::identity(), {0.0, 0.0}, 0.0, 1e-6},
      {Mat2::identity(), {2.0, 0.0}, 1.0, 1e-4},
  };
  for (const auto& cs : cases) {
    const auto fs = make(cs.a2, cs.a1, cs.a0);
    CHECK(formula1_residual(fs, c, x1, mu, 1, 2, 1) < cs.tol);
  }
}

TEST_CASE("commutator formula converges with order >= 3") {
  const auto fs = make(Mat2::identity(), {0.0, 0.0}, 0.0);
  double r128 = 0.0, r256 = 0.0;
  for (int N : {128, 256}) {
    const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, N);
    BoundaryFunction x1(N), mu(N);
    for (int i = 0; i < N; ++i) {
      x1[i] = c.x[i][0];
      mu[i] = std::cos(c.t[i]);
    }
    (N == 128 ? r128 : r256) = formula1_residual(fs, c, x1, mu, 1, 2, 1);
  }
  CHECK(r256 < r128);
  CHECK(std::log2(r128 / r256) >= 3.0);
}

TEST_CASE("tangential derivative formula for the double layer") {
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 256);
  const auto mu = trace(c, [](double t) { return Complex(std::cos(t)); });
  struct Case { Mat2 a2; CVec2 a1; Complex a0; double tol; };
  const Case cases[] = {
      {Mat2::identity(), {0.0, 0.0}, 0.0, 1e-6},
      {Mat2::identity(), {0.0, 0.0}, -1.0, 1e-6},
      {Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0, 1e-6},
      {Mat2::identity(), {2.0, 0.0}, 1.0, 1e-4},
  };
  for (const auto& cs : cases) {
    const auto fs = make(cs.a2, cs.a1, cs.a0);
    CHECK(wtg_residual(fs, c, mu, 1, 2) < cs.tol);
  }
}

TEST_CASE("w_star rearrangement identity across operators") {
  const auto c = geom::preset_curve(geom::CurveKind::Ellipse, 2.0, 1.0, 128);
  const auto mu = trace(c, [](double t) { return Complex(std::cos(t)); });
  for (const auto& op : experiments::test_operators()) {
    const auto fs = fundsol::build(op);
    CHECK(w_star_identity_residual(fs, c, mu) < 1e-10);
  }
}

TEST_CASE("R operator: closed form on constants") {
  // With g constant the Q terms collapse: Q[gh] = g Q[h] and Q[h, g mu] =
  // g Q[h, mu], so R[g,h,mu] = a (g v[h mu] - h v[g mu]) with both layers
  // explicit.
  const auto fs = make(Mat2::identity(), {0.0, 0.0}, 2.0);
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 64);
  const auto g = trace(c, [](double) { return Complex(2.0); });
  const auto h = trace(c, [](double t) { return Complex(std::sin(t)); });
  const auto mu = trace(c, [](double t) { return Complex(std::cos(t)); });
  const auto r = r_op(fs, c, g, h, mu);
  BoundaryFunction hmu(64), gmu(64);
  for (int i = 0; i < 64; ++i) {
    hmu[i] = h[i] * mu[i];
    gmu[i] = g[i] * mu[i];
  }
  const auto vhmu = potentials::single_layer(fs, c, hmu);
  const auto vgmu = potentials::single_layer(fs, c, gmu);
  for (int i = 0; i < 64; ++i) {
    const Complex want = 2.0 * (g[i] * vhmu[i] - h[i] * vgmu[i]);
    CHECK(std::abs(r[i] - want) < 1e-10);
  }
}

TEST_CASE("integration by parts for tangential derivatives") {
  // int M_lj[f] g dsigma = -int f M_lj[g] dsigma for smooth periodic traces.
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 128);
  const auto f = trace(c, [](double t) { return Complex(std::cos(2.0 * t)); });
  const auto g = trace(c, [](double t) { return Complex(std::sin(3.0 * t)); });
  for (int l = 1; l <= 2; ++l)
    for (int j = 1; j <= 2; ++j) {
      const auto mf = geom::tangential_M(c, f, l, j);
      const auto mg = geom::tangential_M(c, g, l, j);
      BoundaryFunction p1(128), p2(128);
      for (int i = 0; i < 128; ++i) {
        p1[i] = mf[i] * g[i];
        p2[i] = f[i] * mg[i];
      }
      CHECK(std::abs(geom::quad(c, p1) + geom::quad(c, p2)) < 1e-11);
    }
}
