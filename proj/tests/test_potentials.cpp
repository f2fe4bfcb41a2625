#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "layerlab/errors.hpp"
#include "layerlab/layer_potentials.hpp"

using namespace layerlab;
using namespace layerlab::potentials;

namespace {
const double pi = 3.14159265358979323846;

fundsol::FundamentalSolution laplace() {
  return fundsol::build(validate(Mat2::identity(), {0.0, 0.0}, 0.0));
}

geom::BoundaryFunction constant(int N, Complex c = 1.0) {
  geom::BoundaryFunction f(N);
  for (int i = 0; i < N; ++i) f[i] = c;
  return f;
}
} // namespace

TEST_CASE("closed-form single layer on circles: v[1] = rho ln rho") {
  const auto fs = laplace();
  for (double rho : {1.0, 2.0}) {
    const auto c = geom::preset_curve(geom::CurveKind::Circle, rho, 1.0, 64);
    const auto v = single_layer(fs, c, constant(64));
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(v[i] - rho * std::log(rho)) < 1e-12);
  }
}

TEST_CASE("harmonic single layer moments on the unit circle") {
  // v[cos m t] = -cos(m t)/(2 m) on the unit circle.
  const auto fs = laplace();
  const auto c = geom::preset_curve(geom::CurveKind::Circle, 1.0, 1.0, 64);
  for (int m : {1, 2, 5}) {
    geom::BoundaryFunction mu(64);
    for (int i = 0; i < 64; ++i) mu[i] = std::cos(m * c.t[i]);
    const auto v = single_layer(fs, c, mu);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(v[i] + std::cos(m * c.t[i]) / (2.0 * m)) < 1e-12);
  }
}

TEST_CASE("Gauss identity: Laplace double layer of 1") {
  const auto fs = laplace();
  struct Preset { geom::CurveKind k; double p0, p1; Vec2 in, out; };
  const Preset presets[] = {
      {geom::CurveKind::Circle, 1.0, 1.0, {0.1, 0.2}, {2.5, 0.0}},
      {geom::CurveKind::Ellipse, 2.0, 1.0, {0.3, -0.2}, {3.5, 1.0}},
      {geom::CurveKind::Kite, 1.0, 1.0, {-0.5, 0.1}, {2.0, 2.0}},
  };
  for (const auto& p : presets) {
    const auto c = geom::preset_curve(p.k, p.p0, p.p1, 128);
    const auto mu = constant(128);
    const auto w_in = double_layer(fs, c, mu, {p.in});
    const auto w_out = double_layer(fs, c, mu, {p.out});
    CHECK(std::abs(w_in[0] - 1.0) < 1e-10);
    CHECK(std::abs(w_out[0]) < 1e-10);
    // Boundary trace of the pv operator is -1/2 + Gauss: w[1] = -1/2 on
    // the boundary nodes plus the jump accounts for the interior value 1.
    const auto wb = double_layer(fs, c, mu);
    for (int i = 0; i < 128; ++i) CHECK(std::abs(wb[i] - 0.5) < 1e-10);
  }
}

TEST_CASE("interior consistency: potentials solve the PDE off the boundary") {
  const auto op = validate(Mat2::identity(), {0.0, 0.0}, -1.0);
  const auto fs = fundsol::build(op);
  const auto c = geom::preset_curve(geom::CurveKind::Ellipse, 2.0, 1.0, 128);
  geom::BoundaryFunction mu(128);
  for (int i = 0; i < 128; ++i) mu[i] = std::cos(c.t[i]);
  const std::vector<Vec2> probes{{0.2, 0.1}, {-0.6, 0.25}};
  const auto fieldv = [&](const Vec2& x) {
    return single_layer(fs, c, mu, {x})[0];
  };
  const auto fieldw = [&](const Vec2& x) {
    return double_layer(fs, c, mu, {x})[0];
  };
  for (const auto& p : probes) {
    CHECK(std::abs(apply_pde(op, fieldv, p, 1e-3)) < 1e-6);
    CHECK(std::abs(apply_pde(op, fieldw, p, 1e-3)) < 1e-6);
  }
}

TEST_CASE("single layer is continuous across the boundary") {
  const auto fs = laplace();
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 256);
  geom::BoundaryFunction mu(256);
  for (int i = 0; i < 256; ++i) mu[i] = std::sin(c.t[i]);
  const auto vb = single_layer(fs, c, mu);
  // Off-curve values come from the plain trapezoid, which needs a fine grid
  // at small clearance; one-sided values approach the boundary trace linearly
  // in the offset (the gradient jumps, the value does not).
  const auto fine = c.resampled(8192);
  const auto mu_f = geom::upsample(mu.v, 8192);
  geom::BoundaryFunction muf(8192);
  for (int k = 0; k < 8192; ++k) muf[k] = mu_f[k];
  for (int i : {0, 64, 160}) {
    const double d = 2e-2;
    const Vec2 in = c.x[i] - d * c.normal[i];
    const Vec2 out = c.x[i] + d * c.normal[i];
    const auto v = single_layer(fs, fine, muf, {in, out});
    CHECK(std::abs(v[0] - vb[i]) < 5e-2);
    CHECK(std::abs(v[1] - vb[i]) < 5e-2);
    // The symmetric average cancels the (continuous but kinked) linear term;
    // what remains is d^2 times the one-sided second derivatives, which are
    // O(10) near the kite tips.
    CHECK(std::abs(0.5 * (v[0] + v[1]) - vb[i]) < 2e-2);
  }
}

TEST_CASE("targets on the curve are rejected") {
  const auto fs = laplace();
  const auto c = geom::preset_curve(geom::CurveKind::Circle, 1.0, 1.0, 64);
  CHECK_THROWS_AS(single_layer(fs, c, constant(64), {c.x[5]}), PointOnCurve);
  CHECK_THROWS_AS(double_layer(fs, c, constant(64), {c.x[0]}), PointOnCurve);
}

TEST_CASE("double layer jump relation on the kite (one operator, extrapolated)") {
  const auto fs = fundsol::build(validate(Mat2::identity(), {0.0, 0.0}, 0.0));
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 128);
  geom::BoundaryFunction mu(128);
  for (int i = 0; i < 128; ++i) mu[i] = std::cos(c.t[i]);
  const std::vector<double> offsets{0.012, 0.009, 0.007, 0.005, 0.0035, 0.0025};
  const auto rep = double_layer_jump_residual(fs, c, mu, offsets, 16);
  CHECK(rep.max() < 1e-6);
}

TEST_CASE("gradient jump of the single layer (anisotropic operator)") {
  const auto fs = fundsol::build(validate(Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0));
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 128);
  geom::BoundaryFunction mu(128);
  for (int i = 0; i < 128; ++i) mu[i] = std::cos(c.t[i]);
  const std::vector<double> offsets{0.012, 0.009, 0.007, 0.005, 0.0035, 0.0025};
  const auto rep = single_layer_grad_jump_residual(fs, c, mu, offsets, 16);
  CHECK(rep.max() < 1e-6);
}

TEST_CASE("one-sided boundary gradients differ by the density jump") {
  const auto op = validate(Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0);
  const auto fs = fundsol::build(op);
  const auto c = geom::preset_curve(geom::CurveKind::Ellipse, 2.0, 1.0, 128);
  geom::BoundaryFunction mu(128);
  for (int i = 0; i < 128; ++i) mu[i] = std::cos(2.0 * c.t[i]);
  const auto [p1, p2] = single_layer_grad(fs, c, mu, Side::Plus);
  const auto [m1, m2] = single_layer_grad(fs, c, mu, Side::Minus);
  const auto [v1, v2] = single_layer_grad(fs, c, mu, Side::PV);
  for (int i = 0; i < 128; ++i) {
    const double q = quad_form(c.normal[i], op.a2, c.normal[i]);
    const Complex j1 = c.normal[i][0] * mu[i] / q;
    const Complex j2 = c.normal[i][1] * mu[i] / q;
    CHECK(std::abs((p1[i] - m1[i]) + j1) < 1e-12);
    CHECK(std::abs((p2[i] - m2[i]) + j2) < 1e-12);
    CHECK(std::abs(0.5 * (p1[i] + m1[i]) - v1[i]) < 1e-12);
    CHECK(std::abs(0.5 * (p2[i] + m2[i]) - v2[i]) < 1e-12);
  }
}

TEST_CASE("w_star of the constant density on the unit circle is 1/2") {
  const auto fs = laplace();
  const auto c = geom::preset_curve(geom::CurveKind::Circle, 1.0, 1.0, 128);
  const auto ws = w_star(fs, c, constant(128));
  for (int i = 0; i < 128; ++i) CHECK(std::abs(ws[i] - 0.5) < 1e-10);
}

TEST_CASE("gradient identity for the double layer at interior probes") {
  const auto fs = laplace();
  const auto c = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 256);
  geom::BoundaryFunction mu(256);
  for (int i = 0; i < 256; ++i) mu[i] = std::cos(c.t[i]);
  const std::vector<Vec2> probes{{-0.6, 0.1}, {-0.3, -0.3}, {0.0, 0.4}};
  CHECK(double_layer_gradient_identity_residual(fs, c, mu, probes) < 1e-5);
}
