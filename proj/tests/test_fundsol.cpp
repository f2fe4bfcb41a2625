#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "layerlab/errors.hpp"
#include "layerlab/fundsol.hpp"

using namespace layerlab;
using namespace layerlab::fundsol;

namespace {
const double pi = 3.14159265358979323846;

FundamentalSolution make(const Mat2& a2, const CVec2& a1, Complex a0) {
  return build(validate(a2, a1, a0));
}
} // namespace

TEST_CASE("Laplace kernel is (1/2pi) ln |x|") {
  const auto fs = make(Mat2::identity(), {0.0, 0.0}, 0.0);
  for (const Vec2 x : {Vec2{1.0, 0.0}, Vec2{0.3, -0.4}, Vec2{-2.0, 1.5}}) {
    CHECK(std::abs(eval(fs, x) - std::log(norm(x)) / (2.0 * pi)) < 1e-14);
  }
  const auto g = grad(fs, {0.6, -0.8});
  CHECK(std::abs(g[0] - 0.6 / (2.0 * pi)) < 1e-13);
  CHECK(std::abs(g[1] + 0.8 / (2.0 * pi)) < 1e-13);
}

TEST_CASE("drift operator (I,(2,0),1) gives e^{-x1} (1/2pi) ln |x|") {
  const auto fs = make(Mat2::identity(), {2.0, 0.0}, 1.0);
  CHECK(fs.kappa == 0.0);
  for (const Vec2 x : {Vec2{0.5, 0.2}, Vec2{-1.0, 0.7}}) {
    const Complex want = std::exp(-x[0]) * std::log(norm(x)) / (2.0 * pi);
    CHECK(std::abs(eval(fs, x) - want) < 1e-13);
  }
}

TEST_CASE("anisotropic principal part matches the reduced Laplace pullback") {
  // S(x) = (1/(2 pi sqrt(det a2))) ln |T^{-1} x| for a pure principal part.
  const auto fs = make(Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0);
  const Vec2 x{1.2, -0.8};
  const double rho = std::hypot(x[0] / 2.0, x[1]);
  CHECK(std::abs(eval(fs, x) - std::log(rho) / (4.0 * pi)) < 1e-14);
}

TEST_CASE("kernels are P-harmonic off the pole (finite difference oracle)") {
  struct Case { Mat2 a2; CVec2 a1; Complex a0; };
  const Case cases[] = {
      {Mat2::identity(), {0.0, 0.0}, 0.0},
      {Mat2::identity(), {0.0, 0.0}, 1.0},
      {Mat2::identity(), {0.0, 0.0}, -1.0},
      {Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0},
      {Mat2::identity(), {2.0, 0.0}, 1.0},
  };
  for (const auto& c : cases) {
    const auto op = validate(c.a2, c.a1, c.a0);
    const auto fs = build(op);
    const auto field = [&fs](const Vec2& x) { return eval(fs, x); };
    for (const Vec2 x : {Vec2{0.9, 0.4}, Vec2{-0.7, 1.1}, Vec2{2.0, -0.3}}) {
      CHECK(std::abs(apply_pde(op, field, x, 1e-3)) < 1e-5);
    }
  }
}

TEST_CASE("gradient matches finite differences") {
  const auto fs = make(Mat2::of(2.0, 0.5, 0.5, 1.0), {1.0, -1.0}, -2.0);
  const double h = 1e-6;
  for (const Vec2 x : {Vec2{0.8, 0.3}, Vec2{-0.5, -1.2}}) {
    const auto g = grad(fs, x);
    const Complex d0 =
        (eval(fs, {x[0] + h, x[1]}) - eval(fs, {x[0] - h, x[1]})) / (2.0 * h);
    const Complex d1 =
        (eval(fs, {x[0], x[1] + h}) - eval(fs, {x[0], x[1] - h})) / (2.0 * h);
    CHECK(std::abs(g[0] - d0) < 1e-8);
    CHECK(std::abs(g[1] - d1) < 1e-8);
  }
}

TEST_CASE("complex reduced kappa is rejected") {
  // a0 = i keeps a1 = 0, so kappa = i.
  CHECK_THROWS_AS(make(Mat2::identity(), {0.0, 0.0}, Complex(0.0, 1.0)),
                  UnsupportedKappa);
  // Complex drift can also push kappa off the real axis.
  CHECK_THROWS_AS(make(Mat2::identity(), {Complex(1.0, 1.0), 0.0}, 0.0),
                  UnsupportedKappa);
}

TEST_CASE("log split recombines to the kernel along the curve") {
  const auto curve = geom::preset_curve(geom::CurveKind::Kite, 1.0, 1.0, 64);
  struct Case { Mat2 a2; CVec2 a1; Complex a0; };
  const Case cases[] = {
      {Mat2::identity(), {0.0, 0.0}, 0.0},
      {Mat2::identity(), {0.0, 0.0}, 2.0},
      {Mat2::diag(4.0, 1.0), {0.0, 0.0}, 0.0},
      {Mat2::identity(), {2.0, 0.0}, 1.0},
  };
  for (const auto& c : cases) {
    const auto fs = make(c.a2, c.a1, c.a0);
    for (int i : {0, 11, 40}) {
      for (int j : {3, 25, 57}) {
        const double t = curve.t[i], s = curve.t[j];
        const auto [p1, p2] = log_split(fs, curve, t, s);
        const double m = 4.0 * std::pow(std::sin(0.5 * (t - s)), 2);
        const Complex want = eval(fs, curve.x[i] - curve.x[j]);
        CHECK(std::abs(p1 * std::log(m) + p2 - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("log split diagonal is the analytic limit") {
  const auto curve = geom::preset_curve(geom::CurveKind::Ellipse, 2.0, 1.0, 64);
  const auto fs = make(Mat2::identity(), {0.0, 0.0}, 1.0);
  for (int i : {0, 7, 33}) {
    const double t = curve.t[i];
    const auto [d1, d2] = log_split(fs, curve, t, t);
    // Symmetric average of off-diagonal values cancels the O(eps) term.
    const double eps = 1e-4;
    const auto [p1v, p2v] = log_split(fs, curve, t, t + eps);
    const auto [m1v, m2v] = log_split(fs, curve, t, t - eps);
    CHECK(std::abs(d1 - 0.5 * (p1v + m1v)) < 1e-7);
    CHECK(std::abs(d2 - 0.5 * (p2v + m2v)) < 1e-7);
  }
}
