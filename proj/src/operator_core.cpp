#include "layerlab/operator_core.hpp"

#include <algorithm>
#include <cmath>

#include "layerlab/errors.hpp"

namespace layerlab {

OperatorCoefficients validate(const Mat2& a2, const CVec2& a1, Complex a0) {
  if (a2.m[0][1] != a2.m[1][0])
    throw NotSymmetric("principal coefficient matrix is not symmetric");
  // Lower-triangular Cholesky by hand; pivot tolerance relative to the
  // largest diagonal entry.
  const double scale = std::max(a2.m[0][0], a2.m[1][1]);
  const double tol = 1e-12 * scale;
  if (!(a2.m[0][0] > tol))
    throw NotElliptic("principal coefficient matrix is not positive definite");
  const double l00 = std::sqrt(a2.m[0][0]);
  const double l10 = a2.m[1][0] / l00;
  const double p1 = a2.m[1][1] - l10 * l10;
  if (!(p1 > tol))
    throw NotElliptic("principal coefficient matrix is not positive definite");
  return OperatorCoefficients{a2, a1, a0};
}

ReducedForm reduce(const OperatorCoefficients& coeffs) {
  const Mat2& a2 = coeffs.a2;
  const double l00 = std::sqrt(a2.m[0][0]);
  const double l10 = a2.m[1][0] / l00;
  const double l11 = std::sqrt(a2.m[1][1] - l10 * l10);

  ReducedForm rf;
  rf.T = Mat2::of(l00, 0.0, l10, l11);
  rf.Tinv = Mat2::of(1.0 / l00, 0.0, -l10 / (l00 * l11), 1.0 / l11);
  rf.B = a2.inverse();
  rf.det_factor = 1.0 / (l00 * l11);
  const CVec2 Ba1 = rf.B.apply(coeffs.a1);
  rf.mu = {-0.5 * Ba1[0], -0.5 * Ba1[1]};
  rf.kappa = coeffs.a0 - 0.25 * (coeffs.a1[0] * Ba1[0] + coeffs.a1[1] * Ba1[1]);
  return rf;
}

Complex apply_pde(const OperatorCoefficients& coeffs,
                  const std::function<Complex(const Vec2&)>& field,
                  const Vec2& x, double h) {
  const auto f = [&](double dx, double dy) {
    return field(Vec2{x[0] + dx, x[1] + dy});
  };
  const Complex f00 = f(0, 0);
  const Complex fpx = f(h, 0), fmx = f(-h, 0);
  const Complex fpy = f(0, h), fmy = f(0, -h);

  const Complex dxx = (fpx - 2.0 * f00 + fmx) / (h * h);
  const Complex dyy = (fpy - 2.0 * f00 + fmy) / (h * h);
  const Complex dxy =
      (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  const Complex dx = (fpx - fmx) / (2.0 * h);
  const Complex dy = (fpy - fmy) / (2.0 * h);

  return coeffs.a2.m[0][0] * dxx + coeffs.a2.m[1][1] * dyy +
         (coeffs.a2.m[0][1] + coeffs.a2.m[1][0]) * dxy + coeffs.a1[0] * dx +
         coeffs.a1[1] * dy + coeffs.a0 * f00;
}

} // namespace layerlab
