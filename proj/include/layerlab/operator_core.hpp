#pragma once

// The constant-coefficient operator P[a,D] = sum a_lj d_l d_j + sum a_l d_l + a,
// its ellipticity validation, and the reduction to principal factor + drift +
// zero-order constant used to build the fundamental solution.

#include <functional>

#include "layerlab/linalg.hpp"

namespace layerlab {

struct OperatorCoefficients {
  Mat2 a2;   // principal part, real symmetric positive definite
  CVec2 a1;  // first-order coefficients
  Complex a0;// zero-order coefficient
};

struct ReducedForm {
  Mat2 T;            // lower-triangular Cholesky factor, a2 = T T^t
  Mat2 Tinv;         // T^{-1}
  Mat2 B;            // (a2)^{-1}
  double det_factor; // 1 / sqrt(det a2)
  CVec2 mu;          // drift exponent, -(1/2) B a1
  Complex kappa;     // reduced zero-order constant, a0 - (1/4) a1^t B a1
};

// Checks exact symmetry and positive definiteness (Cholesky pivots above
// 1e-12 times the largest diagonal entry). Throws NotSymmetric / NotElliptic.
OperatorCoefficients validate(const Mat2& a2, const CVec2& a1, Complex a0);

ReducedForm reduce(const OperatorCoefficients& coeffs);

// Second-order central-difference evaluation of P[a,D] applied to a scalar
// field; truncation error O(h^2). Used as the oracle for P-harmonicity.
Complex apply_pde(const OperatorCoefficients& coeffs,
                  const std::function<Complex(const Vec2&)>& field,
                  const Vec2& x, double h);

} // namespace layerlab
