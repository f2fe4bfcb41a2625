#pragma once

// Fundamental solution S_a(x) = detFactor * e^{mu.x} * w_kappa(|T^{-1}x|),
// its gradient, and the log decomposition along a boundary curve that feeds
// the Kress quadrature.

#include <utility>

#include "layerlab/geometry.hpp"
#include "layerlab/linalg.hpp"
#include "layerlab/operator_core.hpp"
#include "layerlab/specfun.hpp"

namespace layerlab::fundsol {

struct FundamentalSolution {
  OperatorCoefficients coeffs;
  ReducedForm reduced;
  specfun::RadialProfileKind profile;
  double kappa = 0.0; // real part of reduced.kappa (imaginary part rejected)
};

// Throws UnsupportedKappa when the reduced zero-order constant is not real.
FundamentalSolution build(const OperatorCoefficients& coeffs);

Complex eval(const FundamentalSolution& fs, const Vec2& x);

CVec2 grad(const FundamentalSolution& fs, const Vec2& x);

// S_a(psi(t) - psi(s)) = phi1 * ln(4 sin^2((t-s)/2)) + phi2 with phi1, phi2
// smooth and biperiodic; diagonal values from the analytic small-argument
// expansion of the profile.
std::pair<Complex, Complex> log_split(const FundamentalSolution& fs,
                                      const geom::BoundaryCurve& curve,
                                      double t, double s);

} // namespace layerlab::fundsol
