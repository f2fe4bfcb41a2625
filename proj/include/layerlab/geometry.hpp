#pragma once

// Closed analytic planar curves sampled at uniform parameters, spectral
// tangential calculus, trapezoid / Kress log quadrature, and estimators of
// the boundary geometric constants.

#include <functional>
#include <vector>

#include "layerlab/linalg.hpp"
#include "layerlab/operator_core.hpp"

namespace layerlab::geom {

enum class CurveKind { Circle, Ellipse, Kite };

struct BoundaryCurve {
  CurveKind kind;
  double p0 = 1.0, p1 = 1.0; // radius resp. semi-axes; unused for the kite
  int N = 0;
  std::vector<double> t;        // 2 pi i / N
  std::vector<Vec2> x, dx, ddx; // psi, psi', psi''
  std::vector<double> speed;    // |psi'|
  std::vector<Vec2> tangent;    // psi' / |psi'|
  std::vector<Vec2> normal;     // outward unit normal (psi'_2, -psi'_1)/|psi'|
  std::vector<double> weight;   // 2 pi / N * |psi'|

  Vec2 psi(double tt) const;
  Vec2 dpsi(double tt) const;
  Vec2 ddpsi(double tt) const;

  BoundaryCurve resampled(int M) const;
};

// kind-specific parameters: circle(p0 = rho), ellipse(p0, p1), kite (none).
BoundaryCurve preset_curve(CurveKind kind, double p0, double p1, int N);

struct BoundaryFunction {
  std::vector<Complex> v;

  BoundaryFunction() = default;
  explicit BoundaryFunction(int n) : v(n) {}
  int size() const { return static_cast<int>(v.size()); }
  Complex& operator[](int i) { return v[i]; }
  const Complex& operator[](int i) const { return v[i]; }
};

// Discrete Fourier coefficients c[m + N/2] for m = -N/2 .. N/2-1 and the
// matching evaluation at arbitrary parameter.
std::vector<Complex> fourier_coeffs(const std::vector<Complex>& values);
Complex trig_eval(const std::vector<Complex>& coeffs, double t);

// Trigonometric interpolation of nodal data onto M uniform nodes.
std::vector<Complex> upsample(const std::vector<Complex>& values, int M);

// Parameter derivative d/dt with spectral accuracy (Nyquist mode dropped).
BoundaryFunction spectral_ddt(const BoundaryFunction& f);

// Arc-length derivative df/ds.
BoundaryFunction spectral_dds(const BoundaryCurve& curve, const BoundaryFunction& f);

// Tangential derivative M_lr[f] = (nu_l tau_r - nu_r tau_l) df/ds; indices
// are 1-based as in the defining formula.
BoundaryFunction tangential_M(const BoundaryCurve& curve, const BoundaryFunction& f,
                              int l, int r);

// Projected gradient D_a f, components D_{a,r} f = sum_l M_lr[f] (a2 nu)_l / (nu^t a2 nu).
std::pair<BoundaryFunction, BoundaryFunction>
projected_grad_Da(const BoundaryCurve& curve, const BoundaryFunction& f,
                  const OperatorCoefficients& coeffs);

// Periodic trapezoid rule for int f dsigma.
Complex quad(const BoundaryCurve& curve, const BoundaryFunction& f);

// Kress weights R_{|i-j|} for the factor ln(4 sin^2((t-s)/2)); exact for
// trigonometric polynomials of degree <= N/2.
std::vector<double> kress_weights(int N);

// Quadrature at target node i of
//   int [phi1(i,j) ln(4 sin^2((t_i-s)/2)) + phi2(i,j)] |psi'(s)| ds
// with samplers given on node pairs.
Complex quad_log(const BoundaryCurve& curve,
                 const std::function<Complex(int, int)>& phi1,
                 const std::function<Complex(int, int)>& phi2, int i);

// pv int_0^{2pi} cot((t_i - s)/2) f(s) ds at every node, via the spectral
// multiplier -i sign(m) on Fourier modes.
BoundaryFunction hilbert_cot(const BoundaryFunction& f);

struct BoundaryConstants {
  double c_com; // |nu(y).(x-y)| <= c |x-y|^{1+alpha}
  double c1;    // sup_x int |x-y|^{-gamma},           gamma < 1
  double c2;    // near-ball integral bound,           gamma < 1
  double c3;    // far-field integral bound,           exponent 1 + gamma
  double c4;    // log-weighted far-field bound at exponent 1
  long long samples_used;
};

// Sampled (lower-bound) estimates of the classical boundary inequalities;
// gamma in [0,1) feeds c1/c2 directly and c3 as 1+gamma.
BoundaryConstants boundary_constants(const BoundaryCurve& curve, double alpha,
                                     double gamma, long long sample_budget);

} // namespace layerlab::geom
