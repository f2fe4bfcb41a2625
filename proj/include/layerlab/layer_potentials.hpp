#pragma once

// Single layer v, double layer w, the conormal operator w_*, their jump
// relations, and the gradient identity for the double layer.

#include <vector>

#include "layerlab/fundsol.hpp"
#include "layerlab/geometry.hpp"

namespace layerlab::potentials {

using geom::BoundaryCurve;
using geom::BoundaryFunction;
using fundsol::FundamentalSolution;

// v[mu] on the boundary nodes (Kress log quadrature).
BoundaryFunction single_layer(const FundamentalSolution& fs,
                              const BoundaryCurve& curve,
                              const BoundaryFunction& mu);

// v[mu] at off-curve targets (plain trapezoid; throws PointOnCurve for
// targets within 1e-12 of a node).
std::vector<Complex> single_layer(const FundamentalSolution& fs,
                                  const BoundaryCurve& curve,
                                  const BoundaryFunction& mu,
                                  const std::vector<Vec2>& targets);

// grad v[mu] at off-curve targets.
std::vector<CVec2> single_layer_grad(const FundamentalSolution& fs,
                                     const BoundaryCurve& curve,
                                     const BoundaryFunction& mu,
                                     const std::vector<Vec2>& targets);

enum class Side { Plus, Minus, PV };

// Boundary gradient of the single layer: the principal value, or the one
// sided limits pv -+ nu mu / (2 nu^t a2 nu).
std::pair<BoundaryFunction, BoundaryFunction>
single_layer_grad(const FundamentalSolution& fs, const BoundaryCurve& curve,
                  const BoundaryFunction& mu, Side side);

// w[mu] on the boundary nodes.
BoundaryFunction double_layer(const FundamentalSolution& fs,
                              const BoundaryCurve& curve,
                              const BoundaryFunction& mu);

// w[mu] at off-curve targets.
std::vector<Complex> double_layer(const FundamentalSolution& fs,
                                  const BoundaryCurve& curve,
                                  const BoundaryFunction& mu,
                                  const std::vector<Vec2>& targets);

// w_*[mu](x) = int grad S_a(x-y) . a2 nu(x) mu(y) dsigma_y on the boundary.
BoundaryFunction w_star(const FundamentalSolution& fs, const BoundaryCurve& curve,
                        const BoundaryFunction& mu);

struct JumpReport {
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double max() const { return residual_plus > residual_minus ? residual_plus
                                                             : residual_minus; }
};

// Extrapolated verification of w^{+-} = +-mu/2 + w: evaluates w at
// x -+/+ h nu on an upsampled quadrature, extrapolates h -> 0 polynomially,
// and reports the max-node mismatch. target_stride subsamples the nodes.
JumpReport double_layer_jump_residual(const FundamentalSolution& fs,
                                      const BoundaryCurve& curve,
                                      const BoundaryFunction& mu,
                                      const std::vector<double>& offsets,
                                      int target_stride = 8);

// Same scheme for the gradient jump of the single layer against
// pv -+ nu mu / (2 nu^t a2 nu); residual over both components.
JumpReport single_layer_grad_jump_residual(const FundamentalSolution& fs,
                                           const BoundaryCurve& curve,
                                           const BoundaryFunction& mu,
                                           const std::vector<double>& offsets,
                                           int target_stride = 8);

// Residual of the interior gradient identity for the double layer: dw/dx_r at
// interior probes matched against the single-layer assembly of the right side.
double double_layer_gradient_identity_residual(const FundamentalSolution& fs,
                                               const BoundaryCurve& curve,
                                               const BoundaryFunction& mu,
                                               const std::vector<Vec2>& probes,
                                               double fd_step = 1e-3);

} // namespace layerlab::potentials
