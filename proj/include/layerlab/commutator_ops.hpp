#pragma once

// The auxiliary operator Q[dS_a/dx_r, g, mu], the trilinear operator R, the
// commutator formula for M_lj[Q[...]], and the tangential-derivative formula
// for the double layer, with residual checks.

#include "layerlab/layer_potentials.hpp"

namespace layerlab::commutators {

using geom::BoundaryCurve;
using geom::BoundaryFunction;
using fundsol::FundamentalSolution;

// Q(x) = int (g(x) - g(y)) dS_a/dx_r (x - y) mu(y) dsigma_y on the boundary;
// r is 1-based. The diagonal of the strong part has the analytic limit
// dg/dt * ctilde_r.
BoundaryFunction q_op(const FundamentalSolution& fs, const BoundaryCurve& curve,
                      const BoundaryFunction& g, const BoundaryFunction& mu, int r);

// R[g,h,mu] = sum_r a_r {Q[dS/dx_r, gh, mu] - g Q[dS/dx_r, h, mu]
//                        - Q[dS/dx_r, h, g mu]} + a {g v[h mu] - h v[g mu]}.
BoundaryFunction r_op(const FundamentalSolution& fs, const BoundaryCurve& curve,
                      const BoundaryFunction& g, const BoundaryFunction& h,
                      const BoundaryFunction& mu);

// Max-node |LHS - RHS| of the tangential-derivative commutator formula for
// M_lj[Q[dS/dx_r, g, mu]]; the left side is taken spectrally.
double formula1_residual(const FundamentalSolution& fs, const BoundaryCurve& curve,
                         const BoundaryFunction& g, const BoundaryFunction& mu,
                         int l, int j, int r);

// Right side of the tangential-derivative formula for M_lj[w[mu]].
BoundaryFunction wtg_rhs(const FundamentalSolution& fs, const BoundaryCurve& curve,
                         const BoundaryFunction& mu, int l, int j);

// Max-node residual of M_lj[w[mu]] (spectral) against wtg_rhs.
double wtg_residual(const FundamentalSolution& fs, const BoundaryCurve& curve,
                    const BoundaryFunction& mu, int l, int j);

// Max-node residual of the rearrangement
// w_* = sum_{b,r} a_br Q[dS/dx_b, nu_r, mu] - w[mu] - v[(a1 . nu) mu].
double w_star_identity_residual(const FundamentalSolution& fs,
                                const BoundaryCurve& curve,
                                const BoundaryFunction& mu);

} // namespace layerlab::commutators
