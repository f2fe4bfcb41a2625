#pragma once

// Empirical K_{gamma1,gamma2,gamma3} kernel-class norms, the generic boundary
// integral operator, the difference-product construction H[Z,g], and the
// modulus-transfer case analysis.

#include <functional>
#include <variant>

#include "layerlab/geometry.hpp"
#include "layerlab/schauder.hpp"

namespace layerlab::kernels {

// A kernel sampled on node pairs of a fixed curve; K(i,j) ~ K(x_i, x_j),
// defined off the diagonal.
using KernelSampler = std::function<Complex(int, int)>;

struct KernelClassParams {
  double gamma1, gamma2, gamma3;
};

struct KernelNormEstimate {
  double sup1; // sup |x-y|^{gamma1} |K(x,y)|
  double sup2; // sup over admissible triples of the increment quotient
  long long samples_used;
};

// Sampled suprema over node pairs (sup1) and admissible triples (sup2; a
// triple (x', x'', y) is admissible when |x'-y| >= 2|x'-x''|). Pairs are
// always enumerated fully; triples are enumerated when N^3 <= budget and
// otherwise drawn from a deterministic nested subsequence.
KernelNormEstimate kernel_norm_estimate(const KernelSampler& K,
                                        const geom::BoundaryCurve& curve,
                                        const KernelClassParams& params,
                                        long long sample_budget);

struct DiagonalRule {
  enum class Kind { Exclude, LogSplit } kind = Kind::Exclude;
  // For LogSplit the kernel is phi1 ln(4 sin^2((t-s)/2)) + phi2 on pairs.
  KernelSampler phi1, phi2;
};

// u[K, mu](x_i) = int K(x_i, y) mu(y) dsigma_y on the boundary.
geom::BoundaryFunction apply_kernel(const KernelSampler& K,
                                    const geom::BoundaryCurve& curve,
                                    const geom::BoundaryFunction& mu,
                                    const DiagonalRule& rule);

// Same operator with off-curve targets (plain trapezoid).
std::vector<Complex> apply_kernel_at_points(
    const std::function<Complex(const Vec2&, int)>& K,
    const geom::BoundaryCurve& curve, const geom::BoundaryFunction& mu,
    const std::vector<Vec2>& targets);

// H[Z,g](x,y) = (g(x) - g(y)) Z(x,y).
KernelSampler build_H(const KernelSampler& Z, const geom::BoundaryFunction& g);

// Predicted output modulus for u[K, .] on bounded densities, n = 2:
//   gamma2 > 1, 1 - gamma2 + gamma3 in (0,1]  ->  Power(min{1-gamma1, 1-gamma2+gamma3})
//   gamma2 = 1                                ->  max{r^{1-gamma1}, omega_{gamma3}}
// Throws OutOfRange when no case applies.
schauder::ModulusSpec modulus_transfer_predict(const KernelClassParams& params);

// Beta-shifted variant: kernel additionally carries a factor |x-y|^beta and
// the density is alpha-Hölder; returns the predicted modulus of the output.
schauder::ModulusSpec modulus_transfer_predict_shifted(const KernelClassParams& params,
                                                       double alpha, double beta);

} // namespace layerlab::kernels
