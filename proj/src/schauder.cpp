#include "layerlab/schauder.hpp"

#include <algorithm>
#include <cmath>

#include "layerlab/errors.hpp"

namespace layerlab::schauder {

double omega(const ModulusSpec& spec, double r) {
  if (!(r > 0.0)) throw DomainError("omega requires r > 0");
  if (!(spec.exponent > 0.0 && spec.exponent <= 1.0))
    throw BadExponent("modulus exponent must be in (0,1]");
  if (spec.kind == ModulusSpec::Kind::Power) return std::pow(r, spec.exponent);
  const double r_theta = std::exp(-1.0 / spec.exponent);
  const double rr = std::min(r, r_theta);
  return std::pow(rr, spec.exponent) * std::abs(std::log(rr));
}

double holder_quotient(const geom::BoundaryCurve& curve,
                       const geom::BoundaryFunction& f, const ModulusSpec& spec) {
  double best = 0.0;
  for (int i = 0; i < curve.N; ++i) {
    for (int j = i + 1; j < curve.N; ++j) {
      const double d = norm(curve.x[i] - curve.x[j]);
      if (d <= 0.0) continue;
      const double q = std::abs(f[i] - f[j]) / omega(spec, d);
      best = std::max(best, q);
    }
  }
  return best;
}

double schauder_norm(const geom::BoundaryCurve& curve,
                     const geom::BoundaryFunction& f, int m,
                     const ModulusSpec& spec) {
  double sup = 0.0;
  for (int i = 0; i < curve.N; ++i) sup = std::max(sup, std::abs(f[i]));
  if (m == 0) return sup + holder_quotient(curve, f, spec);
  double acc = sup;
  for (int l = 1; l <= 2; ++l)
    for (int r = 1; r <= 2; ++r) {
      if (l == r) continue;
      acc += schauder_norm(curve, geom::tangential_M(curve, f, l, r), m - 1, spec);
    }
  return acc;
}

} // namespace layerlab::schauder
