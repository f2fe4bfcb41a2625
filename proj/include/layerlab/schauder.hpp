#pragma once

// Generalized Hölder moduli (r^alpha and the capped r^theta |ln r|), sampled
// Hölder quotients, and the recursive tangential-derivative Schauder norm.

#include "layerlab/geometry.hpp"

namespace layerlab::schauder {

struct ModulusSpec {
  enum class Kind { Power, LogPower } kind;
  double exponent; // alpha resp. theta, in (0,1]
};

double omega(const ModulusSpec& spec, double r);

// max over distinct node pairs of |f_i - f_j| / omega(|x_i - x_j|), chord
// distance; a sampled lower bound of the true seminorm.
double holder_quotient(const geom::BoundaryCurve& curve,
                       const geom::BoundaryFunction& f, const ModulusSpec& spec);

// ||f||_{C^0} + sum_{l,r} ||M_lr f||_{C^{m-1,omega}}, recursively down to
// sup + holder_quotient at order zero.
double schauder_norm(const geom::BoundaryCurve& curve,
                     const geom::BoundaryFunction& f, int m,
                     const ModulusSpec& spec);

} // namespace layerlab::schauder
