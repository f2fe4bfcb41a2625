#include "layerlab/kernel_classes.hpp"

#include <cmath>
#include <numeric>

#include "layerlab/errors.hpp"
#include "layerlab/specfun.hpp"

namespace layerlab::kernels {

using specfun::pi;

KernelNormEstimate kernel_norm_estimate(const KernelSampler& K,
                                        const geom::BoundaryCurve& curve,
                                        const KernelClassParams& params,
                                        long long sample_budget) {
  const int N = curve.N;
  KernelNormEstimate est{0.0, 0.0, 0};

  // First supremum: all distinct pairs (cheap; kernel values cached for the
  // triple pass).
  std::vector<Complex> kval(static_cast<size_t>(N) * N, Complex(0.0));
  std::vector<double> dist(static_cast<size_t>(N) * N, 0.0);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const double d = norm(curve.x[i] - curve.x[j]);
      const Complex v = K(i, j);
      kval[static_cast<size_t>(i) * N + j] = v;
      dist[static_cast<size_t>(i) * N + j] = d;
      const double s = std::pow(d, params.gamma1) * std::abs(v);
      if (s > est.sup1) est.sup1 = s;
    }
  }

  // Second supremum over admissible triples (xp, xpp, y) with
  // |xp - y| >= 2 |xp - xpp|.
  const auto probe = [&](int ip, int ipp, int j) {
    if (ip == ipp || j == ip || j == ipp) return;
    const double sep = dist[static_cast<size_t>(ip) * N + ipp];
    const double dy = dist[static_cast<size_t>(ip) * N + j];
    if (dy < 2.0 * sep) return;
    const double q =
        std::pow(dy, params.gamma2) / std::pow(sep, params.gamma3) *
        std::abs(kval[static_cast<size_t>(ip) * N + j] -
                 kval[static_cast<size_t>(ipp) * N + j]);
    if (q > est.sup2) est.sup2 = q;
  };

  const long long total = static_cast<long long>(N) * N * N;
  if (total <= sample_budget) {
    for (int ip = 0; ip < N; ++ip)
      for (int ipp = 0; ipp < N; ++ipp)
        for (int j = 0; j < N; ++j) probe(ip, ipp, j);
    est.samples_used = total;
  } else {
    long long stride = 2654435761LL % total;
    while (std::gcd(stride, total) != 1) ++stride;
    for (long long k = 0; k < sample_budget; ++k) {
      const long long idx = (k * stride + 12345) % total;
      const int ip = static_cast<int>(idx / (static_cast<long long>(N) * N));
      const long long rest = idx % (static_cast<long long>(N) * N);
      probe(ip, static_cast<int>(rest / N), static_cast<int>(rest % N));
    }
    est.samples_used = sample_budget;
  }
  return est;
}

geom::BoundaryFunction apply_kernel(const KernelSampler& K,
                                    const geom::BoundaryCurve& curve,
                                    const geom::BoundaryFunction& mu,
                                    const DiagonalRule& rule) {
  const int N = curve.N;
  geom::BoundaryFunction out(N);
  if (rule.kind == DiagonalRule::Kind::Exclude) {
    for (int i = 0; i < N; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < N; ++j)
        if (j != i) acc += K(i, j) * mu[j] * curve.weight[j];
      out[i] = acc;
    }
    return out;
  }
  const auto R = geom::kress_weights(N);
  const double h = 2.0 * pi / N;
  for (int i = 0; i < N; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j) {
      const int d = ((i - j) % N + N) % N;
      acc += (R[d] * rule.phi1(i, j) + h * rule.phi2(i, j)) * mu[j] *
             curve.speed[j];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> apply_kernel_at_points(
    const std::function<Complex(const Vec2&, int)>& K,
    const geom::BoundaryCurve& curve, const geom::BoundaryFunction& mu,
    const std::vector<Vec2>& targets) {
  std::vector<Complex> out(targets.size());
  for (size_t p = 0; p < targets.size(); ++p) {
    for (int j = 0; j < curve.N; ++j)
      if (norm(targets[p] - curve.x[j]) < 1e-12)
        throw PointOnCurve("target lies on a curve node");
    Complex acc = 0.0;
    for (int j = 0; j < curve.N; ++j)
      acc += K(targets[p], j) * mu[j] * curve.weight[j];
    out[p] = acc;
  }
  return out;
}

KernelSampler build_H(const KernelSampler& Z, const geom::BoundaryFunction& g) {
  return [Z, g](int i, int j) { return (g[i] - g[j]) * Z(i, j); };
}

schauder::ModulusSpec modulus_transfer_predict(const KernelClassParams& params) {
  const double g1 = params.gamma1, g2 = params.gamma2, g3 = params.gamma3;
  if (!(g1 >= 0.0 && g1 < 1.0) || !(g3 > 0.0 && g3 <= 1.0))
    throw OutOfRange("no modulus-transfer case applies");
  const double delta = 1.0 - g1;
  if (g2 > 1.0) {
    const double e2 = 1.0 - g2 + g3;
    if (!(e2 > 0.0 && e2 <= 1.0))
      throw OutOfRange("no modulus-transfer case applies");
    return {schauder::ModulusSpec::Kind::Power, std::min(delta, e2)};
  }
  if (g2 == 1.0) {
    // max{r^delta, omega_{g3}}: the larger modulus near zero wins.
    if (delta < g3) return {schauder::ModulusSpec::Kind::Power, delta};
    return {schauder::ModulusSpec::Kind::LogPower, g3};
  }
  throw OutOfRange("no modulus-transfer case applies");
}

schauder::ModulusSpec modulus_transfer_predict_shifted(const KernelClassParams& params,
                                                       double alpha, double beta) {
  const double g2 = params.gamma2, g3 = params.gamma3;
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0) ||
      !(g3 > 0.0 && g3 <= 1.0))
    throw OutOfRange("no shifted modulus-transfer case applies");
  const double ab = std::min(alpha + beta, 1.0);
  if (g2 - beta < 1.0)
    return {schauder::ModulusSpec::Kind::Power, std::min(ab, g3)};
  if (g2 - beta == 1.0) {
    if (ab < g3) return {schauder::ModulusSpec::Kind::Power, ab};
    return {schauder::ModulusSpec::Kind::LogPower, g3};
  }
  const double e = g3 + 1.0 - (g2 - beta);
  if (!(e > 0.0)) throw OutOfRange("no shifted modulus-transfer case applies");
  return {schauder::ModulusSpec::Kind::Power, std::min(ab, std::min(e, 1.0))};
}

} // namespace layerlab::kernels
