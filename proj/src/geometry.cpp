#include "layerlab/geometry.hpp"

#include <cmath>
#include <numeric>

#include "layerlab/errors.hpp"
#include "layerlab/specfun.hpp"

namespace layerlab::geom {

using specfun::pi;

Vec2 BoundaryCurve::psi(double tt) const {
  switch (kind) {
    case CurveKind::Circle: return {p0 * std::cos(tt), p0 * std::sin(tt)};
    case CurveKind::Ellipse: return {p0 * std::cos(tt), p1 * std::sin(tt)};
    case CurveKind::Kite:
      return {std::cos(tt) + 0.65 * std::cos(2.0 * tt) - 0.65, 1.5 * std::sin(tt)};
  }
  return {};
}

Vec2 BoundaryCurve::dpsi(double tt) const {
  switch (kind) {
    case CurveKind::Circle: return {-p0 * std::sin(tt), p0 * std::cos(tt)};
    case CurveKind::Ellipse: return {-p0 * std::sin(tt), p1 * std::cos(tt)};
    case CurveKind::Kite:
      return {-std::sin(tt) - 1.3 * std::sin(2.0 * tt), 1.5 * std::cos(tt)};
  }
  return {};
}

Vec2 BoundaryCurve::ddpsi(double tt) const {
  switch (kind) {
    case CurveKind::Circle: return {-p0 * std::cos(tt), -p0 * std::sin(tt)};
    case CurveKind::Ellipse: return {-p0 * std::cos(tt), -p1 * std::sin(tt)};
    case CurveKind::Kite:
      return {-std::cos(tt) - 2.6 * std::cos(2.0 * tt), -1.5 * std::sin(tt)};
  }
  return {};
}

BoundaryCurve BoundaryCurve::resampled(int M) const {
  return preset_curve(kind, p0, p1, M);
}

BoundaryCurve preset_curve(CurveKind kind, double p0, double p1, int N) {
  if (N < 8 || N % 2 != 0) throw BadNodeCount("node count must be even and >= 8");
  BoundaryCurve c;
  c.kind = kind;
  c.p0 = p0;
  c.p1 = p1;
  c.N = N;
  c.t.resize(N);
  c.x.resize(N);
  c.dx.resize(N);
  c.ddx.resize(N);
  c.speed.resize(N);
  c.tangent.resize(N);
  c.normal.resize(N);
  c.weight.resize(N);
  const double h = 2.0 * pi / N;
  for (int i = 0; i < N; ++i) {
    const double ti = h * i;
    c.t[i] = ti;
    c.x[i] = c.psi(ti);
    c.dx[i] = c.dpsi(ti);
    c.ddx[i] = c.ddpsi(ti);
    c.speed[i] = norm(c.dx[i]);
    c.tangent[i] = (1.0 / c.speed[i]) * c.dx[i];
    c.normal[i] = {c.dx[i][1] / c.speed[i], -c.dx[i][0] / c.speed[i]};
    c.weight[i] = h * c.speed[i];
  }
  return c;
}

std::vector<Complex> fourier_coeffs(const std::vector<Complex>& values) {
  const int N = static_cast<int>(values.size());
  std::vector<Complex> c(N);
  const double h = 2.0 * pi / N;
  for (int m = -N / 2; m < N / 2; ++m) {
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j)
      acc += values[j] * std::polar(1.0, -m * h * j);
    c[m + N / 2] = acc / static_cast<double>(N);
  }
  return c;
}

Complex trig_eval(const std::vector<Complex>& coeffs, double t) {
  const int N = static_cast<int>(coeffs.size());
  Complex acc = 0.0;
  for (int m = -N / 2; m < N / 2; ++m)
    acc += coeffs[m + N / 2] * std::polar(1.0, m * t);
  return acc;
}

std::vector<Complex> upsample(const std::vector<Complex>& values, int M) {
  const auto c = fourier_coeffs(values);
  std::vector<Complex> out(M);
  const double h = 2.0 * pi / M;
  for (int j = 0; j < M; ++j) out[j] = trig_eval(c, h * j);
  return out;
}

BoundaryFunction spectral_ddt(const BoundaryFunction& f) {
  const int N = f.size();
  auto c = fourier_coeffs(f.v);
  for (int m = -N / 2; m < N / 2; ++m)
    c[m + N / 2] *= (m == -N / 2) ? Complex(0.0) : Complex(0.0, m);
  BoundaryFunction out(N);
  const double h = 2.0 * pi / N;
  for (int j = 0; j < N; ++j) out[j] = trig_eval(c, h * j);
  return out;
}

BoundaryFunction spectral_dds(const BoundaryCurve& curve, const BoundaryFunction& f) {
  BoundaryFunction out = spectral_ddt(f);
  for (int j = 0; j < curve.N; ++j) out[j] /= curve.speed[j];
  return out;
}

BoundaryFunction tangential_M(const BoundaryCurve& curve, const BoundaryFunction& f,
                              int l, int r) {
  BoundaryFunction dds = spectral_dds(curve, f);
  BoundaryFunction out(curve.N);
  for (int i = 0; i < curve.N; ++i) {
    const double factor = curve.normal[i][l - 1] * curve.tangent[i][r - 1] -
                          curve.normal[i][r - 1] * curve.tangent[i][l - 1];
    out[i] = factor * dds[i];
  }
  return out;
}

std::pair<BoundaryFunction, BoundaryFunction>
projected_grad_Da(const BoundaryCurve& curve, const BoundaryFunction& f,
                  const OperatorCoefficients& coeffs) {
  BoundaryFunction d1(curve.N), d2(curve.N);
  const BoundaryFunction m12 = tangential_M(curve, f, 1, 2);
  for (int i = 0; i < curve.N; ++i) {
    const Vec2 a2nu = coeffs.a2.apply(curve.normal[i]);
    const double q2 = dot(curve.normal[i], a2nu);
    // M_11 = M_22 = 0, M_21 = -M_12.
    d1[i] = -m12[i] * a2nu[1] / q2; // sum_l M_l1 (a2 nu)_l = M_21 (a2 nu)_2
    d2[i] = m12[i] * a2nu[0] / q2;  // M_12 (a2 nu)_1
  }
  return {d1, d2};
}

Complex quad(const BoundaryCurve& curve, const BoundaryFunction& f) {
  Complex acc = 0.0;
  for (int i = 0; i < curve.N; ++i) acc += f[i] * curve.weight[i];
  return acc;
}

std::vector<double> kress_weights(int N) {
  std::vector<double> R(N);
  for (int d = 0; d < N; ++d) {
    double s = 0.0;
    for (int m = 1; m < N / 2; ++m)
      s += std::cos(2.0 * pi * m * d / N) / m;
    R[d] = -(4.0 * pi / N) * s - (4.0 * pi / (N * N)) * ((d % 2 == 0) ? 1.0 : -1.0);
  }
  return R;
}

Complex quad_log(const BoundaryCurve& curve,
                 const std::function<Complex(int, int)>& phi1,
                 const std::function<Complex(int, int)>& phi2, int i) {
  const int N = curve.N;
  const auto R = kress_weights(N);
  const double h = 2.0 * pi / N;
  Complex acc = 0.0;
  for (int j = 0; j < N; ++j) {
    const int d = ((i - j) % N + N) % N;
    acc += (R[d] * phi1(i, j) + h * phi2(i, j)) * curve.speed[j];
  }
  return acc;
}

BoundaryFunction hilbert_cot(const BoundaryFunction& f) {
  const int N = f.size();
  auto c = fourier_coeffs(f.v);
  for (int m = -N / 2; m < N / 2; ++m) {
    if (m == 0 || m == -N / 2)
      c[m + N / 2] = 0.0;
    else
      c[m + N / 2] *= Complex(0.0, m > 0 ? -2.0 * pi : 2.0 * pi);
  }
  BoundaryFunction out(N);
  const double h = 2.0 * pi / N;
  for (int j = 0; j < N; ++j) out[j] = trig_eval(c, h * j);
  return out;
}

BoundaryConstants boundary_constants(const BoundaryCurve& curve, double alpha,
                                     double gamma, long long sample_budget) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw BadExponent("alpha must be in (0,1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw BadExponent("gamma must be in [0,1)");
  const int N = curve.N;
  const long long total = static_cast<long long>(N) * N;

  BoundaryConstants out{0.0, 0.0, 0.0, 0.0, 0.0, 0};

  // Far-field integrals reused by c2/c3/c4: for a pair (i, ipp) with
  // separation Rsep, sum the weighted powers over the retained nodes.
  const auto pair_estimates = [&](int i, int ipp) {
    const double Rsep = norm(curve.x[i] - curve.x[ipp]);
    if (Rsep <= 0.0) return;
    // c_com
    const double com = std::abs(dot(curve.normal[ipp], curve.x[i] - curve.x[ipp])) /
                       std::pow(Rsep, 1.0 + alpha);
    if (com > out.c_com) out.c_com = com;
    // c2: near ball B(x_i, 3 Rsep) around x_i, integrand |x_ipp - y|^{-gamma}
    double near = 0.0;
    // c3, c4: complement of B(x_i, 2 Rsep)
    double far3 = 0.0, far4 = 0.0;
    for (int j = 0; j < N; ++j) {
      const double di = norm(curve.x[i] - curve.x[j]);
      if (di < 3.0 * Rsep && j != ipp) {
        const double dj = norm(curve.x[ipp] - curve.x[j]);
        if (dj > 0.0) near += curve.weight[j] * std::pow(dj, -gamma);
      }
      if (di >= 2.0 * Rsep && j != i) {
        far3 += curve.weight[j] * std::pow(di, -(1.0 + gamma));
        far4 += curve.weight[j] / di;
      }
    }
    const double c2v = near / std::pow(Rsep, 1.0 - gamma);
    if (c2v > out.c2) out.c2 = c2v;
    const double c3v = far3 * std::pow(Rsep, gamma);
    if (c3v > out.c3) out.c3 = c3v;
    if (Rsep < std::exp(-1.0)) {
      const double c4v = far4 / std::abs(std::log(Rsep));
      if (c4v > out.c4) out.c4 = c4v;
    }
  };

  // c1: sup over targets of the excluded-node integral (cheap, always full).
  for (int i = 0; i < N; ++i) {
    double acc = 0.0;
    for (int j = 0; j < N; ++j) {
      if (j == i) {
        if (gamma == 0.0) acc += curve.weight[j];
        continue;
      }
      acc += curve.weight[j] * std::pow(norm(curve.x[i] - curve.x[j]), -gamma);
    }
    if (acc > out.c1) out.c1 = acc;
  }

  if (total <= sample_budget) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (i != j) pair_estimates(i, j);
    out.samples_used = total;
  } else {
    // Deterministic nested subsample of the pair index space.
    long long stride = 2654435761LL % total;
    while (std::gcd(stride, total) != 1) ++stride;
    for (long long k = 0; k < sample_budget; ++k) {
      const long long idx = (k * stride + 12345) % total;
      const int i = static_cast<int>(idx / N);
      const int j = static_cast<int>(idx % N);
      if (i != j) pair_estimates(i, j);
    }
    out.samples_used = sample_budget;
  }
  return out;
}

} // namespace layerlab::geom
