#include "layerlab/fundsol.hpp"

#include <cmath>

#include "layerlab/errors.hpp"

namespace layerlab::fundsol {

using specfun::pi;

FundamentalSolution build(const OperatorCoefficients& coeffs) {
  FundamentalSolution fs;
  fs.coeffs = coeffs;
  fs.reduced = reduce(coeffs);
  if (std::abs(fs.reduced.kappa.imag()) >
      1e-14 * (1.0 + std::abs(fs.reduced.kappa.real())))
    throw UnsupportedKappa("reduced zero-order constant has nonzero imaginary part");
  fs.kappa = fs.reduced.kappa.real();
  fs.profile = specfun::classify_profile(fs.kappa);
  return fs;
}

namespace {

double reduced_radius(const FundamentalSolution& fs, const Vec2& x) {
  return norm(fs.reduced.Tinv.apply(x));
}

Complex drift_factor(const FundamentalSolution& fs, const Vec2& x) {
  return std::exp(dot(fs.reduced.mu, x));
}

} // namespace

Complex eval(const FundamentalSolution& fs, const Vec2& x) {
  const double rho = reduced_radius(fs, x);
  if (rho == 0.0) throw DomainError("fundamental solution evaluated at the pole");
  const auto pv = specfun::radial_profile(fs.kappa, rho);
  return fs.reduced.det_factor * drift_factor(fs, x) * pv.w;
}

CVec2 grad(const FundamentalSolution& fs, const Vec2& x) {
  const double rho = reduced_radius(fs, x);
  if (rho == 0.0) throw DomainError("fundamental solution gradient at the pole");
  const auto pv = specfun::radial_profile(fs.kappa, rho);
  const Vec2 Bx = fs.reduced.B.apply(x);
  const Complex pre = fs.reduced.det_factor * drift_factor(fs, x);
  const double radial = pv.dw_dr / rho;
  return {pre * (fs.reduced.mu[0] * pv.w + radial * Bx[0]),
          pre * (fs.reduced.mu[1] * pv.w + radial * Bx[1])};
}

std::pair<Complex, Complex> log_split(const FundamentalSolution& fs,
                                      const geom::BoundaryCurve& curve,
                                      double t, double s) {
  const double df = fs.reduced.det_factor;
  const double sinh2 = 4.0 * std::pow(std::sin(0.5 * (t - s)), 2);
  if (sinh2 < 1e-28) {
    // Diagonal limit: m(t,t) = psi'^t B psi' and e^{mu.(x-x)} = 1.
    const Vec2 dp = curve.dpsi(t);
    const double p = quad_form(dp, fs.reduced.B, dp);
    const Complex phi1 = df / (4.0 * pi);
    const Complex phi2 =
        df * (std::log(p) / (4.0 * pi) + specfun::profile_G0(fs.kappa));
    return {phi1, phi2};
  }
  const Vec2 d = curve.psi(t) - curve.psi(s);
  const double rho = reduced_radius(fs, d);
  const auto ps = specfun::profile_split(fs.kappa, rho);
  const Complex pre = df * drift_factor(fs, d);
  const Complex phi1 = 0.5 * pre * ps.L;
  // phi2 = pre * [ (L/2) ln m + G ] with m = rho^2 / (4 sin^2((t-s)/2)).
  const double ln_m = std::log(rho * rho / sinh2);
  const Complex phi2 = pre * (0.5 * ps.L * ln_m + ps.G);
  return {phi1, phi2};
}

} // namespace layerlab::fundsol
