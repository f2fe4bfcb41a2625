#pragma once

// Self-contained cylinder functions of orders 0 and 1 and the 2D radial
// fundamental-solution profile w_kappa, normalized so that
// (Laplacian + kappa) w = +delta.

namespace layerlab::specfun {

inline constexpr double euler_gamma = 0.57721566490153286;
inline constexpr double pi = 3.14159265358979323846;

enum class Cylinder { J0, Y0, I0, K0 };

// Relative accuracy ~1e-12 on [1e-6, 50]; ascending series below argument 8,
// asymptotic expansions above (I0/I1 use the series everywhere, their terms
// are positive so there is no cancellation).
double cylinder(Cylinder kind, double x);

double bessel_j0(double x);
double bessel_y0(double x);
double bessel_i0(double x);
double bessel_k0(double x);
double bessel_j1(double x);
double bessel_y1(double x);
double bessel_i1(double x);
double bessel_k1(double x);

struct RadialProfileKind {
  enum class Tag { Log, Oscillatory, Decaying } tag;
  double wave_number; // sqrt(|kappa|), zero iff tag == Log
};

RadialProfileKind classify_profile(double kappa);

struct ProfileValue {
  double w;
  double dw_dr;
};

// w_kappa(r) and its radial derivative.
//   kappa = 0:      w = (1/2pi) ln r
//   kappa = k^2:    w = (1/4) Y0(k r)
//   kappa = -k^2:   w = -(1/2pi) K0(k r)
ProfileValue radial_profile(double kappa, double r);

// Decomposition w(r) = L(r) ln r + G(r) with L, G analytic in r^2, plus the
// ratios L'(r)/r and G'(r)/r (finite at r = 0). This is what makes the
// Kress-type log splits of the boundary kernels computable on the diagonal.
struct ProfileSplit {
  double L;
  double G;
  double Lp_over_r;
  double Gp_over_r;
};

ProfileSplit profile_split(double kappa, double r);

// L(0) = 1/(2pi) always; G(0) = 0 for kappa = 0 and
// (ln(k/2) + gamma)/(2pi) otherwise.
double profile_G0(double kappa);

} // namespace layerlab::specfun
