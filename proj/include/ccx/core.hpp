#pragma once
// Parameters of a coarsely convex structure, derived constants, and the
// rough-contraction utilities shared by the map checkers and the radial
// extension pipeline.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ccx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kGeomTol = 1e-9;  // absolute tolerance for inexact spaces

using RealFn = std::function<double(double)>;

// Tuple (lambda, k, E, C, theta) governing every inequality.
struct ConvexityParams {
  double lambda = 1.0;  // >= 1
  double k = 0.0;       // >= 0
  double E = 1.0;       // >= 1
  double C = 0.0;       // >= 0
  RealFn theta = [](double t) { return t; };  // nondecreasing, default identity

  void validate() const {
    if (lambda < 1.0 || E < 1.0 || k < 0.0 || C < 0.0)
      throw std::invalid_argument("ConvexityParams: lambda,E >= 1 and k,C >= 0 required");
  }
};

struct DerivedConstants {
  double k1 = 0.0;         // lambda + k
  double D = 0.0;          // 2(1+E)k1 + C
  double threshold = 0.0;  // 2D + 2
  RealFn theta_tilde;      // t -> theta(t+1) + 1
  double omega_hat = 1.0;  // empirical quasi-ultrametric constant, >= 1
  ConvexityParams params;
};

// omega_hat defaults to 1 when no estimate is supplied; estimates come from
// boundary::estimate_omega and are inflated by a 1.5 safety factor upstream.
DerivedConstants derive_constants(const ConvexityParams& p, double omega_estimate = 0.0);

// Nondecreasing sigma with sigma(0)=0, sigma(t)<=t, |sigma(t)-sigma(s)|<=|t-s|+tau.
struct RoughContraction {
  RealFn eval;
  double tau = 0.0;

  double operator()(double t) const { return eval(t); }
};

inline RoughContraction identity_contraction() {
  return RoughContraction{[](double t) { return t; }, 0.0};
}

// Generalized inverse of a nondecreasing rho: sup{t : rho(t) <= s}, with
// sup(empty) = 0. Bisection over [0, hi_probe].
double generalized_inverse(const RealFn& rho, double s, double hi_probe = 1e6);

// Largest 0-rough contraction below a sampled nondecreasing g:
// r(t) = min(t, inf_s [g(s) + |t-s|]), clamped at 0. grid = sample abscissae.
// Throws if g vanishes on the whole probed range (result would be bounded).
RoughContraction lipschitz_minorant(const RealFn& g, const std::vector<double>& grid);

// r'(t) = r(t) where r(t) < 1, r(t)^eps where r(t) >= 1. The composite
// t -> r'(t^eps)^(1/eps) is then a 2*delta-rough contraction with
// delta = sup{u : r'(u^eps) <= 1}.
RoughContraction power_adjust(const RoughContraction& r, double eps);
double power_adjust_delta(const RoughContraction& r_prime, double eps, double hi_probe = 1e6);

// Grid specification for the axiom falsifiers.
struct SamplingGrid {
  std::vector<double> c_values;  // in [0,1]
  std::vector<double> t_values;
  std::vector<double> s_values;
};

SamplingGrid uniform_grid(int nc, int nt, double t_max, double s_max);

}  // namespace ccx
