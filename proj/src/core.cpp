#include "ccx/core.hpp"

#include <algorithm>
#include <memory>
#include <utility>

namespace ccx {

DerivedConstants derive_constants(const ConvexityParams& p, double omega_estimate) {
  p.validate();
  DerivedConstants dc;
  dc.params = p;
  dc.k1 = p.lambda + p.k;
  dc.D = 2.0 * (1.0 + p.E) * dc.k1 + p.C;
  dc.threshold = 2.0 * dc.D + 2.0;
  RealFn theta = p.theta;
  dc.theta_tilde = [theta](double t) { return theta(t + 1.0) + 1.0; };
  dc.omega_hat = omega_estimate > 0.0 ? std::max(1.0, omega_estimate * 1.5) : 1.0;
  return dc;
}

double generalized_inverse(const RealFn& rho, double s, double hi_probe) {
  if (rho(0.0) > s) return 0.0;  // sup of the empty set
  if (rho(hi_probe) <= s) return hi_probe;
  double lo = 0.0, hi = hi_probe;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (rho(mid) <= s ? lo : hi) = mid;
  }
  return lo;
}

RoughContraction lipschitz_minorant(const RealFn& g, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("lipschitz_minorant: empty grid");
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>();
  double gmax = 0.0;
  for (double s : grid) {
    double gs = std::max(0.0, g(s));
    gmax = std::max(gmax, gs);
    pts->push_back({s, gs});
  }
  if (gmax <= 0.0)
    throw std::invalid_argument(
        "lipschitz_minorant: g vanishes on the probed range; widen the probe");
  RealFn r = [pts](double t) {
    double best = t;
    for (const auto& [s, gs] : *pts) best = std::min(best, gs + std::abs(t - s));
    return std::max(0.0, best);
  };
  return RoughContraction{r, 0.0};
}

RoughContraction power_adjust(const RoughContraction& r, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("power_adjust: eps in (0,1) required");
  RealFn base = r.eval;
  RealFn adjusted = [base, eps](double t) {
    double v = base(t);
    return v < 1.0 ? v : std::pow(v, eps);
  };
  return RoughContraction{adjusted, r.tau};
}

double power_adjust_delta(const RoughContraction& r_prime, double eps, double hi_probe) {
  RealFn base = r_prime.eval;
  RealFn comp = [base, eps](double u) { return base(std::pow(u, eps)); };
  return generalized_inverse(comp, 1.0, hi_probe);
}

SamplingGrid uniform_grid(int nc, int nt, double t_max, double s_max) {
  SamplingGrid g;
  for (int i = 0; i < nc; ++i) g.c_values.push_back(nc == 1 ? 1.0 : double(i) / (nc - 1));
  for (int i = 0; i < nt; ++i) {
    double f = nt == 1 ? 1.0 : double(i) / (nt - 1);
    g.t_values.push_back(f * t_max);
    g.s_values.push_back(f * s_max);
  }
  return g;
}

}  // namespace ccx
