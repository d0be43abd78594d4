#include "ccx/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccx {

namespace {

double same_basepoint_or_throw(const QuasiGeodesic& gamma, const QuasiGeodesic& eta) {
  if (!gamma.space) throw std::invalid_argument("pair_product: path without a space");
  double d0 = gamma.space->distance(gamma.eval(0.0), eta.eval(0.0));
  if (d0 > kGeomTol) throw std::invalid_argument("pair_product: different basepoints");
  return d0;
}

bool is_tree_point(const Point& p) { return std::holds_alternative<TreePoint>(p); }

double root_depth(const Space& sp, const Point& p) { return sp.distance(sp.basepoint(), p); }

}  // namespace

double pair_product(const QuasiGeodesic& gamma, const QuasiGeodesic& eta,
                    const DerivedConstants& dc) {
  same_basepoint_or_throw(gamma, eta);
  const Space& sp = *gamma.space;
  double L = std::min(gamma.length, eta.length);
  double thr = dc.threshold;

  if (gamma.tree_root_path && eta.tree_root_path && is_tree_point(gamma.eval(0.0))) {
    // Root paths in the tree diverge at their meet p and then separate at
    // speed 2, so the product is min(L_gamma, L_eta, p + D + 1) exactly.
    Point x = gamma.eval(gamma.length), y = eta.eval(eta.length);
    double p = 0.5 * (root_depth(sp, x) + root_depth(sp, y) - sp.distance(x, y));
    double v = p + dc.D + 1.0;
    if (v >= L) return (gamma.is_ray && eta.is_ray) ? kInf : L;
    return v;
  }

  bool ray_mode = gamma.is_ray || eta.is_ray;
  double step = ray_mode ? 0.01 * L : 0.01;
  if (L > 0.0) step = std::max(step, L / 200000.0);
  int n = L > 0.0 ? int(std::ceil(L / step)) : 0;
  auto ok = [&](double t) { return sp.distance(gamma.eval(t), eta.eval(t)) <= thr; };

  int last_ok = 0;  // t=0 always satisfies (common basepoint)
  for (int i = 1; i <= n; ++i) {
    double t = std::min(L, i * step);
    if (ok(t)) last_ok = i;
  }
  double t_ok = std::min(L, last_ok * step);
  if (last_ok == n) return (gamma.is_ray && eta.is_ray) ? kInf : L;
  double lo = t_ok, hi = std::min(L, (last_ok + 1) * step);
  for (int i = 0; i < 30; ++i) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

double point_product(const Space& sp, const XPoint& x, const XPoint& y,
                     const DerivedConstants& dc, double horizon) {
  const ConvexityParams& p = dc.params;
  double ball = 2.0 * p.lambda * p.theta(0.0) + p.k;
  Point O = sp.basepoint();
  auto in_ball = [&](const XPoint& z) {
    const Point* pt = std::get_if<Point>(&z);
    return pt != nullptr && sp.distance(O, *pt) <= ball + kGeomTol;
  };
  if (in_ball(x) || in_ball(y)) return 0.0;
  auto rep = [&](const XPoint& z) -> QuasiGeodesic {
    if (const Point* pt = std::get_if<Point>(&z)) return sp.geodesic(O, *pt);
    return sp.ray(std::get<BoundaryPoint>(z), horizon);
  };
  return pair_product(rep(x), rep(y), dc);
}

double estimate_omega(const Space& sp, int n_triples, double radius, std::uint64_t seed,
                      const DerivedConstants& dc, double horizon) {
  if (n_triples < 1) throw std::invalid_argument("estimate_omega: n_triples >= 1 required");
  std::mt19937_64 rng(seed);
  double best = 1.0;
  for (int i = 0; i < n_triples; ++i) {
    Point x = sp.sample(rng, radius), y = sp.sample(rng, radius), z = sp.sample(rng, radius);
    double xy = point_product(sp, x, y, dc, horizon);
    double yz = point_product(sp, y, z, dc, horizon);
    double xz = point_product(sp, x, z, dc, horizon);
    auto consider = [&best](double ab, double bc, double ac) {
      if (!std::isfinite(ac) || ac <= kGeomTol) return;  // degenerate
      double m = std::min(ab, bc);
      if (std::isfinite(m)) best = std::max(best, m / ac);
    };
    consider(xy, yz, xz);
    consider(xy, xz, yz);
    consider(yz, xz, xy);
  }
  return best;
}

double bigon_lower_bound(const QuasiGeodesic& gamma, const QuasiGeodesic& gamma_prime, double t,
                         double t_prime, const DerivedConstants& dc) {
  same_basepoint_or_throw(gamma, gamma_prime);
  const ConvexityParams& p = dc.params;
  double alpha = gamma.space->distance(gamma.eval(t), gamma_prime.eval(t_prime));
  double tt = dc.theta_tilde(alpha);
  return (std::max(t, t_prime) - tt) / (p.E * (alpha + p.lambda * tt + dc.k1));
}

bool ray_equivalent(const Ray& gamma, const Ray& eta, const DerivedConstants& dc) {
  same_basepoint_or_throw(gamma, eta);
  if (std::abs(gamma.length - eta.length) > kGeomTol)
    throw std::invalid_argument("ray_equivalent: horizon mismatch");
  const Space& sp = *gamma.space;
  int n = 200;  // step = horizon/200 <= 0.01 * horizon
  for (int i = 0; i <= n; ++i) {
    double t = gamma.length * double(i) / n;
    if (sp.distance(gamma.eval(t), eta.eval(t)) > dc.D + kGeomTol) return false;
  }
  return true;
}

double default_visual_eps(const DerivedConstants& dc) {
  if (dc.omega_hat <= 1.0) return 1.0;
  return std::min(1.0, std::log(2.0) / (2.0 * std::log(dc.omega_hat)));
}

VisualMetricSample chain_metric(const Space& sp, const std::vector<BoundaryPoint>& points,
                                double eps, const DerivedConstants& dc, double horizon) {
  if (std::pow(dc.omega_hat, 2.0 * eps) > 2.0 + 1e-12) {
    std::ostringstream os;
    os << "chain_metric: eps too large for omega_hat: omega_hat^(2 eps) = "
       << std::pow(dc.omega_hat, 2.0 * eps) << " > 2";
    throw std::invalid_argument(os.str());
  }
  std::size_t n = points.size();
  VisualMetricSample out;
  out.points = points;
  out.eps = eps;
  out.rho.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double prod = point_product(sp, points[i], points[j], dc, horizon);
      double r = std::isinf(prod) ? 0.0 : std::pow(prod, -eps);
      out.rho[i][j] = out.rho[j][i] = r;
    }
  }
  out.d_eps = out.rho;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.d_eps[i][j] = std::min(out.d_eps[i][j], out.d_eps[i][k] + out.d_eps[k][j]);
  out.K_observed = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (out.d_eps[i][j] > 0.0)
        out.K_observed = std::max(out.K_observed, out.rho[i][j] / out.d_eps[i][j]);
  return out;
}

bool vn_member(const Space& sp, const XPoint& x, const XPoint& y, double n,
               const DerivedConstants& dc, double horizon) {
  const Point* px = std::get_if<Point>(&x);
  const Point* py = std::get_if<Point>(&y);
  if (px && py && sp.distance(*px, *py) < 1.0 / n) return true;
  return point_product(sp, x, y, dc, horizon) > n;
}

WordStream canonical_stream(const std::string& word) {
  if (word.empty()) throw std::invalid_argument("canonical_stream: empty word");
  std::size_t n = word.size();
  for (std::size_t p = 1; p < n; ++p) {
    bool periodic = true;
    for (std::size_t i = p; i < n; ++i)
      if (word[i] != word[i - p]) {
        periodic = false;
        break;
      }
    if (periodic) return WordStream{"", word.substr(0, p)};
  }
  if (word.back() != inverse_letter(word.front())) return WordStream{"", word};
  return WordStream{word, ""};  // repeat the last letter
}

LimitResult limit_of_sequence(const Space& sp, const std::vector<Point>& points,
                              const DerivedConstants& dc, double horizon) {
  if (points.size() < 3) throw std::invalid_argument("limit_of_sequence: need >= 3 points");
  std::size_t n = points.size(), k = std::min<std::size_t>(5, n);
  Point O = sp.basepoint();
  double t_min = kInf, min_prod = kInf;
  for (std::size_t i = n - k; i < n; ++i) {
    t_min = std::min(t_min, sp.distance(O, points[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      double pr = point_product(sp, points[i], points[j], dc, horizon);
      if (std::isfinite(pr)) min_prod = std::min(min_prod, pr);
    }
  }
  LimitResult res;
  if (!(min_prod >= 1.0 && min_prod >= 0.8 * t_min && t_min > 0.0)) {
    std::ostringstream os;
    os << "not Cauchy at horizon: min tail product " << min_prod << ", min tail radius " << t_min;
    res.note = os.str();
    return res;
  }
  const Point& last = points.back();
  if (const TreePoint* tp = std::get_if<TreePoint>(&last)) {
    std::string letters = tp->base;
    if (tp->next != 0) letters.push_back(tp->next);
    res.limit = canonical_stream(letters);
  } else {
    res.limit = sp.direction_of(last);
  }
  std::ostringstream os;
  os << "Cauchy at horizon " << horizon << " (min tail product " << min_prod << ")";
  res.note = os.str();
  return res;
}

}  // namespace ccx
