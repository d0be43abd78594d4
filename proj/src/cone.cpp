#include "ccx/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccx {

double cone_distance(const ConePoint& p, const ConePoint& q, const BoundaryMetric& dZ) {
  double m = std::min(p.t, q.t);
  double dz = 0.0;
  if (m > 0.0) {
    dz = dZ(p.z, q.z);
    if (dz > 2.0 + kGeomTol)
      throw std::invalid_argument("cone_distance: boundary metric diameter exceeds 2");
  }
  return std::abs(p.t - q.t) + m * dz;
}

ConePoint cone_functor(const BoundaryMap& g, const ConePoint& p) {
  if (p.is_apex()) return p;
  return ConePoint{p.t, g(p.z)};
}

ConePoint radial_contract(const RoughContraction& r, const ConePoint& p) {
  return ConePoint{r(p.t), p.z};
}

Point exp_map(const ExtensionPipeline& pl, const ConePoint& p) {
  if (p.is_apex()) return pl.target->basepoint();
  Ray eta = pl.target->ray(p.z, pl.horizon);
  return eta.eval(std::min(std::pow(p.t, 1.0 / pl.eps), pl.horizon));
}

ConePoint log_map(const ExtensionPipeline& pl, const Point& v) {
  double T = pl.source->distance(pl.source->basepoint(), v);
  if (T <= 0.0) return ConePoint{0.0, pl.source->direction_of(v)};
  return ConePoint{std::pow(T, pl.eps), pl.source->direction_of(v)};
}

Point deform_phi(const RoughContraction& chi, const Space& sp, const Point& v, double horizon) {
  double T = sp.distance(sp.basepoint(), v);
  if (T <= 0.0) return sp.basepoint();
  return sp.ray_through(v, horizon).eval(chi(T));
}

std::vector<std::pair<double, double>> psi_modulus(const Space& src, const Space& tgt,
                                                   const BoundaryMap& g,
                                                   const std::vector<BoundaryPoint>& grid,
                                                   const DerivedConstants& dc_src,
                                                   const DerivedConstants& dc_tgt, double horizon) {
  std::vector<std::pair<double, double>> raw;  // ((p|q)_a, (g(p)|g(q))_b)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      double s = point_product(src, grid[i], grid[j], dc_src, horizon);
      if (std::isinf(s)) continue;  // indistinguishable directions at horizon
      double r = point_product(tgt, g(grid[i]), g(grid[j]), dc_tgt, horizon);
      raw.push_back({s, std::isinf(r) ? horizon : r});
    }
  }
  if (raw.empty()) throw std::invalid_argument("psi_modulus: no usable boundary pairs");
  std::sort(raw.begin(), raw.end());
  // psi(t) = inf over pairs with s >= t: suffix minimum, automatically nondecreasing
  std::vector<std::pair<double, double>> table(raw.size());
  double suffix_min = kInf;
  for (std::size_t i = raw.size(); i-- > 0;) {
    suffix_min = std::min(suffix_min, raw[i].second);
    table[i] = {raw[i].first, suffix_min};
  }
  table.erase(std::unique(table.begin(), table.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              table.end());
  return table;
}

RealFn table_function(const std::vector<std::pair<double, double>>& table) {
  auto data = std::make_shared<std::vector<std::pair<double, double>>>(table);
  return [data](double t) {
    double v = 0.0;
    for (const auto& [s, val] : *data) {
      if (s <= t)
        v = val;
      else
        break;
    }
    return v;
  };
}

RoughContraction admissible_r(const RealFn& psi, const DerivedConstants& dc_src, double Omega,
                              double eps, const std::vector<double>& t_grid) {
  const ConvexityParams& p = dc_src.params;
  double tt0 = dc_src.theta_tilde(0.0);
  double denom = p.E * (p.lambda * tt0 + dc_src.k1);
  RealFn bound = [psi, Omega, tt0, denom](double t) {
    return std::max(0.0, psi(std::max(0.0, (t - tt0) / Omega) / denom) / Omega);
  };
  // work in the u = t^eps domain: r0(u) <= bound(u^(1/eps))
  RealFn bound_u = [bound, eps](double u) { return bound(std::pow(u, 1.0 / eps)); };
  std::vector<double> u_grid;
  double u_max = 0.0;
  for (double t : t_grid) {
    u_grid.push_back(std::pow(t, eps));
    u_max = std::max(u_max, u_grid.back());
  }
  // densify: the minorant must sit below the bound between caller grid points too
  for (int i = 0; i <= 512; ++i) u_grid.push_back(u_max * double(i) / 512.0);
  std::sort(u_grid.begin(), u_grid.end());
  RoughContraction r0 = lipschitz_minorant(bound_u, u_grid);
  // bound is nondecreasing, so its zero set is an initial segment; force the
  // contraction to vanish there instead of leaving a grid-resolution residue
  RealFn base = r0.eval;
  r0.eval = [base, bound_u](double u) { return bound_u(u) <= 0.0 ? 0.0 : base(u); };
  RoughContraction r = power_adjust(r0, eps);
  for (double t : t_grid) {
    double lhs = std::pow(r(std::pow(t, eps)), 1.0 / eps);
    if (lhs > bound(t) + kGeomTol && lhs > 1.0) {
      std::ostringstream os;
      os << "admissible_r: verification failed at t=" << t << ": r(t^eps)^(1/eps)=" << lhs
         << " > bound=" << bound(t);
      throw std::logic_error(os.str());
    }
  }
  return r;
}

RadialTrace radial_extension_trace(const ExtensionPipeline& pl, const BoundaryMap& g,
                                   const Point& v) {
  RadialTrace tr;
  tr.phi_v = deform_phi(pl.chi, *pl.source, v, pl.horizon);
  tr.log_v = log_map(pl, tr.phi_v);
  tr.contracted = radial_contract(pl.r, tr.log_v);
  tr.mapped = cone_functor(g, tr.contracted);
  tr.result = exp_map(pl, tr.mapped);
  return tr;
}

Point radial_extension(const ExtensionPipeline& pl, const BoundaryMap& g, const Point& v) {
  return radial_extension_trace(pl, g, v).result;
}

MapUnderTest radial_extension_map(const ExtensionPipeline& pl, const BoundaryMap& g,
                                  const std::string& name) {
  MapUnderTest f;
  f.source = pl.source;
  f.target = pl.target;
  f.eval = [pl, g](const Point& v) { return radial_extension(pl, g, v); };
  f.name = name;
  return f;
}

namespace {

Ray eta_for(const ExtensionPipeline& pl, const BoundaryMap& g, const Point& x) {
  return pl.target->ray(g(pl.source->direction_of(x)), pl.horizon);
}

double check_range(const ExtensionPipeline& pl, const Point& x, double t) {
  double T = pl.source->distance(pl.source->basepoint(), x);
  if (t < -kGeomTol || t > T + kGeomTol)
    throw std::out_of_range("homotopy_eval: t outside [0, T_x]");
  return T;
}

double pow_comp(const RoughContraction& r, double t, double eps) {
  return std::pow(r(std::pow(std::max(0.0, t), eps)), 1.0 / eps);
}

}  // namespace

Point homotopy_eval(const ExtensionPipeline& pl, const BoundaryMap& g, const TwoContractions& v,
                    const Point& x, double t) {
  double T = check_range(pl, x, t);
  double s = pow_comp(v.r1, T - t, pl.eps) + pow_comp(v.r2, t, pl.eps);
  return eta_for(pl, g, x).eval(std::min(s, pl.horizon));
}

Point homotopy_eval(const ExtensionPipeline& pl, const BoundaryMap& g, const ContractionVsMap& v,
                    const Point& x, double t) {
  double T = check_range(pl, x, t);
  double s = v.rho(T - t) + pow_comp(v.r, t, pl.eps);
  return eta_for(pl, g, x).eval(std::min(s, pl.horizon));
}

double boundary_deviation(const BoundaryPoint& u, const BoundaryPoint& v) {
  if (u.index() != v.index()) return 2.0;
  if (const H2Angle* a = std::get_if<H2Angle>(&u)) {
    double d = std::abs(std::remainder(a->angle - std::get<H2Angle>(v).angle,
                                       2.0 * 3.14159265358979323846));
    return d;
  }
  if (const WordStream* w = std::get_if<WordStream>(&u)) {
    const WordStream& w2 = std::get<WordStream>(v);
    for (std::size_t i = 0; i < 64; ++i)
      if (w->at(i) != w2.at(i)) return std::pow(2.0, -double(i));
    return 0.0;
  }
  if (const RealEnd* r = std::get_if<RealEnd>(&u))
    return r->sign == std::get<RealEnd>(v).sign ? 0.0 : 2.0;
  const JoinCoord& j1 = std::get<JoinCoord>(u);
  const JoinCoord& j2 = std::get<JoinCoord>(v);
  double d = std::abs(j1.slope - j2.slope);
  if (j1.parts->left && j2.parts->left)
    d = std::max(d, boundary_deviation(*j1.parts->left, *j2.parts->left));
  else if (bool(j1.parts->left) != bool(j2.parts->left))
    d = std::max(d, 2.0);
  if (j1.parts->right && j2.parts->right)
    d = std::max(d, boundary_deviation(*j1.parts->right, *j2.parts->right));
  else if (bool(j1.parts->right) != bool(j2.parts->right))
    d = std::max(d, 2.0);
  return d;
}

CheckReport verify_boundary_identity(const ExtensionPipeline& pl, const BoundaryMap& g,
                                     const std::vector<BoundaryPoint>& sample, double horizon) {
  CheckReport rep;
  rep.name = "verify_boundary_identity";
  double reach = pow_comp(pl.r, horizon, pl.eps);
  if (reach < 10.0) {
    rep.verdict = Verdict::Inconclusive;
    std::ostringstream os;
    os << "r grows too slowly for the horizon: r(horizon^eps)^(1/eps) = " << reach << " < 10";
    rep.witness = os.str();
    return rep;
  }
  MapUnderTest rad = radial_extension_map(pl, g, "rad");
  rep.worst = 0.0;
  for (const auto& x : sample) {
    LimitResult lr = induced_boundary_map(rad, x, horizon, pl.dc_tgt);
    if (!lr.limit) {
      rep.verdict = Verdict::Inconclusive;
      rep.witness = "induced map not Cauchy at " + boundary_to_string(x) + ": " + lr.note;
      return rep;
    }
    double dev = boundary_deviation(*lr.limit, g(x));
    if (dev > rep.worst) {
      rep.worst = dev;
      rep.witness = boundary_to_string(x) + " -> " + boundary_to_string(*lr.limit) + " vs " +
                    boundary_to_string(g(x));
    }
  }
  rep.verdict = Verdict::Pass;  // caller compares rep.worst against its tolerance
  return rep;
}

}  // namespace ccx
