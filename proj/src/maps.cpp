#include "ccx/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccx {

MapUnderTest identity_map(SpacePtr sp) {
  MapUnderTest f;
  f.source = sp;
  f.target = sp;
  f.eval = [](const Point& p) { return p; };
  f.name = "id_" + sp->name();
  return f;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

LipschitzFit estimate_lipschitz(const MapUnderTest& f, int n_pairs, double radius,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PairSampler sampler = default_pair_sampler(f.source, radius);
  std::vector<std::pair<double, double>> data;  // (dx, dy)
  for (int i = 0; i < n_pairs; ++i) {
    auto [x, xp] = sampler(rng);
    data.push_back({f.source->distance(x, xp), f.target->distance(f(x), f(xp))});
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [dx, dy] : data) {
    sx += dx;
    sy += dy;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  double n = double(data.size());
  double var = sxx - sx * sx / n;
  double A = var > 1e-12 ? (sxy - sx * sy / n) / var : 0.0;
  A = std::max(0.0, A);
  double B = 0.0;
  for (auto& [dx, dy] : data) B = std::max(B, dy - A * dx);
  return LipschitzFit{A, B, int(data.size())};
}

PairSampler default_pair_sampler(SpacePtr sp, double radius) {
  return [sp, radius](std::mt19937_64& rng) -> std::pair<Point, Point> {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Point x = sp->sample(rng, radius);
    if (u01(rng) < 0.5) return {x, sp->sample(rng, radius)};
    double T = sp->distance(sp->basepoint(), x);
    double t_cut = u01(rng) * T;
    return {x, sp->branch_from(rng, x, t_cut, T - t_cut)};
  };
}

ModulusTable visual_modulus(const MapUnderTest& f, const std::vector<double>& scale_grid,
                            int samples_per_scale, std::uint64_t seed,
                            const DerivedConstants& dc_src, const DerivedConstants& dc_tgt,
                            double radius, double horizon, const PairSampler& sampler) {
  std::mt19937_64 rng(seed);
  PairSampler gen = sampler ? sampler : default_pair_sampler(f.source, radius);
  std::size_t n_pairs = scale_grid.size() * std::size_t(samples_per_scale);
  std::vector<std::pair<double, double>> prods;  // (src product, image product)
  for (std::size_t i = 0; i < n_pairs; ++i) {
    auto [x, y] = gen(rng);
    double ps = point_product(*f.source, x, y, dc_src, horizon);
    double pt = point_product(*f.target, f(x), f(y), dc_tgt, horizon);
    prods.push_back({ps, pt});
  }
  ModulusTable table;
  table.direction = "forward";
  std::vector<double> grid = scale_grid;
  std::sort(grid.begin(), grid.end());
  double envelope = -kInf;
  for (double s : grid) {
    double r = kInf;
    int count = 0;
    for (auto& [ps, pt] : prods)
      if (ps > s) {
        r = std::min(r, pt);
        ++count;
      }
    ModulusEntry e;
    e.s = s;
    e.samples = count;
    e.conclusive = count > 0;
    if (count > 0) {
      envelope = std::max(envelope, r);
      e.r = envelope;
    }
    table.entries.push_back(e);
  }
  return table;
}

LimitResult induced_boundary_map(const MapUnderTest& f, const BoundaryPoint& x, double horizon,
                                 const DerivedConstants& dc_tgt, int n_tail) {
  Ray gamma = f.source->ray(x, horizon);
  std::vector<Point> images;
  for (int i = 1; i <= n_tail; ++i) images.push_back(f(gamma.eval(horizon * double(i) / n_tail)));
  return limit_of_sequence(*f.target, images, dc_tgt, horizon);
}

namespace {

std::vector<Ray> sample_rays(const MapUnderTest& f, int n_rays, double radius, double horizon,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Ray> rays;
  for (int i = 0; i < n_rays; ++i)
    rays.push_back(f.source->ray(f.source->sample_boundary(rng), horizon));
  (void)radius;
  return rays;
}

}  // namespace

RadialProfile radial_profile(const MapUnderTest& f, int n_rays, const std::vector<double>& t_grid,
                             std::uint64_t seed, double radius) {
  double horizon = t_grid.empty() ? 1.0 : *std::max_element(t_grid.begin(), t_grid.end()) + 1.0;
  std::vector<Ray> rays = sample_rays(f, n_rays, radius, horizon, seed);
  Point fa = f(f.a());
  RadialProfile prof;
  for (double t : t_grid) {
    double best = kInf;
    for (const Ray& g : rays) best = std::min(best, f.target->distance(f(g.eval(t)), fa));
    prof.t.push_back(t);
    prof.sigma_star.push_back(best);
  }
  return prof;
}

double radial_profile_slack(const MapUnderTest& f, const RealFn& sigma, int n_rays,
                            const std::vector<double>& t_grid, std::uint64_t seed, double radius) {
  RadialProfile prof = radial_profile(f, n_rays, t_grid, seed, radius);
  double worst = -kInf;
  for (std::size_t i = 0; i < prof.t.size(); ++i)
    worst = std::max(worst, sigma(prof.t[i]) - prof.sigma_star[i]);
  return worst;
}

EquivarianceReport equivariance_defect(const MapUnderTest& f, const RoughContraction& rho,
                                       int n_segments, double radius, int t_steps,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Point fa = f(f.a());
  EquivarianceReport rep;
  rep.basepoint_deviation = f.target->distance(fa, f.b());
  for (int i = 0; i < n_segments; ++i) {
    Point x = f.source->sample(rng, radius);
    QuasiGeodesic gamma = f.source->geodesic(f.a(), x);
    QuasiGeodesic eta = f.target->geodesic(fa, f(x));
    double t_max = std::min(gamma.length, generalized_inverse(rho.eval, eta.length,
                                                              gamma.length + eta.length + 10.0));
    for (int j = 0; j <= t_steps; ++j) {
      double t = t_max * double(j) / t_steps;
      double d = f.target->distance(f(gamma.eval(t)), eta.eval(std::min(rho(t), eta.length)));
      rep.H_observed = std::max(rep.H_observed, d);
    }
    ++rep.samples;
  }
  return rep;
}

double rho_hat_T(const RhoHatParams& p) { return p.lambda1 * p.Omega + p.nu1 + 2.0 * p.H; }

RealFn rho_hat_bound(const RhoHatParams& p) {
  if (p.sigma(p.probe) < 1.0 || p.rho(p.probe) < 1.0)
    throw std::invalid_argument("rho_hat_bound: sigma or rho bounded on the probe range");
  double T = rho_hat_T(p);
  double c = 1.0 / (p.E_prime * T);
  RoughContraction sigma = p.sigma, rho = p.rho;
  double Omega = p.Omega, lp = p.lambda_prime, kp = p.k_prime, tau = p.tau, probe = p.probe;
  return [sigma, rho, Omega, lp, kp, tau, c, probe](double t) {
    double S = (1.0 / lp) * std::min(sigma(t / Omega), rho(t / Omega)) - kp / lp;
    double delta = generalized_inverse(rho.eval, std::max(0.0, S - tau), probe);
    return c * std::max(0.0, rho(delta) - tau);
  };
}

CheckReport rho_hat_check(const MapUnderTest& f, const RealFn& rho_hat,
                          const DerivedConstants& dc_src, const DerivedConstants& dc_tgt,
                          int n_pairs, double radius, std::uint64_t seed, double horizon,
                          const PairSampler& sampler) {
  std::mt19937_64 rng(seed);
  PairSampler gen = sampler ? sampler : default_pair_sampler(f.source, radius);
  CheckReport rep;
  rep.name = "rho_hat_check";
  rep.seed = seed;
  rep.worst = -kInf;
  for (int i = 0; i < n_pairs; ++i) {
    auto [x, y] = gen(rng);
    double ps = point_product(*f.source, x, y, dc_src, horizon);
    double pt = point_product(*f.target, f(x), f(y), dc_tgt, horizon);
    if (std::isinf(pt)) continue;
    double bound = rho_hat(std::min(ps, horizon));
    double viol = bound - pt;
    if (viol > rep.worst) {
      rep.worst = viol;
      std::ostringstream os;
      os << "x=" << point_to_string(x) << " y=" << point_to_string(y) << " (x|y)=" << ps
         << " bound=" << bound << " (fx|fy)=" << pt;
      rep.witness = os.str();
    }
  }
  rep.verdict = rep.worst <= kGeomTol ? Verdict::Pass : Verdict::Fail;
  return rep;
}

CheckReport boundary_modulus_check(const MapUnderTest& f, const std::vector<BoundaryPoint>& sample,
                                   const RealFn& rho_hat, const DerivedConstants& dc_src,
                                   const DerivedConstants& dc_tgt, double horizon) {
  CheckReport rep;
  rep.name = "boundary_modulus_check";
  double Omega = std::max(dc_src.omega_hat, dc_tgt.omega_hat);
  std::vector<BoundaryPoint> images;
  for (const auto& u : sample) {
    LimitResult lr = induced_boundary_map(f, u, horizon, dc_tgt);
    if (!lr.limit) {
      rep.verdict = Verdict::Inconclusive;
      rep.witness = "induced map tail not Cauchy at horizon: " + boundary_to_string(u);
      return rep;
    }
    images.push_back(*lr.limit);
  }
  rep.worst = -kInf;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      double pu = point_product(*f.source, sample[i], sample[j], dc_src, horizon);
      double pv = point_product(*f.target, images[i], images[j], dc_tgt, horizon);
      if (std::isinf(pv)) continue;
      double bound = rho_hat(std::min(pu, horizon) / (Omega * Omega)) / (Omega * Omega);
      double viol = bound - pv;
      if (viol > rep.worst) {
        rep.worst = viol;
        std::ostringstream os;
        os << "u=" << boundary_to_string(sample[i]) << " v=" << boundary_to_string(sample[j])
           << " (u|v)=" << pu << " bound=" << bound << " (fu|fv)=" << pv;
        rep.witness = os.str();
      }
    }
  }
  double eps_src = default_visual_eps(dc_src), eps_tgt = default_visual_eps(dc_tgt);
  VisualMetricSample src_chain = chain_metric(*f.source, sample, eps_src, dc_src, horizon);
  VisualMetricSample tgt_chain = chain_metric(*f.target, images, eps_tgt, dc_tgt, horizon);
  double lip = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j)
      if (src_chain.d_eps[i][j] > 0.0)
        lip = std::max(lip, tgt_chain.d_eps[i][j] / src_chain.d_eps[i][j]);
  rep.values["chain_lipschitz"] = lip;
  rep.verdict = rep.worst <= kGeomTol ? Verdict::Pass : Verdict::Fail;
  return rep;
}

CheckReport coarsely_surjective_check(const MapUnderTest& f, double ball_radius, int n_net,
                                      int n_source, std::uint64_t seed, double pass_radius) {
  std::mt19937_64 rng(seed);
  std::vector<Point> images;
  for (int i = 0; i < n_source; ++i)
    images.push_back(f(f.source->sample(rng, 2.0 * ball_radius + 10.0)));
  CheckReport rep;
  rep.name = "coarsely_surjective_check";
  rep.seed = seed;
  double S = 0.0;
  for (int i = 0; i < n_net; ++i) {
    Point y = f.target->sample(rng, ball_radius);
    double best = kInf;
    for (const auto& im : images) best = std::min(best, f.target->distance(y, im));
    if (best > S) {
      S = best;
      rep.witness = "net point " + point_to_string(y);
    }
  }
  rep.worst = S;
  rep.values["covering_radius"] = S;
  rep.verdict = S <= pass_radius ? Verdict::Pass : Verdict::Fail;
  return rep;
}

namespace {

struct TupleStats {
  double min_src = kInf;
  double max_src = -kInf;
  double min_img = kInf;
  double max_img = -kInf;
};

template <typename SrcFn, typename ImgFn>
TupleStats tuple_stats(const std::vector<Point>& pts, const MapUnderTest& f, SrcFn src,
                       ImgFn img) {
  TupleStats st;
  std::vector<Point> images;
  for (const auto& p : pts) images.push_back(f(p));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = src(pts[i], pts[j]);
      double t = img(images[i], images[j]);
      st.min_src = std::min(st.min_src, s);
      st.max_src = std::max(st.max_src, s);
      st.min_img = std::min(st.min_img, t);
      st.max_img = std::max(st.max_img, t);
    }
  }
  return st;
}

std::string tuple_string(const std::vector<Point>& pts) {
  std::string s;
  for (const auto& p : pts) s += point_to_string(p) + " ";
  return s;
}

}  // namespace

NToOneResult coarsely_n_to_one(const MapUnderTest& f, int n, const std::vector<double>& R_grid,
                               const NToOneOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<double> grid = R_grid;
  std::sort(grid.begin(), grid.end());
  std::vector<double> S(grid.size(), 0.0);
  std::vector<long> counts(grid.size(), 0);
  NToOneResult res;
  auto src = [&](const Point& p, const Point& q) { return f.source->distance(p, q); };
  auto img = [&](const Point& p, const Point& q) { return f.target->distance(p, q); };
  auto consider = [&](const std::vector<Point>& tuple) {
    TupleStats st = tuple_stats(tuple, f, src, img);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (st.max_img <= grid[k]) {
        ++counts[k];
        S[k] = std::max(S[k], st.min_src);
        if (st.min_src > opt.fail_threshold && !res.failed) {
          res.failed = true;
          res.witness = "tuple with image spread " + std::to_string(st.max_img) +
                        " but source separation " + std::to_string(st.min_src) + ": " +
                        tuple_string(tuple);
        }
      }
    }
  };
  for (int i = 0; i < opt.n_random; ++i) {
    std::vector<Point> tuple;
    for (int j = 0; j < n + 1; ++j) tuple.push_back(f.source->sample(rng, opt.source_radius));
    consider(tuple);
  }
  for (const auto& tuple : opt.extra_candidates)
    if (int(tuple.size()) == n + 1) consider(tuple);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0) S[k] = std::max(S[k], S[k - 1]);  // monotone envelope
    res.table.push_back(NToOneRow{grid[k], S[k], counts[k]});
  }
  return res;
}

NToOneResult visually_n_to_one(const MapUnderTest& f, int n, const std::vector<double>& R_grid,
                               const DerivedConstants& dc_src, const DerivedConstants& dc_tgt,
                               const NToOneOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<double> grid = R_grid;
  std::sort(grid.begin(), grid.end());
  std::vector<double> S(grid.size(), 0.0);
  std::vector<long> counts(grid.size(), 0);
  NToOneResult res;
  auto src = [&](const Point& p, const Point& q) {
    return point_product(*f.source, p, q, dc_src, opt.horizon);
  };
  auto img = [&](const Point& p, const Point& q) {
    return point_product(*f.target, p, q, dc_tgt, opt.horizon);
  };
  auto consider = [&](const std::vector<Point>& tuple) {
    TupleStats st = tuple_stats(tuple, f, src, img);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (st.max_src < grid[k]) {
        ++counts[k];
        double val = std::isinf(st.min_img) ? opt.horizon : st.min_img;
        S[k] = std::max(S[k], val);
        if (val > opt.fail_threshold && !res.failed) {
          res.failed = true;
          res.witness = "tuple with source products < " + std::to_string(grid[k]) +
                        " but image products >= " + std::to_string(val) + ": " +
                        tuple_string(tuple);
        }
      }
    }
  };
  for (int i = 0; i < opt.n_random; ++i) {
    std::vector<Point> tuple;
    for (int j = 0; j < n + 1; ++j) tuple.push_back(f.source->sample(rng, opt.source_radius));
    consider(tuple);
  }
  for (const auto& tuple : opt.extra_candidates)
    if (int(tuple.size()) == n + 1) consider(tuple);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0) S[k] = std::max(S[k], S[k - 1]);
    res.table.push_back(NToOneRow{grid[k], S[k], counts[k]});
  }
  return res;
}

IsometryClassification classify_isometry(const MapUnderTest& f, const Point& x0, int n_iter,
                                         const DerivedConstants& dc, double horizon) {
  IsometryClassification out;
  const Space& sp = *f.source;
  {  // distance preservation spot check
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
      Point p = sp.sample(rng, 8.0), q = sp.sample(rng, 8.0);
      if (std::abs(sp.distance(f(p), f(q)) - sp.distance(p, q)) > 1e-6) {
        out.note = "not an isometry on samples";
        return out;
      }
    }
  }
  std::vector<Point> orbit{x0};
  for (int i = 0; i < n_iter; ++i) orbit.push_back(f(orbit.back()));
  auto window_diam = [&](int lo, int hi) {
    double d = 0.0;
    for (int i = lo; i < hi; ++i)
      for (int j = i + 1; j < hi; ++j) d = std::max(d, sp.distance(orbit[i], orbit[j]));
    return d;
  };
  int N = int(orbit.size());
  double d_prev = window_diam(N / 4, N / 2);
  double d_last = window_diam(N / 2, N);
  if (d_last - d_prev < dc.k1) {
    out.kind = IsometryClassification::Elliptic;
    out.note = "orbit diameter stagnated";
    return out;
  }
  std::vector<Point> tail(orbit.end() - std::min(N, 8), orbit.end());
  LimitResult lim = limit_of_sequence(sp, tail, dc, horizon);
  if (!lim.limit) {
    out.note = "unbounded orbit but " + lim.note;
    return out;
  }
  LimitResult img = induced_boundary_map(f, *lim.limit, horizon, dc);
  if (!img.limit) {
    out.note = "induced image of orbit limit not Cauchy: " + img.note;
    return out;
  }
  out.fixed_product = point_product(sp, *img.limit, *lim.limit, dc, horizon);
  if (out.fixed_product > 0.9 * horizon) {
    out.kind = IsometryClassification::FixedBoundaryPoint;
    out.fixed = *lim.limit;
    out.note = "boundary point fixed at scale";
  } else {
    out.note = "orbit limit not fixed at scale";
  }
  return out;
}

}  // namespace ccx
