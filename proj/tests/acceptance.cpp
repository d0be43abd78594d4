// Desk-scale acceptance checks: one pass/fail line per criterion.
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccx/boundary.hpp"
#include "ccx/cone.hpp"
#include "ccx/core.hpp"
#include "ccx/dv.hpp"
#include "ccx/maps.hpp"
#include "ccx/spaces.hpp"

using namespace ccx;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void run(int index, const char* name, const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string err;
  try {
    err = body();
  } catch (const std::exception& e) {
    err = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (err.empty()) {
    std::printf("[PASS] %2d. %-34s (%.2f s)\n", index, name, secs);
  } else {
    std::printf("[FAIL] %2d. %-34s (%.2f s): %s\n", index, name, secs, err.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

DerivedConstants geodesic_dc(double omega_estimate = 0.0) {
  ConvexityParams p;  // lambda=1, k=0, E=1, C=0, theta=id
  return derive_constants(p, omega_estimate);
}

std::string random_reduced_word(std::mt19937_64& rng, int len) {
  static const char* letters = "abAB";
  std::string w;
  std::uniform_int_distribution<int> u4(0, 3), u3(0, 2);
  while (int(w.size()) < len) {
    if (w.empty()) {
      w.push_back(letters[u4(rng)]);
    } else {
      char bad = inverse_letter(w.back());
      char c;
      do {
        c = letters[u4(rng)];
      } while (c == bad);
      w.push_back(c);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

std::string convexity_axiom() {
  ConvexityParams p;  // E = 1, C = 0
  auto sp = h2_space();
  std::mt19937_64 rng(101);
  double worst = -kInf;
  for (int i = 0; i < 1000; ++i) {
    Point a = sp->sample(rng, 8.0), b = sp->sample(rng, 8.0);
    Point c = sp->sample(rng, 8.0), d = sp->sample(rng, 8.0);
    QuasiGeodesic gamma = sp->geodesic(a, b);
    QuasiGeodesic eta = sp->geodesic(c, d);
    SamplingGrid grid = uniform_grid(20, 20, gamma.length, eta.length);
    worst = std::max(worst, verify_convexity(gamma, eta, p, grid));
  }
  if (worst > 1e-9) {
    std::ostringstream os;
    os << "worst convexity slack " << worst << " > 1e-9";
    return os.str();
  }
  return "";
}

std::string tree_product_oracle() {
  DerivedConstants dc = geodesic_dc();
  auto tr = f2_tree();
  auto check_pair = [&](const std::string& x, const std::string& y) -> std::string {
    double got = point_product(*tr, XPoint{Point{tree_vertex(x)}}, XPoint{Point{tree_vertex(y)}},
                               dc, 1000.0);
    double dx = double(x.size()), dy = double(y.size());
    double d = f2_distance(tree_vertex(x), tree_vertex(y));
    double expect;
    if (dx == 0.0 || dy == 0.0) {
      expect = 0.0;  // basepoint lies in the ball B(O, 2*lambda*theta(0)+k) = {O}
    } else {
      double pgp = (dx + dy - d) / 2.0;
      expect = std::min(std::min(dx, dy), pgp + dc.D + 1.0);
    }
    if (got != expect) {
      std::ostringstream os;
      os << "product(" << (x.empty() ? "e" : x) << ", " << (y.empty() ? "e" : y) << ") = " << got
         << ", expected " << expect;
      return os.str();
    }
    return "";
  };
  // sampled slice of the exhaustive depth <= 8 pair set (capped at 1e5 pairs)
  std::vector<std::string> shallow;
  for (int d = 0; d <= 8; ++d)
    for (auto& w : all_words(d)) shallow.push_back(w);
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<std::size_t> u(0, shallow.size() - 1);
  for (int i = 0; i < 100000; ++i) {
    std::string err = check_pair(shallow[u(rng)], shallow[u(rng)]);
    if (!err.empty()) return err;
  }
  // 1e3 random pairs at depth <= 12
  std::uniform_int_distribution<int> ud(0, 12);
  for (int i = 0; i < 1000; ++i) {
    std::string err =
        check_pair(random_reduced_word(rng, ud(rng)), random_reduced_word(rng, ud(rng)));
    if (!err.empty()) return err;
  }
  return "";
}

std::string quasi_ultrametric() {
  DerivedConstants dc = geodesic_dc();
  auto sp = h2_space();
  double omega = estimate_omega(*sp, 1000, 10.0, 201 /* seed A */, dc, 1000.0);
  double bound = 1.01 * omega;
  std::mt19937_64 rng(202 /* seed B, disjoint */);
  for (int i = 0; i < 1000; ++i) {
    Point x = sp->sample(rng, 10.0), y = sp->sample(rng, 10.0), z = sp->sample(rng, 10.0);
    double xy = point_product(*sp, XPoint{x}, XPoint{y}, dc, 1000.0);
    double yz = point_product(*sp, XPoint{y}, XPoint{z}, dc, 1000.0);
    double xz = point_product(*sp, XPoint{x}, XPoint{z}, dc, 1000.0);
    struct Role {
      double lhs, m1, m2;
    } roles[3] = {{xz, xy, yz}, {xy, xz, yz}, {yz, xy, xz}};
    for (const auto& r : roles) {
      if (std::isinf(r.lhs) || r.lhs <= kGeomTol) continue;
      double need = std::min(r.m1, r.m2);
      if (std::isinf(need)) continue;
      if (need / r.lhs > bound + 1e-12) {
        std::ostringstream os;
        os << "triple " << i << ": min products " << need << " vs " << r.lhs
           << " exceeds 1.01*omega = " << bound;
        return os.str();
      }
    }
  }
  return "";
}

std::string visual_metric_sandwich() {
  ConvexityParams p;
  DerivedConstants dc0 = geodesic_dc();
  double omega = estimate_omega(*f2_tree(), 500, 10.0, 301, dc0, 1000.0);
  DerivedConstants dc = derive_constants(p, omega);
  double eps = default_visual_eps(dc);
  std::mt19937_64 rng(302);
  std::vector<BoundaryPoint> pts;
  for (int i = 0; i < 50; ++i)
    pts.push_back(BoundaryPoint{canonical_stream(random_reduced_word(rng, 14))});
  VisualMetricSample vm = chain_metric(*f2_tree(), pts, eps, dc, 1000.0);
  std::size_t n = pts.size();
  double min_ratio = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (vm.d_eps[i][j] != vm.d_eps[j][i]) return "chain metric not symmetric";
      if (i != j && vm.rho[i][j] > 0.0 && vm.d_eps[i][j] <= 0.0)
        return "zero chain distance between distinct directions";
      for (std::size_t k = 0; k < n; ++k)
        if (vm.d_eps[i][j] > vm.d_eps[i][k] + vm.d_eps[k][j] + 1e-15)
          return "chain metric triangle inequality violated";
      if (i != j && vm.rho[i][j] > 0.0) min_ratio = std::min(min_ratio, vm.d_eps[i][j] / vm.rho[i][j]);
    }
  }
  if (min_ratio < 0.25) {
    std::ostringstream os;
    os << "min(d_eps/rho) = " << min_ratio << " < 0.25";
    return os.str();
  }
  return "";
}

std::string dv_radiality() {
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<int> ud(0, 12);
  HPoint O{0.0, 1.0};
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    std::string w = random_reduced_word(rng, ud(rng));
    double got = h2_distance(dv_map(TreePoint{w, 0, 0.0}), O);
    worst = std::max(worst, std::abs(got - double(w.size())));
  }
  if (worst > 1e-9) {
    std::ostringstream os;
    os << "radial distance error " << worst << " > 1e-9";
    return os.str();
  }
  return "";
}

std::string coarse_two_to_one() {
  MapUnderTest f = dv_map_under_test();
  std::vector<double> R_grid;
  for (int r = 1; r <= 20; ++r) R_grid.push_back(double(r));
  NToOneOptions opt;
  opt.n_random = 100000;
  opt.source_radius = 12.0;
  opt.fail_threshold = 100.0;
  opt.seed = 501;
  // cylinder-adjacency candidates: consecutive depth-d words share an interval
  // endpoint, so their images crowd the same angles
  for (int d = 4; d <= 10; ++d) {
    std::vector<std::string> words = all_words(d);
    for (std::size_t i = 2; i < words.size(); ++i)
      opt.extra_candidates.push_back({Point{tree_vertex(words[i - 2])},
                                      Point{tree_vertex(words[i - 1])},
                                      Point{tree_vertex(words[i])}});
  }
  NToOneResult res = coarsely_n_to_one(f, 2, R_grid, opt);
  if (res.failed) return "violating triple found: " + res.witness;
  // n = 1 must fail: an abutting-cylinder pair has close images but far sources
  NToOneOptions opt1;
  opt1.n_random = 0;
  opt1.fail_threshold = 50.0;
  auto [w1, w2] = dv_witness_pair(38);
  opt1.extra_candidates = {{Point{tree_vertex(w1)}, Point{tree_vertex(w2)}}};
  NToOneResult res1 = coarsely_n_to_one(f, 1, {1.0}, opt1);
  if (!res1.failed) return "expected an explicit 1-to-1 failure witness, none found";
  return "";
}

std::string angle_bucket_count() {
  // depth-14 cylinders, buckets of width 2*pi*3^-14. Interval endpoints are
  // multiples of 1/(4*3^13); midpoints are odd multiples of 1/(8*3^13).
  // bucket(midpoint) = floor(midpoint * 3^14) = floor(3*m/8) for midpoint m/(8*3^13).
  const int depth = 14;
  std::int64_t pow3 = 1;
  for (int i = 0; i < depth; ++i) pow3 *= 3;  // 3^14
  std::vector<std::uint8_t> buckets(std::size_t(pow3), 0);
  int over = 0;
  // DFS over reduced words tracking lo in units of 1/(8*3^13): width = 2 units at depth 14
  struct Frame {
    char letter;
    std::int64_t lo;
    int d;
  };
  std::vector<Frame> stack;
  const std::string order = "abAB";
  std::int64_t unit_total = 8 * (pow3 / 3);  // 8*3^13 units across [0,1)
  std::int64_t w1 = unit_total / 4;          // width of a depth-1 cylinder in units
  for (int i = 0; i < 4; ++i) stack.push_back({order[std::size_t(i)], i * w1, 1});
  std::int64_t max_count = 0;
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    if (fr.d == depth) {
      std::int64_t m = fr.lo + 1;  // midpoint in units (width 2 at full depth)
      std::size_t b = std::size_t((3 * m) / 8);
      if (++buckets[b] > 2) ++over;
      if (buckets[b] > max_count) max_count = buckets[b];
      continue;
    }
    std::int64_t w = w1;
    for (int i = 1; i < fr.d; ++i) w /= 3;  // width at fr.d
    std::int64_t wc = w / 3;
    int child = 0;
    for (char c : order) {
      if (c == inverse_letter(fr.letter)) continue;
      stack.push_back({c, fr.lo + child * wc, fr.d + 1});
      ++child;
    }
  }
  if (over > 0) {
    std::ostringstream os;
    os << over << " angle buckets hold more than 2 depth-14 cylinders (max " << max_count << ")";
    return os.str();
  }
  return "";
}

// Shared pipeline builders -------------------------------------------------

BoundaryMap collapse_boundary_map() {
  return [](const BoundaryPoint& b) {
    return BoundaryPoint{H2Angle{collapse_map(std::get<WordStream>(b), 30)}};
  };
}

ExtensionPipeline collapse_pipeline(double horizon) {
  ExtensionPipeline pl;
  pl.eps = 0.5;
  pl.horizon = horizon;
  pl.source = f2_tree();
  pl.target = h2_space();
  pl.dc_src = geodesic_dc();
  pl.dc_tgt = geodesic_dc();
  std::vector<BoundaryPoint> grid;
  std::mt19937_64 rng(601);
  for (int i = 0; i < 10; ++i) grid.push_back(pl.source->sample_boundary(rng));
  for (int k : {1, 2, 4, 7, 11, 16, 22, 28}) {
    std::string stem(std::size_t(k), 'a');
    grid.push_back(BoundaryPoint{WordStream{stem, "b"}});
    grid.push_back(BoundaryPoint{WordStream{stem, "B"}});
  }
  pl.psi_table =
      psi_modulus(*pl.source, *pl.target, collapse_boundary_map(), grid, pl.dc_src, pl.dc_tgt,
                  horizon);
  std::vector<double> tg;
  for (int i = 1; i <= 60; ++i) tg.push_back(double(i) * horizon / 60.0);
  pl.r = admissible_r(table_function(pl.psi_table), pl.dc_src, 1.0, pl.eps, tg);
  return pl;
}

ExtensionPipeline h2_identity_pipeline(double horizon) {
  ExtensionPipeline pl;
  pl.eps = 0.5;
  pl.horizon = horizon;
  pl.source = h2_space();
  pl.target = h2_space();
  pl.dc_src = geodesic_dc();
  pl.dc_tgt = geodesic_dc();
  std::vector<BoundaryPoint> grid;
  double gap = kPi;
  for (int k = 0; k < 34; ++k) {  // angle pairs at dyadic separations: all product scales
    grid.push_back(BoundaryPoint{H2Angle{1.0}});
    grid.push_back(BoundaryPoint{H2Angle{1.0 + gap}});
    gap /= 2.0;
  }
  BoundaryMap id = [](const BoundaryPoint& b) { return b; };
  pl.psi_table = psi_modulus(*pl.source, *pl.target, id, grid, pl.dc_src, pl.dc_tgt, horizon);
  std::vector<double> tg;
  for (int i = 1; i <= 60; ++i) tg.push_back(double(i) * horizon / 60.0);
  pl.r = admissible_r(table_function(pl.psi_table), pl.dc_src, 1.0, pl.eps, tg);
  return pl;
}

std::string boundary_identity() {
  // g = collapse map on 100 word streams
  ExtensionPipeline pl = collapse_pipeline(1000.0);
  BoundaryMap g = collapse_boundary_map();
  std::mt19937_64 rng(602);
  std::vector<BoundaryPoint> sample;
  for (int i = 0; i < 100; ++i)
    sample.push_back(BoundaryPoint{canonical_stream(random_reduced_word(rng, 14))});
  CheckReport rep = verify_boundary_identity(pl, g, sample, 1000.0);
  if (rep.verdict == Verdict::Inconclusive) return "collapse case inconclusive: " + rep.witness;
  if (rep.worst > 1e-3) {
    std::ostringstream os;
    os << "collapse angle deviation " << rep.worst << " > 1e-3 at " << rep.witness;
    return os.str();
  }
  // g = id on H2
  ExtensionPipeline pli = h2_identity_pipeline(1000.0);
  BoundaryMap id = [](const BoundaryPoint& b) { return b; };
  std::vector<BoundaryPoint> angles;
  std::mt19937_64 rng2(603);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * kPi);
  for (int i = 0; i < 20; ++i) angles.push_back(BoundaryPoint{H2Angle{ua(rng2)}});
  CheckReport rep2 = verify_boundary_identity(pli, id, angles, 1000.0);
  if (rep2.verdict == Verdict::Inconclusive) return "identity case inconclusive: " + rep2.witness;
  if (rep2.worst > 1e-6) {
    std::ostringstream os;
    os << "identity angle deviation " << rep2.worst << " > 1e-6 at " << rep2.witness;
    return os.str();
  }
  return "";
}

std::string radial_extension_conclusions() {
  ExtensionPipeline pl = collapse_pipeline(1000.0);
  BoundaryMap g = collapse_boundary_map();
  MapUnderTest rad = radial_extension_map(pl, g, "rad_collapse");
  double eps = pl.eps;
  RoughContraction r = pl.r;
  auto reach = [r, eps](double t) { return std::pow(r(std::pow(t, eps)), 1.0 / eps); };
  double k1 = pl.dc_src.k1;  // sigma(t) = (rho(t)/lambda - k1) v 0 with lambda = 1
  RealFn sigma = [reach, k1](double t) { return std::max(0.0, reach(t) - k1); };
  std::vector<double> tg{50.0, 100.0, 200.0, 400.0, 700.0, 1000.0};
  double slack = radial_profile_slack(rad, sigma, 20, tg, 901, 1000.0);
  if (slack > 0.0) {
    std::ostringstream os;
    os << "radial profile slack " << slack << " > 0";
    return os.str();
  }
  RoughContraction rho{reach, 0.0};
  double prev = kInf;
  for (double depth : {6.0, 9.0, 12.0}) {
    EquivarianceReport er = equivariance_defect(rad, rho, 30, depth, 8, 902);
    if (!std::isfinite(er.H_observed)) return "equivariance defect not finite";
    if (er.H_observed > prev + 1e-9) {
      std::ostringstream os;
      os << "equivariance defect grew with depth: " << er.H_observed << " > " << prev;
      return os.str();
    }
    prev = er.H_observed;
  }
  return "";
}

std::string fixed_point_classifier() {
  DerivedConstants dc = geodesic_dc();
  // rotation about O by 0.7 rad
  MapUnderTest rot;
  rot.source = h2_space();
  rot.target = h2_space();
  rot.name = "rotation";
  rot.eval = [](const Point& p) {
    const HPoint& h = std::get<HPoint>(p);
    double rr = h2_distance(h, HPoint{0.0, 1.0});
    if (rr < 1e-12) return Point{HPoint{0.0, 1.0}};
    double th = h.has_polar ? h.ptheta : h2_ray_angle(h);
    return Point{h2_polar(rr, th + 0.7)};
  };
  IsometryClassification c1 = classify_isometry(rot, Point{HPoint{0.4, 1.3}}, 40, dc, 200.0);
  if (c1.kind != IsometryClassification::Elliptic)
    return std::string("rotation not classified Elliptic: ") + c1.note;
  // (x,y) -> (2x,2y): hyperbolic translation along the vertical axis through O
  MapUnderTest dbl;
  dbl.source = h2_space();
  dbl.target = h2_space();
  dbl.name = "double";
  dbl.eval = [](const Point& p) {
    const HPoint& h = std::get<HPoint>(p);
    return Point{HPoint{2.0 * h.x, 2.0 * h.y}};
  };
  IsometryClassification c2 = classify_isometry(dbl, Point{HPoint{0.0, 1.0}}, 40, dc, 200.0);
  if (c2.kind != IsometryClassification::FixedBoundaryPoint)
    return std::string("(2x,2y) did not yield a fixed boundary point: ") + c2.note;
  if (!(c2.fixed_product > 0.9 * 200.0)) {
    std::ostringstream os;
    os << "(2x,2y) fixed product " << c2.fixed_product << " <= 0.9*horizon";
    return os.str();
  }
  double want = kPi / 2.0;
  if (std::abs(std::get<H2Angle>(*c2.fixed).angle - want) > 1e-6)
    return "(2x,2y) fixed angle is not pi/2";
  // tree translation by ab
  MapUnderTest tr;
  tr.source = f2_tree();
  tr.target = f2_tree();
  tr.name = "left_mult_ab";
  tr.eval = [](const Point& p) {
    TreePoint t = std::get<TreePoint>(p);
    std::string gb = reduce_concat("ab", t.base);
    if (t.next == 0) return Point{tree_vertex(gb)};
    std::string gd = reduce_concat("ab", t.base + t.next);
    if (gd.size() > gb.size()) return Point{TreePoint{gb, gd.back(), t.offset}};
    return Point{TreePoint{gd, gb.back(), 1.0 - t.offset}};
  };
  IsometryClassification c3 = classify_isometry(tr, Point{tree_vertex("")}, 40, dc, 200.0);
  if (c3.kind != IsometryClassification::FixedBoundaryPoint)
    return std::string("tree translation did not yield a fixed boundary point: ") + c3.note;
  if (std::get<WordStream>(*c3.fixed).take(6) != "ababab")
    return "tree translation fixed stream is not abab...";
  return "";
}

std::string homotopy_endpoints() {
  ExtensionPipeline pl = collapse_pipeline(1000.0);
  BoundaryMap g = collapse_boundary_map();
  TwoContractions tc{pl.r, pl.r};
  ContractionVsMap cv{identity_contraction(), pl.r};
  std::mt19937_64 rng(1101);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  auto h2 = h2_space();
  double worst_end = 0.0, modulus = 0.0;
  Point prev_pt;
  double prev_t = 0.0;
  bool have_prev = false;
  for (int i = 0; i < 1000; ++i) {
    Point x = pl.source->sample(rng, 400.0);
    double T = pl.source->distance(pl.source->basepoint(), x);
    if (T < 1.0) continue;
    Point rad = radial_extension(pl, g, x);
    // endpoint identities: H(x,0) and H(x,T) both land on rad g(x) when r1=r2=r
    worst_end = std::max(worst_end, h2->distance(homotopy_eval(pl, g, tc, x, 0.0), rad));
    worst_end = std::max(worst_end, h2->distance(homotopy_eval(pl, g, tc, x, T), rad));
    // contraction-vs-map: H(x,0) = eta_x(T), H(x,T) = rad g(x)
    Point start = homotopy_eval(pl, g, cv, x, 0.0);
    Ray eta = pl.target->ray(g(pl.source->direction_of(x)), pl.horizon);
    worst_end = std::max(worst_end, h2->distance(start, eta(std::min(T, pl.horizon))));
    worst_end = std::max(worst_end, h2->distance(homotopy_eval(pl, g, cv, x, T), rad));
    // bornologous modulus on consecutive nearby samples of the track
    double t = uu(rng) * T;
    Point ht = homotopy_eval(pl, g, tc, x, t);
    if (have_prev && std::abs(t - prev_t) <= 5.0)
      modulus = std::max(modulus, h2->distance(ht, prev_pt));
    prev_pt = homotopy_eval(pl, g, tc, x, std::min(T, t + uu(rng)));
    prev_t = t;
    have_prev = true;
  }
  if (worst_end > 1e-9) {
    std::ostringstream os;
    os << "endpoint identity deviation " << worst_end << " > 1e-9";
    return os.str();
  }
  if (!std::isfinite(modulus)) return "bornologous modulus not finite";
  return "";
}

std::string product_laws() {
  NToOneOptions opt;
  opt.n_random = 100000;
  opt.source_radius = 12.0;
  opt.fail_threshold = 100.0;
  opt.seed = 1201;
  NToOneResult r1 = coarsely_n_to_one(dv_times_id(), 2, {5.0}, opt);
  if (r1.failed) return "f x id violated the 2-to-1 spot check: " + r1.witness;
  NToOneResult r2 = coarsely_n_to_one(dv_times_dv(), 4, {5.0}, opt);
  if (r2.failed) return "f x f violated the 4-to-1 spot check: " + r2.witness;
  // l1 product distance is exactly the sum of the component distances
  auto prod = product_space(f2_tree(), real_line());
  std::mt19937_64 rng(1202);
  for (int i = 0; i < 1000; ++i) {
    Point p = prod->sample(rng, 10.0), q = prod->sample(rng, 10.0);
    const auto& pp = *std::get<ProductPoint>(p).pq;
    const auto& qq = *std::get<ProductPoint>(q).pq;
    double manual =
        f2_tree()->distance(pp.left, qq.left) + real_line()->distance(pp.right, qq.right);
    if (prod->distance(p, q) != manual) return "l1 product distance is not the exact sum";
  }
  return "";
}

}  // namespace

int main() {
  run(1, "convexity axiom (H2, E=1, C=0)", convexity_axiom);
  run(2, "tree Gromov-product oracle", tree_product_oracle);
  run(3, "quasi-ultrametric inequality", quasi_ultrametric);
  run(4, "visual metric sandwich", visual_metric_sandwich);
  run(5, "dv_map radiality", dv_radiality);
  run(6, "coarse 2-to-1 search", coarse_two_to_one);
  run(7, "angle bucket count at depth 14", angle_bucket_count);
  run(8, "boundary identity of rad g", boundary_identity);
  run(9, "radial-extension conclusions", radial_extension_conclusions);
  run(10, "fixed point classifier", fixed_point_classifier);
  run(11, "homotopy endpoints", homotopy_endpoints);
  run(12, "product laws", product_laws);
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
