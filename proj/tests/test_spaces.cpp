#include <doctest.h>

#include <cmath>
#include <random>

#include "ccx/spaces.hpp"

using namespace ccx;

namespace {

HPoint hp(double x, double y) { return HPoint{x, y}; }

void check_metric_axioms(const SpacePtr& sp, double radius, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 300; ++i) {
    Point a = sp->sample(rng, radius);
    Point b = sp->sample(rng, radius);
    Point c = sp->sample(rng, radius);
    double dab = sp->distance(a, b);
    double dba = sp->distance(b, a);
    double dac = sp->distance(a, c);
    double dcb = sp->distance(c, b);
    CHECK(dab >= 0.0);
    CHECK(sp->distance(a, a) <= tol);
    CHECK(std::abs(dab - dba) <= tol);
    CHECK(dab <= dac + dcb + tol);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Hyperbolic plane

TEST_CASE("h2 distance oracles") {
  CHECK(h2_distance(hp(0, 1), hp(0, 1)) == doctest::Approx(0.0));
  // vertical segment: d((0,1),(0,e^2)) = 2
  CHECK(h2_distance(hp(0, 1), hp(0, std::exp(2.0))) == doctest::Approx(2.0).epsilon(1e-12));
  // cosh d = 1 + ((x1-x2)^2+(y1-y2)^2)/(2 y1 y2): (-1,1),(1,1) -> cosh d = 3
  CHECK(h2_distance(hp(-1, 1), hp(1, 1)) == doctest::Approx(std::acosh(3.0)).epsilon(1e-12));
}

TEST_CASE("h2 polar distance agrees with coordinate distance near the basepoint") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ur(0.0, 15.0), ua(0.0, 2 * 3.14159265358979);
  for (int i = 0; i < 200; ++i) {
    HPoint p = h2_polar(ur(rng), ua(rng));
    HPoint q = h2_polar(ur(rng), ua(rng));
    HPoint pc = hp(p.x, p.y), qc = hp(q.x, q.y);  // strip the polar cache
    CHECK(h2_distance(p, q) == doctest::Approx(h2_distance(pc, qc)).epsilon(1e-7));
  }
}

TEST_CASE("h2 polar distance is sane far out where coordinates degenerate") {
  // points on the same ray: distance is the radius difference
  HPoint p = h2_polar(300.0, 1.0);
  HPoint q = h2_polar(500.0, 1.0);
  CHECK(h2_distance(p, q) == doctest::Approx(200.0).epsilon(1e-9));
  // opposite rays through O: distance is the radius sum
  HPoint r = h2_polar(400.0, 0.5);
  HPoint s = h2_polar(250.0, 0.5 + 3.14159265358979323846);
  CHECK(h2_distance(r, s) == doctest::Approx(650.0).epsilon(1e-9));
  // triangle inequality against O on distinct rays
  HPoint u = h2_polar(100.0, 0.3), v = h2_polar(120.0, 2.1);
  double duv = h2_distance(u, v);
  CHECK(duv <= 220.0 + 1e-6);
  CHECK(duv >= 20.0 - 1e-6);
}

TEST_CASE("h2 geodesic oracles") {
  // vertical geodesic (0,1)->(0,e): midpoint at arclength 1/2 is (0, e^{1/2})
  QuasiGeodesic g = h2_geodesic(hp(0, 1), hp(0, std::exp(1.0)));
  CHECK(g.length == doctest::Approx(1.0));
  HPoint m = std::get<HPoint>(g(0.5));
  CHECK(m.x == doctest::Approx(0.0));
  CHECK(m.y == doctest::Approx(std::exp(0.5)).epsilon(1e-9));
  // semicircle (-1,1)->(1,1): midpoint is the apex (0, sqrt 2)
  QuasiGeodesic h = h2_geodesic(hp(-1, 1), hp(1, 1));
  CHECK(h.length == doctest::Approx(std::acosh(3.0)));
  HPoint apex = std::get<HPoint>(h(h.length / 2));
  CHECK(apex.x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(apex.y == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  // endpoints reproduce exactly enough
  CHECK(h2_distance(std::get<HPoint>(h(0.0)), hp(-1, 1)) <= 1e-9);
  CHECK(h2_distance(std::get<HPoint>(h(h.length)), hp(1, 1)) <= 1e-9);
}

TEST_CASE("h2 geodesics are unit speed") {
  std::mt19937_64 rng(7);
  auto sp = h2_space();
  for (int i = 0; i < 50; ++i) {
    Point a = sp->sample(rng, 6.0);
    Point b = sp->sample(rng, 6.0);
    double d = sp->distance(a, b);
    if (d < 1e-6) continue;
    QuasiGeodesic g = sp->geodesic(a, b);
    CHECK(g.length == doctest::Approx(d).epsilon(1e-9));
    for (double f : {0.25, 0.5, 0.75}) {
      double t = f * d;
      CHECK(sp->distance(g(0.0), g(t)) == doctest::Approx(t).epsilon(1e-6));
    }
  }
}

TEST_CASE("h2 ray straight up") {
  Ray r = h2_ray(3.14159265358979323846 / 2.0, 100.0);
  HPoint p = std::get<HPoint>(r(3.0));
  CHECK(p.x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(p.y == doctest::Approx(std::exp(3.0)).epsilon(1e-7));
  // unit speed along the whole horizon
  CHECK(h2_distance(std::get<HPoint>(r(10.0)), std::get<HPoint>(r(90.0))) ==
        doctest::Approx(80.0).epsilon(1e-9));
}

TEST_CASE("h2 direction_of round-trips through the ray") {
  auto sp = h2_space();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    Point v = sp->sample(rng, 8.0);
    double d = sp->distance(sp->basepoint(), v);
    if (d < 1e-3) continue;
    Ray r = sp->ray(sp->direction_of(v), 50.0);
    CHECK(sp->distance(r(d), v) <= 1e-6);
  }
}

// ---------------------------------------------------------------------------
// Tree of F2

TEST_CASE("word reduction utilities") {
  CHECK(is_reduced("abAB"));
  CHECK(!is_reduced("aA"));
  CHECK(inverse_letter('a') == 'A');
  CHECK(inverse_letter('B') == 'b');
  CHECK(reduce_concat("ab", "Ba") == "aa");
  CHECK(reduce_concat("ab", "BA") == "");
  CHECK(word_inverse("abA") == "aBA");
}

TEST_CASE("tree distance oracles") {
  CHECK(f2_distance(tree_vertex(""), tree_vertex("abA")) == doctest::Approx(3.0));
  CHECK(f2_distance(tree_vertex("ab"), tree_vertex("aB")) == doctest::Approx(2.0));
  // edge point halfway along a->ab, distance from root is 1.5
  TreePoint mid{"a", 'b', 0.5};
  CHECK(f2_distance(tree_vertex(""), mid) == doctest::Approx(1.5));
  CHECK(f2_distance(mid, tree_vertex("ab")) == doctest::Approx(0.5));
  CHECK(f2_distance(mid, tree_vertex("aB")) == doctest::Approx(1.5));
  // through-the-root path
  CHECK(f2_distance(tree_vertex("aa"), tree_vertex("BA")) == doctest::Approx(4.0));
}

TEST_CASE("tree geodesics go through the meet") {
  QuasiGeodesic g = f2_geodesic(tree_vertex("ab"), tree_vertex("aB"));
  CHECK(g.length == doctest::Approx(2.0));
  TreePoint m = std::get<TreePoint>(g(1.0));
  CHECK(m.base == "a");
  CHECK(m.offset == doctest::Approx(0.0));
  QuasiGeodesic h = f2_geodesic(tree_vertex(""), tree_vertex("ab"));
  CHECK(h.tree_root_path);
  TreePoint q = std::get<TreePoint>(h(1.5));
  CHECK(f2_distance(q, tree_vertex("")) == doctest::Approx(1.5));
  CHECK(f2_distance(q, tree_vertex("ab")) == doctest::Approx(0.5));
}

TEST_CASE("tree rays follow the word stream") {
  Ray r = f2_ray(WordStream{"a", "b"}, 40.0);
  CHECK(r.is_ray);
  CHECK(r.tree_root_path);
  TreePoint p = std::get<TreePoint>(r(2.0));
  CHECK(f2_distance(p, tree_vertex("ab")) <= 1e-12);
  TreePoint q = std::get<TreePoint>(r(3.5));
  CHECK(f2_distance(q, tree_vertex("abb")) == doctest::Approx(0.5));
}

TEST_CASE("word stream with empty period repeats the last letter") {
  WordStream s{"ab", ""};
  CHECK(s.take(5) == "abbbb");
  WordStream t{"a", "bA"};
  CHECK(t.take(6) == "abAbAb");
}

TEST_CASE("tree distances are exact") {
  CHECK(f2_tree()->exact());
  CHECK(!h2_space()->exact());
}

// ---------------------------------------------------------------------------
// Real line and products

TEST_CASE("real line basics") {
  auto sp = real_line();
  CHECK(sp->distance(Point{RealPoint{-2}}, Point{RealPoint{3}}) == doctest::Approx(5.0));
  Ray r = sp->ray(BoundaryPoint{RealEnd{-1}}, 100.0);
  CHECK(std::get<RealPoint>(r(4.0)).v == doctest::Approx(-4.0));
}

TEST_CASE("product combine splits arclength by slope") {
  auto tree = f2_tree();
  auto line = real_line();
  QuasiGeodesic gamma = f2_geodesic(tree_vertex(""), tree_vertex("ab"));  // a = 2
  QuasiGeodesic eta = line->geodesic(Point{RealPoint{0}}, Point{RealPoint{1}});  // b = 1
  QuasiGeodesic j = product_combine(gamma, eta);
  CHECK(j.length == doctest::Approx(3.0));
  const auto& pp = *std::get<ProductPoint>(j(1.5)).pq;
  // t=1.5: gamma(2*1.5/3) = gamma(1), eta(1*1.5/3) = eta(0.5)
  CHECK(f2_distance(std::get<TreePoint>(pp.left), tree_vertex("a")) <= 1e-12);
  CHECK(std::get<RealPoint>(pp.right).v == doctest::Approx(0.5));
}

TEST_CASE("product distance is the l1 sum") {
  auto sp = product_space(f2_tree(), real_line());
  Point p{make_product_point(Point{tree_vertex("ab")}, Point{RealPoint{1.0}})};
  Point q{make_product_point(Point{tree_vertex("aB")}, Point{RealPoint{-2.0}})};
  CHECK(sp->distance(p, q) == doctest::Approx(5.0));
}

TEST_CASE("product geodesics and rays are consistent") {
  auto sp = product_space(h2_space(), real_line());
  std::mt19937_64 rng(13);
  Point a = sp->sample(rng, 5.0);
  Point b = sp->sample(rng, 5.0);
  QuasiGeodesic g = sp->geodesic(a, b);
  CHECK(sp->distance(g(0.0), a) <= 1e-9);
  CHECK(sp->distance(g(g.length), b) <= 1e-9);
  BoundaryPoint dir = sp->sample_boundary(rng);
  Ray r = sp->ray(dir, 50.0);
  CHECK(sp->distance(sp->basepoint(), r(30.0)) == doctest::Approx(30.0).epsilon(1e-6));
}

// ---------------------------------------------------------------------------
// Metric axioms across all spaces

TEST_CASE("metric axioms on sampled triples") {
  check_metric_axioms(real_line(), 50.0, 1, 1e-12);
  check_metric_axioms(f2_tree(), 10.0, 2, 1e-12);
  check_metric_axioms(h2_space(), 10.0, 3, 1e-8);
  check_metric_axioms(product_space(f2_tree(), real_line()), 10.0, 4, 1e-8);
  check_metric_axioms(product_space(h2_space(), h2_space()), 8.0, 5, 1e-8);
}

// ---------------------------------------------------------------------------
// Axiom falsifiers

TEST_CASE("geodesic spaces satisfy convexity with E=1, C=0") {
  ConvexityParams p;  // lambda=1,k=0,E=1,C=0
  for (auto& sp : {h2_space(), f2_tree()}) {
    std::mt19937_64 rng(17);
    Point o = sp->basepoint();
    for (int i = 0; i < 10; ++i) {
      Point a = sp->sample(rng, 6.0);
      Point b = sp->sample(rng, 6.0);
      QuasiGeodesic gamma = sp->geodesic(o, a);
      QuasiGeodesic eta = sp->geodesic(o, b);
      SamplingGrid grid = uniform_grid(5, 8, gamma.length, eta.length);
      double slack = verify_convexity(gamma, eta, p, grid);
      CHECK(slack <= (sp->exact() ? 1e-12 : 1e-7));
    }
  }
}

TEST_CASE("identical geodesics have nonpositive convexity slack") {
  auto sp = h2_space();
  QuasiGeodesic g = h2_geodesic(HPoint{0, 1}, HPoint{2, 3});
  ConvexityParams p;
  SamplingGrid grid = uniform_grid(5, 8, g.length, g.length);
  CHECK(verify_convexity(g, g, p, grid) <= 1e-9);
}

TEST_CASE("parameterization regularity with theta = identity on the tree") {
  auto sp = f2_tree();
  std::mt19937_64 rng(23);
  Point o = sp->basepoint();
  RealFn theta = [](double t) { return t; };
  for (int i = 0; i < 10; ++i) {
    Point a = sp->sample(rng, 8.0);
    Point b = sp->sample(rng, 8.0);
    QuasiGeodesic gamma = sp->geodesic(o, a);
    QuasiGeodesic eta = sp->geodesic(o, b);
    SamplingGrid grid = uniform_grid(4, 8, gamma.length, eta.length);
    CHECK(verify_param_reg(gamma, eta, theta, grid) <= 1e-9);
  }
}

TEST_CASE("canonical geodesics pass the quasi-geodesic check") {
  auto sp = h2_space();
  QuasiGeodesic g = h2_geodesic(HPoint{-1, 1}, HPoint{1, 1});
  CHECK(verify_quasi_geodesic(g, 200, 31) <= 1e-7);
  auto tr = f2_tree();
  QuasiGeodesic h = f2_geodesic(tree_vertex("ab"), tree_vertex("BA"));
  CHECK(verify_quasi_geodesic(h, 200, 32) <= 1e-12);
}

TEST_CASE("a genuinely non-geodesic path is flagged") {
  // double-speed path violates the lower quasi-geodesic bound for lambda=1,k=0
  auto sp = h2_space();
  QuasiGeodesic g = h2_geodesic(HPoint{0, 1}, HPoint{0, std::exp(4.0)});
  QuasiGeodesic bad = g;
  bad.length = g.length * 2.0;
  bad.eval = [g](double t) { return g.eval(t / 2.0); };
  CHECK(verify_quasi_geodesic(bad, 200, 33) > 0.5);
}
