#include <doctest.h>

#include <cmath>
#include <random>

#include "ccx/core.hpp"

using namespace ccx;

TEST_CASE("derived constants match the defining formulas") {
  ConvexityParams p;  // (1,0,1,0), theta = id
  DerivedConstants dc = derive_constants(p);
  CHECK(dc.k1 == 1.0);
  CHECK(dc.D == 4.0);
  CHECK(dc.threshold == 10.0);
  CHECK(dc.theta_tilde(0.0) == 2.0);  // theta(1) + 1 with theta = id
  CHECK(dc.omega_hat == 1.0);

  ConvexityParams q;
  q.lambda = 2;
  q.k = 1;
  q.E = 3;
  q.C = 5;
  DerivedConstants dq = derive_constants(q);
  CHECK(dq.k1 == 3.0);
  CHECK(dq.D == 29.0);
  CHECK(dq.threshold == 60.0);
}

TEST_CASE("theta_tilde of a constant theta") {
  ConvexityParams p;
  p.theta = [](double) { return 0.0; };
  DerivedConstants dc = derive_constants(p);
  CHECK(dc.theta_tilde(0.0) == 1.0);
  CHECK(dc.theta_tilde(7.0) == 1.0);
}

TEST_CASE("derive_constants is deterministic bit for bit") {
  ConvexityParams p;
  p.lambda = 1.25;
  p.k = 0.5;
  p.E = 2.0;
  p.C = 0.75;
  DerivedConstants a = derive_constants(p, 1.7);
  DerivedConstants b = derive_constants(p, 1.7);
  CHECK(a.k1 == b.k1);
  CHECK(a.D == b.D);
  CHECK(a.threshold == b.threshold);
  CHECK(a.omega_hat == b.omega_hat);
  CHECK(a.omega_hat == 1.7 * 1.5);
}

TEST_CASE("generalized inverse conventions") {
  RealFn id = [](double t) { return t; };
  CHECK(generalized_inverse(id, 5.0, 100.0) == doctest::Approx(5.0).epsilon(1e-9));
  RealFn high = [](double t) { return t + 10.0; };
  CHECK(generalized_inverse(high, 5.0, 100.0) == 0.0);  // sup of the empty set
}

static std::vector<double> dense_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(lo + (hi - lo) * double(i) / n);
  return g;
}

TEST_CASE("lipschitz_minorant envelopes") {
  auto grid = dense_grid(0.0, 40.0, 4000);
  RoughContraction r1 = lipschitz_minorant([](double t) { return t; }, grid);
  CHECK(r1(7.0) == doctest::Approx(7.0).epsilon(1e-9));
  RoughContraction r2 = lipschitz_minorant([](double t) { return t / 2; }, grid);
  CHECK(r2(7.0) == doctest::Approx(3.5).epsilon(1e-9));
  // step function: brute-force inf over the dense grid is the oracle
  auto step = [](double t) { return t < 5.0 ? 0.0 : 10.0; };
  RoughContraction r3 = lipschitz_minorant(step, grid);
  auto oracle = [&](double t) {
    double best = t;
    for (double s : grid) best = std::min(best, step(s) + std::abs(t - s));
    return std::max(0.0, best);
  };
  for (double t : {0.0, 3.0, 5.0, 9.0, 20.0, 39.0})
    CHECK(r3(t) == doctest::Approx(oracle(t)).epsilon(1e-12));
  CHECK(r3(3.0) == doctest::Approx(0.0));   // g vanishes there, and r <= g
  CHECK(r3(20.0) == doctest::Approx(10.0));
}

TEST_CASE("lipschitz_minorant output satisfies the 0-rough-contraction clauses") {
  auto grid = dense_grid(0.0, 60.0, 3000);
  RoughContraction r = lipschitz_minorant([](double t) { return 0.7 * t + std::sin(t) + 1.0; }, grid);
  CHECK(r(0.0) == 0.0);
  CHECK(r(55.0) > 10.0);  // unbounded on the probe
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  for (int i = 0; i < 500; ++i) {
    double s = u(rng), t = u(rng);
    if (s > t) std::swap(s, t);
    CHECK(r(t) <= t + 1e-12);
    CHECK(r(t) >= r(s) - 1e-12);                    // monotone
    CHECK(std::abs(r(t) - r(s)) <= (t - s) + 1e-12);  // 1-Lipschitz
  }
  for (double t : {1.0, 8.0, 33.0, 59.0})
    CHECK(r(t) <= 0.7 * t + std::sin(t) + 1.0 + 1e-12);  // r <= g on the grid
}

TEST_CASE("lipschitz_minorant rejects a vanishing g") {
  auto grid = dense_grid(0.0, 10.0, 100);
  CHECK_THROWS(lipschitz_minorant([](double) { return 0.0; }, grid));
}

TEST_CASE("power_adjust branch values") {
  RoughContraction id = identity_contraction();
  RoughContraction r1 = power_adjust(id, 0.5);
  CHECK(r1(4.0) == doctest::Approx(2.0));
  CHECK(r1(0.5) == doctest::Approx(0.5));
  RoughContraction half{[](double t) { return t / 2; }, 0.0};
  RoughContraction r2 = power_adjust(half, 0.5);
  CHECK(r2(8.0) == doctest::Approx(2.0));
  // r' <= r pointwise
  for (double t : {0.1, 0.9, 1.0, 2.0, 16.0, 100.0}) CHECK(r1(t) <= t + 1e-12);
}

TEST_CASE("power-adjusted composite is a 2*delta-rough contraction") {
  double eps = 0.5;
  RoughContraction half{[](double t) { return t / 2; }, 0.0};
  RoughContraction rp = power_adjust(half, eps);
  double delta = power_adjust_delta(rp, eps, 1e6);
  auto comp = [&](double u) { return std::pow(rp(std::pow(u, eps)), 1.0 / eps); };
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 500.0);
  for (int i = 0; i < 500; ++i) {
    double s = u(rng), t = u(rng);
    CHECK(std::abs(comp(t) - comp(s)) <= std::abs(t - s) + 2.0 * delta + 1e-9);
  }
}
