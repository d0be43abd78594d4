#pragma once
// Gromov products, quasi-ultrametric constant estimation, ray equivalence,
// the V_n uniform structure, sequential limits, and the chain (Frink) visual
// metric on boundary samples.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccx/core.hpp"
#include "ccx/spaces.hpp"

namespace ccx {

// A point of X together with the ideal boundary.
using XPoint = std::variant<Point, BoundaryPoint>;

// sup{t in Dom(gamma) /\ Dom(eta) : d(gamma(t), eta(t)) <= 2D+2}.
// Returns +inf when the condition holds up to both horizons and both paths
// are rays. Exact for canonical root paths in the tree; elsewhere grid scan
// (step 0.01 on segments, 0.01*horizon on rays) refined by 30 bisection steps.
double pair_product(const QuasiGeodesic& gamma, const QuasiGeodesic& eta,
                    const DerivedConstants& dc);

// Gromov product of points/boundary points w.r.t. the space's basepoint.
// Zero when either argument is a point of the closed ball B(O, 2*lambda*theta(0)+k);
// otherwise the product of the canonical representatives (rays truncated at `horizon`).
double point_product(const Space& sp, const XPoint& x, const XPoint& y,
                     const DerivedConstants& dc, double horizon);

// Worst quasi-ultrametric ratio min{(x|y),(y|z)} / (x|z) over sampled triples
// (all three cyclic roles), >= 1. Deterministic per seed.
double estimate_omega(const Space& sp, int n_triples, double radius, std::uint64_t seed,
                      const DerivedConstants& dc, double horizon = 1000.0);

// (max{t,t'} - theta_tilde(alpha)) / (E (alpha + lambda*theta_tilde(alpha) + k1))
// with alpha = d(gamma(t), gamma'(t')); a lower bound for (gamma|gamma').
double bigon_lower_bound(const QuasiGeodesic& gamma, const QuasiGeodesic& gamma_prime, double t,
                         double t_prime, const DerivedConstants& dc);

// sup over a grid of d(gamma(t), eta(t)) <= D (finite-horizon surrogate).
bool ray_equivalent(const Ray& gamma, const Ray& eta, const DerivedConstants& dc);

struct VisualMetricSample {
  std::vector<BoundaryPoint> points;
  double eps = 0.0;
  std::vector<std::vector<double>> rho;    // (x|y)^(-eps), diagonal 0
  std::vector<std::vector<double>> d_eps;  // all-pairs shortest path over rho
  double K_observed = 1.0;                 // max rho/d_eps over off-diagonal pairs
};

// Default admissible exponent: min(1, ln2 / (2 ln omega_hat)).
double default_visual_eps(const DerivedConstants& dc);

VisualMetricSample chain_metric(const Space& sp, const std::vector<BoundaryPoint>& points,
                                double eps, const DerivedConstants& dc, double horizon = 1000.0);

// (x,y) in V_n: product > n, or both in X with d(x,y) < 1/n.
bool vn_member(const Space& sp, const XPoint& x, const XPoint& y, double n,
               const DerivedConstants& dc, double horizon = 1000.0);

struct LimitResult {
  std::optional<BoundaryPoint> limit;  // empty = not Cauchy at horizon
  std::string note;
};

// Boundary coordinate of the canonical ray through the far tail of a sequence
// whose pairwise tail products grow with the tail distance from the basepoint.
LimitResult limit_of_sequence(const Space& sp, const std::vector<Point>& points,
                              const DerivedConstants& dc, double horizon = 1000.0);

// Canonical infinite extension of a finite reduced word: minimal-period
// repetition when the seam stays reduced, otherwise repeat the last letter.
WordStream canonical_stream(const std::string& word);

}  // namespace ccx
