#pragma once
// Checkers and constructors for maps between registered spaces: Lipschitz
// envelope estimation, visual moduli, induced boundary maps, radial and
// equivariance diagnostics, the rho-hat product bound, coarse surjectivity,
// n-to-one searches, and the isometry fixed-point classifier.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccx/boundary.hpp"
#include "ccx/core.hpp"
#include "ccx/spaces.hpp"

namespace ccx {

struct MapUnderTest {
  SpacePtr source;
  SpacePtr target;
  std::function<Point(const Point&)> eval;
  std::string name;

  Point a() const { return source->basepoint(); }
  Point b() const { return target->basepoint(); }
  Point operator()(const Point& p) const { return eval(p); }
};

MapUnderTest identity_map(SpacePtr sp);

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

struct CheckReport {
  Verdict verdict = Verdict::Pass;
  std::string name;
  std::string witness;  // human-readable worst witness; re-evaluates to `worst`
  double worst = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> values;
};

// Upper envelope d(f(x), f(x')) <= A d(x,x') + B with zero violations on the sample.
struct LipschitzFit {
  double A = 0.0;
  double B = 0.0;
  int samples = 0;
};
LipschitzFit estimate_lipschitz(const MapUnderTest& f, int n_pairs, double radius,
                                std::uint64_t seed);

struct ModulusEntry {
  double s = 0.0;
  double r = 0.0;
  int samples = 0;
  bool conclusive = false;
};
struct ModulusTable {
  std::vector<ModulusEntry> entries;
  std::string direction;  // "forward" or "boundary"
};

using PairSampler = std::function<std::pair<Point, Point>(std::mt19937_64&)>;
// Half independent pairs, half pairs branching off a shared ray prefix (to
// populate all product scales).
PairSampler default_pair_sampler(SpacePtr sp, double radius);

// r(s) = min over sampled pairs with (x|y)_a > s of (f(x)|f(y))_b,
// postprocessed to a nondecreasing envelope.
ModulusTable visual_modulus(const MapUnderTest& f, const std::vector<double>& scale_grid,
                            int samples_per_scale, std::uint64_t seed,
                            const DerivedConstants& dc_src, const DerivedConstants& dc_tgt,
                            double radius, double horizon = 1000.0,
                            const PairSampler& sampler = nullptr);

// Boundary coordinate of lim f(gamma(t)) along the canonical ray of x.
LimitResult induced_boundary_map(const MapUnderTest& f, const BoundaryPoint& x, double horizon,
                                 const DerivedConstants& dc_tgt, int n_tail = 8);

struct RadialProfile {
  std::vector<double> t;
  std::vector<double> sigma_star;  // min over sampled rays of d(f(gamma(t)), f(a))
};
RadialProfile radial_profile(const MapUnderTest& f, int n_rays, const std::vector<double>& t_grid,
                             std::uint64_t seed, double radius);
// Worst sigma(t) - d(f(gamma(t)), f(a)); <= 0 means sigma is a valid radial minorant.
double radial_profile_slack(const MapUnderTest& f, const RealFn& sigma, int n_rays,
                            const std::vector<double>& t_grid, std::uint64_t seed, double radius);

struct EquivarianceReport {
  double H_observed = 0.0;
  double basepoint_deviation = 0.0;  // d(f(a), b); target basepoint is translated to f(a)
  int samples = 0;
};
EquivarianceReport equivariance_defect(const MapUnderTest& f, const RoughContraction& rho,
                                       int n_segments, double radius, int t_steps,
                                       std::uint64_t seed);

struct RhoHatParams {
  double lambda1 = 1.0;  // large-scale Lipschitz A of f
  double nu1 = 0.0;      // large-scale Lipschitz B of f
  double H = 0.0;        // equivariance constant
  double tau = 0.0;      // roughness of rho
  RoughContraction sigma;
  RoughContraction rho;
  double Omega = 1.0;  // shared for source and target: max of the two estimates
  double E_prime = 1.0;
  double k_prime = 0.0;
  double lambda_prime = 1.0;
  double probe = 1e6;  // sigma/rho must be unbounded up to here
};
// rho_hat(t) = c * max(0, rho(delta(t)) - tau) with c = 1/(E' T), T = lambda1*Omega + nu1 + 2H,
// delta(t) = sup{u : rho(u) <= max(0, (1/lambda') min{sigma(t/Omega), rho(t/Omega)} - k'/lambda' - tau)}.
RealFn rho_hat_bound(const RhoHatParams& p);
double rho_hat_T(const RhoHatParams& p);

// Asserts (f(x)|f(y))_b >= rho_hat((x|y)_a) on sampled pairs.
CheckReport rho_hat_check(const MapUnderTest& f, const RealFn& rho_hat,
                          const DerivedConstants& dc_src, const DerivedConstants& dc_tgt,
                          int n_pairs, double radius, std::uint64_t seed, double horizon = 1000.0,
                          const PairSampler& sampler = nullptr);

// Pointwise (del f(u) | del f(v))_b >= Omega^-2 rho_hat(Omega^-2 (u|v)_a) on boundary
// samples, plus a Lipschitz fit between the two chain metrics (values["chain_lipschitz"]).
CheckReport boundary_modulus_check(const MapUnderTest& f, const std::vector<BoundaryPoint>& sample,
                                   const RealFn& rho_hat, const DerivedConstants& dc_src,
                                   const DerivedConstants& dc_tgt, double horizon = 1000.0);

// Covering radius of f(sample of X) over a random net of the target ball, and
// of del f images over sampled target boundary directions (chain metric).
CheckReport coarsely_surjective_check(const MapUnderTest& f, double ball_radius, int n_net,
                                      int n_source, std::uint64_t seed, double pass_radius);

struct NToOneOptions {
  int n_random = 100000;
  double source_radius = 12.0;
  double horizon = 1000.0;
  // A found tuple whose "image closeness holds but source separation exceeds
  // this" counts as a failure witness (the S(R) table would be unbounded).
  double fail_threshold = 100.0;
  std::vector<std::vector<Point>> extra_candidates;  // structured search input
  std::uint64_t seed = 1;
};
struct NToOneRow {
  double R = 0.0;
  double S = 0.0;
  long considered = 0;
};
struct NToOneResult {
  std::vector<NToOneRow> table;  // monotone in R
  bool failed = false;
  std::string witness;
};
// Distance test: S(R) = max over searched (n+1)-tuples with all pairwise image
// distances <= R of the min pairwise source distance.
NToOneResult coarsely_n_to_one(const MapUnderTest& f, int n, const std::vector<double>& R_grid,
                               const NToOneOptions& opt);
// Product test: S(R) = max over searched (n+1)-tuples with all pairwise source
// products < R of the min pairwise image product.
NToOneResult visually_n_to_one(const MapUnderTest& f, int n, const std::vector<double>& R_grid,
                               const DerivedConstants& dc_src, const DerivedConstants& dc_tgt,
                               const NToOneOptions& opt);

struct IsometryClassification {
  enum Kind { Elliptic, FixedBoundaryPoint, Inconclusive } kind = Inconclusive;
  std::optional<BoundaryPoint> fixed;
  double fixed_product = 0.0;  // (del f(xi) | xi), checked against 0.9 * horizon
  std::string note;
};
IsometryClassification classify_isometry(const MapUnderTest& f, const Point& x0, int n_iter,
                                         const DerivedConstants& dc, double horizon = 1000.0);

}  // namespace ccx
