#pragma once
// Model spaces: real line, hyperbolic half-plane, the Cayley tree of F2 as an
// R-tree, and l1-products, each with its canonical geodesic/ray system.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "ccx/core.hpp"

namespace ccx {

// ---------------------------------------------------------------------------
// Points

struct RealPoint {
  double v = 0.0;
};

struct HPoint {
  double x = 0.0;
  double y = 1.0;  // upper half-plane, y > 0
  // Cached polar coordinates about O=(0,1), set when the point was produced on
  // a canonical ray/geodesic. Far from O the half-plane coordinates degenerate
  // (y underflows, differences cancel); the polar form stays accurate, so
  // distance computations prefer it whenever available.
  bool has_polar = false;
  double pr = 0.0;      // distance from O
  double ptheta = 0.0;  // ray angle at O
};

HPoint h2_polar(double r, double theta);

// Reduced word over {a,b,A,B}; A = a^-1, B = b^-1.
struct ReducedWord {
  std::string letters;
};

bool is_reduced(const std::string& w);
char inverse_letter(char c);
std::string reduce_concat(const std::string& u, const std::string& v);
std::string word_inverse(const std::string& w);

// Point of the R-tree realization of the Cayley graph: vertex `base`, plus an
// optional partial edge toward base*next. next == 0 iff offset == 0.
struct TreePoint {
  std::string base;   // reduced word
  char next = 0;      // 0 = at the vertex
  double offset = 0;  // in [0,1)
};

struct PointPair;
struct ProductPoint {
  std::shared_ptr<const PointPair> pq;
};

using Point = std::variant<RealPoint, HPoint, TreePoint, ProductPoint>;

struct PointPair {
  Point left;
  Point right;
};

ProductPoint make_product_point(Point left, Point right);

// ---------------------------------------------------------------------------
// Boundary coordinates

struct H2Angle {
  double angle = 0.0;  // initial Euclidean direction at O = (0,1), mod 2pi
};

// Infinite reduced word, stored as prefix + repeating period. An empty period
// means "repeat the last prefix letter forever" (always reduced).
struct WordStream {
  std::string prefix;
  std::string period;
  char at(std::size_t i) const;
  std::string take(std::size_t n) const;
};

struct RealEnd {
  int sign = 1;  // +1 or -1
};

struct BoundaryPair;
struct JoinCoord {
  std::shared_ptr<const BoundaryPair> parts;  // left/right components, either may be absent
  double slope = 0.5;                         // s in [0,1]; s=1 pure-left, s=0 pure-right
};

using BoundaryPoint = std::variant<H2Angle, WordStream, RealEnd, JoinCoord>;

struct BoundaryPair {
  std::optional<BoundaryPoint> left;
  std::optional<BoundaryPoint> right;
};

JoinCoord make_join(std::optional<BoundaryPoint> left, std::optional<BoundaryPoint> right,
                    double slope);

// ---------------------------------------------------------------------------
// Quasi-geodesics

class Space;

struct QuasiGeodesic {
  double length = 0.0;  // domain [0, length]; rays use their truncation horizon
  std::function<Point(double)> eval;
  double lambda = 1.0;
  double k = 0.0;
  std::shared_ptr<const Space> space;
  bool is_ray = false;
  // Set for tree paths that start at the basepoint e and never backtrack;
  // enables exact Gromov products.
  bool tree_root_path = false;

  Point operator()(double t) const { return eval(t); }
  Point start() const { return eval(0.0); }
  Point end() const { return eval(length); }
};

using Ray = QuasiGeodesic;

// ---------------------------------------------------------------------------
// Space interface

class Space : public std::enable_shared_from_this<Space> {
 public:
  virtual ~Space() = default;
  virtual std::string name() const = 0;
  virtual double distance(const Point& p, const Point& q) const = 0;
  virtual Point basepoint() const = 0;
  // Unit-speed canonical geodesic from p to q on [0, d(p,q)].
  virtual QuasiGeodesic geodesic(const Point& p, const Point& q) const = 0;
  // Canonical ray from the basepoint toward a boundary coordinate.
  virtual Ray ray(const BoundaryPoint& b, double horizon) const = 0;
  // Boundary coordinate of the canonical ray from the basepoint through v.
  virtual BoundaryPoint direction_of(const Point& v) const = 0;
  // Uniform-ish random point in the ball of the given radius about the basepoint.
  virtual Point sample(std::mt19937_64& rng, double radius) const = 0;
  // Random boundary coordinate.
  virtual BoundaryPoint sample_boundary(std::mt19937_64& rng) const = 0;
  // A point that follows the canonical ray through x up to t_cut and then
  // branches off for `extra` more length. Default: stay on the ray (collinear).
  virtual Point branch_from(std::mt19937_64& rng, const Point& x, double t_cut,
                            double extra) const;
  // True when distances on representable inputs carry no floating error.
  virtual bool exact() const { return false; }
  virtual ConvexityParams params() const { return ConvexityParams{}; }

  // Ray from basepoint through v (the canonical representative gamma_v).
  Ray ray_through(const Point& v, double horizon) const;

  std::shared_ptr<const Space> self() const { return shared_from_this(); }
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr real_line();
SpacePtr h2_space();
SpacePtr f2_tree();
SpacePtr product_space(SpacePtr left, SpacePtr right);

// ---------------------------------------------------------------------------
// Standalone operations (thin wrappers used throughout the tests)

double h2_distance(const HPoint& p, const HPoint& q);
QuasiGeodesic h2_geodesic(const HPoint& p, const HPoint& q);
Ray h2_ray(double angle, double horizon);
double h2_ray_angle(const HPoint& p);  // direction at O=(0,1) of the geodesic O->p

double f2_distance(const TreePoint& u, const TreePoint& v);
QuasiGeodesic f2_geodesic(const TreePoint& u, const TreePoint& v);
Ray f2_ray(const WordStream& stream, double horizon);

TreePoint tree_vertex(const std::string& word);

// gamma (+) eta on [0, a+b]: t -> (gamma(a t/(a+b)), eta(b t/(a+b))).
QuasiGeodesic product_combine(const QuasiGeodesic& gamma, const QuasiGeodesic& eta);

bool points_equal(const Point& p, const Point& q, const Space& sp, double tol = kGeomTol);

std::string point_to_string(const Point& p);
std::string boundary_to_string(const BoundaryPoint& b);

// ---------------------------------------------------------------------------
// Axiom falsifiers (grid-based; report worst slack, <= 0 means the inequality
// held everywhere on the grid)

double verify_convexity(const QuasiGeodesic& gamma, const QuasiGeodesic& eta,
                        const ConvexityParams& p, const SamplingGrid& grid);
double verify_param_reg(const QuasiGeodesic& gamma, const QuasiGeodesic& eta,
                        const RealFn& theta, const SamplingGrid& grid);
// Worst violation of the (lambda,k)-quasi-geodesic bounds on sampled pairs.
double verify_quasi_geodesic(const QuasiGeodesic& gamma, int n_pairs, std::uint64_t seed);

}  // namespace ccx
