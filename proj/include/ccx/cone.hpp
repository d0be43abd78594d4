#pragma once
// Open cone over a boundary, the cone functor and radial contraction, exp/log
// between spaces and cones, the deformation phi, modulus psi, admissible r,
// the radial extension of boundary maps, and homotopy evaluators.

#include <utility>
#include <vector>

#include "ccx/boundary.hpp"
#include "ccx/core.hpp"
#include "ccx/maps.hpp"
#include "ccx/spaces.hpp"

namespace ccx {

struct ConePoint {
  double t = 0.0;        // radius >= 0
  BoundaryPoint z;       // irrelevant at t == 0 (apex)
  bool is_apex() const { return t <= 0.0; }
};

using BoundaryMetric = std::function<double(const BoundaryPoint&, const BoundaryPoint&)>;
using BoundaryMap = std::function<BoundaryPoint(const BoundaryPoint&)>;

// |t-s| + min{t,s} dZ(x,y); dZ must have diameter <= 2 (checked per call).
double cone_distance(const ConePoint& p, const ConePoint& q, const BoundaryMetric& dZ);

// Og(tz) := t g(z); apex maps to apex.
ConePoint cone_functor(const BoundaryMap& g, const ConePoint& p);
// phi_r(tz) := r(t) z.
ConePoint radial_contract(const RoughContraction& r, const ConePoint& p);

struct ExtensionPipeline {
  double eps = 0.5;  // in (0,1), admissible: omega_hat^(2 eps) <= 2
  RoughContraction r;    // power-adjusted 0-rough contraction
  RoughContraction chi = identity_contraction();  // X^Vis = X in the bundled spaces
  double horizon = 1000.0;
  SpacePtr source;
  SpacePtr target;
  DerivedConstants dc_src;
  DerivedConstants dc_tgt;
  std::vector<std::pair<double, double>> psi_table;  // sampled (t, psi(t))
};

// exp_eps(t y) := eta_y(t^(1/eps)); apex -> target basepoint.
Point exp_map(const ExtensionPipeline& pl, const ConePoint& p);
// log^eps(v) := (T_v^eps, [gamma_v]); the basepoint maps to the apex.
ConePoint log_map(const ExtensionPipeline& pl, const Point& v);
// phi(v) := gamma_v(chi(T_v)).
Point deform_phi(const RoughContraction& chi, const Space& sp, const Point& v, double horizon);

// Sampled forward modulus of g on boundary pairs:
// psi(t) = inf over pairs with (p|q)_a >= t of (g(p)|g(q))_b.
std::vector<std::pair<double, double>> psi_modulus(const Space& src, const Space& tgt,
                                                   const BoundaryMap& g,
                                                   const std::vector<BoundaryPoint>& grid,
                                                   const DerivedConstants& dc_src,
                                                   const DerivedConstants& dc_tgt, double horizon);
// Left-value interpolation of a sampled nondecreasing table (lower-bound preserving).
RealFn table_function(const std::vector<std::pair<double, double>>& table);

// Largest power-adjusted 0-rough contraction with
// r(t^eps)^(1/eps) <= Omega^-1 psi(Omega^-1 (t - theta_tilde(0)) / (E (lambda theta_tilde(0) + k1))).
RoughContraction admissible_r(const RealFn& psi, const DerivedConstants& dc_src, double Omega,
                              double eps, const std::vector<double>& t_grid);

struct RadialTrace {
  Point phi_v;
  ConePoint log_v;
  ConePoint contracted;
  ConePoint mapped;
  Point result;
};
// rad g := exp_eps . Og . phi_r . log^eps . phi, with canonical selections.
RadialTrace radial_extension_trace(const ExtensionPipeline& pl, const BoundaryMap& g,
                                   const Point& v);
Point radial_extension(const ExtensionPipeline& pl, const BoundaryMap& g, const Point& v);
MapUnderTest radial_extension_map(const ExtensionPipeline& pl, const BoundaryMap& g,
                                  const std::string& name);

struct TwoContractions {
  RoughContraction r1, r2;
};
struct ContractionVsMap {
  RoughContraction rho;  // radial reparametrization of the map being compared
  RoughContraction r;
};
// H(x,t) = eta_x(r1((T_x - t)^eps)^(1/eps) + r2(t^eps)^(1/eps)), 0 <= t <= T_x.
Point homotopy_eval(const ExtensionPipeline& pl, const BoundaryMap& g, const TwoContractions& v,
                    const Point& x, double t);
// H(x,t) = eta_x(rho(T_x - t) + r(t^eps)^(1/eps)).
Point homotopy_eval(const ExtensionPipeline& pl, const BoundaryMap& g, const ContractionVsMap& v,
                    const Point& x, double t);

// Coordinate deviation between two boundary points (angle gap, stream
// divergence scale, join component-wise); 0 means same coordinate.
double boundary_deviation(const BoundaryPoint& u, const BoundaryPoint& v);

// max over the sample of boundary_deviation(del(rad g)(x), g(x)).
CheckReport verify_boundary_identity(const ExtensionPipeline& pl, const BoundaryMap& g,
                                     const std::vector<BoundaryPoint>& sample, double horizon);

}  // namespace ccx
