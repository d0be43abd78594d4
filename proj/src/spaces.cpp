#include "ccx/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccx {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reduced words

char inverse_letter(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
  }
  throw std::invalid_argument(std::string("bad generator letter: ") + c);
}

bool is_reduced(const std::string& w) {
  for (char c : w)
    if (c != 'a' && c != 'b' && c != 'A' && c != 'B') return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse_letter(w[i - 1])) return false;
  return true;
}

std::string reduce_concat(const std::string& u, const std::string& v) {
  std::string out = u;
  for (char c : v) {
    if (!out.empty() && out.back() == inverse_letter(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

std::string word_inverse(const std::string& w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
  return out;
}

char WordStream::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (period.empty()) {
    if (prefix.empty()) throw std::logic_error("WordStream: empty");
    return prefix.back();
  }
  return period[(i - prefix.size()) % period.size()];
}

std::string WordStream::take(std::size_t n) const {
  std::string out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

ProductPoint make_product_point(Point left, Point right) {
  return ProductPoint{std::make_shared<PointPair>(PointPair{std::move(left), std::move(right)})};
}

JoinCoord make_join(std::optional<BoundaryPoint> left, std::optional<BoundaryPoint> right,
                    double slope) {
  if ((slope == 0.0) != !left || (slope == 1.0) != !right)
    throw std::invalid_argument("JoinCoord: left absent iff slope=0, right absent iff slope=1");
  return JoinCoord{std::make_shared<BoundaryPair>(BoundaryPair{std::move(left), std::move(right)}),
                   slope};
}

// ---------------------------------------------------------------------------
// Tree geometry helpers

namespace {

// Letter sequence of the root path to p, and its depth (real-valued).
std::string tree_letters(const TreePoint& p) {
  std::string s = p.base;
  if (p.next != 0) s.push_back(p.next);
  return s;
}

double tree_depth(const TreePoint& p) { return double(p.base.size()) + p.offset; }

TreePoint tree_point_at(const std::string& letters, double depth) {
  double fl = std::floor(depth + 1e-12);
  std::size_t n = std::size_t(fl);
  double off = depth - fl;
  if (off < 1e-12) return TreePoint{letters.substr(0, n), 0, 0.0};
  return TreePoint{letters.substr(0, n), letters[n], off};
}

std::size_t common_prefix_len(const std::string& u, const std::string& v) {
  std::size_t n = std::min(u.size(), v.size()), i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return i;
}

// Depth of the meet of the two root paths.
double tree_meet(const TreePoint& u, const TreePoint& v) {
  std::string su = tree_letters(u), sv = tree_letters(v);
  std::size_t c = common_prefix_len(su, sv);
  double du = tree_depth(u), dv = tree_depth(v);
  if (c == su.size() && c == sv.size()) return std::min(du, dv);
  if (c == su.size()) return du;  // u lies on v's root path
  if (c == sv.size()) return dv;
  return double(c);
}

}  // namespace

TreePoint tree_vertex(const std::string& word) {
  if (!is_reduced(word)) throw std::invalid_argument("tree_vertex: word not reduced: " + word);
  return TreePoint{word, 0, 0.0};
}

double f2_distance(const TreePoint& u, const TreePoint& v) {
  double h = tree_meet(u, v);
  return (tree_depth(u) - h) + (tree_depth(v) - h);
}

// ---------------------------------------------------------------------------
// H2 geometry

namespace {

double h2_coord_distance(const HPoint& p, const HPoint& q) {
  double dx = p.x - q.x, dy = p.y - q.y;
  double u = (dx * dx + dy * dy) / (2.0 * p.y * q.y);  // cosh(d) - 1
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

// Distance between (r1,t1) and (r2,t2) in polar form about O, stable for
// arbitrarily large radii: cosh d = cosh(r1-r2) + 2 sinh r1 sinh r2 sin^2(dth/2).
double h2_polar_distance(double r1, double t1, double r2, double t2) {
  double dth = std::remainder(t1 - t2, kTwoPi);
  double s = std::abs(std::sin(0.5 * dth));
  double adr = std::abs(r1 - r2);
  if (r1 + r2 < 60.0) {
    double sh = std::sinh(0.5 * adr);
    double u = 2.0 * sh * sh + 2.0 * std::sinh(r1) * std::sinh(r2) * s * s;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
  }
  // far field: sinh r = e^r/2 up to relative error e^(-2r)
  double lnw = s > 0.0 ? r1 + r2 + 2.0 * std::log(s) - std::log(2.0) : -kInf;
  double lncosh = adr < 30.0 ? std::log(std::cosh(adr)) : adr - std::log(2.0);
  if (lnw <= lncosh - 36.0) {
    double w = lnw > -700.0 ? std::exp(lnw) : 0.0;
    if (adr > 1e-6) return adr + (adr < 700.0 ? w / std::sinh(adr) : 0.0);
    return std::sqrt(adr * adr + 2.0 * w);
  }
  if (lncosh <= lnw - 36.0) return std::log(2.0) + lnw;
  double m = std::max(lnw, lncosh);
  if (m < 700.0) {
    double u = std::exp(lnw) + std::exp(lncosh) - 1.0;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
  }
  return std::log(2.0) + m + std::log(std::exp(lnw - m) + std::exp(lncosh - m));
}

// ln tan(phi/2): arclength potential along a geodesic semicircle.
double circle_param(double phi) { return std::log(std::tan(0.5 * phi)); }

HPoint h2_eval_circle(double c, double R, double F) {
  // inverse of circle_param, mapped back to coordinates
  double phi = 2.0 * std::atan(std::exp(F));
  return HPoint{c + R * std::cos(phi), R * std::sin(phi)};
}

std::pair<double, double> h2_to_polar(const HPoint& p) {
  if (p.has_polar) return {p.pr, p.ptheta};
  return {h2_coord_distance(p, HPoint{0.0, 1.0}), h2_ray_angle(p)};
}

double h2_to_polar_angle(const HPoint& p) { return p.has_polar ? p.ptheta : h2_ray_angle(p); }

// Geodesic step of hyperbolic length `len` from p with initial Euclidean
// direction (cos psi, sin psi). Coordinate-based; for use at moderate radius.
HPoint h2_step(const HPoint& p, double psi, double len) {
  double cp = std::cos(psi), sp = std::sin(psi);
  if (std::abs(cp) < 1e-12) {
    double sign = sp > 0 ? 1.0 : -1.0;
    return HPoint{p.x, p.y * std::exp(sign * len)};
  }
  double c = p.x + p.y * (sp / cp);
  double R = std::hypot(p.x - c, p.y);
  double F = circle_param(std::atan2(p.y, p.x - c));
  double sign = cp > 0 ? -1.0 : 1.0;
  return h2_eval_circle(c, R, F + sign * len);
}

}  // namespace

HPoint h2_polar(double r, double theta) {
  double a = wrap_angle(theta);
  double ca = std::cos(a), sa = std::sin(a);
  HPoint p;
  if (std::abs(ca) < 1e-12) {
    double sign = sa > 0 ? 1.0 : -1.0;
    p = HPoint{0.0, std::exp(sign * r)};
  } else {
    double c = sa / ca;
    double R = std::sqrt(c * c + 1.0);
    double F0 = circle_param(std::atan2(1.0, -c));
    double sign = ca > 0 ? -1.0 : 1.0;
    p = h2_eval_circle(c, R, F0 + sign * r);
  }
  if (p.y <= 0.0) p.y = std::numeric_limits<double>::min();  // underflow guard, polar is authoritative
  p.has_polar = true;
  p.pr = r;
  p.ptheta = a;
  return p;
}

double h2_distance(const HPoint& p, const HPoint& q) {
  if (p.has_polar || q.has_polar || std::min(p.y, q.y) < 1e-7) {
    auto [r1, t1] = h2_to_polar(p);
    auto [r2, t2] = h2_to_polar(q);
    return h2_polar_distance(r1, t1, r2, t2);
  }
  return h2_coord_distance(p, q);
}

QuasiGeodesic h2_geodesic(const HPoint& p, const HPoint& q) {
  QuasiGeodesic g;
  g.space = h2_space();
  g.lambda = 1.0;
  g.k = 0.0;
  g.length = h2_distance(p, q);
  if (g.length <= 0.0) {
    HPoint fixed = p;
    g.eval = [fixed](double) { return Point{fixed}; };
    return g;
  }
  if (std::abs(p.x - q.x) < 1e-13 * (1.0 + std::abs(p.x))) {
    double sign = q.y > p.y ? 1.0 : -1.0;
    HPoint base = p;
    g.eval = [base, sign](double t) { return Point{HPoint{base.x, base.y * std::exp(sign * t)}}; };
    return g;
  }
  double c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x));
  double R = std::hypot(p.x - c, p.y);
  double Fp = circle_param(std::atan2(p.y, p.x - c));
  double Fq = circle_param(std::atan2(q.y, q.x - c));
  double sign = Fq > Fp ? 1.0 : -1.0;
  g.eval = [c, R, Fp, sign](double t) { return Point{h2_eval_circle(c, R, Fp + sign * t)}; };
  return g;
}

Ray h2_ray(double angle, double horizon) {
  Ray r;
  r.space = h2_space();
  r.length = horizon;
  r.is_ray = true;
  double a = wrap_angle(angle);
  r.eval = [a](double t) { return Point{h2_polar(t, a)}; };
  return r;
}

double h2_ray_angle(const HPoint& p) {
  if (std::abs(p.x) < 1e-13) return p.y >= 1.0 ? kPi / 2.0 : 3.0 * kPi / 2.0;
  double c = (p.x * p.x + p.y * p.y - 1.0) / (2.0 * p.x);
  double s = p.x > 0 ? 1.0 : -1.0;
  return wrap_angle(std::atan2(s * c, s));
}

// ---------------------------------------------------------------------------
// Concrete spaces

namespace {

class RealLine final : public Space {
 public:
  std::string name() const override { return "R"; }
  double distance(const Point& p, const Point& q) const override {
    return std::abs(std::get<RealPoint>(p).v - std::get<RealPoint>(q).v);
  }
  Point basepoint() const override { return RealPoint{0.0}; }
  QuasiGeodesic geodesic(const Point& p, const Point& q) const override {
    double a = std::get<RealPoint>(p).v, b = std::get<RealPoint>(q).v;
    QuasiGeodesic g;
    g.length = std::abs(b - a);
    double sign = b >= a ? 1.0 : -1.0;
    g.eval = [a, sign](double t) { return Point{RealPoint{a + sign * t}}; };
    g.space = self();
    return g;
  }
  Ray ray(const BoundaryPoint& b, double horizon) const override {
    double sign = std::get<RealEnd>(b).sign >= 0 ? 1.0 : -1.0;
    Ray r;
    r.length = horizon;
    r.is_ray = true;
    r.eval = [sign](double t) { return Point{RealPoint{sign * t}}; };
    r.space = self();
    return r;
  }
  BoundaryPoint direction_of(const Point& v) const override {
    return RealEnd{std::get<RealPoint>(v).v >= 0 ? 1 : -1};
  }
  Point sample(std::mt19937_64& rng, double radius) const override {
    std::uniform_real_distribution<double> u(-radius, radius);
    return RealPoint{u(rng)};
  }
  BoundaryPoint sample_boundary(std::mt19937_64& rng) const override {
    std::uniform_int_distribution<int> u(0, 1);
    return RealEnd{u(rng) == 0 ? 1 : -1};
  }
  bool exact() const override { return true; }
};

class H2Space final : public Space {
 public:
  std::string name() const override { return "H2"; }
  double distance(const Point& p, const Point& q) const override {
    return h2_distance(std::get<HPoint>(p), std::get<HPoint>(q));
  }
  Point basepoint() const override { return HPoint{0.0, 1.0}; }
  QuasiGeodesic geodesic(const Point& p, const Point& q) const override {
    const HPoint& hp = std::get<HPoint>(p);
    const HPoint& hq = std::get<HPoint>(q);
    // Geodesics with an endpoint at O ride a canonical ray and keep polar
    // coordinates, which stays accurate arbitrarily far out.
    QuasiGeodesic g;
    if (distance(p, basepoint()) <= kGeomTol && distance(q, basepoint()) > kGeomTol) {
      double L = distance(p, q), a = h2_to_polar_angle(hq);
      g.length = L;
      g.eval = [a](double t) { return Point{h2_polar(t, a)}; };
    } else if (distance(q, basepoint()) <= kGeomTol && distance(p, basepoint()) > kGeomTol) {
      double L = distance(p, q), a = h2_to_polar_angle(hp);
      g.length = L;
      g.eval = [a, L](double t) { return Point{h2_polar(L - t, a)}; };
    } else {
      g = h2_geodesic(hp, hq);
    }
    g.space = self();
    return g;
  }
  Ray ray(const BoundaryPoint& b, double horizon) const override {
    Ray r = h2_ray(std::get<H2Angle>(b).angle, horizon);
    r.space = self();
    return r;
  }
  BoundaryPoint direction_of(const Point& v) const override {
    return H2Angle{h2_to_polar_angle(std::get<HPoint>(v))};
  }
  Point sample(std::mt19937_64& rng, double radius) const override {
    std::uniform_real_distribution<double> ua(0.0, kTwoPi), ur(0.0, radius);
    return h2_polar(ur(rng), ua(rng));
  }
  BoundaryPoint sample_boundary(std::mt19937_64& rng) const override {
    std::uniform_real_distribution<double> ua(0.0, kTwoPi);
    return H2Angle{ua(rng)};
  }
  Point branch_from(std::mt19937_64& rng, const Point& x, double t_cut,
                    double extra) const override {
    auto [r, theta] = h2_to_polar(std::get<HPoint>(x));
    (void)r;
    HPoint p = h2_polar(t_cut, theta);
    std::uniform_real_distribution<double> ua(0.0, kTwoPi);
    return h2_step(p, ua(rng), extra);
  }
};

std::string random_reduced_word(std::mt19937_64& rng, std::size_t len) {
  static const std::string alphabet = "abAB";
  std::string w;
  std::uniform_int_distribution<int> u4(0, 3), u3(0, 2);
  for (std::size_t i = 0; i < len; ++i) {
    if (w.empty()) {
      w.push_back(alphabet[u4(rng)]);
    } else {
      char bad = inverse_letter(w.back());
      std::string opts;
      for (char c : alphabet)
        if (c != bad) opts.push_back(c);
      w.push_back(opts[u3(rng)]);
    }
  }
  return w;
}

class F2Tree final : public Space {
 public:
  std::string name() const override { return "F2"; }
  double distance(const Point& p, const Point& q) const override {
    return f2_distance(std::get<TreePoint>(p), std::get<TreePoint>(q));
  }
  Point basepoint() const override { return TreePoint{}; }
  QuasiGeodesic geodesic(const Point& p, const Point& q) const override {
    QuasiGeodesic g = f2_geodesic(std::get<TreePoint>(p), std::get<TreePoint>(q));
    g.space = self();
    return g;
  }
  Ray ray(const BoundaryPoint& b, double horizon) const override {
    Ray r = f2_ray(std::get<WordStream>(b), horizon);
    r.space = self();
    return r;
  }
  BoundaryPoint direction_of(const Point& v) const override {
    std::string letters = tree_letters(std::get<TreePoint>(v));
    if (letters.empty()) letters = "a";  // arbitrary direction at the basepoint
    return WordStream{letters, ""};
  }
  Point sample(std::mt19937_64& rng, double radius) const override {
    std::uniform_int_distribution<int> ud(0, std::max(0, int(std::floor(radius))));
    return tree_vertex(random_reduced_word(rng, std::size_t(ud(rng))));
  }
  BoundaryPoint sample_boundary(std::mt19937_64& rng) const override {
    return WordStream{random_reduced_word(rng, 40), ""};
  }
  Point branch_from(std::mt19937_64& rng, const Point& x, double t_cut,
                    double extra) const override {
    std::string letters = tree_letters(std::get<TreePoint>(x));
    std::string head = letters.substr(0, std::min(letters.size(), std::size_t(std::floor(t_cut))));
    std::size_t n_extra = std::size_t(std::lround(std::max(0.0, extra)));
    std::string tail;
    static const std::string alphabet = "abAB";
    std::uniform_int_distribution<int> u3(0, 2);
    std::uniform_int_distribution<int> u4(0, 3);
    for (std::size_t i = 0; i < n_extra; ++i) {
      std::string cur = head + tail;
      if (cur.empty()) {
        tail.push_back(alphabet[u4(rng)]);
      } else {
        char bad = inverse_letter(cur.back());
        std::string opts;
        for (char c : alphabet)
          if (c != bad) opts.push_back(c);
        tail.push_back(opts[u3(rng)]);
      }
    }
    return tree_vertex(head + tail);
  }
  bool exact() const override { return true; }
};

class L1Product final : public Space {
 public:
  L1Product(SpacePtr l, SpacePtr r) : left_(std::move(l)), right_(std::move(r)) {}
  std::string name() const override { return left_->name() + "x" + right_->name(); }
  double distance(const Point& p, const Point& q) const override {
    const auto& pp = *std::get<ProductPoint>(p).pq;
    const auto& qq = *std::get<ProductPoint>(q).pq;
    return left_->distance(pp.left, qq.left) + right_->distance(pp.right, qq.right);
  }
  Point basepoint() const override {
    return make_product_point(left_->basepoint(), right_->basepoint());
  }
  QuasiGeodesic geodesic(const Point& p, const Point& q) const override {
    const auto& pp = *std::get<ProductPoint>(p).pq;
    const auto& qq = *std::get<ProductPoint>(q).pq;
    QuasiGeodesic g =
        product_combine(left_->geodesic(pp.left, qq.left), right_->geodesic(pp.right, qq.right));
    g.space = self();
    return g;
  }
  Ray ray(const BoundaryPoint& b, double horizon) const override {
    const auto& jc = std::get<JoinCoord>(b);
    double s = jc.slope;
    Ray rl, rr;
    Point bl = left_->basepoint(), br = right_->basepoint();
    std::function<Point(double)> el, er;
    if (jc.parts->left) {
      rl = left_->ray(*jc.parts->left, horizon);
      el = rl.eval;
    } else {
      el = [bl](double) { return bl; };
    }
    if (jc.parts->right) {
      rr = right_->ray(*jc.parts->right, horizon);
      er = rr.eval;
    } else {
      er = [br](double) { return br; };
    }
    Ray out;
    out.length = horizon;
    out.is_ray = true;
    out.eval = [el, er, s](double t) {
      return Point{make_product_point(el(s * t), er((1.0 - s) * t))};
    };
    out.space = self();
    return out;
  }
  BoundaryPoint direction_of(const Point& v) const override {
    const auto& vv = *std::get<ProductPoint>(v).pq;
    double a = left_->distance(left_->basepoint(), vv.left);
    double b = right_->distance(right_->basepoint(), vv.right);
    double total = a + b;
    double s = total > 0 ? a / total : 1.0;
    std::optional<BoundaryPoint> dl, dr;
    if (s > 0.0) dl = left_->direction_of(vv.left);
    if (s < 1.0) dr = right_->direction_of(vv.right);
    return make_join(std::move(dl), std::move(dr), s);
  }
  Point sample(std::mt19937_64& rng, double radius) const override {
    return make_product_point(left_->sample(rng, radius / 2.0), right_->sample(rng, radius / 2.0));
  }
  BoundaryPoint sample_boundary(std::mt19937_64& rng) const override {
    std::uniform_real_distribution<double> us(0.05, 0.95);
    return make_join(left_->sample_boundary(rng), right_->sample_boundary(rng), us(rng));
  }
  Point branch_from(std::mt19937_64& rng, const Point& x, double t_cut,
                    double extra) const override {
    const auto& vv = *std::get<ProductPoint>(x).pq;
    double a = left_->distance(left_->basepoint(), vv.left);
    double b = right_->distance(right_->basepoint(), vv.right);
    double total = a + b;
    double s = total > 0 ? a / total : 0.5;
    return make_product_point(left_->branch_from(rng, vv.left, s * t_cut, s * extra),
                              right_->branch_from(rng, vv.right, (1 - s) * t_cut, (1 - s) * extra));
  }
  bool exact() const override { return left_->exact() && right_->exact(); }

 private:
  SpacePtr left_, right_;
};

}  // namespace

Ray Space::ray_through(const Point& v, double horizon) const {
  return ray(direction_of(v), horizon);
}

Point Space::branch_from(std::mt19937_64&, const Point& x, double t_cut, double extra) const {
  return ray_through(x, t_cut + extra + 1.0).eval(t_cut + extra);
}

SpacePtr real_line() {
  static SpacePtr s = std::make_shared<RealLine>();
  return s;
}
SpacePtr h2_space() {
  static SpacePtr s = std::make_shared<H2Space>();
  return s;
}
SpacePtr f2_tree() {
  static SpacePtr s = std::make_shared<F2Tree>();
  return s;
}
SpacePtr product_space(SpacePtr left, SpacePtr right) {
  return std::make_shared<L1Product>(std::move(left), std::move(right));
}

// ---------------------------------------------------------------------------
// Tree paths

QuasiGeodesic f2_geodesic(const TreePoint& u, const TreePoint& v) {
  QuasiGeodesic g;
  g.space = f2_tree();
  double h = tree_meet(u, v);
  double du = tree_depth(u), dv = tree_depth(v);
  g.length = (du - h) + (dv - h);
  std::string su = tree_letters(u), sv = tree_letters(v);
  g.eval = [su, sv, du, dv, h](double t) {
    double up = du - h;
    if (t <= up) return Point{tree_point_at(su, du - t)};
    return Point{tree_point_at(sv, h + (t - up))};
  };
  g.tree_root_path = (du == 0.0);  // geodesic from the basepoint is a root path
  return g;
}

Ray f2_ray(const WordStream& stream, double horizon) {
  // validate reducedness of the visible part
  std::string head = stream.take(std::size_t(std::ceil(horizon)) + 2);
  if (!is_reduced(head)) throw std::invalid_argument("f2_ray: stream not reduced: " + head);
  Ray r;
  r.space = f2_tree();
  r.length = horizon;
  r.is_ray = true;
  r.tree_root_path = true;
  WordStream s = stream;
  r.eval = [s](double t) {
    std::size_t need = std::size_t(std::floor(t + 1e-12)) + 1;
    return Point{tree_point_at(s.take(need + 1), t)};
  };
  return r;
}

QuasiGeodesic product_combine(const QuasiGeodesic& gamma, const QuasiGeodesic& eta) {
  double a = gamma.length, b = eta.length;
  if (a + b <= 0.0) throw std::invalid_argument("product_combine: both components have length 0");
  QuasiGeodesic g;
  g.length = a + b;
  g.lambda = std::max(gamma.lambda, eta.lambda);
  g.k = gamma.k + eta.k;
  g.is_ray = gamma.is_ray || eta.is_ray;
  auto ge = gamma.eval, ee = eta.eval;
  double total = a + b;
  g.eval = [ge, ee, a, b, total](double t) {
    return Point{make_product_point(ge(a * t / total), ee(b * t / total))};
  };
  if (gamma.space && eta.space) g.space = product_space(gamma.space, eta.space);
  return g;
}

bool points_equal(const Point& p, const Point& q, const Space& sp, double tol) {
  return sp.distance(p, q) <= tol;
}

// ---------------------------------------------------------------------------
// Formatting

std::string point_to_string(const Point& p) {
  std::ostringstream os;
  if (auto* r = std::get_if<RealPoint>(&p)) {
    os << r->v;
  } else if (auto* h = std::get_if<HPoint>(&p)) {
    os << "(" << h->x << "," << h->y << ")";
  } else if (auto* t = std::get_if<TreePoint>(&p)) {
    os << (t->base.empty() ? "e" : t->base);
    if (t->next != 0) os << "+" << t->next << ":" << t->offset;
  } else {
    const auto& pp = *std::get<ProductPoint>(p).pq;
    os << "(" << point_to_string(pp.left) << " , " << point_to_string(pp.right) << ")";
  }
  return os.str();
}

std::string boundary_to_string(const BoundaryPoint& b) {
  std::ostringstream os;
  if (auto* a = std::get_if<H2Angle>(&b)) {
    os << "angle:" << a->angle;
  } else if (auto* w = std::get_if<WordStream>(&b)) {
    os << "stream:" << w->prefix << "(" << (w->period.empty() ? std::string(1, w->prefix.back()) : w->period)
       << ")*";
  } else if (auto* r = std::get_if<RealEnd>(&b)) {
    os << (r->sign >= 0 ? "+inf" : "-inf");
  } else {
    const auto& j = std::get<JoinCoord>(b);
    os << "join[s=" << j.slope << ";";
    os << (j.parts->left ? boundary_to_string(*j.parts->left) : std::string("-")) << "|";
    os << (j.parts->right ? boundary_to_string(*j.parts->right) : std::string("-")) << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Axiom falsifiers

double verify_convexity(const QuasiGeodesic& gamma, const QuasiGeodesic& eta,
                        const ConvexityParams& p, const SamplingGrid& grid) {
  if (!gamma.space) throw std::invalid_argument("verify_convexity: path without a space");
  const Space& sp = *gamma.space;
  double d00 = sp.distance(gamma.eval(0.0), eta.eval(0.0));
  double worst = -kInf;
  for (double t : grid.t_values) {
    if (t > gamma.length + kGeomTol) throw std::domain_error("verify_convexity: t out of domain");
    Point gt = gamma.eval(t);
    for (double s : grid.s_values) {
      if (s > eta.length + kGeomTol) throw std::domain_error("verify_convexity: s out of domain");
      double dts = sp.distance(gt, eta.eval(s));
      for (double c : grid.c_values) {
        double lhs = sp.distance(gamma.eval(c * t), eta.eval(c * s));
        double rhs = c * p.E * dts + (1.0 - c) * p.E * d00 + p.C;
        worst = std::max(worst, lhs - rhs);
      }
    }
  }
  return worst;
}

double verify_param_reg(const QuasiGeodesic& gamma, const QuasiGeodesic& eta, const RealFn& theta,
                        const SamplingGrid& grid) {
  if (!gamma.space) throw std::invalid_argument("verify_param_reg: path without a space");
  const Space& sp = *gamma.space;
  double d00 = sp.distance(gamma.eval(0.0), eta.eval(0.0));
  double worst = -kInf;
  for (double t : grid.t_values) {
    if (t > gamma.length + kGeomTol) throw std::domain_error("verify_param_reg: t out of domain");
    Point gt = gamma.eval(t);
    for (double s : grid.s_values) {
      if (s > eta.length + kGeomTol) throw std::domain_error("verify_param_reg: s out of domain");
      double dts = sp.distance(gt, eta.eval(s));
      worst = std::max(worst, std::abs(t - s) - theta(d00 + dts));
    }
  }
  return worst;
}

double verify_quasi_geodesic(const QuasiGeodesic& gamma, int n_pairs, std::uint64_t seed) {
  if (!gamma.space) throw std::invalid_argument("verify_quasi_geodesic: path without a space");
  const Space& sp = *gamma.space;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, gamma.length);
  double worst = -kInf;
  for (int i = 0; i < n_pairs; ++i) {
    double s = u(rng), t = u(rng);
    double d = sp.distance(gamma.eval(s), gamma.eval(t));
    double lo = std::abs(t - s) / gamma.lambda - gamma.k;
    double hi = gamma.lambda * std::abs(t - s) + gamma.k;
    worst = std::max({worst, lo - d, d - hi});
  }
  return worst;
}

}  // namespace ccx
