// ccxlab: batch experiment runner binding all library modules.
//
//   ccxlab <subcommand> --config <file> [--seed N] [--out DIR]
//
// Subcommands: axioms | gromov | visual-metric | induced-map | n-to-one |
//              surjective | fixed-point | radial-extend | dv-suite
//
// Configs are JSON, validated against the shipped schema (unknown keys are
// rejected with the offending path). Each run writes <out>/report.json plus
// per-experiment CSV side files. Exit status: 0 pass, 1 fail, 2 inconclusive,
// 3 usage/config error. Reruns with identical config and seed produce
// bit-identical payloads except the wall_time_s field.
//
// CCXLAB_THREADS caps internal parallelism (recorded in the report; the
// bundled experiments are deterministic and currently single-threaded).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
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

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace ccx;

namespace {

constexpr const char* kSchemaVersion = "1.0";
constexpr const char* kLibraryVersion = "ccx 0.1.0";
constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Config schema

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error("schema error at " + path + ": " + what) {}
};

enum class FieldType { Str, Num, Int, Bool, Arr, ArrObj };

using Schema = std::map<std::string, FieldType>;

const char* type_name(FieldType t) {
  switch (t) {
    case FieldType::Str: return "string";
    case FieldType::Num: return "number";
    case FieldType::Int: return "integer";
    case FieldType::Bool: return "boolean";
    case FieldType::Arr: return "array";
    case FieldType::ArrObj: return "array of objects";
  }
  return "?";
}

bool type_matches(const json& v, FieldType t) {
  switch (t) {
    case FieldType::Str: return v.is_string();
    case FieldType::Num: return v.is_number();
    case FieldType::Int: return v.is_number_integer();
    case FieldType::Bool: return v.is_boolean();
    case FieldType::Arr: return v.is_array();
    case FieldType::ArrObj: {
      if (!v.is_array()) return false;
      for (const auto& e : v)
        if (!e.is_object()) return false;
      return true;
    }
  }
  return false;
}

// Keys accepted in every experiment config.
Schema with_common(Schema s) {
  s.emplace("experiment", FieldType::Str);
  s.emplace("seed", FieldType::Int);
  s.emplace("out", FieldType::Str);
  return s;
}

void validate_object(const json& j, const Schema& schema, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    auto it = schema.find(key);
    if (it == schema.end()) throw SchemaError(path + "." + key, "unknown key");
    if (!type_matches(value, it->second))
      throw SchemaError(path + "." + key,
                        std::string("expected ") + type_name(it->second));
  }
}

// Typed getters with defaults.
double num(const json& j, const char* key, double dflt) {
  return j.contains(key) ? j.at(key).get<double>() : dflt;
}
long long integer(const json& j, const char* key, long long dflt) {
  return j.contains(key) ? j.at(key).get<long long>() : dflt;
}
std::string str(const json& j, const char* key, const std::string& dflt) {
  return j.contains(key) ? j.at(key).get<std::string>() : dflt;
}
bool flag(const json& j, const char* key, bool dflt) {
  return j.contains(key) ? j.at(key).get<bool>() : dflt;
}
std::vector<double> num_array(const json& j, const char* key, std::vector<double> dflt) {
  if (!j.contains(key)) return dflt;
  return j.at(key).get<std::vector<double>>();
}

// ---------------------------------------------------------------------------
// Run plumbing

struct ExpResult {
  Verdict verdict = Verdict::Pass;
  json checks = json::array();
  std::vector<std::string> csv_files;
};

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict worse(Verdict a, Verdict b) {
  auto rank = [](Verdict v) { return v == Verdict::Fail ? 2 : (v == Verdict::Inconclusive ? 1 : 0); };
  return rank(a) >= rank(b) ? a : b;
}

void add_check(ExpResult& R, const std::string& name, Verdict v, double worst,
               const std::string& witness, json values = json::object()) {
  R.checks.push_back({{"name", name},
                      {"verdict", verdict_str(v)},
                      {"worst", worst},
                      {"witness", witness},
                      {"values", std::move(values)}});
  R.verdict = worse(R.verdict, v);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(ExpResult& R, const fs::path& out, const std::string& fname,
               const std::string& header, const std::vector<std::string>& rows) {
  std::ofstream os(out / fname);
  if (!os) throw std::runtime_error("cannot write " + (out / fname).string());
  os << header << "\n";
  for (const auto& r : rows) os << r << "\n";
  R.csv_files.push_back(fname);
}

DerivedConstants geodesic_dc(double omega_estimate = 0.0) {
  ConvexityParams p;
  return derive_constants(p, omega_estimate);
}

SpacePtr make_space(const std::string& name) {
  if (name == "real_line") return real_line();
  if (name == "h2") return h2_space();
  if (name == "f2") return f2_tree();
  throw SchemaError("$.space", "unknown space '" + name + "' (real_line | h2 | f2)");
}

MapUnderTest make_map(const std::string& name) {
  if (name == "dv") return dv_map_under_test();
  if (name == "dv_x_id") return dv_times_id();
  if (name == "dv_x_dv") return dv_times_dv();
  if (name == "id_real") return identity_map(real_line());
  if (name == "id_h2") return identity_map(h2_space());
  if (name == "id_f2") return identity_map(f2_tree());
  throw SchemaError("$.map", "unknown map '" + name +
                                 "' (dv | dv_x_id | dv_x_dv | id_real | id_h2 | id_f2)");
}

std::string random_reduced_word(std::mt19937_64& rng, int len) {
  static const char* letters = "abAB";
  std::string w;
  std::uniform_int_distribution<int> u4(0, 3);
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
// axioms: convexity slack over random geodesic pairs

ExpResult run_axioms(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"space", FieldType::Str},
                                    {"E", FieldType::Num},
                                    {"C", FieldType::Num},
                                    {"n_pairs", FieldType::Int},
                                    {"radius", FieldType::Num},
                                    {"grid_c", FieldType::Int},
                                    {"grid_t", FieldType::Int},
                                    {"tolerance", FieldType::Num}}),
                  "$");
  SpacePtr sp = make_space(str(cfg, "space", "h2"));
  ConvexityParams p = sp->params();
  p.E = num(cfg, "E", p.E);
  p.C = num(cfg, "C", p.C);
  p.validate();
  int n_pairs = int(integer(cfg, "n_pairs", 1000));
  double radius = num(cfg, "radius", 8.0);
  int nc = int(integer(cfg, "grid_c", 20));
  int nt = int(integer(cfg, "grid_t", 20));
  double tol = num(cfg, "tolerance", 1e-9);

  ExpResult R;
  std::mt19937_64 rng(seed);
  double worst = -kInf;
  std::vector<std::string> rows;
  for (int i = 0; i < n_pairs; ++i) {
    QuasiGeodesic gamma = sp->geodesic(sp->sample(rng, radius), sp->sample(rng, radius));
    QuasiGeodesic eta = sp->geodesic(sp->sample(rng, radius), sp->sample(rng, radius));
    SamplingGrid grid = uniform_grid(nc, nt, gamma.length, eta.length);
    double slack = verify_convexity(gamma, eta, p, grid);
    worst = std::max(worst, slack);
    rows.push_back(std::to_string(i) + "," + fmt(gamma.length) + "," + fmt(eta.length) + "," +
                   fmt(slack));
  }
  write_csv(R, out, "axioms.csv", "pair,len_gamma,len_eta,slack", rows);
  add_check(R, "convexity_slack", worst <= tol ? Verdict::Pass : Verdict::Fail, worst,
            worst <= tol ? "" : "worst slack exceeds tolerance " + fmt(tol),
            {{"tolerance", tol}, {"pairs", n_pairs}});
  return R;
}

// ---------------------------------------------------------------------------
// gromov: tree product oracle / quasi-ultrametric inequality

ExpResult run_gromov_tree_oracle(const json& cfg, std::uint64_t seed, const fs::path& out) {
  int depth_exhaustive = int(integer(cfg, "depth_exhaustive", 8));
  long long n_sampled = integer(cfg, "n_sampled_pairs", 100000);
  int depth_random = int(integer(cfg, "depth_random", 12));
  long long n_random = integer(cfg, "n_random_pairs", 1000);

  ExpResult R;
  DerivedConstants dc = geodesic_dc();
  auto tr = f2_tree();
  long long mismatches = 0;
  std::string first_witness;
  auto check_pair = [&](const std::string& x, const std::string& y) {
    double got = point_product(*tr, XPoint{Point{tree_vertex(x)}}, XPoint{Point{tree_vertex(y)}},
                               dc, 1000.0);
    double dx = double(x.size()), dy = double(y.size());
    double expect = 0.0;
    if (dx > 0.0 && dy > 0.0) {
      double pgp = (dx + dy - f2_distance(tree_vertex(x), tree_vertex(y))) / 2.0;
      expect = std::min(std::min(dx, dy), pgp + dc.D + 1.0);
    }
    if (got != expect) {
      if (mismatches == 0)
        first_witness = "product(" + (x.empty() ? "e" : x) + ", " + (y.empty() ? "e" : y) +
                        ") = " + fmt(got) + ", expected " + fmt(expect);
      ++mismatches;
    }
  };
  std::vector<std::string> shallow;
  for (int d = 0; d <= depth_exhaustive; ++d)
    for (auto& w : all_words(d)) shallow.push_back(w);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> u(0, shallow.size() - 1);
  for (long long i = 0; i < n_sampled; ++i) check_pair(shallow[u(rng)], shallow[u(rng)]);
  std::uniform_int_distribution<int> ud(0, depth_random);
  for (long long i = 0; i < n_random; ++i)
    check_pair(random_reduced_word(rng, ud(rng)), random_reduced_word(rng, ud(rng)));

  write_csv(R, out, "gromov_tree.csv", "kind,pairs,mismatches",
            {"sampled_depth_le_" + std::to_string(depth_exhaustive) + "," +
                 std::to_string(n_sampled) + "," + std::to_string(mismatches),
             "random_depth_le_" + std::to_string(depth_random) + "," + std::to_string(n_random) +
                 ",0"});
  add_check(R, "tree_product_oracle", mismatches == 0 ? Verdict::Pass : Verdict::Fail,
            double(mismatches), first_witness,
            {{"pairs_checked", n_sampled + n_random}});
  return R;
}

ExpResult run_gromov_ultrametric(const json& cfg, std::uint64_t seed, const fs::path& out) {
  SpacePtr sp = make_space(str(cfg, "space", "h2"));
  long long n_triples = integer(cfg, "n_triples", 1000);
  double radius = num(cfg, "radius", 10.0);
  double margin = num(cfg, "margin", 1.01);
  double horizon = num(cfg, "horizon", 1000.0);

  ExpResult R;
  DerivedConstants dc = geodesic_dc();
  double omega = estimate_omega(*sp, int(n_triples), radius, seed, dc, horizon);
  double bound = margin * omega;
  std::mt19937_64 rng(seed + 1);  // disjoint verification sample
  double worst_ratio = 0.0;
  long long violations = 0;
  std::vector<std::string> rows;
  for (long long i = 0; i < n_triples; ++i) {
    Point x = sp->sample(rng, radius), y = sp->sample(rng, radius), z = sp->sample(rng, radius);
    double xy = point_product(*sp, XPoint{x}, XPoint{y}, dc, horizon);
    double yz = point_product(*sp, XPoint{y}, XPoint{z}, dc, horizon);
    double xz = point_product(*sp, XPoint{x}, XPoint{z}, dc, horizon);
    struct Role {
      double lhs, m1, m2;
    } roles[3] = {{xz, xy, yz}, {xy, xz, yz}, {yz, xy, xz}};
    double triple_worst = 0.0;
    for (const auto& r : roles) {
      if (std::isinf(r.lhs) || r.lhs <= kGeomTol) continue;
      double need = std::min(r.m1, r.m2);
      if (std::isinf(need)) continue;
      double ratio = need / r.lhs;
      triple_worst = std::max(triple_worst, ratio);
      if (ratio > bound + 1e-12) ++violations;
    }
    worst_ratio = std::max(worst_ratio, triple_worst);
    if (i < 1000) rows.push_back(std::to_string(i) + "," + fmt(triple_worst));
  }
  write_csv(R, out, "gromov_ultra.csv", "triple,worst_ratio", rows);
  add_check(R, "quasi_ultrametric", violations == 0 ? Verdict::Pass : Verdict::Fail, worst_ratio,
            violations == 0 ? ""
                            : std::to_string(violations) + " role(s) exceeded " + fmt(bound),
            {{"omega_hat", omega}, {"bound", bound}});
  return R;
}

ExpResult run_gromov(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"mode", FieldType::Str},
                                    {"space", FieldType::Str},
                                    {"depth_exhaustive", FieldType::Int},
                                    {"n_sampled_pairs", FieldType::Int},
                                    {"depth_random", FieldType::Int},
                                    {"n_random_pairs", FieldType::Int},
                                    {"n_triples", FieldType::Int},
                                    {"radius", FieldType::Num},
                                    {"margin", FieldType::Num},
                                    {"horizon", FieldType::Num}}),
                  "$");
  std::string mode = str(cfg, "mode", "quasi-ultrametric");
  if (mode == "tree-oracle") return run_gromov_tree_oracle(cfg, seed, out);
  if (mode == "quasi-ultrametric") return run_gromov_ultrametric(cfg, seed, out);
  throw SchemaError("$.mode", "expected tree-oracle | quasi-ultrametric");
}

// ---------------------------------------------------------------------------
// visual-metric: chain metric axioms and the sandwich ratio on tree streams

ExpResult run_visual_metric(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"n_points", FieldType::Int},
                                    {"depth", FieldType::Int},
                                    {"omega_triples", FieldType::Int},
                                    {"min_ratio", FieldType::Num},
                                    {"horizon", FieldType::Num}}),
                  "$");
  int n_points = int(integer(cfg, "n_points", 50));
  int depth = int(integer(cfg, "depth", 14));
  int omega_triples = int(integer(cfg, "omega_triples", 500));
  double min_ratio_req = num(cfg, "min_ratio", 0.25);
  double horizon = num(cfg, "horizon", 1000.0);

  ExpResult R;
  DerivedConstants dc0 = geodesic_dc();
  double omega = estimate_omega(*f2_tree(), omega_triples, 10.0, seed, dc0, horizon);
  DerivedConstants dc = derive_constants(ConvexityParams{}, omega);
  double eps = default_visual_eps(dc);
  std::mt19937_64 rng(seed + 1);
  std::vector<BoundaryPoint> pts;
  for (int i = 0; i < n_points; ++i)
    pts.push_back(BoundaryPoint{canonical_stream(random_reduced_word(rng, depth))});
  VisualMetricSample vm = chain_metric(*f2_tree(), pts, eps, dc, horizon);

  std::size_t n = pts.size();
  std::string axiom_err;
  double min_ratio = kInf;
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (vm.d_eps[i][j] != vm.d_eps[j][i]) axiom_err = "not symmetric";
      if (i != j && vm.rho[i][j] > 0.0 && vm.d_eps[i][j] <= 0.0)
        axiom_err = "zero distance between distinct directions";
      for (std::size_t k = 0; k < n; ++k)
        if (vm.d_eps[i][j] > vm.d_eps[i][k] + vm.d_eps[k][j] + 1e-15)
          axiom_err = "triangle inequality violated";
      if (i < j) {
        if (vm.rho[i][j] > 0.0) min_ratio = std::min(min_ratio, vm.d_eps[i][j] / vm.rho[i][j]);
        rows.push_back(std::to_string(i) + "," + std::to_string(j) + "," + fmt(vm.rho[i][j]) +
                       "," + fmt(vm.d_eps[i][j]));
      }
    }
  }
  write_csv(R, out, "visual_metric.csv", "i,j,rho,d_eps", rows);
  add_check(R, "metric_axioms", axiom_err.empty() ? Verdict::Pass : Verdict::Fail, 0.0, axiom_err,
            {{"eps", eps}, {"omega_hat", omega}, {"K_observed", vm.K_observed}});
  add_check(R, "sandwich_ratio", min_ratio >= min_ratio_req ? Verdict::Pass : Verdict::Fail,
            min_ratio, min_ratio >= min_ratio_req ? "" : "min(d_eps/rho) below requirement",
            {{"required", min_ratio_req}});
  return R;
}

// ---------------------------------------------------------------------------
// induced-map: angle-bucket occupancy at fixed depth / induced limits of dv

ExpResult run_induced_buckets(const json& cfg, const fs::path& out) {
  int depth = int(integer(cfg, "depth", 14));
  int max_per_bucket = int(integer(cfg, "max_per_bucket", 2));
  if (depth < 2 || depth > 19) throw SchemaError("$.depth", "supported range is 2..19");

  ExpResult R;
  std::int64_t pow3 = 1;
  for (int i = 0; i < depth; ++i) pow3 *= 3;
  std::vector<std::uint8_t> buckets(std::size_t(pow3), 0);
  // DFS over reduced words tracking lo in units of 1/(8*3^(depth-1)); the
  // cylinder at full depth is 2 units wide, so its midpoint is lo+1 (odd).
  struct Frame {
    char letter;
    std::int64_t lo;
    int d;
  };
  std::vector<Frame> stack;
  const std::string order = "abAB";
  std::int64_t unit_total = 8 * (pow3 / 3);
  std::int64_t w1 = unit_total / 4;
  for (int i = 0; i < 4; ++i) stack.push_back({order[std::size_t(i)], i * w1, 1});
  int max_count = 0;
  long long over = 0;
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    if (fr.d == depth) {
      std::int64_t m = fr.lo + 1;  // midpoint in units
      std::size_t b = std::size_t((pow3 * m) / unit_total);
      if (++buckets[b] > max_per_bucket) ++over;
      max_count = std::max(max_count, int(buckets[b]));
      continue;
    }
    std::int64_t w = w1;
    for (int i = 1; i < fr.d; ++i) w /= 3;
    std::int64_t wc = w / 3;
    int child = 0;
    for (char c : order) {
      if (c == inverse_letter(fr.letter)) continue;
      stack.push_back({c, fr.lo + child * wc, fr.d + 1});
      ++child;
    }
  }
  std::map<int, long long> histogram;
  for (std::uint8_t b : buckets) ++histogram[int(b)];
  std::vector<std::string> rows;
  for (const auto& [occ, cnt] : histogram)
    rows.push_back(std::to_string(occ) + "," + std::to_string(cnt));
  write_csv(R, out, "angle_buckets.csv", "occupancy,buckets", rows);
  add_check(R, "angle_bucket_occupancy", over == 0 ? Verdict::Pass : Verdict::Fail,
            double(max_count),
            over == 0 ? "" : std::to_string(over) + " buckets exceed the occupancy limit",
            {{"depth", depth}, {"max_per_bucket", max_per_bucket}});
  return R;
}

ExpResult run_induced_limits(const json& cfg, std::uint64_t seed, const fs::path& out) {
  int n_streams = int(integer(cfg, "n_streams", 30));
  int depth = int(integer(cfg, "depth", 12));
  double horizon = num(cfg, "horizon", 1000.0);
  double tol = num(cfg, "tolerance", 1e-3);

  ExpResult R;
  MapUnderTest f = make_map(str(cfg, "map", "dv"));
  DerivedConstants dc = geodesic_dc();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  std::string witness;
  long long not_cauchy = 0;
  std::vector<std::string> rows;
  for (int i = 0; i < n_streams; ++i) {
    WordStream s = canonical_stream(random_reduced_word(rng, depth));
    LimitResult lr = induced_boundary_map(f, BoundaryPoint{s}, horizon, dc);
    if (!lr.limit) {
      ++not_cauchy;
      rows.push_back(boundary_to_string(BoundaryPoint{s}) + ",,," + "not_cauchy");
      continue;
    }
    double expect = collapse_map(s, 30);
    double dev = boundary_deviation(*lr.limit, BoundaryPoint{H2Angle{expect}});
    if (dev > worst) {
      worst = dev;
      witness = boundary_to_string(BoundaryPoint{s});
    }
    rows.push_back(boundary_to_string(BoundaryPoint{s}) + "," +
                   fmt(std::get<H2Angle>(*lr.limit).angle) + "," + fmt(expect) + "," + fmt(dev));
  }
  write_csv(R, out, "induced_limits.csv", "stream,limit_angle,collapse_angle,deviation", rows);
  Verdict v = not_cauchy > 0 ? Verdict::Inconclusive
                             : (worst <= tol ? Verdict::Pass : Verdict::Fail);
  add_check(R, "induced_limits", v, worst,
            not_cauchy > 0 ? std::to_string(not_cauchy) + " streams not Cauchy" : witness,
            {{"tolerance", tol}});
  return R;
}

ExpResult run_induced_map(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"mode", FieldType::Str},
                                    {"depth", FieldType::Int},
                                    {"max_per_bucket", FieldType::Int},
                                    {"map", FieldType::Str},
                                    {"n_streams", FieldType::Int},
                                    {"horizon", FieldType::Num},
                                    {"tolerance", FieldType::Num}}),
                  "$");
  std::string mode = str(cfg, "mode", "angle-buckets");
  if (mode == "angle-buckets") return run_induced_buckets(cfg, out);
  if (mode == "limits") return run_induced_limits(cfg, seed, out);
  throw SchemaError("$.mode", "expected angle-buckets | limits");
}

// ---------------------------------------------------------------------------
// n-to-one: distance / visual searches, structured candidates, expected failures

ExpResult run_n_to_one(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"maps", FieldType::Arr},
                                    {"ns", FieldType::Arr},
                                    {"mode", FieldType::Str},
                                    {"R_grid", FieldType::Arr},
                                    {"n_random", FieldType::Int},
                                    {"source_radius", FieldType::Num},
                                    {"fail_threshold", FieldType::Num},
                                    {"horizon", FieldType::Num},
                                    {"structured_depth_min", FieldType::Int},
                                    {"structured_depth_max", FieldType::Int},
                                    {"witness_pair_depth", FieldType::Int},
                                    {"require_n1_failure", FieldType::Bool},
                                    {"n1_witness_depth", FieldType::Int},
                                    {"n1_fail_threshold", FieldType::Num},
                                    {"check_l1_exact", FieldType::Bool}}),
                  "$");
  if (!cfg.contains("maps") || !cfg.contains("ns"))
    throw SchemaError("$", "keys 'maps' and 'ns' are required");
  std::vector<std::string> maps = cfg.at("maps").get<std::vector<std::string>>();
  std::vector<int> ns = cfg.at("ns").get<std::vector<int>>();
  if (maps.size() != ns.size()) throw SchemaError("$.ns", "length must match 'maps'");
  std::string mode = str(cfg, "mode", "distance");
  if (mode != "distance" && mode != "visual")
    throw SchemaError("$.mode", "expected distance | visual");
  std::vector<double> R_grid = num_array(cfg, "R_grid", {5.0});

  NToOneOptions base;
  base.n_random = int(integer(cfg, "n_random", 100000));
  base.source_radius = num(cfg, "source_radius", 12.0);
  base.fail_threshold = num(cfg, "fail_threshold", 100.0);
  base.horizon = num(cfg, "horizon", 1000.0);
  base.seed = seed;
  int sd_min = int(integer(cfg, "structured_depth_min", 0));
  int sd_max = int(integer(cfg, "structured_depth_max", 0));
  for (int d = std::max(1, sd_min); d <= sd_max; ++d) {
    std::vector<std::string> words = all_words(d);
    for (std::size_t i = 2; i < words.size(); ++i)
      base.extra_candidates.push_back({Point{tree_vertex(words[i - 2])},
                                       Point{tree_vertex(words[i - 1])},
                                       Point{tree_vertex(words[i])}});
  }
  int wpd = int(integer(cfg, "witness_pair_depth", 0));
  if (wpd > 0) {
    auto [w1, w2] = dv_witness_pair(wpd);
    base.extra_candidates.push_back({Point{tree_vertex(w1)}, Point{tree_vertex(w2)}});
  }

  ExpResult R;
  DerivedConstants dc = geodesic_dc();
  std::vector<std::string> rows;
  std::string witness_text;
  for (std::size_t c = 0; c < maps.size(); ++c) {
    MapUnderTest f = make_map(maps[c]);
    NToOneResult res = mode == "visual"
                           ? visually_n_to_one(f, ns[c], R_grid, dc, dc, base)
                           : coarsely_n_to_one(f, ns[c], R_grid, base);
    for (const auto& row : res.table)
      rows.push_back(maps[c] + "," + std::to_string(ns[c]) + "," + fmt(row.R) + "," + fmt(row.S) +
                     "," + std::to_string(row.considered));
    if (res.failed) {
      witness_text += maps[c] + " n=" + std::to_string(ns[c]) + ": " + res.witness + "\n";
      add_check(R, "search_" + maps[c] + "_n" + std::to_string(ns[c]), Verdict::Fail,
                base.fail_threshold, res.witness);
    } else {
      add_check(R, "search_" + maps[c] + "_n" + std::to_string(ns[c]), Verdict::Pass,
                res.table.empty() ? 0.0 : res.table.back().S, "",
                {{"R_max", R_grid.empty() ? 0.0 : R_grid.back()}});
    }
  }
  write_csv(R, out, "ntoone.csv", "map,n,R,S,considered", rows);

  if (flag(cfg, "require_n1_failure", false)) {
    NToOneOptions opt1;
    opt1.n_random = 0;
    opt1.fail_threshold = num(cfg, "n1_fail_threshold", 50.0);
    auto [w1, w2] = dv_witness_pair(int(integer(cfg, "n1_witness_depth", 38)));
    opt1.extra_candidates = {{Point{tree_vertex(w1)}, Point{tree_vertex(w2)}}};
    NToOneResult res1 = coarsely_n_to_one(make_map("dv"), 1, {1.0}, opt1);
    add_check(R, "n1_failure_witness", res1.failed ? Verdict::Pass : Verdict::Fail,
              opt1.fail_threshold,
              res1.failed ? res1.witness : "expected a 1-to-1 failure witness, none found");
  }
  if (flag(cfg, "check_l1_exact", false)) {
    auto prod = product_space(f2_tree(), real_line());
    std::mt19937_64 rng(seed + 7);
    bool exact = true;
    for (int i = 0; i < 1000 && exact; ++i) {
      Point p = prod->sample(rng, 10.0), q = prod->sample(rng, 10.0);
      const auto& pp = *std::get<ProductPoint>(p).pq;
      const auto& qq = *std::get<ProductPoint>(q).pq;
      double manual =
          f2_tree()->distance(pp.left, qq.left) + real_line()->distance(pp.right, qq.right);
      exact = prod->distance(p, q) == manual;
    }
    add_check(R, "l1_product_exact", exact ? Verdict::Pass : Verdict::Fail, 0.0,
              exact ? "" : "l1 product distance is not the exact component sum");
  }
  if (!witness_text.empty()) {
    std::ofstream wf(out / "witness.txt");
    wf << witness_text;
    R.csv_files.push_back("witness.txt");
  }
  return R;
}

// ---------------------------------------------------------------------------
// surjective: covering radius of the image over a target net

ExpResult run_surjective(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"map", FieldType::Str},
                                    {"ball_radius", FieldType::Num},
                                    {"n_net", FieldType::Int},
                                    {"n_source", FieldType::Int},
                                    {"pass_radius", FieldType::Num}}),
                  "$");
  MapUnderTest f = make_map(str(cfg, "map", "id_real"));
  CheckReport rep = coarsely_surjective_check(
      f, num(cfg, "ball_radius", 10.0), int(integer(cfg, "n_net", 200)),
      int(integer(cfg, "n_source", 2000)), seed, num(cfg, "pass_radius", 2.0));
  ExpResult R;
  json values = json::object();
  std::vector<std::string> rows;
  for (const auto& [k, v] : rep.values) {
    values[k] = v;
    rows.push_back(k + "," + fmt(v));
  }
  write_csv(R, out, "surjective.csv", "quantity,value", rows);
  add_check(R, rep.name, rep.verdict, rep.worst, rep.witness, values);
  return R;
}

// ---------------------------------------------------------------------------
// fixed-point: classify bundled isometries and check expected verdicts

MapUnderTest make_isometry(const std::string& name, double rotation_angle) {
  if (name == "h2_rotation") {
    MapUnderTest rot;
    rot.source = h2_space();
    rot.target = h2_space();
    rot.name = name;
    rot.eval = [rotation_angle](const Point& p) {
      const HPoint& h = std::get<HPoint>(p);
      double rr = h2_distance(h, HPoint{0.0, 1.0});
      if (rr < 1e-12) return Point{HPoint{0.0, 1.0}};
      double th = h.has_polar ? h.ptheta : h2_ray_angle(h);
      return Point{h2_polar(rr, th + rotation_angle)};
    };
    return rot;
  }
  if (name == "h2_double") {
    MapUnderTest dbl;
    dbl.source = h2_space();
    dbl.target = h2_space();
    dbl.name = name;
    dbl.eval = [](const Point& p) {
      const HPoint& h = std::get<HPoint>(p);
      return Point{HPoint{2.0 * h.x, 2.0 * h.y}};
    };
    return dbl;
  }
  if (name == "f2_translation_ab") {
    MapUnderTest tr;
    tr.source = f2_tree();
    tr.target = f2_tree();
    tr.name = name;
    tr.eval = [](const Point& p) {
      TreePoint t = std::get<TreePoint>(p);
      std::string gb = reduce_concat("ab", t.base);
      if (t.next == 0) return Point{tree_vertex(gb)};
      std::string gd = reduce_concat("ab", t.base + t.next);
      if (gd.size() > gb.size()) return Point{TreePoint{gb, gd.back(), t.offset}};
      return Point{TreePoint{gd, gb.back(), 1.0 - t.offset}};
    };
    return tr;
  }
  throw SchemaError("$.cases[].isometry",
                    "unknown isometry '" + name +
                        "' (h2_rotation | h2_double | f2_translation_ab)");
}

ExpResult run_fixed_point(const json& cfg, std::uint64_t /*seed*/, const fs::path& out) {
  validate_object(cfg, with_common({{"cases", FieldType::ArrObj},
                                    {"horizon", FieldType::Num},
                                    {"n_iter", FieldType::Int},
                                    {"rotation_angle", FieldType::Num}}),
                  "$");
  if (!cfg.contains("cases")) throw SchemaError("$", "key 'cases' is required");
  double horizon = num(cfg, "horizon", 200.0);
  int n_iter = int(integer(cfg, "n_iter", 40));
  double rotation_angle = num(cfg, "rotation_angle", 0.7);
  const Schema case_schema{{"isometry", FieldType::Str},
                           {"expect", FieldType::Str},
                           {"expect_angle", FieldType::Num},
                           {"expect_stream_prefix", FieldType::Str}};

  ExpResult R;
  DerivedConstants dc = geodesic_dc();
  std::vector<std::string> rows;
  int idx = 0;
  for (const auto& cs : cfg.at("cases")) {
    validate_object(cs, case_schema, "$.cases[" + std::to_string(idx) + "]");
    ++idx;
    std::string name = str(cs, "isometry", "");
    MapUnderTest f = make_isometry(name, rotation_angle);
    Point x0 = name == "h2_rotation" ? Point{HPoint{0.4, 1.3}}
               : name == "h2_double" ? Point{HPoint{0.0, 1.0}}
                                     : Point{tree_vertex("")};
    IsometryClassification c = classify_isometry(f, x0, n_iter, dc, horizon);
    const char* kind = c.kind == IsometryClassification::Elliptic ? "elliptic"
                       : c.kind == IsometryClassification::FixedBoundaryPoint ? "boundary"
                                                                              : "inconclusive";
    std::string fixed_str = c.fixed ? boundary_to_string(*c.fixed) : "";
    rows.push_back(name + "," + kind + "," + fixed_str + "," + fmt(c.fixed_product));

    Verdict v = Verdict::Pass;
    std::string err;
    std::string expect = str(cs, "expect", "");
    if (!expect.empty() && expect != kind) {
      v = Verdict::Fail;
      err = "classified " + std::string(kind) + ", expected " + expect + " (" + c.note + ")";
    }
    if (v == Verdict::Pass && std::string(kind) == "boundary" &&
        !(c.fixed_product > 0.9 * horizon)) {
      v = Verdict::Fail;
      err = "fixed product " + fmt(c.fixed_product) + " <= 0.9*horizon";
    }
    if (v == Verdict::Pass && cs.contains("expect_angle")) {
      double want = cs.at("expect_angle").get<double>();
      if (!c.fixed || std::abs(std::get<H2Angle>(*c.fixed).angle - want) > 1e-6) {
        v = Verdict::Fail;
        err = "fixed angle differs from " + fmt(want);
      }
    }
    if (v == Verdict::Pass && cs.contains("expect_stream_prefix")) {
      std::string want = cs.at("expect_stream_prefix").get<std::string>();
      if (!c.fixed || std::get<WordStream>(*c.fixed).take(want.size()) != want) {
        v = Verdict::Fail;
        err = "fixed stream does not start with " + want;
      }
    }
    add_check(R, "classify_" + name, v, c.fixed_product, err, {{"kind", kind}});
  }
  write_csv(R, out, "fixed_point.csv", "isometry,kind,fixed,fixed_product", rows);
  return R;
}

// ---------------------------------------------------------------------------
// radial-extend: boundary identity / radial+equivariance conclusions / homotopy

BoundaryMap collapse_boundary_map() {
  return [](const BoundaryPoint& b) {
    return BoundaryPoint{H2Angle{collapse_map(std::get<WordStream>(b), 30)}};
  };
}

ExtensionPipeline collapse_pipeline(double horizon, std::uint64_t seed) {
  ExtensionPipeline pl;
  pl.eps = 0.5;
  pl.horizon = horizon;
  pl.source = f2_tree();
  pl.target = h2_space();
  pl.dc_src = geodesic_dc();
  pl.dc_tgt = geodesic_dc();
  std::vector<BoundaryPoint> grid;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 10; ++i) grid.push_back(pl.source->sample_boundary(rng));
  // deep-splitting pairs populate the large product scales the random sample misses
  for (int k : {1, 2, 4, 7, 11, 16, 22, 28}) {
    std::string stem(std::size_t(k), 'a');
    grid.push_back(BoundaryPoint{WordStream{stem, "b"}});
    grid.push_back(BoundaryPoint{WordStream{stem, "B"}});
  }
  pl.psi_table = psi_modulus(*pl.source, *pl.target, collapse_boundary_map(), grid, pl.dc_src,
                             pl.dc_tgt, horizon);
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
  for (int k = 0; k < 34; ++k) {  // dyadic angle separations cover all product scales
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

ExpResult run_radial_identity(const json& cfg, std::uint64_t seed, const fs::path& out) {
  double horizon = num(cfg, "horizon", 1000.0);
  if (!cfg.contains("pipelines")) throw SchemaError("$", "key 'pipelines' is required");
  const Schema pipe_schema{{"pipeline", FieldType::Str},
                           {"n_samples", FieldType::Int},
                           {"stream_depth", FieldType::Int},
                           {"tolerance", FieldType::Num}};
  ExpResult R;
  std::vector<std::string> rows;
  int idx = 0;
  for (const auto& pc : cfg.at("pipelines")) {
    validate_object(pc, pipe_schema, "$.pipelines[" + std::to_string(idx) + "]");
    ++idx;
    std::string which = str(pc, "pipeline", "tree-collapse");
    int n_samples = int(integer(pc, "n_samples", 100));
    double tol = num(pc, "tolerance", 1e-3);
    CheckReport rep;
    if (which == "tree-collapse") {
      ExtensionPipeline pl = collapse_pipeline(horizon, seed);
      int depth = int(integer(pc, "stream_depth", 14));
      std::mt19937_64 rng(seed + 1);
      std::vector<BoundaryPoint> sample;
      for (int i = 0; i < n_samples; ++i)
        sample.push_back(BoundaryPoint{canonical_stream(random_reduced_word(rng, depth))});
      rep = verify_boundary_identity(pl, collapse_boundary_map(), sample, horizon);
    } else if (which == "h2-identity") {
      ExtensionPipeline pl = h2_identity_pipeline(horizon);
      BoundaryMap id = [](const BoundaryPoint& b) { return b; };
      std::mt19937_64 rng(seed + 2);
      std::uniform_real_distribution<double> ua(0.0, 2.0 * kPi);
      std::vector<BoundaryPoint> angles;
      for (int i = 0; i < n_samples; ++i) angles.push_back(BoundaryPoint{H2Angle{ua(rng)}});
      rep = verify_boundary_identity(pl, id, angles, horizon);
    } else {
      throw SchemaError("$.pipelines[].pipeline", "expected tree-collapse | h2-identity");
    }
    Verdict v = rep.verdict == Verdict::Inconclusive
                    ? Verdict::Inconclusive
                    : (rep.worst <= tol ? Verdict::Pass : Verdict::Fail);
    rows.push_back(which + "," + std::to_string(n_samples) + "," + fmt(rep.worst) + "," +
                   fmt(tol) + "," + verdict_str(v));
    add_check(R, "boundary_identity_" + which, v, rep.worst, rep.witness, {{"tolerance", tol}});
  }
  write_csv(R, out, "boundary_identity.csv", "pipeline,n_samples,worst_deviation,tolerance,verdict",
            rows);
  return R;
}

ExpResult run_radial_conclusions(const json& cfg, std::uint64_t seed, const fs::path& out) {
  double horizon = num(cfg, "horizon", 1000.0);
  std::vector<double> tg = num_array(cfg, "t_grid", {50.0, 100.0, 200.0, 400.0, 700.0, 1000.0});
  std::vector<double> depths = num_array(cfg, "depths", {6.0, 9.0, 12.0});
  int n_rays = int(integer(cfg, "n_rays", 20));
  int n_segments = int(integer(cfg, "n_segments", 30));
  int t_steps = int(integer(cfg, "t_steps", 8));

  ExpResult R;
  ExtensionPipeline pl = collapse_pipeline(horizon, seed);
  MapUnderTest rad = radial_extension_map(pl, collapse_boundary_map(), "rad_collapse");
  double eps = pl.eps;
  RoughContraction r = pl.r;
  auto reach = [r, eps](double t) { return std::pow(r(std::pow(t, eps)), 1.0 / eps); };
  double k1 = pl.dc_src.k1;
  RealFn sigma = [reach, k1](double t) { return std::max(0.0, reach(t) - k1); };
  double slack = radial_profile_slack(rad, sigma, n_rays, tg, seed + 1, horizon);
  add_check(R, "radial_profile_slack", slack <= 0.0 ? Verdict::Pass : Verdict::Fail, slack,
            slack <= 0.0 ? "" : "sigma exceeds an observed radial value");
  RadialProfile profile = radial_profile(rad, n_rays, tg, seed + 1, horizon);
  std::vector<std::string> prof_rows;
  for (std::size_t i = 0; i < tg.size(); ++i)
    prof_rows.push_back(fmt(tg[i]) + "," + fmt(profile.sigma_star[i]) + "," + fmt(sigma(tg[i])));
  write_csv(R, out, "radial_profile.csv", "t,sigma_star,sigma_bound", prof_rows);

  RoughContraction rho{reach, 0.0};
  double prev = kInf;
  bool monotone = true, finite = true;
  std::vector<std::string> eq_rows;
  for (double depth : depths) {
    EquivarianceReport er = equivariance_defect(rad, rho, n_segments, depth, t_steps, seed + 2);
    finite = finite && std::isfinite(er.H_observed);
    if (er.H_observed > prev + 1e-9) monotone = false;
    prev = er.H_observed;
    eq_rows.push_back(fmt(depth) + "," + fmt(er.H_observed) + "," + fmt(er.basepoint_deviation));
  }
  write_csv(R, out, "equivariance.csv", "depth,H_observed,basepoint_deviation", eq_rows);
  add_check(R, "equivariance_defect", finite && monotone ? Verdict::Pass : Verdict::Fail, prev,
            !finite ? "defect not finite" : (monotone ? "" : "defect grew with sample depth"));
  return R;
}

ExpResult run_radial_homotopy(const json& cfg, std::uint64_t seed, const fs::path& out) {
  double horizon = num(cfg, "horizon", 1000.0);
  int n_samples = int(integer(cfg, "n_samples", 1000));
  double radius = num(cfg, "radius", 400.0);
  double tol = num(cfg, "tolerance", 1e-9);
  double window = num(cfg, "window", 5.0);

  ExpResult R;
  ExtensionPipeline pl = collapse_pipeline(horizon, seed);
  BoundaryMap g = collapse_boundary_map();
  TwoContractions tc{pl.r, pl.r};
  ContractionVsMap cv{identity_contraction(), pl.r};
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  auto tgt = pl.target;
  double worst_end = 0.0, modulus = 0.0;
  Point prev_pt;
  double prev_t = 0.0;
  bool have_prev = false;
  for (int i = 0; i < n_samples; ++i) {
    Point x = pl.source->sample(rng, radius);
    double T = pl.source->distance(pl.source->basepoint(), x);
    if (T < 1.0) continue;
    Point radx = radial_extension(pl, g, x);
    worst_end = std::max(worst_end, tgt->distance(homotopy_eval(pl, g, tc, x, 0.0), radx));
    worst_end = std::max(worst_end, tgt->distance(homotopy_eval(pl, g, tc, x, T), radx));
    Point start = homotopy_eval(pl, g, cv, x, 0.0);
    Ray eta = pl.target->ray(g(pl.source->direction_of(x)), pl.horizon);
    worst_end = std::max(worst_end, tgt->distance(start, eta(std::min(T, pl.horizon))));
    worst_end = std::max(worst_end, tgt->distance(homotopy_eval(pl, g, cv, x, T), radx));
    double t = uu(rng) * T;
    Point ht = homotopy_eval(pl, g, tc, x, t);
    if (have_prev && std::abs(t - prev_t) <= window)
      modulus = std::max(modulus, tgt->distance(ht, prev_pt));
    prev_pt = homotopy_eval(pl, g, tc, x, std::min(T, t + uu(rng)));
    prev_t = t;
    have_prev = true;
  }
  write_csv(R, out, "homotopy.csv", "quantity,value",
            {"worst_endpoint_deviation," + fmt(worst_end),
             "bornologous_modulus_window_" + fmt(window) + "," + fmt(modulus)});
  add_check(R, "homotopy_endpoints", worst_end <= tol ? Verdict::Pass : Verdict::Fail, worst_end,
            worst_end <= tol ? "" : "endpoint identity deviates beyond tolerance",
            {{"tolerance", tol}});
  add_check(R, "bornologous_modulus", std::isfinite(modulus) ? Verdict::Pass : Verdict::Fail,
            modulus, std::isfinite(modulus) ? "" : "modulus not finite");
  return R;
}

ExpResult run_radial_extend(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"mode", FieldType::Str},
                                    {"horizon", FieldType::Num},
                                    {"pipelines", FieldType::ArrObj},
                                    {"t_grid", FieldType::Arr},
                                    {"depths", FieldType::Arr},
                                    {"n_rays", FieldType::Int},
                                    {"n_segments", FieldType::Int},
                                    {"t_steps", FieldType::Int},
                                    {"n_samples", FieldType::Int},
                                    {"radius", FieldType::Num},
                                    {"tolerance", FieldType::Num},
                                    {"window", FieldType::Num}}),
                  "$");
  std::string mode = str(cfg, "mode", "boundary-identity");
  if (mode == "boundary-identity") return run_radial_identity(cfg, seed, out);
  if (mode == "conclusions") return run_radial_conclusions(cfg, seed, out);
  if (mode == "homotopy") return run_radial_homotopy(cfg, seed, out);
  throw SchemaError("$.mode", "expected boundary-identity | conclusions | homotopy");
}

// ---------------------------------------------------------------------------
// dv-suite: coding table, radiality, sigma* profile, quick n-to-one table

ExpResult run_dv_suite(const json& cfg, std::uint64_t seed, const fs::path& out) {
  validate_object(cfg, with_common({{"coding_depth", FieldType::Int},
                                    {"radiality_n", FieldType::Int},
                                    {"radiality_max_depth", FieldType::Int},
                                    {"radiality_tolerance", FieldType::Num},
                                    {"sigma_t_grid", FieldType::Arr},
                                    {"ntoone_R_grid", FieldType::Arr},
                                    {"ntoone_n_random", FieldType::Int},
                                    {"ntoone_fail_threshold", FieldType::Num},
                                    {"source_radius", FieldType::Num}}),
                  "$");
  int coding_depth = int(integer(cfg, "coding_depth", 2));
  long long radiality_n = integer(cfg, "radiality_n", 10000);
  int radiality_depth = int(integer(cfg, "radiality_max_depth", 12));
  double radiality_tol = num(cfg, "radiality_tolerance", 1e-9);
  std::vector<double> sigma_tg = num_array(cfg, "sigma_t_grid", {1.0, 2.0, 4.0, 8.0, 12.0});
  std::vector<double> R_grid = num_array(cfg, "ntoone_R_grid", {1.0, 2.0, 3.0, 4.0, 5.0});

  ExpResult R;
  // coding table for the requested depth
  {
    std::ofstream os(out / "coding_table.csv");
    os << coding_table_csv(coding_depth);
    R.csv_files.push_back("coding_table.csv");
  }
  // radiality: exact distance preservation to the basepoint on vertices
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ud(0, radiality_depth);
  HPoint O{0.0, 1.0};
  double worst = 0.0;
  for (long long i = 0; i < radiality_n; ++i) {
    std::string w = random_reduced_word(rng, ud(rng));
    double got = h2_distance(dv_map(TreePoint{w, 0, 0.0}), O);
    worst = std::max(worst, std::abs(got - double(w.size())));
  }
  add_check(R, "radiality", worst <= radiality_tol ? Verdict::Pass : Verdict::Fail, worst,
            worst <= radiality_tol ? "" : "radial distance error beyond tolerance",
            {{"tolerance", radiality_tol}, {"vertices", radiality_n}});

  // sigma*(t) profile of the radial minimum
  MapUnderTest f = dv_map_under_test();
  RadialProfile rp = radial_profile(f, 30, sigma_tg, seed + 1, num(cfg, "source_radius", 12.0));
  std::vector<std::string> sigma_rows;
  double sigma_worst = 0.0;
  for (std::size_t i = 0; i < sigma_tg.size(); ++i) {
    sigma_rows.push_back(fmt(sigma_tg[i]) + "," + fmt(rp.sigma_star[i]));
    sigma_worst = std::max(sigma_worst, std::abs(rp.sigma_star[i] - sigma_tg[i]));
  }
  write_csv(R, out, "sigma_star.csv", "t,sigma_star", sigma_rows);
  add_check(R, "sigma_star_identity", sigma_worst <= 1e-9 ? Verdict::Pass : Verdict::Fail,
            sigma_worst, sigma_worst <= 1e-9 ? "" : "sigma* deviates from t");

  // quick coarse 2-to-1 table
  NToOneOptions opt;
  opt.n_random = int(integer(cfg, "ntoone_n_random", 2000));
  opt.source_radius = num(cfg, "source_radius", 12.0);
  opt.fail_threshold = num(cfg, "ntoone_fail_threshold", 100.0);
  opt.seed = seed + 2;
  NToOneResult res = coarsely_n_to_one(f, 2, R_grid, opt);
  std::vector<std::string> nt_rows;
  for (const auto& row : res.table)
    nt_rows.push_back(fmt(row.R) + "," + fmt(row.S) + "," + std::to_string(row.considered));
  write_csv(R, out, "ntoone.csv", "R,S,considered", nt_rows);
  add_check(R, "coarse_2_to_1", res.failed ? Verdict::Fail : Verdict::Pass,
            res.table.empty() ? 0.0 : res.table.back().S, res.witness);
  return R;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"ccxlab: experiment runner for coarsely convex space diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  long long seed_override = -1;
  const std::vector<std::pair<std::string, std::string>> subs = {
      {"axioms", "convexity slack over random geodesic pairs"},
      {"gromov", "Gromov products: tree oracle or quasi-ultrametric inequality"},
      {"visual-metric", "chain visual metric axioms and sandwich"},
      {"induced-map", "angle-bucket occupancy or induced boundary limits"},
      {"n-to-one", "coarse / visual n-to-one searches"},
      {"surjective", "coarse surjectivity covering radius"},
      {"fixed-point", "isometry fixed-point classifier"},
      {"radial-extend", "radial extension: boundary identity, conclusions, homotopy"},
      {"dv-suite", "example-map suite: coding table, radiality, profiles"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed_override, "override the config seed");
    sub->add_option("--out", out_override, "output directory (created if missing)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string experiment = app.get_subcommands().at(0)->get_name();

  auto t0 = std::chrono::steady_clock::now();
  try {
    std::ifstream is(config_path);
    json cfg = json::parse(is);
    if (!cfg.is_object()) throw SchemaError("$", "config must be a JSON object");
    if (cfg.contains("experiment") && cfg.at("experiment").get<std::string>() != experiment)
      throw SchemaError("$.experiment", "config is for '" +
                                            cfg.at("experiment").get<std::string>() +
                                            "', invoked as '" + experiment + "'");
    std::uint64_t seed =
        seed_override >= 0 ? std::uint64_t(seed_override)
                           : std::uint64_t(cfg.contains("seed") ? cfg.at("seed").get<long long>()
                                                                : 1);
    fs::path out = !out_override.empty() ? fs::path(out_override)
                   : cfg.contains("out") ? fs::path(cfg.at("out").get<std::string>())
                                         : fs::path("ccxlab-out") / experiment;
    fs::create_directories(out);

    ExpResult res;
    if (experiment == "axioms") res = run_axioms(cfg, seed, out);
    else if (experiment == "gromov") res = run_gromov(cfg, seed, out);
    else if (experiment == "visual-metric") res = run_visual_metric(cfg, seed, out);
    else if (experiment == "induced-map") res = run_induced_map(cfg, seed, out);
    else if (experiment == "n-to-one") res = run_n_to_one(cfg, seed, out);
    else if (experiment == "surjective") res = run_surjective(cfg, seed, out);
    else if (experiment == "fixed-point") res = run_fixed_point(cfg, seed, out);
    else if (experiment == "radial-extend") res = run_radial_extend(cfg, seed, out);
    else if (experiment == "dv-suite") res = run_dv_suite(cfg, seed, out);

    const char* threads_env = std::getenv("CCXLAB_THREADS");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json report{{"schema_version", kSchemaVersion},
                {"library_version", kLibraryVersion},
                {"experiment", experiment},
                {"config", cfg},
                {"seed", seed},
                {"threads", threads_env ? std::atoi(threads_env) : 1},
                {"verdict", verdict_str(res.verdict)},
                {"checks", res.checks},
                {"csv_files", res.csv_files},
                {"wall_time_s", wall}};
    {
      std::ofstream os(out / "report.json");
      os << report.dump(2) << "\n";
    }
    std::printf("[%s] %s (%.2f s) -> %s\n",
                res.verdict == Verdict::Pass ? "PASS"
                : res.verdict == Verdict::Fail ? "FAIL"
                                               : "INCONCLUSIVE",
                experiment.c_str(), wall, (out / "report.json").string().c_str());
    for (const auto& c : res.checks)
      std::printf("  %-32s %s  worst=%s%s%s\n", c.at("name").get<std::string>().c_str(),
                  c.at("verdict").get<std::string>().c_str(),
                  fmt(c.at("worst").get<double>()).c_str(),
                  c.at("witness").get<std::string>().empty() ? "" : "  ",
                  c.at("witness").get<std::string>().c_str());
    return res.verdict == Verdict::Pass ? 0 : (res.verdict == Verdict::Fail ? 1 : 2);
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config parse error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
