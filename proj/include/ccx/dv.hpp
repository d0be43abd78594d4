#pragma once
// The example suite: a Cantor-to-circle 2-to-1 collapse coding on the tree
// boundary, the induced radial map F2 -> H2, and its products with id / itself.

#include <boost/rational.hpp>
#include <string>
#include <vector>

#include "ccx/boundary.hpp"
#include "ccx/maps.hpp"
#include "ccx/spaces.hpp"

namespace ccx {

using Rational = boost::rational<long long>;

// Nested closed intervals in [0,1]: the four level-1 quarters in letter order
// a < b < A < B; each deeper cylinder splits its parent into 3 equal parts
// ordered by the same letter order with the inverse letter excluded.
struct CylinderInterval {
  std::string word;
  Rational lo, hi;
  Rational midpoint() const { return (lo + hi) / 2; }
};

CylinderInterval cylinder_interval(const std::string& word);

// 2*pi*midpoint of the cylinder; streams are evaluated at depth_cap
// (error <= 2*pi*3^(-depth_cap)).
double collapse_map(const std::string& word);
double collapse_map(const WordStream& stream, int depth_cap = 18);

// Point of H2 at hyperbolic distance d(p,e) from O along the ray at the
// collapse angle of p's word (edge points use the child word's angle).
HPoint dv_map(const TreePoint& p);

// Abutting-cylinder witness: two reduced words of the given depth whose
// cylinder intervals share an endpoint (so their collapse angles converge),
// while the words diverge at the first letter.
std::pair<std::string, std::string> dv_witness_pair(int depth);

// All reduced words of exactly the given length, in cylinder order.
std::vector<std::string> all_words(int length);

// CSV rows (word, lo, hi, midpoint-angle) for one depth.
std::string coding_table_csv(int depth);

// The radial map F2 -> H2 and its products with the identity and itself.
MapUnderTest dv_map_under_test();
MapUnderTest dv_times_id();  // F2 x R -> H2 x R
MapUnderTest dv_times_dv();  // F2 x F2 -> H2 x H2

}  // namespace ccx
