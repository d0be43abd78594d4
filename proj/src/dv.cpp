#include "ccx/dv.hpp"

#include <cmath>
#include <sstream>

namespace ccx {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
const std::string kLetterOrder = "abAB";

// Admissible continuations of `last`, in the fixed letter order.
std::string child_letters(char last) {
  std::string out;
  char bad = inverse_letter(last);
  for (char c : kLetterOrder)
    if (c != bad) out.push_back(c);
  return out;
}

}  // namespace

CylinderInterval cylinder_interval(const std::string& word) {
  if (word.empty()) throw std::invalid_argument("cylinder_interval: empty word");
  if (!is_reduced(word)) throw std::invalid_argument("cylinder_interval: not reduced: " + word);
  std::size_t first = kLetterOrder.find(word[0]);
  Rational lo(static_cast<long long>(first), 4);
  Rational width(1, 4);
  for (std::size_t i = 1; i < word.size(); ++i) {
    std::string opts = child_letters(word[i - 1]);
    long long j = static_cast<long long>(opts.find(word[i]));
    width /= 3;
    lo += Rational(j) * width;
  }
  return CylinderInterval{word, lo, lo + width};
}

double collapse_map(const std::string& word) {
  CylinderInterval ci = cylinder_interval(word);
  return kTwoPi * boost::rational_cast<double>(ci.midpoint());
}

double collapse_map(const WordStream& stream, int depth_cap) {
  return collapse_map(stream.take(std::size_t(depth_cap)));
}

HPoint dv_map(const TreePoint& p) {
  std::string word = p.base;
  if (p.next != 0) word.push_back(p.next);
  double radius = double(p.base.size()) + p.offset;
  if (word.empty()) return HPoint{0.0, 1.0};
  return h2_polar(radius, collapse_map(word));
}

std::pair<std::string, std::string> dv_witness_pair(int depth) {
  if (depth < 1) throw std::invalid_argument("dv_witness_pair: depth >= 1 required");
  std::string w1 = "a", w2 = "b";
  for (int i = 1; i < depth; ++i) {
    w1.push_back('B');  // rightmost descendant of "a": hi stays at 1/4
    w2.push_back('a');  // leftmost descendant of "b": lo stays at 1/4
  }
  return {w1, w2};
}

std::vector<std::string> all_words(int length) {
  std::vector<std::string> out;
  if (length == 0) {
    out.push_back("");
    return out;
  }
  std::vector<std::string> cur;
  for (char c : kLetterOrder) cur.push_back(std::string(1, c));
  for (int d = 1; d < length; ++d) {
    std::vector<std::string> next;
    next.reserve(cur.size() * 3);
    for (const auto& w : cur)
      for (char c : child_letters(w.back())) next.push_back(w + c);
    cur.swap(next);
  }
  return cur;
}

MapUnderTest dv_map_under_test() {
  MapUnderTest f;
  f.source = f2_tree();
  f.target = h2_space();
  f.eval = [](const Point& p) { return Point{dv_map(std::get<TreePoint>(p))}; };
  f.name = "dv";
  return f;
}

MapUnderTest dv_times_id() {
  MapUnderTest f;
  f.source = product_space(f2_tree(), real_line());
  f.target = product_space(h2_space(), real_line());
  f.eval = [](const Point& p) {
    const auto& pp = *std::get<ProductPoint>(p).pq;
    return Point{make_product_point(Point{dv_map(std::get<TreePoint>(pp.left))}, pp.right)};
  };
  f.name = "dv_x_id";
  return f;
}

MapUnderTest dv_times_dv() {
  MapUnderTest f;
  f.source = product_space(f2_tree(), f2_tree());
  f.target = product_space(h2_space(), h2_space());
  f.eval = [](const Point& p) {
    const auto& pp = *std::get<ProductPoint>(p).pq;
    return Point{make_product_point(Point{dv_map(std::get<TreePoint>(pp.left))},
                                    Point{dv_map(std::get<TreePoint>(pp.right))})};
  };
  f.name = "dv_x_dv";
  return f;
}

std::string coding_table_csv(int depth) {
  std::ostringstream os;
  os << "word,lo,hi,midpoint_angle\n";
  for (const auto& w : all_words(depth)) {
    CylinderInterval ci = cylinder_interval(w);
    os << w << "," << ci.lo.numerator() << "/" << ci.lo.denominator() << "," << ci.hi.numerator()
       << "/" << ci.hi.denominator() << "," << kTwoPi * boost::rational_cast<double>(ci.midpoint())
       << "\n";
  }
  return os.str();
}

}  // namespace ccx
