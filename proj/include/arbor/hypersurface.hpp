#pragma once

// The rectilinear arboreal hypersurface in R^V(T), Euclidean charts of the
// arboreal singularity, and the point -> correspondence classification.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/linalg.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// Entry v is -1, 0 or +1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {}
  // Characters '-', '0', '+'; throws Parse.
  static SignVector Parse(std::string_view text);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t v) const { return signs_[v]; }
  const std::vector<std::int8_t>& values() const { return signs_; }
  std::string to_string() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend auto operator<=>(const SignVector&, const SignVector&) = default;

 private:
  std::vector<std::int8_t> signs_;
};

// A coordinate codirection sign * dx_axis at a stratum.
struct Codirection {
  SignVector base;
  Vertex axis = 0;
  int sign = 1;
  std::string to_string(const Tree& t) const;
};

// A point of the chart L_T(chart) = R^{V \ chart}. coords is indexed by vertex;
// the entry at `chart` is ignored and kept at zero.
struct LPoint {
  Vertex chart = 0;
  std::vector<Rational> coords;
  friend bool operator==(const LPoint&, const LPoint&) = default;
};

// A point of R^V(T) indexed by vertex.
using Point = std::vector<Rational>;

// Exists a with x_a = 0 and x_b > 0 for all b < a. Throws BadIndexSet.
bool in_hypersurface(const RootedTree& rt, const Point& x);

SignVector stratum_of(const Point& x);

// Coordinates of p in chart `target`, or nullopt when p is not in that chart.
// Throws UnknownVertex.
std::optional<LPoint> transport(const Tree& t, const LPoint& p, Vertex target);

Correspondence classify(const Tree& t, const LPoint& p);

// A point with coordinates in {-1, 0, 1} classifying to c. The chart defaults
// to the lowest-index vertex of S and must lie in S.
LPoint sample(const Tree& t, const Correspondence& c, std::optional<Vertex> chart = std::nullopt);

// Throws NonpositiveScale.
LPoint dilate(const LPoint& p, const Rational& r);

struct CorayEntry {
  Vertex quadrant;  // x lies on the boundary of Q_quadrant
  std::vector<Codirection> rays;
};

// Every quadrant Q_a = {x_b >= 0 for b <= a} whose boundary contains x, with the
// inward coordinate codirections +dx_b for b <= a, x_b = 0.
// Throws NotOnHypersurface.
std::vector<CorayEntry> coray_fiber(const RootedTree& rt, const Point& x);

// Projects a point of the arboreal singularity to the hypersurface in R^V(T),
// one leaf at a time: a point of chart a != leaf keeps x_leaf; a point only in
// the leaf's own chart is pushed across the parent's quadrant boundary.
Point front_projection(const RootedTree& rt, const LPoint& p);

}  // namespace arbor
