#include "arbor/hypersurface.hpp"

#include <algorithm>

#include "arbor/error.hpp"

namespace arbor {

SignVector SignVector::Parse(std::string_view text) {
  std::vector<std::int8_t> s;
  for (char c : text) {
    switch (c) {
      case '-': s.push_back(-1); break;
      case '0': s.push_back(0); break;
      case '+': s.push_back(1); break;
      default: throw Error(ErrorKind::kParse, "bad sign character in '" + std::string(text) + "'");
    }
  }
  return SignVector(std::move(s));
}

std::string SignVector::to_string() const {
  std::string out;
  for (auto s : signs_) out += s < 0 ? '-' : s > 0 ? '+' : '0';
  return out;
}

std::string Codirection::to_string(const Tree& t) const {
  return base.to_string() + ":" + (sign > 0 ? "+" : "-") + "dx_" + t.label(axis);
}

bool in_hypersurface(const RootedTree& rt, const Point& x) {
  if (x.size() != rt.size())
    throw Error(ErrorKind::kBadIndexSet, "point has " + std::to_string(x.size()) +
                                             " coordinates, tree has " + std::to_string(rt.size()));
  for (Vertex a = 0; a < static_cast<Vertex>(rt.size()); ++a) {
    if (x[a] != 0) continue;
    bool below_positive = true;
    for (Vertex b : members(rt.down_set(a) & ~bit(a)))
      if (x[b] <= 0) below_positive = false;
    if (below_positive) return true;
  }
  return false;
}

SignVector stratum_of(const Point& x) {
  std::vector<std::int8_t> s;
  for (const Rational& q : x) s.push_back(static_cast<std::int8_t>(sgn(q)));
  return SignVector(std::move(s));
}

namespace {

void check_point(const Tree& t, const LPoint& p) {
  if (p.chart < 0 || static_cast<std::size_t>(p.chart) >= t.size())
    throw Error(ErrorKind::kUnknownVertex, "chart index " + std::to_string(p.chart));
  if (p.coords.size() != t.size())
    throw Error(ErrorKind::kBadIndexSet, "chart point has " + std::to_string(p.coords.size()) +
                                             " coordinates, tree has " + std::to_string(t.size()));
}

// Transport restricted to a path (g0 = chart, ..., gk = target).
std::optional<LPoint> transport_along(const LPoint& p, const std::vector<Vertex>& path) {
  for (std::size_t i = 1; i < path.size(); ++i)
    if (p.coords[path[i]] < 0) return std::nullopt;
  LPoint out = p;
  out.chart = path.back();
  for (std::size_t i = 1; i < path.size(); ++i) out.coords[path[i - 1]] = p.coords[path[i]];
  out.coords[out.chart] = 0;
  return out;
}

}  // namespace

std::optional<LPoint> transport(const Tree& t, const LPoint& p, Vertex target) {
  check_point(t, p);
  if (target < 0 || static_cast<std::size_t>(target) >= t.size())
    throw Error(ErrorKind::kUnknownVertex, "target index " + std::to_string(target));
  return transport_along(p, t.path(p.chart, target));
}

Correspondence classify(const Tree& t, const LPoint& p) {
  check_point(t, p);
  std::vector<std::optional<LPoint>> in_chart(t.size());
  VertexSet s = 0;
  for (Vertex g = 0; g < static_cast<Vertex>(t.size()); ++g) {
    in_chart[g] = transport(t, p, g);
    if (in_chart[g]) s |= bit(g);
  }
  EdgeSet k = 0;
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    const Edge& e = t.edges()[i];
    if (contains(s, e.u) && contains(s, e.v) && in_chart[e.u]->coords[e.v] > 0) k |= EdgeSet{1} << i;
  }
  return make_correspondence(t, s, k);
}

LPoint sample(const Tree& t, const Correspondence& c, std::optional<Vertex> chart) {
  if (c.tree_fingerprint() != t.fingerprint())
    throw Error(ErrorKind::kMismatchedTree, "correspondence belongs to another tree");
  const Vertex a = chart.value_or(members(c.s()).front());
  if (a < 0 || static_cast<std::size_t>(a) >= t.size() || !contains(c.s(), a))
    throw Error(ErrorKind::kUnknownVertex, "sample chart must lie in S");
  LPoint p{a, std::vector<Rational>(t.size())};
  // The nearest vertex to a of every part, fiber or complementary.
  auto nearest = [&](VertexSet part) { return t.nearest_in(part, a); };
  for (Vertex g = 0; g < static_cast<Vertex>(t.size()); ++g) {
    if (g == a) continue;
    if (c.fiber_of(g) >= 0) {
      if (c.fiber_of(g) == c.fiber_of(a)) {
        p.coords[g] = 1;
      } else {
        p.coords[g] = nearest(c.fibers()[c.fiber_of(g)]) == g ? 0 : 1;
      }
    } else {
      p.coords[g] = nearest(c.complements()[c.complement_of(g)]) == g ? -1 : 0;
    }
  }
  return p;
}

LPoint dilate(const LPoint& p, const Rational& r) {
  if (r <= 0) throw Error(ErrorKind::kNonpositiveScale, "dilation factor " + r.get_str());
  LPoint out = p;
  for (Rational& x : out.coords) x *= r;
  return out;
}

std::vector<CorayEntry> coray_fiber(const RootedTree& rt, const Point& x) {
  if (!in_hypersurface(rt, x)) throw Error(ErrorKind::kNotOnHypersurface, "point is not on the hypersurface");
  const SignVector base = stratum_of(x);
  std::vector<CorayEntry> out;
  for (Vertex a = 0; a < static_cast<Vertex>(rt.size()); ++a) {
    const auto below = members(rt.down_set(a));
    if (!std::all_of(below.begin(), below.end(), [&](Vertex b) { return x[b] >= 0; })) continue;
    CorayEntry entry{a, {}};
    for (Vertex b : below)
      if (x[b] == 0) entry.rays.push_back(Codirection{base, b, +1});
    if (!entry.rays.empty()) out.push_back(std::move(entry));
  }
  return out;
}

namespace {

// Front of a point of the arboreal singularity of the subtree `alive`, which is
// connected and contains the root. coords are indexed by full-tree vertex.
Point front_within(const RootedTree& rt, VertexSet alive, Vertex chart, const std::vector<Rational>& coords) {
  const Tree& t = rt.tree();
  Point z(t.size());
  if (popcount(alive) == 1) return z;
  // A leaf of `alive` other than the root: nothing alive above it.
  Vertex leaf = -1;
  for (Vertex v : members(alive)) {
    if (v == rt.root()) continue;
    bool has_child = false;
    for (Vertex w : members(t.neighbors(v) & alive))
      if (rt.parent(w) == v) has_child = true;
    if (!has_child) leaf = v;
  }
  const Vertex up = rt.parent(leaf);
  const VertexSet rest = alive & ~bit(leaf);
  if (chart != leaf) {
    z = front_within(rt, rest, chart, coords);
    z[leaf] = coords[leaf];
    return z;
  }
  const Rational lift = coords[up];
  if (lift >= 0) {
    std::vector<Rational> moved = coords;
    moved[leaf] = lift;
    moved[up] = 0;
    z = front_within(rt, rest, up, moved);
    z[leaf] = lift;
    return z;
  }
  std::vector<Rational> reread = coords;
  reread[up] = 0;
  z = front_within(rt, rest, up, reread);
  for (Vertex b : members(rt.down_set(up) & rest)) z[b] -= lift;
  z[leaf] = 0;
  return z;
}

}  // namespace

Point front_projection(const RootedTree& rt, const LPoint& p) {
  check_point(rt.tree(), p);
  return front_within(rt, rt.tree().all(), p.chart, p.coords);
}

}  // namespace arbor
