#include "arbor/tree.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>

#include "arbor/error.hpp"

namespace arbor {

int popcount(std::uint64_t x) { return std::popcount(x); }

std::vector<Vertex> members(VertexSet s) {
  std::vector<Vertex> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<int> parent;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Tree Tree::Create(std::vector<std::string> vertices,
                  const std::vector<std::pair<std::string, std::string>>& edges) {
  if (vertices.empty()) throw Error(ErrorKind::kEmptyVertexSet, "a tree needs at least one vertex");
  if (vertices.size() > kMaxVertices)
    throw Error(ErrorKind::kTooLarge, "at most 64 vertices are supported");
  std::sort(vertices.begin(), vertices.end());
  if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end())
    throw Error(ErrorKind::kDuplicateVertex, "vertex '" + *dup + "' listed twice");

  Tree t;
  t.labels_ = std::move(vertices);
  const std::size_t n = t.labels_.size();
  t.adjacency_.assign(n, 0);

  std::vector<std::pair<int, int>> pairs;
  for (const auto& [a, b] : edges) {
    auto ia = t.find(a);
    auto ib = t.find(b);
    if (!ia || !ib)
      throw Error(ErrorKind::kBadEdge, "edge {" + a + "," + b + "} references an undeclared vertex");
    if (*ia == *ib) throw Error(ErrorKind::kBadEdge, "self-loop at '" + a + "'");
    pairs.emplace_back(std::min(*ia, *ib), std::max(*ia, *ib));
  }
  std::sort(pairs.begin(), pairs.end());
  if (auto dup = std::adjacent_find(pairs.begin(), pairs.end()); dup != pairs.end())
    throw Error(ErrorKind::kBadEdge, "duplicate edge {" + t.labels_[dup->first] + "," +
                                         t.labels_[dup->second] + "}");

  DisjointSets sets(n);
  for (const auto& [u, v] : pairs) {
    if (!sets.unite(u, v))
      throw Error(ErrorKind::kCycleDetected,
                  "edge {" + t.labels_[u] + "," + t.labels_[v] + "} closes a cycle");
    t.edges_.push_back({u, v});
    t.adjacency_[u] |= bit(v);
    t.adjacency_[v] |= bit(u);
  }
  for (std::size_t v = 1; v < n; ++v)
    if (sets.find(static_cast<int>(v)) != sets.find(0))
      throw Error(ErrorKind::kDisconnected,
                  "vertex '" + t.labels_[v] + "' is not reachable from '" + t.labels_[0] + "'");

  t.distance_.assign(n * n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<Vertex> frontier;
    frontier.push(static_cast<Vertex>(s));
    t.distance_[s * n + s] = 0;
    while (!frontier.empty()) {
      Vertex u = frontier.front();
      frontier.pop();
      for (Vertex w : members(t.adjacency_[u])) {
        if (t.distance_[s * n + w] < 0) {
          t.distance_[s * n + w] = t.distance_[s * n + u] + 1;
          frontier.push(w);
        }
      }
    }
  }

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& l : t.labels_) h = mix(h, std::hash<std::string>{}(l));
  for (const auto& e : t.edges_) h = mix(h, static_cast<std::uint64_t>(e.u) * 131 + e.v);
  t.fingerprint_ = h;
  return t;
}

std::optional<Vertex> Tree::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<Vertex>(it - labels_.begin());
}

Vertex Tree::index_of(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw Error(ErrorKind::kUnknownVertex, "no vertex '" + std::string(label) + "'");
}

int Tree::edge_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].u == u && edges_[i].v == v) return static_cast<int>(i);
  return -1;
}

VertexSet Tree::all() const {
  return size() == 64 ? ~VertexSet{0} : (VertexSet{1} << size()) - 1;
}

EdgeSet Tree::all_edges() const {
  return edges_.size() == 64 ? ~EdgeSet{0} : (EdgeSet{1} << edges_.size()) - 1;
}

EdgeSet Tree::edges_within(VertexSet s) const {
  EdgeSet out = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (contains(s, edges_[i].u) && contains(s, edges_[i].v)) out |= EdgeSet{1} << i;
  return out;
}

std::vector<VertexSet> Tree::components(VertexSet s) const {
  return components(s, edges_within(s));
}

std::vector<VertexSet> Tree::components(VertexSet s, EdgeSet k) const {
  std::vector<VertexSet> adj(size(), 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!((k >> i) & 1U)) continue;
    adj[edges_[i].u] |= bit(edges_[i].v);
    adj[edges_[i].v] |= bit(edges_[i].u);
  }
  std::vector<VertexSet> out;
  VertexSet left = s;
  while (left) {
    VertexSet comp = left & (~left + 1);
    VertexSet grown = comp;
    do {
      comp = grown;
      for (Vertex v : members(comp)) grown |= adj[v] & s;
    } while (grown != comp);
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

bool Tree::is_connected(VertexSet s) const { return s != 0 && components(s).size() == 1; }

std::vector<Vertex> Tree::path(Vertex u, Vertex v) const {
  std::vector<Vertex> out{u};
  while (u != v) {
    for (Vertex w : members(adjacency_[u])) {
      if (distance(w, v) == distance(u, v) - 1) {
        u = w;
        break;
      }
    }
    out.push_back(u);
  }
  return out;
}

Vertex Tree::nearest_in(VertexSet s, Vertex v) const {
  Vertex best = -1;
  for (Vertex w : members(s))
    if (best < 0 || distance(v, w) < distance(v, best)) best = w;
  return best;
}

std::vector<std::pair<int, int>> Tree::edge_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : edges_) out.emplace_back(e.u, e.v);
  return out;
}

int distance(const Tree& t, std::string_view u, std::string_view v) {
  return t.distance(t.index_of(u), t.index_of(v));
}

RootedTree::RootedTree(Tree tree, Vertex root) : tree_(std::move(tree)), root_(root) {
  const auto n = static_cast<Vertex>(tree_.size());
  if (root < 0 || root >= n) throw Error(ErrorKind::kUnknownVertex, "root index out of range");
  parent_.assign(n, -1);
  down_.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : tree_.path(v, root_)) down_[v] |= bit(u);
    if (v != root_) parent_[v] = tree_.path(v, root_)[1];
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](Vertex a, Vertex b) { return depth(a) < depth(b); });
}

RootedTree RootedTree::Create(Tree tree, std::string_view root) {
  Vertex r = tree.index_of(root);
  return RootedTree(std::move(tree), r);
}

bool rooted_leq(const RootedTree& rt, std::string_view u, std::string_view v) {
  return rt.leq(rt.tree().index_of(u), rt.tree().index_of(v));
}

std::vector<VertexSet> connected_subsets(const Tree& t) {
  std::vector<VertexSet> out;
  // Each connected set is produced exactly once from its lowest vertex: the
  // extension frontier only admits higher vertices not yet excluded.
  std::function<void(VertexSet, VertexSet, VertexSet)> grow = [&](VertexSet current,
                                                                  VertexSet frontier,
                                                                  VertexSet excluded) {
    out.push_back(current);
    while (frontier) {
      Vertex u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      VertexSet next = frontier | (t.neighbors(u) & ~current & ~excluded);
      grow(current | bit(u), next & ~bit(u), excluded | bit(u));
      excluded |= bit(u);
    }
  };
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    VertexSet lower = bit(v) - 1;
    grow(bit(v), t.neighbors(v) & ~lower, lower | bit(v));
  }
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

Correspondence make_correspondence(const Tree& t, VertexSet s, EdgeSet k) {
  if (s == 0) throw Error(ErrorKind::kEmptyS, "the subtree S must be nonempty");
  if (s & ~t.all()) throw Error(ErrorKind::kUnknownVertex, "S names a vertex outside the tree");
  if (!t.is_connected(s)) throw Error(ErrorKind::kDisconnectedS, "S does not induce a subtree");
  if (k & ~t.edges_within(s))
    throw Error(ErrorKind::kEdgeNotInS, "contracted edges must have both ends in S");

  Correspondence c;
  c.s_ = s;
  c.k_ = k;
  c.fingerprint_ = t.fingerprint();
  c.fibers_ = t.components(s, k);
  c.complements_ = t.components(t.all() & ~s);
  c.fiber_of_.assign(t.size(), -1);
  c.complement_of_.assign(t.size(), -1);
  for (std::size_t j = 0; j < c.fibers_.size(); ++j)
    for (Vertex v : members(c.fibers_[j])) c.fiber_of_[v] = static_cast<int>(j);
  for (std::size_t i = 0; i < c.complements_.size(); ++i)
    for (Vertex v : members(c.complements_[i])) c.complement_of_[v] = static_cast<int>(i);
  return c;
}

Correspondence make_correspondence(const Tree& t, const std::vector<std::string>& s,
                                   const std::vector<std::pair<std::string, std::string>>& k) {
  VertexSet sm = 0;
  for (const auto& l : s) sm |= bit(t.index_of(l));
  EdgeSet km = 0;
  for (const auto& [a, b] : k) {
    int e = t.edge_index(t.index_of(a), t.index_of(b));
    if (e < 0) throw Error(ErrorKind::kBadEdge, "{" + a + "," + b + "} is not an edge");
    km |= EdgeSet{1} << e;
  }
  return make_correspondence(t, sm, km);
}

std::string describe(const Tree& t, const Correspondence& c) {
  std::string out = "{";
  bool first = true;
  for (Vertex v : members(c.s())) {
    if (!first) out += ',';
    out += t.label(v);
    first = false;
  }
  out += '|';
  first = true;
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    if (!((c.k() >> i) & 1U)) continue;
    if (!first) out += ',';
    out += t.label(t.edges()[i].u) + "-" + t.label(t.edges()[i].v);
    first = false;
  }
  return out + "}";
}

Correspondence identity_correspondence(const Tree& t) { return make_correspondence(t, t.all(), 0); }

QuotientTree quotient_tree(const Tree& t, const Correspondence& c) {
  if (c.tree_fingerprint() != t.fingerprint())
    throw Error(ErrorKind::kMismatchedTree, "correspondence belongs to another tree");
  std::vector<std::string> labels;
  for (VertexSet f : c.fibers()) {
    std::string l;
    for (Vertex v : members(f)) {
      if (!l.empty()) l += '+';
      l += t.label(v);
    }
    labels.push_back(std::move(l));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  EdgeSet open = t.edges_within(c.s()) & ~c.k();
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    if (!((open >> i) & 1U)) continue;
    const Edge& e = t.edges()[i];
    edges.emplace_back(labels[c.fiber_of(e.u)], labels[c.fiber_of(e.v)]);
  }
  QuotientTree r{Tree::Create(labels, edges), std::vector<Vertex>(t.size(), -1)};
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    if (c.fiber_of(v) >= 0) r.q[v] = r.tree.index_of(labels[c.fiber_of(v)]);
  return r;
}

Correspondence compose(const Tree& t, const Correspondence& p, const QuotientTree& r,
                       const Correspondence& q) {
  if (q.tree_fingerprint() != r.tree.fingerprint())
    throw Error(ErrorKind::kMismatchedTree, "outer correspondence is not over the quotient tree");
  VertexSet s = 0;
  for (Vertex v : members(p.s()))
    if (contains(q.s(), r.q[v])) s |= bit(v);
  EdgeSet k = 0;
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    const Edge& e = t.edges()[i];
    if (!contains(s, e.u) || !contains(s, e.v)) continue;
    const EdgeSet mask = EdgeSet{1} << i;
    if (p.k() & mask) {
      k |= mask;
    } else {
      int re = r.tree.edge_index(r.q[e.u], r.q[e.v]);
      if ((q.k() >> re) & 1U) k |= mask;
    }
  }
  return make_correspondence(t, s, k);
}

Tree path_tree(int n) {
  std::vector<std::string> v;
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 1; i <= n; ++i) {
    v.push_back("v" + std::to_string(i));
    if (i > 1) e.emplace_back("v" + std::to_string(i - 1), "v" + std::to_string(i));
  }
  return Tree::Create(v, e);
}

Tree star_tree(int leaves) {
  std::vector<std::string> v{"c"};
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 1; i <= leaves; ++i) {
    v.push_back(std::to_string(i));
    e.emplace_back("c", std::to_string(i));
  }
  return Tree::Create(v, e);
}

}  // namespace arbor
