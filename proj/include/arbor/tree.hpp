#pragma once

// Trees, rooted trees and correspondences (R <- S -> T) encoded as (S, K).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arbor {

using Vertex = int;
// Bit v is set iff vertex v belongs to the set. Trees carry at most 64 vertices.
using VertexSet = std::uint64_t;
// Bit e refers to Tree::edges()[e].
using EdgeSet = std::uint64_t;

inline constexpr std::size_t kMaxVertices = 64;

struct Edge {
  Vertex u;  // u < v
  Vertex v;
};

inline VertexSet bit(Vertex v) { return VertexSet{1} << v; }
inline bool contains(VertexSet s, Vertex v) { return (s >> v) & 1U; }
int popcount(std::uint64_t x);
std::vector<Vertex> members(VertexSet s);

// A nonempty finite connected acyclic graph. Vertices are stored sorted by
// label so that every derived order is reproducible.
class Tree {
 public:
  // Validates the raw description; throws Error on the first violated
  // invariant (EmptyVertexSet, DuplicateVertex, BadEdge, CycleDetected,
  // Disconnected, TooLarge).
  static Tree Create(std::vector<std::string> vertices,
                     const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Vertex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;
  // Throws UnknownVertex.
  Vertex index_of(std::string_view label) const;

  std::span<const Edge> edges() const { return edges_; }
  // Index into edges() or -1 when u, v are not adjacent.
  int edge_index(Vertex u, Vertex v) const;
  VertexSet neighbors(Vertex v) const { return adjacency_[v]; }
  VertexSet all() const;
  EdgeSet all_edges() const;

  // Edges with both endpoints in s.
  EdgeSet edges_within(VertexSet s) const;
  bool is_connected(VertexSet s) const;
  // Connected components of the subgraph induced on s, ordered by lowest member.
  std::vector<VertexSet> components(VertexSet s) const;
  // Connected components of the graph (s, k) where k must lie inside s.
  std::vector<VertexSet> components(VertexSet s, EdgeSet k) const;

  int distance(Vertex u, Vertex v) const { return distance_[u * size() + v]; }
  // Vertices of the unique minimal path from u to v, both ends included.
  std::vector<Vertex> path(Vertex u, Vertex v) const;
  // The vertex of s nearest to v (v itself when v is in s); s must be connected.
  Vertex nearest_in(VertexSet s, Vertex v) const;

  // Stable identity used to reject correspondences built over another tree.
  std::uint64_t fingerprint() const { return fingerprint_; }

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.labels_ == b.labels_ && a.edge_pairs() == b.edge_pairs();
  }

 private:
  std::vector<std::pair<int, int>> edge_pairs() const;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<VertexSet> adjacency_;
  std::vector<int> distance_;
  std::uint64_t fingerprint_ = 0;
};

// Label-based convenience wrapper around Tree::distance; throws UnknownVertex.
int distance(const Tree& t, std::string_view u, std::string_view v);

// A tree with a root; u <= v iff u lies on the path from v to the root.
class RootedTree {
 public:
  RootedTree(Tree tree, Vertex root);
  static RootedTree Create(Tree tree, std::string_view root);

  const Tree& tree() const { return tree_; }
  Vertex root() const { return root_; }
  std::size_t size() const { return tree_.size(); }
  // -1 for the root.
  Vertex parent(Vertex v) const { return parent_[v]; }
  int depth(Vertex v) const { return tree_.distance(root_, v); }
  bool leq(Vertex u, Vertex v) const { return contains(down_[v], u); }
  bool comparable(Vertex u, Vertex v) const { return leq(u, v) || leq(v, u); }
  // All u with u <= v.
  VertexSet down_set(Vertex v) const { return down_[v]; }
  // Vertices sorted by (depth, index): a linear extension of the order.
  const std::vector<Vertex>& order() const { return order_; }

 private:
  Tree tree_;
  Vertex root_;
  std::vector<Vertex> parent_;
  std::vector<VertexSet> down_;
  std::vector<Vertex> order_;
};

// Throws UnknownVertex.
bool rooted_leq(const RootedTree& rt, std::string_view u, std::string_view v);

// All nonempty vertex subsets inducing connected subgraphs, each once, ordered
// by (size, mask).
std::vector<VertexSet> connected_subsets(const Tree& t);

// An element of the correspondence poset, stored as the subtree S and the set
// K of contracted edges of S. Fibers are the components of (S, K); the
// complementary parts are the components of T \ S.
class Correspondence {
 public:
  VertexSet s() const { return s_; }
  EdgeSet k() const { return k_; }
  const std::vector<VertexSet>& fibers() const { return fibers_; }
  const std::vector<VertexSet>& complements() const { return complements_; }
  // Fiber index of v, or -1 when v lies outside S.
  int fiber_of(Vertex v) const { return fiber_of_[v]; }
  // Index of the complementary part containing v, or -1 when v lies in S.
  int complement_of(Vertex v) const { return complement_of_[v]; }
  std::size_t tree_size() const { return fiber_of_.size(); }
  std::uint64_t tree_fingerprint() const { return fingerprint_; }

  friend bool operator==(const Correspondence& a, const Correspondence& b) {
    return a.fingerprint_ == b.fingerprint_ && a.s_ == b.s_ && a.k_ == b.k_;
  }
  friend bool operator<(const Correspondence& a, const Correspondence& b) {
    return std::pair(a.s_, a.k_) < std::pair(b.s_, b.k_);
  }

 private:
  friend Correspondence make_correspondence(const Tree& t, VertexSet s, EdgeSet k);

  VertexSet s_ = 0;
  EdgeSet k_ = 0;
  std::vector<VertexSet> fibers_;
  std::vector<VertexSet> complements_;
  std::vector<int> fiber_of_;
  std::vector<int> complement_of_;
  std::uint64_t fingerprint_ = 0;
};

// Throws EmptyS, DisconnectedS, EdgeNotInS.
Correspondence make_correspondence(const Tree& t, VertexSet s, EdgeSet k);
// Label-based overload; throws UnknownVertex, BadEdge for non-edges.
Correspondence make_correspondence(const Tree& t, const std::vector<std::string>& s,
                                   const std::vector<std::pair<std::string, std::string>>& k);
// Human-readable form "{a,b|a-b}": S members, then contracted edges.
std::string describe(const Tree& t, const Correspondence& c);

// The identity correspondence (S = T, K = {}).
Correspondence identity_correspondence(const Tree& t);

struct QuotientTree {
  Tree tree;
  // q[v] is the R-vertex of v's fiber, or -1 for v outside S.
  std::vector<Vertex> q;
};

// R has one vertex per fiber, labelled by the fiber's member labels joined
// with '+', and one edge per non-contracted edge of S.
QuotientTree quotient_tree(const Tree& t, const Correspondence& c);

// Composition q o p of p over t with q over the quotient tree of p.
Correspondence compose(const Tree& t, const Correspondence& p, const QuotientTree& r,
                       const Correspondence& q);

// The path tree v1 - v2 - ... - vn.
Tree path_tree(int n);
// A star with center "c" and leaves "1".."leaves".
Tree star_tree(int leaves);

}  // namespace arbor
