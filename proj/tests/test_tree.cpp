#include <gtest/gtest.h>

#include "arbor/error.hpp"
#include "arbor/tree.hpp"
#include "arbor/tree_enum.hpp"
#include "oracle.hpp"

using namespace arbor;

namespace {

Tree a3() { return Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
Tree d4() { return Tree::Create({"c", "1", "2", "3"}, {{"c", "1"}, {"c", "2"}, {"c", "3"}}); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kParse;
}

}  // namespace

TEST(Tree, Create) {
  EXPECT_EQ(Tree::Create({"a"}, {}).size(), 1u);
  const Tree t = a3();
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.edges().size(), 2u);
  EXPECT_EQ(kind_of([] { Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }),
            ErrorKind::kCycleDetected);
  EXPECT_EQ(kind_of([] { Tree::Create({}, {}); }), ErrorKind::kEmptyVertexSet);
  EXPECT_EQ(kind_of([] { Tree::Create({"a", "b"}, {}); }), ErrorKind::kDisconnected);
  EXPECT_EQ(kind_of([] { Tree::Create({"a", "a"}, {{"a", "a"}}); }), ErrorKind::kDuplicateVertex);
  EXPECT_EQ(kind_of([] { Tree::Create({"a", "b"}, {{"a", "x"}}); }), ErrorKind::kBadEdge);
  EXPECT_EQ(kind_of([] { Tree::Create({"a", "b"}, {{"a", "a"}}); }), ErrorKind::kBadEdge);
  EXPECT_EQ(kind_of([] { Tree::Create({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }), ErrorKind::kBadEdge);
}

TEST(Tree, Distance) {
  const Tree t = a3();
  EXPECT_EQ(distance(t, "a", "a"), 0);
  EXPECT_EQ(distance(t, "a", "c"), 2);
  EXPECT_EQ(distance(d4(), "1", "2"), 2);
  EXPECT_EQ(kind_of([&] { distance(t, "a", "z"); }), ErrorKind::kUnknownVertex);
  for (int n = 1; n <= 6; ++n)
    for (const Tree& f : free_tree_classes(n)) {
      const auto adj = oracle::adjacency(f);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
          EXPECT_EQ(f.distance(u, v), oracle::bfs_distance(adj, u, v));
          EXPECT_EQ(static_cast<int>(f.path(u, v).size()), f.distance(u, v) + 1);
        }
    }
}

TEST(Tree, RootedOrder) {
  const RootedTree at_a = RootedTree::Create(a3(), "a");
  EXPECT_TRUE(rooted_leq(at_a, "a", "c"));
  EXPECT_FALSE(rooted_leq(at_a, "c", "a"));
  const RootedTree at_b = RootedTree::Create(a3(), "b");
  EXPECT_FALSE(rooted_leq(at_b, "a", "c"));
  EXPECT_TRUE(rooted_leq(at_b, "b", "a"));
  // u <= v iff u lies on the path from v to the root.
  for (int n = 1; n <= 5; ++n)
    for (const Tree& f : free_tree_classes(n))
      for (Vertex r = 0; r < n; ++r) {
        const RootedTree rt(f, r);
        for (Vertex u = 0; u < n; ++u)
          for (Vertex v = 0; v < n; ++v) {
            const auto p = f.path(v, r);
            EXPECT_EQ(rt.leq(u, v), std::find(p.begin(), p.end(), u) != p.end());
          }
      }
}

TEST(Tree, ConnectedSubsets) {
  EXPECT_EQ(connected_subsets(Tree::Create({"a"}, {})).size(), 1u);
  EXPECT_EQ(connected_subsets(a3()).size(), 6u);
  EXPECT_EQ(connected_subsets(d4()).size(), 11u);
  for (int n = 1; n <= 6; ++n)
    for (const Tree& f : free_tree_classes(n)) {
      auto got = connected_subsets(f);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, oracle::connected_masks(f));
    }
}

TEST(Tree, Correspondences) {
  const Tree t = a3();
  const Correspondence id = make_correspondence(t, {"a", "b", "c"}, {});
  EXPECT_EQ(id, identity_correspondence(t));
  EXPECT_EQ(id.fibers().size(), 3u);
  EXPECT_TRUE(id.complements().empty());

  const Correspondence ab = make_correspondence(t, {"a", "b", "c"}, {{"a", "b"}});
  EXPECT_EQ(ab.fibers().size(), 2u);
  EXPECT_EQ(ab.fiber_of(0), ab.fiber_of(1));
  EXPECT_NE(ab.fiber_of(0), ab.fiber_of(2));
  EXPECT_EQ(quotient_tree(t, ab).tree.size(), 2u);

  const Correspondence b = make_correspondence(t, {"b"}, {});
  EXPECT_EQ(b.fibers().size(), 1u);
  EXPECT_EQ(b.complements().size(), 2u);
  EXPECT_EQ(b.fiber_of(0), -1);
  EXPECT_NE(b.complement_of(0), b.complement_of(2));

  EXPECT_EQ(kind_of([&] { make_correspondence(t, VertexSet{0}, 0); }), ErrorKind::kEmptyS);
  EXPECT_EQ(kind_of([&] { make_correspondence(t, bit(0) | bit(2), 0); }), ErrorKind::kDisconnectedS);
  EXPECT_EQ(kind_of([&] { make_correspondence(t, {"a"}, {{"a", "b"}}); }), ErrorKind::kEdgeNotInS);
  EXPECT_EQ(kind_of([&] { make_correspondence(t, {"a", "c"}, {{"a", "c"}}); }), ErrorKind::kBadEdge);
}

TEST(Tree, QuotientTree) {
  const Tree t = a3();
  const QuotientTree id = quotient_tree(t, identity_correspondence(t));
  EXPECT_EQ(id.tree.size(), 3u);
  EXPECT_EQ(std::set<Vertex>(id.q.begin(), id.q.end()).size(), 3u);

  const QuotientTree all = quotient_tree(t, make_correspondence(t, {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  EXPECT_EQ(all.tree.size(), 1u);

  const Tree d = d4();
  const QuotientTree r = quotient_tree(d, make_correspondence(d, {"c", "1", "2", "3"}, {{"c", "1"}}));
  ASSERT_EQ(r.tree.size(), 3u);
  const Vertex hub = r.q[d.index_of("c")];
  EXPECT_EQ(hub, r.q[d.index_of("1")]);
  EXPECT_EQ(std::popcount(r.tree.neighbors(hub)), 2);
  EXPECT_EQ(r.tree.edges().size(), 2u);
}

TEST(TreeEnum, CountsMatchBruteForce) {
  const std::vector<std::size_t> free_counts{1, 1, 1, 2, 3, 6};
  const std::vector<std::size_t> rooted_counts{1, 1, 2, 4, 9, 20};
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(free_tree_classes(n).size(), oracle::free_tree_count(n)) << n;
    EXPECT_EQ(free_tree_classes(n).size(), free_counts[n - 1]) << n;
    EXPECT_EQ(rooted_tree_classes(n).size(), oracle::rooted_tree_count(n)) << n;
    EXPECT_EQ(rooted_tree_classes(n).size(), rooted_counts[n - 1]) << n;
  }
}

TEST(TreeEnum, CanonicalFormIsInvariant) {
  for (int n = 1; n <= 6; ++n) {
    std::set<std::string> forms;
    for (const Tree& f : free_tree_classes(n)) {
      // Relabel in reverse order and compare.
      std::vector<std::string> labels;
      for (int v = 0; v < n; ++v) labels.push_back("w" + std::to_string(n - 1 - v));
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& e : f.edges()) edges.emplace_back(labels[e.u], labels[e.v]);
      EXPECT_EQ(canonical_form(Tree::Create(labels, edges)), canonical_form(f));
      forms.insert(canonical_form(f));
    }
    EXPECT_EQ(forms.size(), free_tree_classes(n).size());
  }
}
