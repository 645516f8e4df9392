#include <gtest/gtest.h>

#include <random>

#include "arbor/error.hpp"
#include "arbor/poset.hpp"
#include "arbor/quiver.hpp"
#include "arbor/tree_enum.hpp"

using namespace arbor;

namespace {

Tree a3() { return Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
Tree a2() { return Tree::Create({"a", "b"}, {{"a", "b"}}); }

GradedDims k_in(int degree) { return GradedDims{{degree, 1}}; }

// dim Hom(M, N): families (phi_v) with N(arrow) phi_source = phi_target M(arrow),
// as the nullspace of one big linear system.
std::size_t brute_hom(const TreeQuiver& q, const Representation& m, const Representation& n) {
  std::vector<std::size_t> off(q.size() + 1, 0);
  for (std::size_t v = 0; v < q.size(); ++v) off[v + 1] = off[v] + n.dims[v] * m.dims[v];
  const std::size_t unknowns = off.back();
  if (unknowns == 0) return 0;
  std::size_t eqs = 0;
  for (const auto& a : q.arrows()) eqs += n.dims[a.target] * m.dims[a.source];
  Matrix sys(std::max<std::size_t>(eqs, 1), unknowns);
  std::size_t row = 0;
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto [s, t] = q.arrows()[i];
    // (N_i phi_s - phi_t M_i)[r][c] = 0
    for (std::size_t r = 0; r < n.dims[t]; ++r)
      for (std::size_t c = 0; c < m.dims[s]; ++c, ++row) {
        for (std::size_t k = 0; k < n.dims[s]; ++k) sys.at(row, off[s] + k * m.dims[s] + c) += n.maps[i].at(r, k);
        for (std::size_t k = 0; k < m.dims[t]; ++k) sys.at(row, off[t] + r * m.dims[t] + k) -= m.maps[i].at(k, c);
      }
  }
  return unknowns - rank(sys);
}

Representation random_rep(const TreeQuiver& q, std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(0, 2), entry(-1, 1);
  Representation m;
  for (std::size_t v = 0; v < q.size(); ++v) m.dims.push_back(dim(rng));
  for (const auto& a : q.arrows()) {
    Matrix x(m.dims[a.target], m.dims[a.source]);
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c) x.at(r, c) = entry(rng);
    m.maps.push_back(std::move(x));
  }
  return m;
}

}  // namespace

TEST(Quiver, SimplesAndProjectives) {
  const TreeQuiver q(RootedTree::Create(a3(), "a"));
  EXPECT_EQ(simple(q, 1).dims, (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(projective(q, 2).dims, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(projective(q, 0).dims, simple(q, 0).dims);
  const TreeQuiver qb(RootedTree::Create(a3(), "b"));
  EXPECT_EQ(projective(qb, 0).dims, (std::vector<std::size_t>{1, 1, 0}));
}

TEST(Quiver, HomExtExamples) {
  const TreeQuiver q(RootedTree::Create(a2(), "a"));
  EXPECT_EQ(hom_ext(q, simple(q, 0), simple(q, 1)), (HomExt{0, 0}));
  EXPECT_EQ(hom_ext(q, simple(q, 1), simple(q, 0)), (HomExt{0, 1}));
  EXPECT_EQ(hom_ext(q, simple(q, 1), simple(q, 1)), (HomExt{1, 0}));
  for (int n = 1; n <= 4; ++n)
    for (const RootedTree& rt : rooted_tree_classes(n)) {
      const TreeQuiver qq(rt);
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
          EXPECT_EQ(hom_ext(qq, projective(qq, a), projective(qq, b)), (HomExt{rt.leq(a, b) ? 1u : 0u, 0}));
    }
}

TEST(Quiver, HomMatchesLinearSystem) {
  std::mt19937 rng(17);
  for (int n = 1; n <= 4; ++n)
    for (const RootedTree& rt : rooted_tree_classes(n)) {
      const TreeQuiver q(rt);
      for (int trial = 0; trial < 25; ++trial) {
        const Representation m = random_rep(q, rng), k = random_rep(q, rng);
        const HomExt he = hom_ext(q, m, k);
        EXPECT_EQ(he.hom, brute_hom(q, m, k));
        long euler = 0;
        for (Vertex v = 0; v < n; ++v) euler += static_cast<long>(m.dims[v] * k.dims[v]);
        for (const auto& a : q.arrows()) euler -= static_cast<long>(m.dims[a.source] * k.dims[a.target]);
        EXPECT_EQ(static_cast<long>(he.hom) - static_cast<long>(he.ext), euler);
        // The resolution has cohomology M in degree 0.
        const auto h = stalk_cohomology(q, std_resolution(q, m));
        for (Vertex v = 0; v < n; ++v) {
          GradedDims want;
          if (m.dims[v]) want[0] = m.dims[v];
          EXPECT_EQ(h[v], want);
        }
        GradedDims from_resolution;
        if (he.hom) from_resolution[0] = he.hom;
        if (he.ext) from_resolution[1] = he.ext;
        EXPECT_EQ(hom(q, std_resolution(q, m), std_resolution(q, k)), from_resolution);
      }
    }
}

TEST(Quiver, RejectsBadRepresentation) {
  const TreeQuiver q(RootedTree::Create(a2(), "a"));
  Representation m{{1, 1}, {Matrix(2, 1)}};
  EXPECT_THROW(hom_ext(q, m, m), Error);
}

TEST(Resolution, Examples) {
  const TreeQuiver q(RootedTree::Create(a3(), "a"));
  for (Vertex a = 0; a < 3; ++a) {
    const PerfectComplex m = minimize(std_resolution(q, projective(q, a)));
    EXPECT_EQ(m.lo, 0);
    EXPECT_EQ(m.terms, (std::vector<std::vector<Vertex>>{{a}}));
  }
  const PerfectComplex s = std_resolution(q, simple(q, 2));
  EXPECT_EQ(s.lo, -1);
  EXPECT_EQ(s.terms, (std::vector<std::vector<Vertex>>{{1}, {2}}));
  EXPECT_FALSE(s.diffs[0].is_zero());
  const PerfectComplex r = std_resolution(q, simple(q, 0));
  EXPECT_EQ(r.lo, 0);
  EXPECT_EQ(r.terms, (std::vector<std::vector<Vertex>>{{0}}));
}

TEST(Restriction, IstarExamples) {
  const Tree t = a3();
  const TreeQuiver q(RootedTree::Create(t, "a"));
  const Correspondence id = identity_correspondence(t);
  const PerfectComplex sc = std_resolution(q, simple(q, 2));
  EXPECT_EQ(functor_istar(q, id, sc), sc);

  const Correspondence bc = make_correspondence(t, {"b", "c"}, {});
  const TreeQuiver sub = sub_quiver(q, bc);
  ASSERT_EQ(sub.size(), 2u);
  const PerfectComplex pc = functor_istar(q, bc, std_resolution(q, projective(q, 2)));
  EXPECT_EQ(minimize(pc).terms, (std::vector<std::vector<Vertex>>{{1}}));
  EXPECT_TRUE(minimize(functor_istar(q, bc, std_resolution(q, projective(q, 0)))).empty());
  const PerfectComplex s2 = functor_istar(q, bc, sc);
  EXPECT_EQ(s2.terms, (std::vector<std::vector<Vertex>>{{0}, {1}}));
}

TEST(Restriction, QshriekExamples) {
  const Tree t2 = a2();
  const TreeQuiver q2(RootedTree::Create(t2, "a"));
  const Correspondence all = make_correspondence(t2, {"a", "b"}, {{"a", "b"}});
  const PerfectComplex img = functor_qshriek(q2, all, std_resolution(q2, simple(q2, 1)));
  EXPECT_EQ(img.terms, (std::vector<std::vector<Vertex>>{{0}, {0}}));
  const TreeQuiver point = quotient_quiver(q2, all);
  EXPECT_TRUE(is_acyclic(point, img));
  EXPECT_TRUE(minimize(img).empty());

  const Tree t = a3();
  const TreeQuiver q(RootedTree::Create(t, "a"));
  const Correspondence ctr = make_correspondence(t, {"a", "b", "c"}, {{"b", "c"}});
  const PerfectComplex pb = minimize(restriction(q, ctr, std_resolution(q, projective(q, 1))));
  const PerfectComplex pc = minimize(restriction(q, ctr, std_resolution(q, projective(q, 2))));
  EXPECT_EQ(pb, pc);
}

TEST(Restriction, Composite) {
  const Tree t = a3();
  const TreeQuiver q(RootedTree::Create(t, "a"));
  const Correspondence id = identity_correspondence(t);
  for (Vertex a = 0; a < 3; ++a) {
    const PerfectComplex x = std_resolution(q, projective(q, a));
    EXPECT_EQ(minimize(restriction(q, id, x)), minimize(x));
  }
  const Correspondence bc = make_correspondence(t, {"b", "c"}, {{"b", "c"}});
  const TreeQuiver r = quotient_quiver(q, bc);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(minimize(restriction(q, bc, std_resolution(q, projective(q, 0)))).empty());
  for (Vertex a : {1, 2})
    EXPECT_EQ(minimize(restriction(q, bc, std_resolution(q, projective(q, a)))).terms,
              (std::vector<std::vector<Vertex>>{{0}}));
  EXPECT_TRUE(is_acyclic(r, restriction(q, bc, std_resolution(q, simple(q, 2)))));
}

TEST(Restriction, CornerRepresentatives) {
  // D_4 rooted at leaf 1 with the fiber {c, 2}: the root-closest member keeps
  // the corner order, the other one does not.
  const Tree d4 = star_tree(3);
  const TreeQuiver q(RootedTree::Create(d4, "1"));
  const Correspondence c = make_correspondence(d4, {"c", "1", "2", "3"}, {{"c", "2"}});
  const auto minima = fiber_minima(q, c);
  EXPECT_TRUE(corner_order_agrees(q, c, minima));
  auto other = minima;
  for (Vertex& v : other)
    if (v == d4.index_of("c")) v = d4.index_of("2");
  EXPECT_FALSE(corner_order_agrees(q, c, other));
}

TEST(LocalModel, Examples) {
  const Tree t2 = a2();
  const RootedTree rt2 = RootedTree::Create(t2, "a");
  const LocalModelReport id = local_model_compare(rt2, identity_correspondence(t2));
  EXPECT_TRUE(id.ok());
  ASSERT_EQ(id.quiver_table.size(), 2u);
  EXPECT_EQ(id.quiver_table[0][1], k_in(0));
  EXPECT_TRUE(id.quiver_table[1][0].empty());

  // R is a point: both generators map to its one projective, so every entry is k.
  const LocalModelReport pt = local_model_compare(rt2, make_correspondence(t2, {"a", "b"}, {{"a", "b"}}));
  EXPECT_TRUE(pt.ok());
  ASSERT_EQ(pt.quiver_table.size(), 2u);
  for (const auto& row : pt.quiver_table)
    for (const auto& e : row) EXPECT_EQ(e, k_in(0));

  const Tree t3 = a3();
  const LocalModelReport b = local_model_compare(RootedTree::Create(t3, "a"), make_correspondence(t3, {"b"}, {}));
  EXPECT_TRUE(b.ok());
  ASSERT_EQ(b.quiver_table.size(), 1u);
  EXPECT_EQ(b.quiver_table[0][0], k_in(0));
}

TEST(LocalModel, AllSmallTrees) {
  for (int n = 1; n <= 3; ++n)
    for (const RootedTree& rt : rooted_tree_classes(n))
      for (const ArborealPoset p = enumerate_poset(rt.tree()); const Correspondence& c : p.elements())
        EXPECT_NO_THROW(local_model_compare(rt, c).assert_ok(rt.tree()));
}
