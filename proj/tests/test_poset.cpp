#include <gtest/gtest.h>

#include "arbor/error.hpp"
#include "arbor/poset.hpp"
#include "arbor/tree_enum.hpp"
#include "oracle.hpp"

using namespace arbor;

namespace {

Tree a3() { return Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

}  // namespace

TEST(Poset, Sizes) {
  EXPECT_EQ(enumerate_poset(path_tree(2)).size(), 4u);
  EXPECT_EQ(enumerate_poset(a3()).size(), 11u);
  EXPECT_EQ(enumerate_poset(star_tree(3)).size(), 30u);
  for (int n = 1; n <= 6; ++n) {
    for (const Tree& t : free_tree_classes(n)) EXPECT_EQ(enumerate_poset(t).size(), oracle::poset_size(t));
    // Paths: 2^{n+1} - n - 2 elements.
    EXPECT_EQ(oracle::poset_size(path_tree(n)), (std::size_t{1} << (n + 1)) - n - 2);
  }
}

TEST(Poset, OrderMatchesRefinement) {
  for (int n = 1; n <= 5; ++n)
    for (const Tree& t : free_tree_classes(n)) {
      const ArborealPoset p = enumerate_poset(t);
      std::vector<oracle::Partition> parts;
      for (const auto& c : p.elements()) parts.push_back(oracle::partition_of(t, c.s(), c.k()));
      for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b) {
          const bool expect = oracle::refines(parts[a], parts[b]);
          ASSERT_EQ(p.leq(a, b), expect);
          ASSERT_EQ(poset_leq(t, p.element(a), p.element(b)), expect);
        }
    }
}

TEST(Poset, MinimumAndRank) {
  const Tree t = a3();
  const ArborealPoset p = enumerate_poset(t);
  EXPECT_EQ(p.element(p.minimum()), identity_correspondence(t));
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_TRUE(p.leq(0, i));
  EXPECT_EQ(rank(t, identity_correspondence(t)), 0);
  const auto full = make_correspondence(t, {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  const auto one = make_correspondence(t, {"a", "b", "c"}, {{"a", "b"}});
  EXPECT_EQ(rank(t, full), 2);
  EXPECT_EQ(rank(t, make_correspondence(t, {"b"}, {})), 2);
  EXPECT_TRUE(poset_leq(t, one, full));
  EXPECT_FALSE(poset_leq(t, full, one));
}

TEST(Poset, A2RankOneAntichain) {
  const ArborealPoset p = enumerate_poset(path_tree(2));
  for (std::size_t a = 1; a < 4; ++a) {
    EXPECT_EQ(p.rank(a), 1);
    for (std::size_t b = 1; b < 4; ++b)
      if (a != b) {
        EXPECT_FALSE(p.leq(a, b));
      }
  }
}

TEST(Poset, CoversAreTransitiveReduction) {
  for (const Tree& t : free_tree_classes(4)) {
    const ArborealPoset p = enumerate_poset(t);
    std::set<std::pair<int, int>> expect;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (!p.less(a, b)) continue;
        bool between = false;
        for (std::size_t c = 0; c < p.size() && !between; ++c) between = p.less(a, c) && p.less(c, b);
        if (!between) expect.emplace(static_cast<int>(a), static_cast<int>(b));
      }
    const std::set<std::pair<int, int>> got(p.covers().begin(), p.covers().end());
    EXPECT_EQ(got, expect);
  }
}

TEST(Poset, MismatchedTree) {
  const Tree t = a3();
  const Tree u = path_tree(3);
  EXPECT_THROW(poset_leq(t, identity_correspondence(t), identity_correspondence(u)), Error);
}

TEST(Poset, UpsetIsomorphism) {
  const Tree t = a3();
  const ArborealPoset p = enumerate_poset(t);
  const auto iso0 = upset_isomorphism(p, 0);
  EXPECT_TRUE(iso0.verified());
  EXPECT_EQ(iso0.source.size(), p.size());

  const ArborealPoset p2 = enumerate_poset(path_tree(2));
  const int top = p2.index_of(make_correspondence(p2.tree(), {"v1", "v2"}, {{"v1", "v2"}}));
  ASSERT_GE(top, 0);
  EXPECT_EQ(upset_isomorphism(p2, top).source.size(), 1u);

  const int ab = p.index_of(make_correspondence(t, {"a", "b", "c"}, {{"a", "b"}}));
  const auto iso = upset_isomorphism(p, ab);
  EXPECT_TRUE(iso.verified());
  EXPECT_EQ(iso.source.size(), 4u);
  std::size_t upset = 0;
  for (std::size_t i = 0; i < p.size(); ++i) upset += p.leq(ab, i);
  EXPECT_EQ(upset, 4u);

  for (int n = 1; n <= 4; ++n)
    for (const Tree& f : free_tree_classes(n)) {
      const ArborealPoset q = enumerate_poset(f);
      for (std::size_t i = 0; i < q.size(); ++i) EXPECT_TRUE(upset_isomorphism(q, i).verified());
    }
}

TEST(Poset, CompositionIsAboveBoth) {
  // q o p >= p, and the composite agrees with the up-set image.
  const Tree t = star_tree(3);
  const ArborealPoset p = enumerate_poset(t);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const QuotientTree r = quotient_tree(t, p.element(i));
    const ArborealPoset pr = enumerate_poset(r.tree);
    for (std::size_t j = 0; j < pr.size(); ++j) {
      const Correspondence c = compose(t, p.element(i), r, pr.element(j));
      EXPECT_TRUE(poset_leq(t, p.element(i), c));
    }
  }
}

TEST(Poset, PathIsomorphism) {
  for (int n = 1; n <= 6; ++n) {
    const PathIsomorphism iso = an_poset_isomorphism(n);
    EXPECT_TRUE(iso.verified()) << n;
    // Non-minimum elements <-> nonempty subsets of {0..n} of size <= n-1.
    long subsets = 0;
    for (int k = 1; k <= n - 1; ++k) subsets += oracle::binomial(n + 1, k);
    EXPECT_EQ(static_cast<long>(iso.poset.size()) - 1, subsets) << n;
  }
  const std::vector<long> link_sizes{3, 10, 25, 56, 119};
  for (int n = 2; n <= 6; ++n)
    EXPECT_EQ(static_cast<long>(enumerate_poset(path_tree(n)).size()) - 1, link_sizes[n - 2]);
}
