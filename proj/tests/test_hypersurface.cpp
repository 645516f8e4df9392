#include <gtest/gtest.h>

#include <cmath>

#include "arbor/error.hpp"
#include "arbor/hypersurface.hpp"
#include "arbor/poset.hpp"
#include "arbor/tree_enum.hpp"

using namespace arbor;

namespace {

Tree a2() { return Tree::Create({"a", "b"}, {{"a", "b"}}); }
Tree a3() { return Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

Point pt(std::initializer_list<int> xs) {
  Point p;
  for (int x : xs) p.emplace_back(x);
  return p;
}

LPoint lp(Vertex chart, std::initializer_list<int> xs) { return LPoint{chart, pt(xs)}; }

}  // namespace

TEST(Hypersurface, Membership) {
  const RootedTree rt = RootedTree::Create(a2(), "a");
  EXPECT_TRUE(in_hypersurface(rt, pt({0, 5})));
  EXPECT_TRUE(in_hypersurface(rt, pt({1, 0})));
  EXPECT_FALSE(in_hypersurface(rt, pt({-1, 0})));
  EXPECT_FALSE(in_hypersurface(rt, pt({1, 1})));
  EXPECT_THROW(in_hypersurface(rt, pt({0})), Error);
}

TEST(Hypersurface, Strata) {
  EXPECT_EQ(stratum_of(pt({0, 0})).to_string(), "00");
  EXPECT_EQ(stratum_of(pt({3, -2})).to_string(), "+-");
  EXPECT_EQ(stratum_of(pt({-1, 0, 7})), SignVector::Parse("-0+"));
  EXPECT_THROW(SignVector::Parse("+x"), Error);
}

TEST(Charts, Transport) {
  const Tree t2 = a2();
  const auto b = transport(t2, lp(0, {0, 1}), 1);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->coords[0], 1);
  EXPECT_FALSE(transport(t2, lp(0, {0, -1}), 1).has_value());

  // Along a - b - c: x_b(a) = x_a(c) and x_c(a) = x_b(c).
  const Tree t3 = a3();
  const auto c = transport(t3, lp(0, {0, 2, 3}), 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->coords[0], 2);
  EXPECT_EQ(c->coords[1], 3);
  const auto back = transport(t3, *c, 0);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, lp(0, {0, 2, 3}));
  EXPECT_THROW(transport(t3, lp(0, {0, 2, 3}), 7), Error);
}

TEST(Charts, TransportCoherence) {
  for (int n = 1; n <= 4; ++n)
    for (const Tree& t : free_tree_classes(n))
      for (Vertex a = 0; a < n; ++a) {
        // Every point with coordinates in {-1, 0, 1} in chart a.
        std::vector<int> digits(n, 0);
        for (long code = 0; code < std::pow(3, n); ++code) {
          long c = code;
          LPoint p{a, Point(n, 0)};
          for (Vertex v = 0; v < n; ++v, c /= 3)
            if (v != a) p.coords[v] = static_cast<int>(c % 3) - 1;
          for (Vertex b = 0; b < n; ++b) {
            const auto q = transport(t, p, b);
            if (!q) continue;
            const auto r = transport(t, *q, a);
            ASSERT_TRUE(r.has_value());
            EXPECT_EQ(*r, p);
            EXPECT_EQ(classify(t, *q), classify(t, p));
          }
        }
      }
}

TEST(Charts, Classify) {
  const Tree t = a2();
  EXPECT_EQ(classify(t, lp(0, {0, 0})), identity_correspondence(t));
  EXPECT_EQ(classify(t, lp(0, {0, 1})), make_correspondence(t, {"a", "b"}, {{"a", "b"}}));
  EXPECT_EQ(classify(t, lp(0, {0, -1})), make_correspondence(t, {"a"}, {}));
}

TEST(Charts, Sample) {
  const Tree t2 = a2();
  EXPECT_EQ(sample(t2, identity_correspondence(t2)), lp(0, {0, 0}));
  EXPECT_EQ(sample(t2, make_correspondence(t2, {"a"}, {})), lp(0, {0, -1}));
  const Tree t3 = a3();
  EXPECT_EQ(sample(t3, make_correspondence(t3, {"a", "b", "c"}, {{"a", "b"}})), lp(0, {0, 1, 0}));
  EXPECT_THROW(sample(t3, make_correspondence(t3, {"a"}, {}), Vertex{2}), Error);
}

TEST(Charts, ClassifySampleRoundTrip) {
  const std::vector<Rational> scales{Rational(1, 3), Rational(1), Rational(7, 2)};
  for (int n = 1; n <= 5; ++n)
    for (const Tree& t : free_tree_classes(n)) {
      const ArborealPoset p = enumerate_poset(t);
      for (const Correspondence& c : p.elements())
        for (Vertex a : members(c.s())) {
          const LPoint x = sample(t, c, a);
          EXPECT_EQ(x.chart, a);
          EXPECT_EQ(classify(t, x), c);
          for (const Rational& r : scales) EXPECT_EQ(classify(t, dilate(x, r)), c);
        }
    }
}

TEST(Charts, Dilate) {
  const LPoint x = lp(0, {0, 1});
  EXPECT_EQ(dilate(x, 1), x);
  EXPECT_EQ(dilate(x, 7), lp(0, {0, 7}));
  EXPECT_EQ(dilate(dilate(x, Rational(1, 2)), Rational(1, 2)), dilate(x, Rational(1, 4)));
  EXPECT_THROW(dilate(x, 0), Error);
  EXPECT_THROW(dilate(x, -1), Error);
}

TEST(Coray, Fibers) {
  const RootedTree rt = RootedTree::Create(a2(), "a");
  auto fiber = coray_fiber(rt, pt({0, 5}));
  ASSERT_EQ(fiber.size(), 2u);
  EXPECT_EQ(fiber[0].quadrant, 0);
  ASSERT_EQ(fiber[0].rays.size(), 1u);
  EXPECT_EQ(fiber[0].rays[0].axis, 0);
  EXPECT_EQ(fiber[0].rays[0].sign, 1);
  EXPECT_EQ(fiber[1].quadrant, 1);
  ASSERT_EQ(fiber[1].rays.size(), 1u);
  EXPECT_EQ(fiber[1].rays[0].axis, 0);

  fiber = coray_fiber(rt, pt({3, 0}));
  ASSERT_EQ(fiber.size(), 1u);
  EXPECT_EQ(fiber[0].quadrant, 1);
  ASSERT_EQ(fiber[0].rays.size(), 1u);
  EXPECT_EQ(fiber[0].rays[0].axis, 1);

  fiber = coray_fiber(rt, pt({0, 0}));
  ASSERT_EQ(fiber.size(), 2u);
  EXPECT_EQ(fiber[0].rays.size(), 1u);
  EXPECT_EQ(fiber[1].rays.size(), 2u);

  EXPECT_THROW(coray_fiber(rt, pt({-1, 0})), Error);
}

TEST(Coray, FrontProjectionLandsOnHypersurface) {
  for (int n = 1; n <= 4; ++n)
    for (const RootedTree& rt : rooted_tree_classes(n)) {
      const ArborealPoset p = enumerate_poset(rt.tree());
      for (const Correspondence& c : p.elements())
        EXPECT_TRUE(in_hypersurface(rt, front_projection(rt, sample(rt.tree(), c))));
    }
}
