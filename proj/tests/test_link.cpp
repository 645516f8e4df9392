#include <gtest/gtest.h>

#include "arbor/error.hpp"
#include "arbor/link.hpp"
#include "arbor/tree_enum.hpp"
#include "json.hpp"
#include "oracle.hpp"

using namespace arbor;

namespace {

Tree a3() { return Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

// Closure of a cell = elements below it other than the minimum. The property
// holds iff every pairwise intersection of closures is empty or a closure.
bool oracle_intersection_property(const Tree& t, const ArborealPoset& p) {
  const std::size_t n = p.size();
  std::vector<oracle::Partition> parts;
  for (const auto& c : p.elements()) parts.push_back(oracle::partition_of(t, c.s(), c.k()));
  auto le = [&](std::size_t a, std::size_t b) { return oracle::refines(parts[a], parts[b]); };
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<std::size_t> common;
      for (std::size_t c = 1; c < n; ++c)
        if (le(c, a) && le(c, b)) common.push_back(c);
      if (common.empty()) continue;
      bool has_max = false;
      for (std::size_t m : common) {
        bool top = true;
        for (std::size_t c : common) top = top && le(c, m);
        has_max = has_max || top;
      }
      if (!has_max) return false;
    }
  return true;
}

}  // namespace

TEST(OrderComplex, Examples) {
  const SimplicialComplex chain = order_complex(3, [](std::size_t a, std::size_t b) { return a < b; }, {"1", "2", "3"});
  EXPECT_EQ(chain.face_counts(), (std::vector<std::size_t>{3, 3, 1}));

  const SimplicialComplex l2 = order_complex(enumerate_poset(path_tree(2)), true);
  EXPECT_EQ(l2.face_counts(), (std::vector<std::size_t>{3}));
  const SimplicialComplex l3 = order_complex(enumerate_poset(a3()), true);
  EXPECT_EQ(l3.num_vertices(), 10u);
  EXPECT_EQ(l3.dimension(), 1);
}

TEST(FVector, Examples) {
  EXPECT_EQ(f_vector(enumerate_poset(path_tree(2))), (std::vector<std::size_t>{3}));
  EXPECT_EQ(f_vector(enumerate_poset(a3())), (std::vector<std::size_t>{4, 6}));
  const auto d4 = f_vector(enumerate_poset(star_tree(3)));
  EXPECT_EQ(d4, (std::vector<std::size_t>{6, 12, 11}));
  EXPECT_EQ(euler_characteristic(d4), 5);
  EXPECT_TRUE(f_vector(enumerate_poset(path_tree(1))).empty());
}

TEST(FVector, PathsAreSkeletaOfSimplices) {
  // Cells of dimension d <-> (d+1)-subsets of an (n+1)-set, for d <= n-2.
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::size_t> expect;
    for (int d = 0; d <= n - 2; ++d) expect.push_back(oracle::binomial(n + 1, d + 1));
    EXPECT_EQ(f_vector(enumerate_poset(path_tree(n))), expect) << n;
  }
}

TEST(Betti, Examples) {
  const SimplicialComplex pts({"x", "y", "z"}, {{0}, {1}, {2}});
  const BettiNumbers b = betti(pts, Field::rationals());
  EXPECT_EQ(b.at(0), 2u);
  EXPECT_TRUE(b.is_bouquet(0, 2));

  const BettiNumbers b3 = betti(order_complex(enumerate_poset(a3()), true), Field::rationals());
  EXPECT_TRUE(b3.is_bouquet(1, 3));
  EXPECT_EQ(b3.to_string(), "b~1 = 3");
  const BettiNumbers b4 = betti(order_complex(enumerate_poset(star_tree(3)), true), Field::prime(2));
  EXPECT_TRUE(b4.is_bouquet(2, 4));

  const BettiNumbers empty = betti(SimplicialComplex(), Field::rationals());
  EXPECT_TRUE(empty.is_sphere(-1));

  // A hollow triangle, the circle.
  const SimplicialComplex circle({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(betti(circle, Field::prime(3)).is_sphere(1));
}

TEST(Betti, BouquetForSmallTrees) {
  for (int n = 2; n <= 5; ++n)
    for (const Tree& t : free_tree_classes(n)) {
      const SimplicialComplex sc = order_complex(enumerate_poset(t), true);
      for (const Field& f : {Field::rationals(), Field::prime(2)}) {
        const BettiNumbers b = betti(sc, f);
        EXPECT_TRUE(b.is_bouquet(n - 2, n)) << canonical_form(t) << " " << b.to_string();
      }
      long chi = 0;
      const auto counts = sc.face_counts();
      for (std::size_t d = 0; d < counts.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(counts[d]);
      EXPECT_EQ(chi, sc.euler_characteristic());
    }
}

TEST(Boundary, SquaresToZero) {
  const SimplicialComplex sc = order_complex(enumerate_poset(star_tree(3)), true);
  for (int d = 1; d <= sc.dimension(); ++d) {
    const Matrix prod = boundary_matrix(sc, d - 1).to_dense() * boundary_matrix(sc, d).to_dense();
    EXPECT_TRUE(prod.is_zero()) << d;
  }
}

TEST(Regularity, Examples) {
  const RegularityReport a2 = check_cell_regularity(enumerate_poset(path_tree(2)), Field::rationals());
  EXPECT_TRUE(a2.ok());
  EXPECT_EQ(a2.checked, 3u);

  // The open interval below (T, {ab, bc}) on A_3 is the two single contractions.
  const Tree t = a3();
  const ArborealPoset p = enumerate_poset(t);
  const int top = p.index_of(make_correspondence(t, {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  std::vector<std::size_t> interval;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p.less(i, top)) interval.push_back(i);
  EXPECT_EQ(interval.size(), 2u);
  EXPECT_FALSE(p.leq(interval[0], interval[1]) || p.leq(interval[1], interval[0]));

  for (int n = 1; n <= 5; ++n)
    for (const Tree& f : free_tree_classes(n)) EXPECT_TRUE(check_cell_regularity(enumerate_poset(f), Field::rationals()).ok());
}

TEST(IntersectionProperty, MatchesClosureOracle) {
  EXPECT_TRUE(check_intersection_property(enumerate_poset(path_tree(2))));
  EXPECT_TRUE(check_intersection_property(enumerate_poset(a3())));
  // D_4: the closures of {1|} and {2|} share two 0-cells and nothing else.
  const Tree d4 = star_tree(3);
  const ArborealPoset p = enumerate_poset(d4);
  EXPECT_FALSE(oracle_intersection_property(d4, p));
  EXPECT_EQ(check_intersection_property(p), oracle_intersection_property(d4, p));
  for (int n = 1; n <= 5; ++n)
    for (const Tree& f : free_tree_classes(n)) {
      const ArborealPoset q = enumerate_poset(f);
      EXPECT_EQ(check_intersection_property(q), oracle_intersection_property(f, q)) << canonical_form(f);
    }
}

TEST(Export, Formats) {
  const SimplicialComplex l2 = order_complex(enumerate_poset(path_tree(2)), true);
  const auto j = nlohmann::json::parse(export_complex(l2, ExportFormat::kJson));
  EXPECT_EQ(j["vertices"].size(), 3u);
  const std::string off = export_complex(order_complex(enumerate_poset(a3()), true), ExportFormat::kOff);
  EXPECT_EQ(off.rfind("OFF\n", 0), 0u);

  const std::string mesh = export_cell_mesh(enumerate_poset(a3()));
  std::istringstream in(mesh);
  std::string header;
  std::size_t v = 0, f = 0, e = 0;
  in >> header >> v >> f >> e;
  EXPECT_EQ(header, "OFF");
  EXPECT_EQ(v, 4u);
  EXPECT_EQ(f, 6u);

  const std::string d4 = export_cell_mesh(enumerate_poset(star_tree(3)));
  std::istringstream in4(d4);
  in4 >> header >> v >> f;
  EXPECT_EQ(v, 6u);
  EXPECT_EQ(f, 12u + 11u);

  EXPECT_THROW(export_cell_mesh(enumerate_poset(path_tree(6))), Error);
}
