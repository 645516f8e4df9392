#include <gtest/gtest.h>

#include <cmath>

#include "arbor/error.hpp"
#include "arbor/sheaf.hpp"
#include "arbor/tree_enum.hpp"

using namespace arbor;

namespace {

RootedTree a2_at_a() { return RootedTree::Create(Tree::Create({"a", "b"}, {{"a", "b"}}), "a"); }
RootedTree a3_at_a() { return RootedTree::Create(Tree::Create({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), "a"); }
RootedTree point() { return RootedTree::Create(Tree::Create({"r"}, {}), "r"); }

GradedDims k_in(int degree, std::size_t dim = 1) { return GradedDims{{degree, dim}}; }

std::size_t nonzero_stalks(const FunctorComplex& f) {
  std::size_t count = 0;
  for (const GradedDims& g : stalk_cohomology(f, Field::rationals())) count += !g.empty();
  return count;
}

}  // namespace

TEST(ExitPoset, ClosureOrder) {
  // sigma <= tau iff sigma lies in the closure of tau: each coordinate of
  // sigma is 0 or agrees with tau.
  for (std::size_t n = 1; n <= 3; ++n) {
    const ExitPoset p(n);
    EXPECT_EQ(p.size(), static_cast<std::size_t>(std::pow(3, n)));
    for (std::size_t a = 0; a < p.size(); ++a) {
      EXPECT_EQ(p.index_of(p.stratum(a)), a);
      for (std::size_t b = 0; b < p.size(); ++b) {
        bool closure = true;
        for (std::size_t i = 0; i < n; ++i)
          closure = closure && (p.stratum(a)[i] == 0 || p.stratum(a)[i] == p.stratum(b)[i]);
        EXPECT_EQ(p.leq(a, b), closure);
      }
    }
  }
}

TEST(ExitFunctor, RejectsNonCommutingDiamond) {
  auto p = std::make_shared<const ExitPoset>(2);
  ExitFunctor f(p, std::vector<std::size_t>(9, 1));
  for (auto [a, b] : p->covers()) {
    Matrix m(1, 1);
    m.at(0, 0) = 1;
    f.set_cover_map(a, b, m);
  }
  f.finalize();
  ExitFunctor g(p, std::vector<std::size_t>(9, 1));
  bool first = true;
  for (auto [a, b] : p->covers()) {
    Matrix m(1, 1);
    m.at(0, 0) = first ? 2 : 1;
    first = false;
    g.set_cover_map(a, b, m);
  }
  EXPECT_THROW(g.finalize(), Error);
}

TEST(Generators, Supports) {
  EXPECT_EQ(generator_P(point(), 0).terms[0].support().size(), 1u);
  const RootedTree rt = a2_at_a();
  EXPECT_EQ(generator_P(rt, 0).terms[0].support().size(), 3u);
  EXPECT_EQ(generator_P(rt, 1).terms[0].support().size(), 5u);
  for (std::size_t s : generator_P(rt, 0).terms[0].support())
    EXPECT_LT(generator_P(rt, 0).poset().stratum(s)[0], 0);
  EXPECT_EQ(constant_functor(point()).terms[0].support().size(), 3u);
  EXPECT_EQ(constant_functor(rt).terms[0].support().size(), 9u);
  EXPECT_THROW(triangle_map_u(rt, 0), Error);
}

TEST(Generators, ConeOfU) {
  const RootedTree rt = a2_at_a();
  const ComplexMap u = triangle_map_u(rt, 1);
  EXPECT_EQ(nonzero_stalks(cone(u)), 2u);
  const auto h = stalk_cohomology(cone(u), Field::rationals());
  const ExitPoset& X = u.source.poset();
  for (std::size_t s = 0; s < X.size(); ++s)
    if (!h[s].empty()) {
      EXPECT_LT(X.stratum(s)[1], 0);
      EXPECT_GE(X.stratum(s)[0], 0);
    }
  // Cone of an identity is acyclic.
  ComplexMap id{generator_P(rt, 0), generator_P(rt, 0), {}};
  std::vector<Matrix> comp;
  for (std::size_t s = 0; s < X.size(); ++s) comp.push_back(Matrix::identity(id.source.terms[0].dim(s)));
  id.components.push_back(comp);
  EXPECT_EQ(nonzero_stalks(cone(id)), 0u);
  // For the root, S = P.
  EXPECT_EQ(k0_class(generator_S(point(), 0)), k0_class(generator_P(point(), 0)));
}

TEST(Rhom, Examples) {
  const RootedTree rt = a2_at_a();
  const auto pa = generator_P(rt, 0), pb = generator_P(rt, 1);
  EXPECT_EQ(rhom(pa, pb), k_in(0));
  EXPECT_TRUE(rhom(pb, pa).empty());
  EXPECT_EQ(rhom(pa, pa), k_in(0));
  EXPECT_EQ(rhom(constant_functor(rt), constant_functor(rt)), k_in(0));
  EXPECT_EQ(rhom(generator_S(rt, 1), generator_S(rt, 0), Field::prime(2)), k_in(1));
  EXPECT_EQ(to_string(k_in(0)), "k[0]");
  EXPECT_EQ(to_string(GradedDims{}), "0");
}

TEST(Rhom, PathAlgebraPatternAndBarSquares) {
  for (int n = 1; n <= 3; ++n)
    for (const RootedTree& rt : rooted_tree_classes(n))
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b) {
          const auto pa = generator_P(rt, a), pb = generator_P(rt, b);
          EXPECT_EQ(rhom(pa, pb), rt.leq(a, b) ? k_in(0) : GradedDims{});
          EXPECT_TRUE(bar_complex(pa, pb).squares_to_zero());
          const auto sa = generator_S(rt, a), sb = generator_S(rt, b);
          EXPECT_TRUE(bar_complex(sa, sb).squares_to_zero());
          // Degree-0 classes of single functors are natural transformations.
          EXPECT_EQ(natural_transformations(pa.terms[0], pb.terms[0]).size(), rt.leq(a, b) ? 1u : 0u);
        }
}

TEST(Compose, Generators) {
  const RootedTree rt = a3_at_a();
  const auto e_ab = canonical_generator(rt, 0, 1);
  const auto e_bc = canonical_generator(rt, 1, 2);
  const auto e_ac = canonical_generator(rt, 0, 2);
  EXPECT_EQ(compose(rt, 0, 1, 2, e_ab, e_bc), e_ac);
  EXPECT_FALSE(e_ac.is_zero());
  const auto id = canonical_generator(rt, 1, 1);
  EXPECT_EQ(compose(rt, 1, 1, 1, id, id), id);
  NaturalTransformation zero = e_ab;
  for (auto& m : zero.components) m = Matrix(m.rows(), m.cols());
  EXPECT_TRUE(compose(rt, 0, 1, 2, zero, e_bc).is_zero());
  EXPECT_THROW(canonical_generator(rt, 2, 0), Error);
  // u_c composed with u_b is the generator from P_a to P_c.
  const ComplexMap uc = triangle_map_u(rt, 2), ub = triangle_map_u(rt, 1);
  NaturalTransformation x{ub.components[0]}, y{uc.components[0]};
  EXPECT_EQ(compose(rt, 0, 1, 2, x, y), e_ac);
}

TEST(Sections, Examples) {
  const RootedTree rt = a2_at_a();
  const std::vector<bool> all(9, true);
  EXPECT_EQ(sections_over(all, constant_functor(rt)), k_in(0));
  for (Vertex a = 0; a < 2; ++a) EXPECT_TRUE(sections_over(all, generator_P(rt, a)).empty());
  const RootedTree pt = point();
  const ExitPoset& X = generator_P(pt, 0).poset();
  std::vector<bool> minus(3, false);
  minus[X.index_of(SignVector::Parse("-"))] = true;
  EXPECT_EQ(sections_over(minus, generator_P(pt, 0)), k_in(0));
  std::vector<bool> zero_only(3, false);
  zero_only[X.index_of(SignVector::Parse("0"))] = true;
  EXPECT_THROW(sections_over(zero_only, generator_P(pt, 0)), Error);
}

TEST(Codirection, Examples) {
  const RootedTree pt = point();
  const auto p = generator_P(pt, 0);
  EXPECT_TRUE(codirection_test(pt, p, {SignVector::Parse("0"), 0, +1}));
  EXPECT_FALSE(codirection_test(pt, p, {SignVector::Parse("0"), 0, -1}));
  const RootedTree rt = a2_at_a();
  const auto pb = generator_P(rt, 1);
  EXPECT_TRUE(codirection_test(rt, pb, {SignVector::Parse("+0"), 1, +1}));
  EXPECT_FALSE(codirection_test(rt, pb, {SignVector::Parse("-0"), 1, +1}));
  EXPECT_THROW(codirection_test(rt, pb, {SignVector::Parse("+0"), 0, +1}), Error);
}

TEST(K0, Decompose) {
  const RootedTree rt = a3_at_a();
  for (Vertex a = 0; a < 3; ++a) {
    std::vector<long> unit(3, 0), below(3, 0);
    unit[a] = 1;
    for (Vertex g = 0; g <= a; ++g) below[g] = 1;
    EXPECT_EQ(k0_decompose(rt, generator_S(rt, a)), unit);
    EXPECT_EQ(k0_decompose(rt, generator_P(rt, a)), below);
  }
  try {
    k0_decompose(rt, constant_functor(rt));
    FAIL() << "constant sheaf decomposed";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotInSpan);
  }
}
