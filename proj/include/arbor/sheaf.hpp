#pragma once

// Constructible sheaves on R^V(T) for the coordinate sign stratification,
// modelled as representations of the exit-path poset of sign vectors.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/hypersurface.hpp"
#include "arbor/linalg.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// Sign vectors of length n ordered by s <= t iff each s_i is 0 or equals t_i.
// Stratum index: sum of digit_i 3^i with digit 0 for '0', 1 for '+', 2 for '-'.
class ExitPoset {
 public:
  explicit ExitPoset(std::size_t n);

  std::size_t dimension() const { return n_; }
  std::size_t size() const { return strata_.size(); }
  const SignVector& stratum(std::size_t i) const { return strata_[i]; }
  std::size_t index_of(const SignVector& s) const;
  bool leq(std::size_t a, std::size_t b) const;
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  // Covers (a, b): b has exactly one more nonzero entry than a.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  // {t : t >= s}
  std::vector<bool> star(std::size_t s) const;

 private:
  std::size_t n_;
  std::vector<SignVector> strata_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

// A functor from the exit poset to finite-dimensional vector spaces (stalks in
// degree 0). Build with dims and cover maps, then finalize().
class ExitFunctor {
 public:
  ExitFunctor() = default;
  ExitFunctor(std::shared_ptr<const ExitPoset> poset, std::vector<std::size_t> dims);

  const ExitPoset& poset() const { return *poset_; }
  const std::shared_ptr<const ExitPoset>& poset_ptr() const { return poset_; }
  std::size_t dim(std::size_t s) const { return dims_[s]; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  // Map F(a) -> F(b) for a cover a < b; shape dim(b) x dim(a).
  void set_cover_map(std::size_t a, std::size_t b, Matrix m);
  // Composes cover maps into maps for all pairs and checks that every square
  // of covers commutes. Throws NotFunctorial or ShapeMismatch.
  void finalize();
  // F(a) -> F(b) for a <= b; requires finalize().
  const Matrix& map(std::size_t a, std::size_t b) const;

  // Strata with nonzero stalk.
  std::vector<std::size_t> support() const;

 private:
  std::shared_ptr<const ExitPoset> poset_;
  std::vector<std::size_t> dims_;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> cover_maps_;
  std::unordered_map<std::uint64_t, Matrix> maps_;
  bool finalized_ = false;
};

// The functor that is the field on an up-closed set of strata with identity
// maps, zero elsewhere.
ExitFunctor indicator_functor(std::shared_ptr<const ExitPoset> poset, const std::vector<bool>& upset);

// A bounded cochain complex of exit functors: terms in degrees lo .. lo+size-1,
// differentials d^q: term(q) -> term(q+1) given stratum-wise.
struct FunctorComplex {
  int lo = 0;
  std::vector<ExitFunctor> terms;
  std::vector<std::vector<Matrix>> diffs;  // diffs[i][s]: terms[i](s) -> terms[i+1](s)

  static FunctorComplex single(ExitFunctor f, int degree = 0);
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const ExitPoset& poset() const { return terms.front().poset(); }
  // Throws NotAChainMap when a differential is not natural or d^2 != 0.
  void validate() const;
  // Term in degree q, or nullptr outside [lo, hi].
  const ExitFunctor* term(int q) const;
};

// Degree -> dimension, zero entries omitted.
using GradedDims = std::map<int, std::size_t>;
std::string to_string(const GradedDims& g);

// A degree-0 chain map between complexes with components per degree and stratum.
struct ComplexMap {
  FunctorComplex source;
  FunctorComplex target;
  // components[q - source.lo][s]: source^q(s) -> target^q(s); missing target
  // terms are treated as zero.
  std::vector<std::vector<Matrix>> components;
  // Throws NotAChainMap.
  void validate() const;
};

// k on U_a = {s : s_g = '-' for some g <= a}. Throws UnknownVertex.
FunctorComplex generator_P(const RootedTree& rt, Vertex a);
FunctorComplex constant_functor(const RootedTree& rt);
// The inclusion P_parent(a) -> P_a. Throws RootHasNoParent.
ComplexMap triangle_map_u(const RootedTree& rt, Vertex a);
// Cone^n = A^{n+1} + B^n, d(x, y) = (-d_A x, f x + d_B y).
FunctorComplex cone(const ComplexMap& m);
// S_a = cone(u_a) for a non-root vertex, S_root = P_root.
FunctorComplex generator_S(const RootedTree& rt, Vertex a);

// Cohomology of the complex of stalks at every stratum.
std::vector<GradedDims> stalk_cohomology(const FunctorComplex& f, const Field& field);

// Derived Hom via the normalized bar complex over strict chains of strata.
// `domain` restricts chains to a subset of strata (empty = all); chains whose
// least element lies in `excluded_bottoms` are dropped, which yields the
// relative complex for a pair of up-closed sets.
struct BarComplex {
  std::vector<int> degrees;         // total degrees in increasing order
  std::vector<std::size_t> dims;    // cochain dimension per degree
  std::vector<SparseMatrix> diffs;  // diffs[i]: degree i -> degree i + 1
  GradedDims cohomology(const Field& field) const;
  // True iff every composite of consecutive differentials vanishes.
  bool squares_to_zero() const;
};

BarComplex bar_complex(const FunctorComplex& m, const FunctorComplex& n, const std::vector<bool>& domain = {},
                       const std::vector<bool>& excluded_bottoms = {});

GradedDims rhom(const FunctorComplex& m, const FunctorComplex& n, const Field& field = Field::rationals());
// rhom computed over the sub-poset `domain` (used for stars of strata).
GradedDims rhom_on(const std::vector<bool>& domain, const FunctorComplex& m, const FunctorComplex& n,
                   const Field& field = Field::rationals());

// Natural transformations between plain functors, as per-stratum matrices.
struct NaturalTransformation {
  std::vector<Matrix> components;
  bool is_zero() const;
  friend bool operator==(const NaturalTransformation&, const NaturalTransformation&) = default;
};

// A basis of Hom(F, G) for functors F, G (degree-0 cocycles of the bar complex).
std::vector<NaturalTransformation> natural_transformations(const ExitFunctor& f, const ExitFunctor& g);
// The canonical class e_a^b : P_a -> P_b (identity on the support of P_a).
// Throws NotComparable when a is not <= b.
NaturalTransformation canonical_generator(const RootedTree& rt, Vertex a, Vertex b);
// x : P_a -> P_b followed by y : P_b -> P_c. Throws NotComparable unless
// a <= b <= c.
NaturalTransformation compose(const RootedTree& rt, Vertex a, Vertex b, Vertex c,
                              const NaturalTransformation& x, const NaturalTransformation& y);

// Derived sections over an up-closed set. Throws NotUpClosed.
GradedDims sections_over(const std::vector<bool>& upset, const FunctorComplex& f,
                         const Field& field = Field::rationals());

// True when restriction from Star(base) to {t >= base : t_axis = -sign} fails to
// be a quasi-isomorphism. Throws AxisNotZero.
bool codirection_test(const RootedTree& rt, const FunctorComplex& f, const Codirection& c,
                      const Field& field = Field::rationals());

// Stratum-wise Euler characteristic.
std::vector<long> k0_class(const FunctorComplex& f);
// Multiplicities m with k0(F) = sum m_a k0(S_a), indexed by vertex. Throws NotInSpan.
std::vector<long> k0_decompose(const RootedTree& rt, const FunctorComplex& f);

}  // namespace arbor
