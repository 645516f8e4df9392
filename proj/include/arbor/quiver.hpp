#pragma once

// Representations of the tree quiver (one arrow a -> parent(a) per non-root
// vertex), perfect complexes of its indecomposable projectives, and the
// restriction functors attached to a correspondence.

#include <string>
#include <vector>

#include "arbor/linalg.hpp"
#include "arbor/sheaf.hpp"
#include "arbor/tree.hpp"

namespace arbor {

class TreeQuiver {
 public:
  struct Arrow {
    Vertex source;
    Vertex target;  // parent of source
  };

  explicit TreeQuiver(RootedTree rt);

  const RootedTree& rooted() const { return rt_; }
  const Tree& tree() const { return rt_.tree(); }
  std::size_t size() const { return rt_.size(); }
  // Ordered by source vertex.
  const std::vector<Arrow>& arrows() const { return arrows_; }
  // Index of the arrow leaving v, or -1 for the root.
  int arrow_from(Vertex v) const { return arrow_index_[v]; }
  // Hom(P_a, P_b) is nonzero iff leq(a, b).
  bool leq(Vertex a, Vertex b) const { return rt_.leq(a, b); }

 private:
  RootedTree rt_;
  std::vector<Arrow> arrows_;
  std::vector<int> arrow_index_;
};

struct Representation {
  std::vector<std::size_t> dims;  // per vertex
  std::vector<Matrix> maps;       // per arrow: dims[target] x dims[source]
  // Throws ShapeMismatch.
  void validate(const TreeQuiver& q) const;
};

// Throw UnknownVertex.
Representation simple(const TreeQuiver& q, Vertex a);
Representation projective(const TreeQuiver& q, Vertex a);

struct HomExt {
  std::size_t hom = 0;
  std::size_t ext = 0;
  friend bool operator==(const HomExt&, const HomExt&) = default;
};

// Kernel and cokernel of  (phi_v)_v  ->  (N_a phi_s - phi_t M_a)_a.
// Throws ShapeMismatch.
HomExt hom_ext(const TreeQuiver& q, const Representation& m, const Representation& n,
               const Field& field = Field::rationals());

// A bounded complex of sums of projectives. terms[i] lists the labels of the
// summands in degree lo + i; diffs[i] maps terms[i] to terms[i + 1] and has
// one row per summand of the target. A nonzero entry (r, c) stands for a
// multiple of the generator P_{label c} -> P_{label r}, so it requires
// label c <= label r. Generators compose to generators, hence composition is
// the ordinary matrix product.
struct PerfectComplex {
  int lo = 0;
  std::vector<std::vector<Vertex>> terms;
  std::vector<Matrix> diffs;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool empty() const;
  std::size_t rank_of(int degree) const;
  // Throws ShapeMismatch (bad shapes or inadmissible entries) or
  // BrokenDifferential (d^2 != 0).
  void validate(const TreeQuiver& q) const;
  // Drops empty terms at both ends; an empty complex gets lo = 0.
  void trim();
  friend bool operator==(const PerfectComplex&, const PerfectComplex&) = default;
};

// 0 -> sum_a P_parent(a) (x) M(a) -> sum_v P_v (x) M(v) -> M -> 0, in degrees -1, 0.
PerfectComplex std_resolution(const TreeQuiver& q, const Representation& m);

// Cancels invertible entries between equal labels until none is left,
// scanning degree, column, row in increasing order.
PerfectComplex minimize(const PerfectComplex& x);

// Cohomology of the complex of stalks at each vertex g, where P_a(g) = k iff g <= a.
std::vector<GradedDims> stalk_cohomology(const TreeQuiver& q, const PerfectComplex& x,
                                         const Field& field = Field::rationals());
bool is_acyclic(const TreeQuiver& q, const PerfectComplex& x, const Field& field = Field::rationals());

// Cohomology of the Hom complex Hom^n(X, Y) = prod_p Hom(X^p, Y^{p+n}).
GradedDims hom(const TreeQuiver& q, const PerfectComplex& x, const PerfectComplex& y,
               const Field& field = Field::rationals());

// The quiver of the subtree on S, rooted at its vertex nearest the root.
// Vertex i is the i-th member of S in index order. Throws MismatchedTree.
TreeQuiver sub_quiver(const TreeQuiver& q, const Correspondence& c);
// The quiver of the quotient tree R, rooted at the fiber of the root of S.
TreeQuiver quotient_quiver(const TreeQuiver& q, const Correspondence& c);

// Deletes summands outside S; the result lives over sub_quiver(q, c).
// Throws BrokenDifferential.
PerfectComplex functor_istar(const TreeQuiver& q, const Correspondence& c, const PerfectComplex& x);
// Relabels a complex over sub_quiver(q, c) by fibers; the result lives over
// quotient_quiver(q, c).
PerfectComplex functor_qshriek(const TreeQuiver& q, const Correspondence& c, const PerfectComplex& x);
PerfectComplex restriction(const TreeQuiver& q, const Correspondence& c, const PerfectComplex& x);

// The vertex of each fiber nearest the root of S, indexed by R-vertex.
std::vector<Vertex> fiber_minima(const TreeQuiver& q, const Correspondence& c);
// Whether choosing reps[r] in fiber r (indexed by R-vertex, given as vertices
// of T) makes the corner order agree with the order of R: for all fibers r, s,
// reps[r] <= reps[s] in T iff r <= s in R.
bool corner_order_agrees(const TreeQuiver& q, const Correspondence& c, const std::vector<Vertex>& reps);

// Tables indexed by generators P_g, g in S (index order).
struct LocalModelReport {
  SignVector stratum;
  std::vector<Vertex> generators;
  std::vector<std::vector<GradedDims>> sheaf_table;
  std::vector<std::vector<GradedDims>> quiver_table;
  bool ok() const { return sheaf_table == quiver_table; }
  // Throws TableMismatch naming the first differing pair.
  void assert_ok(const Tree& t) const;
};

// Sheaf side: rhom of P_g, P_h over the star of the stratum under the front
// projection of sample(c). Quiver side: hom of restriction(c, P_g), restriction(c, P_h).
LocalModelReport local_model_compare(const RootedTree& rt, const Correspondence& c,
                                     const Field& field = Field::rationals());

}  // namespace arbor
