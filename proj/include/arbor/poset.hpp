#pragma once

// The poset of correspondences of a tree, ordered by refinement of the
// associated partitions.

#include <cstdint>
#include <utility>
#include <vector>

#include "arbor/tree.hpp"

namespace arbor {

// Rank |V(T)| - #fibers; equals the dimension of the open cell indexed by c.
int rank(const Tree& t, const Correspondence& c);

// True iff lower <= upper: the partition of `lower` refines that of `upper`
// (each complementary part of lower sits in a complementary part of upper, each
// fiber of lower sits in a complementary part or a fiber of upper).
// Throws MismatchedTree.
bool poset_leq(const Tree& t, const Correspondence& lower, const Correspondence& upper);

class ArborealPoset {
 public:
  const Tree& tree() const { return tree_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Correspondence>& elements() const { return elements_; }
  const Correspondence& element(std::size_t i) const { return elements_[i]; }
  int rank(std::size_t i) const { return ranks_[i]; }
  // The identity correspondence; always index 0.
  std::size_t minimum() const { return 0; }
  bool leq(std::size_t a, std::size_t b) const { return order_[a * size() + b] != 0; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  // Cover relations (a, b) with a < b and nothing strictly between.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  // Index of c, or -1.
  int index_of(const Correspondence& c) const;

 private:
  friend ArborealPoset enumerate_poset(const Tree& t);

  Tree tree_;
  std::vector<Correspondence> elements_;
  std::vector<int> ranks_;
  std::vector<std::uint8_t> order_;
  std::vector<std::pair<int, int>> covers_;
};

// All (S, K) with S connected and nonempty, sorted by (rank, S, K).
ArborealPoset enumerate_poset(const Tree& t);

// The poset map q |-> q o p from the poset of the quotient tree R of p onto the
// up-set of p, with the checks that it is a bijection onto the up-set and an
// order embedding in both directions.
struct UpsetIsomorphism {
  QuotientTree quotient;
  ArborealPoset source;          // poset of R
  std::vector<int> image;        // source index -> index in the poset of T
  bool bijective_onto_upset = false;
  bool order_preserving = false;  // q <= q' iff image(q) <= image(q')
  bool verified() const { return bijective_onto_upset && order_preserving; }
};

UpsetIsomorphism upset_isomorphism(const ArborealPoset& poset, std::size_t p);

// The identification of the link poset of the path tree with the nonempty
// subsets of {0..n} of size at most n-1 under containment. Edge i of the
// extended path joins v_i and v_{i+1}; a correspondence maps to the set of
// edges NOT separating parts of its extended partition.
struct PathIsomorphism {
  int n = 0;
  ArborealPoset poset;
  // subsets[i] for each non-minimum poset index i (entry 0 unused), as a bitmask
  // over {0..n}.
  std::vector<std::uint32_t> subsets;
  bool bijective = false;
  bool order_preserving = false;
  bool verified() const { return bijective && order_preserving; }
};

PathIsomorphism an_poset_isomorphism(int n);

}  // namespace arbor
