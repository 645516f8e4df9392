#include "arbor/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "arbor/error.hpp"

namespace arbor {

int rank(const Tree& t, const Correspondence& c) {
  return static_cast<int>(t.size()) - static_cast<int>(c.fibers().size());
}

bool poset_leq(const Tree& t, const Correspondence& lower, const Correspondence& upper) {
  if (lower.tree_fingerprint() != t.fingerprint() || upper.tree_fingerprint() != t.fingerprint())
    throw Error(ErrorKind::kMismatchedTree, "correspondences must share the tree");
  // Part ids of `upper`: fibers are 0..f-1, complementary parts f..
  const int nf = static_cast<int>(upper.fibers().size());
  auto part = [&](Vertex v) {
    return upper.fiber_of(v) >= 0 ? upper.fiber_of(v) : nf + upper.complement_of(v);
  };
  auto inside_one_part = [&](VertexSet x, bool must_be_complement) {
    const auto vs = members(x);
    const int id = part(vs.front());
    if (must_be_complement && id < nf) return false;
    return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return part(v) == id; });
  };
  for (VertexSet n : lower.complements())
    if (!inside_one_part(n, true)) return false;
  for (VertexSet f : lower.fibers())
    if (!inside_one_part(f, false)) return false;
  return true;
}

int ArborealPoset::index_of(const Correspondence& c) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == c) return static_cast<int>(i);
  return -1;
}

ArborealPoset enumerate_poset(const Tree& t) {
  ArborealPoset out;
  out.tree_ = t;
  for (VertexSet s : connected_subsets(t)) {
    const EdgeSet inner = t.edges_within(s);
    // Walk every submask of `inner`, including the empty one.
    EdgeSet k = 0;
    do {
      out.elements_.push_back(make_correspondence(t, s, k));
      k = (k - inner) & inner;
    } while (k != 0);
  }
  std::stable_sort(out.elements_.begin(), out.elements_.end(),
                   [&](const Correspondence& a, const Correspondence& b) {
                     return std::tuple(rank(t, a), a.s(), a.k()) <
                            std::tuple(rank(t, b), b.s(), b.k());
                   });
  const std::size_t n = out.elements_.size();
  out.ranks_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.ranks_[i] = rank(t, out.elements_[i]);
  out.order_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.order_[a * n + b] = poset_leq(t, out.elements_[a], out.elements_[b]) ? 1 : 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!out.less(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (out.less(a, c) && out.less(c, b)) cover = false;
      if (cover) out.covers_.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return out;
}

UpsetIsomorphism upset_isomorphism(const ArborealPoset& poset, std::size_t p) {
  const Tree& t = poset.tree();
  const Correspondence& base = poset.element(p);
  UpsetIsomorphism iso{quotient_tree(t, base), {}, {}};
  iso.source = enumerate_poset(iso.quotient.tree);
  for (const Correspondence& q : iso.source.elements())
    iso.image.push_back(poset.index_of(compose(t, base, iso.quotient, q)));

  std::set<int> hit(iso.image.begin(), iso.image.end());
  std::set<int> upset;
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (poset.leq(p, i)) upset.insert(static_cast<int>(i));
  iso.bijective_onto_upset = hit.size() == iso.image.size() && hit == upset;

  iso.order_preserving = true;
  for (std::size_t a = 0; a < iso.source.size(); ++a)
    for (std::size_t b = 0; b < iso.source.size(); ++b)
      if (iso.source.leq(a, b) != poset.leq(iso.image[a], iso.image[b]))
        iso.order_preserving = false;
  return iso;
}

PathIsomorphism an_poset_isomorphism(int n) {
  const Tree t = path_tree(n);
  PathIsomorphism out{n, enumerate_poset(t), {}};
  // position[i] is the tree index of v_{i+1}.
  std::vector<Vertex> position;
  for (int i = 1; i <= n; ++i) position.push_back(t.index_of("v" + std::to_string(i)));

  out.subsets.assign(out.poset.size(), 0);
  for (std::size_t e = 0; e < out.poset.size(); ++e) {
    const Correspondence& c = out.poset.element(e);
    std::uint32_t separating = 0;
    // Extended-path edge i joins v_i and v_{i+1}; v_0 and v_{n+1} are
    // complementary vertices glued to whatever part their neighbour is in.
    if (contains(c.s(), position.front())) separating |= 1U;
    if (contains(c.s(), position.back())) separating |= 1U << n;
    for (int i = 1; i < n; ++i) {
      Vertex a = position[i - 1], b = position[i];
      const bool in_a = contains(c.s(), a), in_b = contains(c.s(), b);
      bool same_part = false;
      if (!in_a && !in_b) same_part = true;
      if (in_a && in_b) same_part = c.fiber_of(a) == c.fiber_of(b);
      if (!same_part) separating |= 1U << i;
    }
    const std::uint32_t full = (1U << (n + 1)) - 1;
    out.subsets[e] = full & ~separating;
  }

  std::set<std::uint32_t> seen;
  bool in_range = true;
  for (std::size_t e = 1; e < out.poset.size(); ++e) {
    const int size = std::popcount(out.subsets[e]);
    if (size < 1 || size > n - 1) in_range = false;
    seen.insert(out.subsets[e]);
  }
  std::size_t expected = 0;
  for (std::uint32_t m = 1; m < (1U << (n + 1)); ++m) {
    const int size = std::popcount(m);
    if (size >= 1 && size <= n - 1) ++expected;
  }
  out.bijective = in_range && seen.size() == out.poset.size() - 1 && seen.size() == expected;

  out.order_preserving = true;
  for (std::size_t a = 1; a < out.poset.size(); ++a) {
    for (std::size_t b = 1; b < out.poset.size(); ++b) {
      const bool sub = (out.subsets[a] & ~out.subsets[b]) == 0;
      if (sub != out.poset.leq(a, b)) out.order_preserving = false;
    }
  }
  return out;
}

}  // namespace arbor
