#include "arbor/tree_enum.hpp"

#include <algorithm>
#include <set>

namespace arbor {

namespace {

std::string label_of(int i) { return "v" + std::to_string(i); }

// Builds the tree of a level sequence (levels[0] == 0 is the root; a vertex's
// parent is the last earlier vertex one level up).
RootedTree from_levels(const std::vector<int>& levels) {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<int> last_at_level(levels.size() + 1, -1);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    vertices.push_back(label_of(static_cast<int>(i)));
    if (levels[i] > 0)
      edges.emplace_back(label_of(last_at_level[levels[i] - 1]), label_of(static_cast<int>(i)));
    last_at_level[levels[i]] = static_cast<int>(i);
  }
  return RootedTree::Create(Tree::Create(vertices, edges), label_of(0));
}

std::string encode(const Tree& t, Vertex v, Vertex from) {
  std::vector<std::string> children;
  for (Vertex w : members(t.neighbors(v)))
    if (w != from) children.push_back(encode(t, w, v));
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  return out + ")";
}

}  // namespace

std::vector<RootedTree> rooted_tree_classes(int n) {
  std::vector<RootedTree> out;
  if (n <= 0) return out;
  std::vector<int> levels(n);
  for (int i = 0; i < n; ++i) levels[i] = i;
  while (true) {
    out.push_back(from_levels(levels));
    int p = n - 1;
    while (p >= 0 && levels[p] <= 1) --p;
    if (p < 0) break;
    int q = p - 1;
    while (levels[q] != levels[p] - 1) --q;
    const int shift = p - q;
    for (int i = p; i < n; ++i) levels[i] = levels[i - shift];
  }
  return out;
}

std::string canonical_form(const RootedTree& rt) { return encode(rt.tree(), rt.root(), -1); }

std::string canonical_form(const Tree& t) {
  const auto n = static_cast<Vertex>(t.size());
  int best = n;
  std::vector<Vertex> centers;
  for (Vertex v = 0; v < n; ++v) {
    int ecc = 0;
    for (Vertex w = 0; w < n; ++w) ecc = std::max(ecc, t.distance(v, w));
    if (ecc < best) {
      best = ecc;
      centers.clear();
    }
    if (ecc == best) centers.push_back(v);
  }
  std::string out;
  for (Vertex c : centers) {
    std::string e = encode(t, c, -1);
    if (out.empty() || e < out) out = e;
  }
  return out;
}

std::vector<Tree> free_tree_classes(int n) {
  std::vector<Tree> out;
  std::set<std::string> seen;
  for (const RootedTree& rt : rooted_tree_classes(n))
    if (seen.insert(canonical_form(rt.tree())).second) out.push_back(rt.tree());
  return out;
}

}  // namespace arbor
