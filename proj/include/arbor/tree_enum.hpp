#pragma once

// Isomorphism-class enumeration of small trees via canonical level sequences.

#include <string>
#include <vector>

#include "arbor/tree.hpp"

namespace arbor {

// Every rooted tree on n vertices up to isomorphism, each exactly once.
// Vertices are labelled v0..v{n-1} in preorder; v0 is the root.
std::vector<RootedTree> rooted_tree_classes(int n);

// Every free tree on n vertices up to isomorphism, each exactly once.
std::vector<Tree> free_tree_classes(int n);

// Isomorphism-invariant encoding (AHU string at the center).
std::string canonical_form(const Tree& t);
std::string canonical_form(const RootedTree& rt);

}  // namespace arbor
