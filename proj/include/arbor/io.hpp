#pragma once

// JSON forms of the library's inputs and outputs. Parsers throw Parse for
// malformed text and the usual validation errors for well-formed but invalid
// content.

#include <optional>
#include <string>
#include <string_view>

#include "arbor/hypersurface.hpp"
#include "arbor/poset.hpp"
#include "arbor/quiver.hpp"
#include "arbor/sheaf.hpp"
#include "arbor/tree.hpp"
#include "json.hpp"

namespace arbor::io {

using Json = nlohmann::ordered_json;

// {"vertices": [...], "edges": [[u, v], ...], "root": r}; root is optional.
struct TreeInput {
  Tree tree;
  std::optional<std::string> root;
  // Throws Parse when no root was given.
  RootedTree rooted() const;
};

Json parse_json(std::string_view text);
std::string read_file(const std::string& path);

TreeInput parse_tree(const Json& j);
TreeInput parse_tree_text(std::string_view text);
Json tree_to_json(const Tree& t, std::optional<Vertex> root = std::nullopt);

// {"s": [...], "k": [[u, v], ...]}
Correspondence parse_correspondence(const Tree& t, const Json& j);
Correspondence parse_correspondence_text(const Tree& t, std::string_view text);
Json correspondence_to_json(const Tree& t, const Correspondence& c);

// {"elements": [{"s", "k", "rank"}], "covers": [[i, j], ...]}
Json poset_to_json(const ArborealPoset& poset);

// Points: {label: "p/q", ...}. LPoints: {"chart": label, "coords": {...}}
// with the chart coordinate omitted.
Point parse_point(const Tree& t, const Json& j);
Json point_to_json(const Tree& t, const Point& x);
LPoint parse_lpoint(const Tree& t, const Json& j);
Json lpoint_to_json(const Tree& t, const LPoint& p);

// {"lo": q, "terms": [{"stalks": {"+0-": dim}, "maps": [{"from", "to", "matrix"}]}],
//  "diffs": [{"+0-": matrix}]}; zero stalks and empty maps are omitted.
Json functor_complex_to_json(const FunctorComplex& f);

// {"dims": {label: n}, "maps": {"b->a": matrix}}
Representation parse_representation(const TreeQuiver& q, const Json& j);
Json representation_to_json(const TreeQuiver& q, const Representation& m);

// {"lo": q, "terms": [[label, ...]], "diffs": [[[row, col, "x"], ...]]}
PerfectComplex parse_perfect_complex(const TreeQuiver& q, const Json& j);
Json perfect_complex_to_json(const TreeQuiver& q, const PerfectComplex& x);

Json matrix_to_json(const Matrix& m);
Matrix parse_matrix(const Json& j);

}  // namespace arbor::io
