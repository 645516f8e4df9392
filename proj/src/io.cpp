#include "arbor/io.hpp"

#include <fstream>
#include <sstream>

#include "arbor/error.hpp"

namespace arbor::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& j) {
  if (!j.is_string()) bad("expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j) {
  if (!j.is_array()) bad("expected an array, got " + j.dump());
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(as_string(e));
  return out;
}

std::vector<std::pair<std::string, std::string>> pair_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad("expected a pair, got " + e.dump());
    out.emplace_back(as_string(e[0]), as_string(e[1]));
  }
  return out;
}

Rational as_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(as_string(j));
}

std::size_t as_count(const Json& j) {
  if (!j.is_number_integer() || j.get<long>() < 0) bad("expected a nonnegative integer, got " + j.dump());
  return j.get<std::size_t>();
}

}  // namespace

RootedTree TreeInput::rooted() const {
  if (!root) bad("a root is required");
  return RootedTree::Create(tree, *root);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TreeInput parse_tree(const Json& j) {
  Tree t = Tree::Create(string_list(field(j, "vertices")), pair_list(field(j, "edges")));
  std::optional<std::string> root;
  if (j.contains("root") && !j["root"].is_null()) {
    root = as_string(j["root"]);
    t.index_of(*root);
  }
  return {std::move(t), std::move(root)};
}

TreeInput parse_tree_text(std::string_view text) { return parse_tree(parse_json(text)); }

Json tree_to_json(const Tree& t, std::optional<Vertex> root) {
  Json j;
  j["vertices"] = t.labels();
  Json edges = Json::array();
  for (const Edge& e : t.edges()) edges.push_back({t.label(e.u), t.label(e.v)});
  j["edges"] = std::move(edges);
  if (root) j["root"] = t.label(*root);
  return j;
}

Correspondence parse_correspondence(const Tree& t, const Json& j) {
  std::vector<std::pair<std::string, std::string>> k;
  if (j.contains("k")) k = pair_list(j["k"]);
  return make_correspondence(t, string_list(field(j, "s")), k);
}

Correspondence parse_correspondence_text(const Tree& t, std::string_view text) {
  return parse_correspondence(t, parse_json(text));
}

Json correspondence_to_json(const Tree& t, const Correspondence& c) {
  Json j;
  Json s = Json::array();
  for (Vertex v : members(c.s())) s.push_back(t.label(v));
  Json k = Json::array();
  for (std::size_t i = 0; i < t.edges().size(); ++i)
    if (c.k() >> i & 1) k.push_back({t.label(t.edges()[i].u), t.label(t.edges()[i].v)});
  j["s"] = std::move(s);
  j["k"] = std::move(k);
  return j;
}

Json poset_to_json(const ArborealPoset& poset) {
  Json elements = Json::array();
  for (std::size_t i = 0; i < poset.size(); ++i) {
    Json e = correspondence_to_json(poset.tree(), poset.element(i));
    e["rank"] = poset.rank(i);
    elements.push_back(std::move(e));
  }
  Json covers = Json::array();
  for (auto [a, b] : poset.covers()) covers.push_back({a, b});
  Json j;
  j["tree"] = tree_to_json(poset.tree());
  j["elements"] = std::move(elements);
  j["covers"] = std::move(covers);
  return j;
}

Point parse_point(const Tree& t, const Json& j) {
  if (!j.is_object()) bad("a point is an object of coordinates");
  Point x(t.size());
  std::vector<bool> seen(t.size(), false);
  for (const auto& [label, value] : j.items()) {
    const Vertex v = t.index_of(label);
    x[v] = as_rational(value);
    seen[v] = true;
  }
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    if (!seen[v]) throw Error(ErrorKind::kBadIndexSet, "missing coordinate " + t.label(v));
  return x;
}

Json point_to_json(const Tree& t, const Point& x) {
  Json j = Json::object();
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) j[t.label(v)] = format_rational(x[v]);
  return j;
}

LPoint parse_lpoint(const Tree& t, const Json& j) {
  LPoint p{t.index_of(as_string(field(j, "chart"))), std::vector<Rational>(t.size())};
  const Json& coords = field(j, "coords");
  if (!coords.is_object()) bad("coords must be an object");
  std::vector<bool> seen(t.size(), false);
  seen[p.chart] = true;
  for (const auto& [label, value] : coords.items()) {
    const Vertex v = t.index_of(label);
    if (v == p.chart) throw Error(ErrorKind::kBadIndexSet, "the chart vertex has no coordinate");
    p.coords[v] = as_rational(value);
    seen[v] = true;
  }
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    if (!seen[v]) throw Error(ErrorKind::kBadIndexSet, "missing coordinate " + t.label(v));
  return p;
}

Json lpoint_to_json(const Tree& t, const LPoint& p) {
  Json coords = Json::object();
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    if (v != p.chart) coords[t.label(v)] = format_rational(p.coords[v]);
  Json j;
  j["chart"] = t.label(p.chart);
  j["coords"] = std::move(coords);
  return j;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_rational(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix parse_matrix(const Json& j) {
  if (!j.is_array()) bad("a matrix is an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = as_rational(j[r][c]);
  }
  return m;
}

Json functor_complex_to_json(const FunctorComplex& f) {
  const ExitPoset& P = f.poset();
  Json terms = Json::array();
  for (const ExitFunctor& term : f.terms) {
    Json stalks = Json::object();
    for (std::size_t s = 0; s < P.size(); ++s)
      if (term.dim(s) > 0) stalks[P.stratum(s).to_string()] = term.dim(s);
    Json maps = Json::array();
    for (auto [a, b] : P.covers()) {
      const Matrix& m = term.map(a, b);
      if (m.rows() == 0 || m.cols() == 0) continue;
      Json e;
      e["from"] = P.stratum(a).to_string();
      e["to"] = P.stratum(b).to_string();
      e["matrix"] = matrix_to_json(m);
      maps.push_back(std::move(e));
    }
    Json t;
    t["stalks"] = std::move(stalks);
    t["maps"] = std::move(maps);
    terms.push_back(std::move(t));
  }
  Json diffs = Json::array();
  for (const auto& d : f.diffs) {
    Json per = Json::object();
    for (std::size_t s = 0; s < P.size(); ++s)
      if (d[s].rows() > 0 && d[s].cols() > 0) per[P.stratum(s).to_string()] = matrix_to_json(d[s]);
    diffs.push_back(std::move(per));
  }
  Json j;
  j["lo"] = f.lo;
  j["terms"] = std::move(terms);
  j["diffs"] = std::move(diffs);
  return j;
}

namespace {

std::string arrow_name(const TreeQuiver& q, const TreeQuiver::Arrow& a) {
  return q.tree().label(a.source) + "->" + q.tree().label(a.target);
}

}  // namespace

Representation parse_representation(const TreeQuiver& q, const Json& j) {
  Representation m;
  m.dims.assign(q.size(), 0);
  const Json& dims = field(j, "dims");
  if (!dims.is_object()) bad("dims must be an object");
  for (const auto& [label, value] : dims.items()) m.dims[q.tree().index_of(label)] = as_count(value);
  for (const auto& a : q.arrows()) m.maps.emplace_back(m.dims[a.target], m.dims[a.source]);
  if (j.contains("maps")) {
    const Json& maps = j["maps"];
    if (!maps.is_object()) bad("maps must be an object");
    for (const auto& [name, value] : maps.items()) {
      std::size_t i = 0;
      while (i < q.arrows().size() && arrow_name(q, q.arrows()[i]) != name) ++i;
      if (i == q.arrows().size()) throw Error(ErrorKind::kBadEdge, "no arrow " + name);
      Matrix mat = parse_matrix(value);
      if (mat.rows() == 0 && mat.cols() == 0) continue;
      m.maps[i] = std::move(mat);
    }
  }
  m.validate(q);
  return m;
}

Json representation_to_json(const TreeQuiver& q, const Representation& m) {
  Json dims = Json::object();
  for (Vertex v = 0; v < static_cast<Vertex>(q.size()); ++v) dims[q.tree().label(v)] = m.dims[v];
  Json maps = Json::object();
  for (std::size_t i = 0; i < q.arrows().size(); ++i)
    if (m.maps[i].rows() > 0 && m.maps[i].cols() > 0) maps[arrow_name(q, q.arrows()[i])] = matrix_to_json(m.maps[i]);
  Json j;
  j["dims"] = std::move(dims);
  j["maps"] = std::move(maps);
  return j;
}

PerfectComplex parse_perfect_complex(const TreeQuiver& q, const Json& j) {
  PerfectComplex x;
  if (j.contains("lo")) {
    if (!j["lo"].is_number_integer()) bad("lo must be an integer");
    x.lo = j["lo"].get<int>();
  }
  for (const auto& term : field(j, "terms")) {
    std::vector<Vertex> labels;
    for (const auto& l : string_list(term)) labels.push_back(q.tree().index_of(l));
    x.terms.push_back(std::move(labels));
  }
  const Json& diffs = j.contains("diffs") ? j["diffs"] : Json::array();
  if (!diffs.is_array()) bad("diffs must be an array");
  if (!x.terms.empty() && diffs.size() + 1 != x.terms.size())
    throw Error(ErrorKind::kShapeMismatch, "one differential per gap");
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    Matrix d(x.terms[i + 1].size(), x.terms[i].size());
    for (const auto& e : diffs[i]) {
      if (!e.is_array() || e.size() != 3) bad("entry must be [row, col, value]");
      const std::size_t r = as_count(e[0]), c = as_count(e[1]);
      if (r >= d.rows() || c >= d.cols()) throw Error(ErrorKind::kShapeMismatch, "entry out of range: " + e.dump());
      d.at(r, c) = as_rational(e[2]);
    }
    x.diffs.push_back(std::move(d));
  }
  x.validate(q);
  return x;
}

Json perfect_complex_to_json(const TreeQuiver& q, const PerfectComplex& x) {
  Json terms = Json::array();
  for (const auto& t : x.terms) {
    Json labels = Json::array();
    for (Vertex v : t) labels.push_back(q.tree().label(v));
    terms.push_back(std::move(labels));
  }
  Json diffs = Json::array();
  for (const Matrix& d : x.diffs) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (d.at(r, c) != 0) entries.push_back({r, c, format_rational(d.at(r, c))});
    diffs.push_back(std::move(entries));
  }
  Json j;
  j["lo"] = x.lo;
  j["terms"] = std::move(terms);
  j["diffs"] = std::move(diffs);
  return j;
}

}  // namespace arbor::io
