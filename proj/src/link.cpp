#include "arbor/link.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "arbor/error.hpp"

namespace arbor {

SimplicialComplex::SimplicialComplex(std::vector<std::string> labels,
                                     const std::vector<Simplex>& simplices)
    : labels_(std::move(labels)) {
  std::vector<std::set<Simplex>> faces;
  for (Simplex s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) continue;
    for (int v : s)
      if (v < 0 || static_cast<std::size_t>(v) >= labels_.size())
        throw Error(ErrorKind::kShapeMismatch, "simplex vertex out of range");
    const std::size_t k = s.size();
    if (faces.size() < k) faces.resize(k);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1U) f.push_back(s[i]);
      faces[f.size() - 1].insert(std::move(f));
    }
  }
  for (auto& layer : faces) by_dim_.emplace_back(layer.begin(), layer.end());
}

SimplicialComplex SimplicialComplex::FromLayers(std::vector<std::string> labels,
                                                std::vector<std::vector<Simplex>> layers) {
  SimplicialComplex sc;
  sc.labels_ = std::move(labels);
  sc.by_dim_ = std::move(layers);
  while (!sc.by_dim_.empty() && sc.by_dim_.back().empty()) sc.by_dim_.pop_back();
  return sc;
}

std::vector<std::size_t> SimplicialComplex::face_counts() const {
  std::vector<std::size_t> out;
  for (const auto& layer : by_dim_) out.push_back(layer.size());
  return out;
}

long SimplicialComplex::euler_characteristic() const {
  return arbor::euler_characteristic(face_counts());
}

long SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > by_dim_.size()) return -1;
  const auto& layer = by_dim_[s.size() - 1];
  auto it = std::lower_bound(layer.begin(), layer.end(), s);
  if (it == layer.end() || *it != s) return -1;
  return it - layer.begin();
}

SimplicialComplex order_complex(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less,
                                std::vector<std::string> labels) {
  std::vector<std::vector<int>> up(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && less(a, b)) up[a].push_back(static_cast<int>(b));
  // Every chain is reached exactly once by walking up from its least element.
  std::vector<std::vector<SimplicialComplex::Simplex>> layers;
  std::vector<int> chain;
  std::function<void(int)> extend = [&](int top) {
    chain.push_back(top);
    if (layers.size() < chain.size()) layers.resize(chain.size());
    SimplicialComplex::Simplex s = chain;
    std::sort(s.begin(), s.end());
    layers[chain.size() - 1].push_back(std::move(s));
    for (int next : up[top]) extend(next);
    chain.pop_back();
  };
  for (std::size_t v = 0; v < n; ++v) extend(static_cast<int>(v));
  for (auto& layer : layers) std::sort(layer.begin(), layer.end());
  return SimplicialComplex::FromLayers(std::move(labels), std::move(layers));
}

SimplicialComplex order_complex(const ArborealPoset& poset, bool drop_minimum) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (!drop_minimum || i != poset.minimum()) keep.push_back(i);
  std::vector<std::string> labels;
  for (std::size_t i : keep) labels.push_back(describe(poset.tree(), poset.element(i)));
  return order_complex(
      keep.size(), [&](std::size_t a, std::size_t b) { return poset.less(keep[a], keep[b]); },
      std::move(labels));
}

std::vector<std::size_t> f_vector(const ArborealPoset& poset) {
  std::vector<std::size_t> f;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (i == poset.minimum()) continue;
    const std::size_t d = static_cast<std::size_t>(poset.rank(i) - 1);
    if (f.size() <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

long euler_characteristic(const std::vector<std::size_t>& counts) {
  long chi = 0;
  for (std::size_t d = 0; d < counts.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(counts[d]);
  return chi;
}

std::size_t BettiNumbers::at(int degree) const {
  const long i = degree + 1;
  if (i < 0 || i >= static_cast<long>(values.size())) return 0;
  return values[i];
}

bool BettiNumbers::is_bouquet(int degree, std::size_t count) const {
  for (int d = -1; d <= std::max(max_degree(), degree); ++d)
    if (at(d) != (d == degree ? count : 0)) return false;
  return true;
}

bool BettiNumbers::is_sphere(int dim) const { return is_bouquet(dim, 1); }

std::string BettiNumbers::to_string() const {
  std::string out;
  for (int d = -1; d <= max_degree(); ++d) {
    if (at(d) == 0) continue;
    if (!out.empty()) out += ", ";
    out += "b~" + std::to_string(d) + " = " + std::to_string(at(d));
  }
  return out.empty() ? "acyclic" : out;
}

SparseMatrix boundary_matrix(const SimplicialComplex& sc, int d) {
  const auto& cols = sc.simplices(d);
  if (d == 0) {
    SparseMatrix m(1, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.add(0, c, 1);
    return m;
  }
  SparseMatrix m(sc.simplices(d - 1).size(), cols.size());
  SimplicialComplex::Simplex face;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& s = cols[c];
    for (std::size_t i = 0; i < s.size(); ++i) {
      face.assign(s.begin(), s.end());
      face.erase(face.begin() + static_cast<long>(i));
      const long row = sc.index_of(face);
      if (row < 0) throw Error(ErrorKind::kShapeMismatch, "complex is not closed under faces");
      m.add(static_cast<std::size_t>(row), c, i % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

BettiNumbers betti(const SimplicialComplex& sc, const Field& field) {
  const int top = sc.dimension();
  // chains[d + 1] = dim C_d, with C_{-1} the augmentation line.
  std::vector<std::size_t> chains{1};
  for (int d = 0; d <= top; ++d) chains.push_back(sc.simplices(d).size());
  // ranks[d + 1] = rank of the boundary C_d -> C_{d-1}; zero for d = -1, top + 1.
  std::vector<std::size_t> ranks(chains.size() + 1, 0);
  for (int d = 0; d <= top; ++d) ranks[d + 1] = rank(boundary_matrix(sc, d), field);
  BettiNumbers b;
  for (int d = -1; d <= top; ++d) b.values.push_back(chains[d + 1] - ranks[d + 1] - ranks[d + 2]);
  return b;
}

RegularityReport check_cell_regularity(const ArborealPoset& poset, const Field& field) {
  RegularityReport report;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    if (p == poset.minimum()) continue;
    std::vector<std::size_t> interval;
    for (std::size_t q = 0; q < poset.size(); ++q)
      if (q != poset.minimum() && poset.less(q, p)) interval.push_back(q);
    std::vector<std::string> labels(interval.size());
    const SimplicialComplex sc = order_complex(
        interval.size(),
        [&](std::size_t a, std::size_t b) { return poset.less(interval[a], interval[b]); },
        std::move(labels));
    ++report.checked;
    if (!betti(sc, field).is_sphere(poset.rank(p) - 2)) report.violators.push_back(static_cast<int>(p));
  }
  return report;
}

bool check_intersection_property(const ArborealPoset& poset) {
  const std::size_t n = poset.size();
  std::vector<std::size_t> common;
  for (std::size_t a = 0; a < n; ++a) {
    if (a == poset.minimum()) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (b == poset.minimum()) continue;
      common.clear();
      for (std::size_t c = 0; c < n; ++c)
        if (c != poset.minimum() && poset.leq(c, a) && poset.leq(c, b)) common.push_back(c);
      if (common.empty()) continue;
      const bool has_max = std::any_of(common.begin(), common.end(), [&](std::size_t top) {
        return std::all_of(common.begin(), common.end(),
                           [&](std::size_t c) { return poset.leq(c, top); });
      });
      if (!has_max) return false;
    }
  }
  return true;
}

namespace {

// Spring-electrical layout in R^3 from a fixed starting configuration.
std::vector<std::array<double, 3>> force_layout(std::size_t n,
                                                const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::array<double, 3>> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) + 0.5;
    const double z = 1.0 - 2.0 * t / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.399963229728653 * t;
    pos[i] = {r * std::cos(phi), r * std::sin(phi), z};
  }
  if (n < 2) return pos;
  const double k = 1.0 / std::cbrt(static_cast<double>(n));
  double step = 0.1;
  std::vector<std::array<double, 3>> force(n);
  for (int iter = 0; iter < 200; ++iter) {
    for (auto& f : force) f = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double d[3], len2 = 1e-12;
        for (int c = 0; c < 3; ++c) {
          d[c] = pos[i][c] - pos[j][c];
          len2 += d[c] * d[c];
        }
        const double scale = k * k / len2;
        for (int c = 0; c < 3; ++c) {
          force[i][c] += d[c] * scale;
          force[j][c] -= d[c] * scale;
        }
      }
    for (auto [a, b] : edges) {
      double d[3], len2 = 0;
      for (int c = 0; c < 3; ++c) {
        d[c] = pos[a][c] - pos[b][c];
        len2 += d[c] * d[c];
      }
      const double scale = std::sqrt(len2) / k;
      for (int c = 0; c < 3; ++c) {
        force[a][c] -= d[c] * scale;
        force[b][c] += d[c] * scale;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double len = 1e-12;
      for (int c = 0; c < 3; ++c) len += force[i][c] * force[i][c];
      len = std::sqrt(len);
      const double move = std::min(step, len) / len;
      for (int c = 0; c < 3; ++c) pos[i][c] += force[i][c] * move;
    }
    step *= 0.98;
  }
  return pos;
}

std::string write_off(const std::vector<std::array<double, 3>>& pos,
                      const std::vector<std::vector<int>>& facets) {
  std::ostringstream out;
  out << "OFF\n" << pos.size() << ' ' << facets.size() << " 0\n";
  char buf[96];
  for (const auto& p : pos) {
    std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", p[0], p[1], p[2]);
    out << buf;
  }
  for (const auto& f : facets) {
    out << f.size();
    for (int v : f) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string export_complex(const SimplicialComplex& sc, ExportFormat format) {
  if (format == ExportFormat::kJson) {
    nlohmann::json j;
    j["vertices"] = sc.labels();
    j["simplices"] = nlohmann::json::array();
    for (int d = 0; d <= sc.dimension(); ++d)
      for (const auto& s : sc.simplices(d)) j["simplices"].push_back(s);
    return j.dump(1) + "\n";
  }
  if (sc.dimension() > 3)
    throw Error(ErrorKind::kDimensionTooHigh,
                "mesh export needs dimension <= 3, complex has dimension " + std::to_string(sc.dimension()));
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> facets;
  for (int d = 1; d <= std::min(sc.dimension(), 2); ++d)
    for (const auto& s : sc.simplices(d)) {
      facets.push_back(s);
      if (d == 1) edges.emplace_back(s[0], s[1]);
    }
  return write_off(force_layout(sc.num_vertices(), edges), facets);
}

std::string export_cell_mesh(const ArborealPoset& poset) {
  int top = -1;
  for (std::size_t i = 0; i < poset.size(); ++i) top = std::max(top, poset.rank(i) - 1);
  if (top > 3)
    throw Error(ErrorKind::kDimensionTooHigh,
                "mesh export needs dimension <= 3, link has dimension " + std::to_string(top));
  std::map<std::size_t, int> vertex_of;  // rank-1 element -> mesh vertex
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (poset.rank(i) == 1) vertex_of.emplace(i, static_cast<int>(vertex_of.size()));
  auto ends_of = [&](std::size_t cell) {
    std::vector<int> ends;
    for (const auto& [e, v] : vertex_of)
      if (poset.less(e, cell)) ends.push_back(v);
    return ends;
  };
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> facets;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (poset.rank(i) != 2) continue;
    const auto ends = ends_of(i);
    if (ends.size() != 2) throw Error(ErrorKind::kShapeMismatch, "1-cell without two endpoints");
    edges.emplace_back(ends[0], ends[1]);
    facets.push_back(ends);
  }
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (poset.rank(i) != 3) continue;
    // The boundary is a circle: walk it from its smallest vertex.
    std::vector<std::pair<int, int>> rim;
    for (std::size_t j = 0; j < poset.size(); ++j)
      if (poset.rank(j) == 2 && poset.less(j, i)) {
        const auto ends = ends_of(j);
        rim.emplace_back(ends[0], ends[1]);
      }
    std::vector<int> cycle;
    std::vector<bool> used(rim.size(), false);
    int current = std::min_element(rim.begin(), rim.end())->first;
    for (std::size_t step = 0; step < rim.size(); ++step) {
      cycle.push_back(current);
      for (std::size_t e = 0; e < rim.size(); ++e) {
        if (used[e] || (rim[e].first != current && rim[e].second != current)) continue;
        used[e] = true;
        current = rim[e].first == current ? rim[e].second : rim[e].first;
        break;
      }
    }
    facets.push_back(cycle);
  }
  return write_off(force_layout(vertex_of.size(), edges), facets);
}

}  // namespace arbor
