#include "arbor/quiver.hpp"

#include <algorithm>
#include <optional>

#include "arbor/error.hpp"
#include "arbor/hypersurface.hpp"

namespace arbor {

TreeQuiver::TreeQuiver(RootedTree rt) : rt_(std::move(rt)), arrow_index_(rt_.size(), -1) {
  for (Vertex v = 0; v < static_cast<Vertex>(rt_.size()); ++v) {
    if (v == rt_.root()) continue;
    arrow_index_[v] = static_cast<int>(arrows_.size());
    arrows_.push_back({v, rt_.parent(v)});
  }
}

void Representation::validate(const TreeQuiver& q) const {
  if (dims.size() != q.size()) throw Error(ErrorKind::kShapeMismatch, "one dimension per vertex expected");
  if (maps.size() != q.arrows().size()) throw Error(ErrorKind::kShapeMismatch, "one matrix per arrow expected");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& a = q.arrows()[i];
    if (maps[i].rows() != dims[a.target] || maps[i].cols() != dims[a.source])
      throw Error(ErrorKind::kShapeMismatch, "arrow " + q.tree().label(a.source) + " -> " +
                                                 q.tree().label(a.target) + " has the wrong shape");
  }
}

namespace {

void check_vertex(const TreeQuiver& q, Vertex a) {
  if (a < 0 || static_cast<std::size_t>(a) >= q.size())
    throw Error(ErrorKind::kUnknownVertex, "vertex index " + std::to_string(a));
}

Representation from_dims(const TreeQuiver& q, std::vector<std::size_t> dims) {
  Representation r{std::move(dims), {}};
  for (const auto& a : q.arrows()) {
    Matrix m(r.dims[a.target], r.dims[a.source]);
    if (m.rows() == 1 && m.cols() == 1) m.at(0, 0) = 1;
    r.maps.push_back(std::move(m));
  }
  return r;
}

}  // namespace

Representation simple(const TreeQuiver& q, Vertex a) {
  check_vertex(q, a);
  std::vector<std::size_t> dims(q.size(), 0);
  dims[a] = 1;
  return from_dims(q, std::move(dims));
}

Representation projective(const TreeQuiver& q, Vertex a) {
  check_vertex(q, a);
  std::vector<std::size_t> dims(q.size(), 0);
  for (Vertex b : members(q.rooted().down_set(a))) dims[b] = 1;
  return from_dims(q, std::move(dims));
}

HomExt hom_ext(const TreeQuiver& q, const Representation& m, const Representation& n, const Field& field) {
  m.validate(q);
  n.validate(q);
  std::vector<std::size_t> off(q.size() + 1, 0);
  for (std::size_t v = 0; v < q.size(); ++v) off[v + 1] = off[v] + n.dims[v] * m.dims[v];
  std::size_t rows = 0;
  for (const auto& a : q.arrows()) rows += n.dims[a.target] * m.dims[a.source];
  Matrix l(rows, off.back());
  std::size_t row = 0;
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto [s, t] = q.arrows()[i];
    const Matrix& ma = m.maps[i];
    const Matrix& na = n.maps[i];
    // (N_a phi_s - phi_t M_a)(r, c), phi_v(x, c) at off[v] + x * m.dims[v] + c
    for (std::size_t r = 0; r < n.dims[t]; ++r)
      for (std::size_t c = 0; c < m.dims[s]; ++c, ++row) {
        for (std::size_t x = 0; x < n.dims[s]; ++x) l.at(row, off[s] + x * m.dims[s] + c) += na.at(r, x);
        for (std::size_t y = 0; y < m.dims[t]; ++y) l.at(row, off[t] + r * m.dims[t] + y) -= ma.at(y, c);
      }
  }
  const std::size_t rk = rank(l, field);
  return {off.back() - rk, rows - rk};
}

// ---------------------------------------------------------------------------
// Perfect complexes

bool PerfectComplex::empty() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.empty(); });
}

std::size_t PerfectComplex::rank_of(int degree) const {
  if (degree < lo || degree > hi()) return 0;
  return terms[degree - lo].size();
}

void PerfectComplex::validate(const TreeQuiver& q) const {
  if (diffs.size() + 1 != terms.size() && !(terms.empty() && diffs.empty()))
    throw Error(ErrorKind::kShapeMismatch, "one differential per gap");
  for (const auto& t : terms)
    for (Vertex v : t)
      if (v < 0 || static_cast<std::size_t>(v) >= q.size())
        throw Error(ErrorKind::kUnknownVertex, "summand label " + std::to_string(v));
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    const Matrix& d = diffs[i];
    if (d.rows() != terms[i + 1].size() || d.cols() != terms[i].size())
      throw Error(ErrorKind::kShapeMismatch, "differential shape in degree " + std::to_string(lo + i));
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (d.at(r, c) != 0 && !q.leq(terms[i][c], terms[i + 1][r]))
          throw Error(ErrorKind::kShapeMismatch, "no generator from P_" + q.tree().label(terms[i][c]) + " to P_" +
                                                     q.tree().label(terms[i + 1][r]));
    if (i + 1 < diffs.size() && !(diffs[i + 1] * d).is_zero())
      throw Error(ErrorKind::kBrokenDifferential, "d^2 != 0 in degree " + std::to_string(lo + i));
  }
}

void PerfectComplex::trim() {
  while (!terms.empty() && terms.back().empty()) {
    terms.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }
  while (!terms.empty() && terms.front().empty()) {
    terms.erase(terms.begin());
    if (!diffs.empty()) diffs.erase(diffs.begin());
    ++lo;
  }
  if (terms.empty()) lo = 0;
}

PerfectComplex std_resolution(const TreeQuiver& q, const Representation& m) {
  m.validate(q);
  PerfectComplex x;
  x.lo = -1;
  x.terms.resize(2);
  std::vector<std::size_t> off(q.size() + 1, 0);
  for (Vertex v = 0; v < static_cast<Vertex>(q.size()); ++v) {
    off[v + 1] = off[v] + m.dims[v];
    x.terms[1].insert(x.terms[1].end(), m.dims[v], v);
  }
  for (const auto& a : q.arrows()) x.terms[0].insert(x.terms[0].end(), m.dims[a.source], a.target);
  Matrix d(x.terms[1].size(), x.terms[0].size());
  std::size_t col = 0;
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto [s, t] = q.arrows()[i];
    for (std::size_t c = 0; c < m.dims[s]; ++c, ++col) {
      d.at(off[s] + c, col) = 1;
      for (std::size_t r = 0; r < m.dims[t]; ++r) d.at(off[t] + r, col) = -m.maps[i].at(r, c);
    }
  }
  x.diffs.push_back(std::move(d));
  x.trim();
  return x;
}

namespace {

Matrix drop(const Matrix& m, std::optional<std::size_t> row, std::optional<std::size_t> col) {
  Matrix out(m.rows() - (row ? 1 : 0), m.cols() - (col ? 1 : 0));
  for (std::size_t r = 0, rr = 0; r < m.rows(); ++r) {
    if (row && r == *row) continue;
    for (std::size_t c = 0, cc = 0; c < m.cols(); ++c) {
      if (col && c == *col) continue;
      out.at(rr, cc++) = m.at(r, c);
    }
    ++rr;
  }
  return out;
}

bool cancel_one(PerfectComplex& x) {
  for (std::size_t i = 0; i < x.diffs.size(); ++i) {
    const Matrix& d = x.diffs[i];
    for (std::size_t c = 0; c < d.cols(); ++c)
      for (std::size_t r = 0; r < d.rows(); ++r) {
        if (d.at(r, c) == 0 || x.terms[i][c] != x.terms[i + 1][r]) continue;
        const Rational inv = 1 / d.at(r, c);
        Matrix next(d.rows(), d.cols());
        for (std::size_t b = 0; b < d.rows(); ++b)
          for (std::size_t a = 0; a < d.cols(); ++a) next.at(b, a) = d.at(b, a) - d.at(b, c) * inv * d.at(r, a);
        x.diffs[i] = drop(next, r, c);
        if (i > 0) x.diffs[i - 1] = drop(x.diffs[i - 1], c, std::nullopt);
        if (i + 1 < x.diffs.size()) x.diffs[i + 1] = drop(x.diffs[i + 1], std::nullopt, r);
        x.terms[i].erase(x.terms[i].begin() + c);
        x.terms[i + 1].erase(x.terms[i + 1].begin() + r);
        return true;
      }
  }
  return false;
}

}  // namespace

PerfectComplex minimize(const PerfectComplex& x) {
  PerfectComplex out = x;
  while (cancel_one(out)) {
  }
  out.trim();
  return out;
}

std::vector<GradedDims> stalk_cohomology(const TreeQuiver& q, const PerfectComplex& x, const Field& field) {
  x.validate(q);
  std::vector<GradedDims> out(q.size());
  for (Vertex g = 0; g < static_cast<Vertex>(q.size()); ++g) {
    auto live = [&](std::size_t i) {
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < x.terms[i].size(); ++j)
        if (q.leq(g, x.terms[i][j])) idx.push_back(j);
      return idx;
    };
    std::vector<std::size_t> ranks(x.diffs.size());
    for (std::size_t i = 0; i < x.diffs.size(); ++i) {
      const auto rows = live(i + 1), cols = live(i);
      Matrix sub(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) sub.at(r, c) = x.diffs[i].at(rows[r], cols[c]);
      ranks[i] = rank(sub, field);
    }
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
      const std::size_t h = live(i).size() - (i < ranks.size() ? ranks[i] : 0) - (i > 0 ? ranks[i - 1] : 0);
      if (h > 0) out[g][x.lo + static_cast<int>(i)] = h;
    }
  }
  return out;
}

bool is_acyclic(const TreeQuiver& q, const PerfectComplex& x, const Field& field) {
  const auto h = stalk_cohomology(q, x, field);
  return std::all_of(h.begin(), h.end(), [](const GradedDims& g) { return g.empty(); });
}

GradedDims hom(const TreeQuiver& q, const PerfectComplex& x, const PerfectComplex& y, const Field& field) {
  x.validate(q);
  y.validate(q);
  if (x.empty() || y.empty()) return {};
  const int n_lo = y.lo - x.hi(), n_hi = y.hi() - x.lo;
  // index[n - n_lo][p - x.lo][i * |X^p| + j] for f: X^p -> Y^{p+n}, entry (i, j)
  std::vector<std::vector<std::vector<long>>> index(n_hi - n_lo + 1);
  std::vector<std::size_t> dims(n_hi - n_lo + 1, 0);
  for (int n = n_lo; n <= n_hi; ++n) {
    auto& per_p = index[n - n_lo];
    per_p.resize(x.terms.size());
    for (int p = x.lo; p <= x.hi(); ++p) {
      if (p + n < y.lo || p + n > y.hi()) continue;
      const auto& xs = x.terms[p - x.lo];
      const auto& ys = y.terms[p + n - y.lo];
      auto& idx = per_p[p - x.lo];
      idx.assign(ys.size() * xs.size(), -1);
      for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
          if (q.leq(xs[j], ys[i])) idx[i * xs.size() + j] = static_cast<long>(dims[n - n_lo]++);
    }
  }
  auto at = [&](int n, int p, std::size_t i, std::size_t j) -> long {
    if (n < n_lo || n > n_hi || p < x.lo || p > x.hi()) return -1;
    const auto& idx = index[n - n_lo][p - x.lo];
    if (idx.empty()) return -1;
    return idx[i * x.terms[p - x.lo].size() + j];
  };
  std::vector<std::size_t> ranks;
  for (int n = n_lo; n < n_hi; ++n) {
    SparseMatrix d(dims[n + 1 - n_lo], dims[n - n_lo]);
    const Rational sign = n % 2 == 0 ? -1 : 1;  // -(-1)^n
    for (int p = x.lo; p <= x.hi(); ++p) {
      if (p + n < y.lo || p + n > y.hi()) continue;
      const auto& xs = x.terms[p - x.lo];
      const auto& ys = y.terms[p + n - y.lo];
      for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
          const long col = at(n, p, i, j);
          if (col < 0) continue;
          // d_Y f
          if (p + n < y.hi()) {
            const Matrix& dy = y.diffs[p + n - y.lo];
            for (std::size_t r = 0; r < dy.rows(); ++r)
              if (dy.at(r, i) != 0) d.add(at(n + 1, p, r, j), col, dy.at(r, i));
          }
          // -(-1)^n f d_X, landing in X^{p-1} -> Y^{p+n}
          if (p > x.lo) {
            const Matrix& dx = x.diffs[p - 1 - x.lo];
            for (std::size_t c = 0; c < dx.cols(); ++c)
              if (dx.at(j, c) != 0) d.add(at(n + 1, p - 1, i, c), col, sign * dx.at(j, c));
          }
        }
    }
    ranks.push_back(rank(d, field));
  }
  GradedDims out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const std::size_t k = static_cast<std::size_t>(n - n_lo);
    const std::size_t h = dims[k] - (k < ranks.size() ? ranks[k] : 0) - (k > 0 ? ranks[k - 1] : 0);
    if (h > 0) out[n] = h;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction functors

namespace {

void check_correspondence(const TreeQuiver& q, const Correspondence& c) {
  if (c.tree_fingerprint() != q.tree().fingerprint())
    throw Error(ErrorKind::kMismatchedTree, "correspondence belongs to another tree");
}

Vertex root_of_s(const TreeQuiver& q, const Correspondence& c) {
  Vertex best = -1;
  for (Vertex v : members(c.s()))
    if (best < 0 || q.rooted().depth(v) < q.rooted().depth(best)) best = v;
  return best;
}

}  // namespace

TreeQuiver sub_quiver(const TreeQuiver& q, const Correspondence& c) {
  check_correspondence(q, c);
  const Tree& t = q.tree();
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
  for (Vertex v : members(c.s())) labels.push_back(t.label(v));
  for (const Edge& e : t.edges())
    if (contains(c.s(), e.u) && contains(c.s(), e.v)) edges.emplace_back(t.label(e.u), t.label(e.v));
  Tree sub = Tree::Create(std::move(labels), edges);
  const Vertex root = sub.index_of(t.label(root_of_s(q, c)));
  return TreeQuiver(RootedTree(std::move(sub), root));
}

TreeQuiver quotient_quiver(const TreeQuiver& q, const Correspondence& c) {
  check_correspondence(q, c);
  QuotientTree r = quotient_tree(q.tree(), c);
  const Vertex root = r.q[root_of_s(q, c)];
  return TreeQuiver(RootedTree(std::move(r.tree), root));
}

PerfectComplex functor_istar(const TreeQuiver& q, const Correspondence& c, const PerfectComplex& x) {
  check_correspondence(q, c);
  x.validate(q);
  const TreeQuiver sub = sub_quiver(q, c);
  std::vector<Vertex> rename(q.size(), -1);
  Vertex next = 0;
  for (Vertex v : members(c.s())) rename[v] = next++;
  PerfectComplex out;
  out.lo = x.lo;
  std::vector<std::vector<std::size_t>> kept(x.terms.size());
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    std::vector<Vertex> labels;
    for (std::size_t j = 0; j < x.terms[i].size(); ++j)
      if (rename[x.terms[i][j]] >= 0) {
        kept[i].push_back(j);
        labels.push_back(rename[x.terms[i][j]]);
      }
    out.terms.push_back(std::move(labels));
  }
  for (std::size_t i = 0; i < x.diffs.size(); ++i) {
    Matrix d(kept[i + 1].size(), kept[i].size());
    for (std::size_t r = 0; r < kept[i + 1].size(); ++r)
      for (std::size_t col = 0; col < kept[i].size(); ++col) d.at(r, col) = x.diffs[i].at(kept[i + 1][r], kept[i][col]);
    out.diffs.push_back(std::move(d));
  }
  for (std::size_t i = 0; i + 1 < out.diffs.size(); ++i)
    if (!(out.diffs[i + 1] * out.diffs[i]).is_zero())
      throw Error(ErrorKind::kBrokenDifferential, "deleting summands outside S breaks d^2 = 0");
  out.validate(sub);
  out.trim();
  return out;
}

PerfectComplex functor_qshriek(const TreeQuiver& q, const Correspondence& c, const PerfectComplex& x) {
  check_correspondence(q, c);
  const TreeQuiver sub = sub_quiver(q, c);
  x.validate(sub);
  const QuotientTree r = quotient_tree(q.tree(), c);
  const std::vector<Vertex> s = members(c.s());
  PerfectComplex out = x;
  for (auto& t : out.terms)
    for (Vertex& v : t) v = r.q[s[v]];
  out.validate(quotient_quiver(q, c));
  return out;
}

PerfectComplex restriction(const TreeQuiver& q, const Correspondence& c, const PerfectComplex& x) {
  return functor_qshriek(q, c, functor_istar(q, c, x));
}

std::vector<Vertex> fiber_minima(const TreeQuiver& q, const Correspondence& c) {
  check_correspondence(q, c);
  const QuotientTree r = quotient_tree(q.tree(), c);
  std::vector<Vertex> reps(r.tree.size(), -1);
  for (Vertex v : members(c.s())) {
    Vertex& rep = reps[r.q[v]];
    if (rep < 0 || q.rooted().depth(v) < q.rooted().depth(rep)) rep = v;
  }
  return reps;
}

bool corner_order_agrees(const TreeQuiver& q, const Correspondence& c, const std::vector<Vertex>& reps) {
  const QuotientTree r = quotient_tree(q.tree(), c);
  const TreeQuiver rq = quotient_quiver(q, c);
  if (reps.size() != r.tree.size()) throw Error(ErrorKind::kShapeMismatch, "one representative per fiber");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    check_vertex(q, reps[i]);
    if (r.q[reps[i]] != static_cast<Vertex>(i))
      throw Error(ErrorKind::kBadIndexSet, q.tree().label(reps[i]) + " is not in its fiber");
  }
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b)
      if (q.leq(reps[a], reps[b]) != rq.leq(static_cast<Vertex>(a), static_cast<Vertex>(b))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Local model comparison

void LocalModelReport::assert_ok(const Tree& t) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (sheaf_table[i][j] != quiver_table[i][j])
        throw Error(ErrorKind::kTableMismatch, "(P_" + t.label(generators[i]) + ", P_" + t.label(generators[j]) +
                                                   "): sheaf " + to_string(sheaf_table[i][j]) + ", quiver " +
                                                   to_string(quiver_table[i][j]));
}

LocalModelReport local_model_compare(const RootedTree& rt, const Correspondence& c, const Field& field) {
  const Tree& t = rt.tree();
  const TreeQuiver q(rt);
  check_correspondence(q, c);
  LocalModelReport report;
  report.stratum = stratum_of(front_projection(rt, sample(t, c)));
  report.generators = members(c.s());

  const ExitPoset& poset = generator_P(rt, rt.root()).poset();
  const std::vector<bool> star = poset.star(poset.index_of(report.stratum));
  std::vector<FunctorComplex> sheaves;
  std::vector<PerfectComplex> images;
  const TreeQuiver rq = quotient_quiver(q, c);
  for (Vertex g : report.generators) {
    sheaves.push_back(generator_P(rt, g));
    images.push_back(minimize(restriction(q, c, std_resolution(q, projective(q, g)))));
  }
  const std::size_t n = report.generators.size();
  report.sheaf_table.assign(n, std::vector<GradedDims>(n));
  report.quiver_table.assign(n, std::vector<GradedDims>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      report.sheaf_table[i][j] = rhom_on(star, sheaves[i], sheaves[j], field);
      report.quiver_table[i][j] = hom(rq, images[i], images[j], field);
    }
  return report;
}

}  // namespace arbor
