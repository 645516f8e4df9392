#include "arbor/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "arbor/error.hpp"

namespace arbor {

namespace {

constexpr int kDigitPlus = 1;
constexpr int kDigitMinus = 2;

int digit_of(int sign) { return sign == 0 ? 0 : sign > 0 ? kDigitPlus : kDigitMinus; }

std::uint64_t pair_key(std::size_t a, std::size_t b) { return (std::uint64_t{a} << 32) | b; }

Matrix zero_map(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

}  // namespace

// ---------------------------------------------------------------------------
// ExitPoset

ExitPoset::ExitPoset(std::size_t n) : n_(n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::int8_t> s(n);
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i, rest /= 3) {
      const int d = static_cast<int>(rest % 3);
      s[i] = static_cast<std::int8_t>(d == 0 ? 0 : d == kDigitPlus ? 1 : -1);
    }
    strata_.emplace_back(std::move(s));
  }
  std::size_t place = 1;
  for (std::size_t i = 0; i < n; ++i, place *= 3)
    for (std::size_t a = 0; a < total; ++a)
      if (strata_[a][i] == 0) {
        covers_.emplace_back(a, a + kDigitPlus * place);
        covers_.emplace_back(a, a + kDigitMinus * place);
      }
  std::sort(covers_.begin(), covers_.end());
}

std::size_t ExitPoset::index_of(const SignVector& s) const {
  if (s.size() != n_) throw Error(ErrorKind::kBadIndexSet, "sign vector length " + std::to_string(s.size()));
  std::size_t idx = 0, place = 1;
  for (std::size_t i = 0; i < n_; ++i, place *= 3) idx += digit_of(s[i]) * place;
  return idx;
}

bool ExitPoset::leq(std::size_t a, std::size_t b) const {
  for (std::size_t i = 0; i < n_; ++i, a /= 3, b /= 3) {
    const std::size_t da = a % 3;
    if (da != 0 && da != b % 3) return false;
  }
  return true;
}

std::vector<bool> ExitPoset::star(std::size_t s) const {
  std::vector<bool> out(size());
  for (std::size_t t = 0; t < size(); ++t) out[t] = leq(s, t);
  return out;
}

// ---------------------------------------------------------------------------
// ExitFunctor

ExitFunctor::ExitFunctor(std::shared_ptr<const ExitPoset> poset, std::vector<std::size_t> dims)
    : poset_(std::move(poset)), dims_(std::move(dims)) {
  if (dims_.size() != poset_->size()) throw Error(ErrorKind::kShapeMismatch, "one stalk per stratum expected");
}

void ExitFunctor::set_cover_map(std::size_t a, std::size_t b, Matrix m) {
  if (m.rows() != dims_[b] || m.cols() != dims_[a])
    throw Error(ErrorKind::kShapeMismatch, "cover map shape");
  cover_maps_[{a, b}] = std::move(m);
  finalized_ = false;
}

void ExitFunctor::finalize() {
  const ExitPoset& P = *poset_;
  auto cover = [&](std::size_t a, std::size_t b) {
    auto it = cover_maps_.find({a, b});
    return it != cover_maps_.end() ? it->second : zero_map(dims_[b], dims_[a]);
  };
  // Every length-two interval is a diamond; commuting diamonds make all
  // composites along cover paths agree.
  std::size_t place_i = 1;
  for (std::size_t i = 0; i < P.dimension(); ++i, place_i *= 3) {
    std::size_t place_j = place_i * 3;
    for (std::size_t j = i + 1; j < P.dimension(); ++j, place_j *= 3)
      for (std::size_t a = 0; a < P.size(); ++a) {
        if (P.stratum(a)[i] != 0 || P.stratum(a)[j] != 0) continue;
        for (int di : {kDigitPlus, kDigitMinus})
          for (int dj : {kDigitPlus, kDigitMinus}) {
            const std::size_t ci = a + di * place_i, cj = a + dj * place_j, b = ci + dj * place_j;
            if (!(cover(ci, b) * cover(a, ci) == cover(cj, b) * cover(a, cj)))
              throw Error(ErrorKind::kNotFunctorial, "square at " + P.stratum(a).to_string() + " -> " +
                                                         P.stratum(b).to_string() + " does not commute");
          }
      }
  }
  maps_.clear();
  // map(a, b) = map(c, b) * cover(a, c) with c = a plus the first missing sign of b.
  std::function<const Matrix&(std::size_t, std::size_t)> build = [&](std::size_t a,
                                                                     std::size_t b) -> const Matrix& {
    auto it = maps_.find(pair_key(a, b));
    if (it != maps_.end()) return it->second;
    Matrix m;
    if (a == b) {
      m = Matrix::identity(dims_[a]);
    } else {
      std::size_t place = 1, c = a;
      for (std::size_t i = 0; i < P.dimension(); ++i, place *= 3)
        if (P.stratum(a)[i] == 0 && P.stratum(b)[i] != 0) {
          c = a + digit_of(P.stratum(b)[i]) * place;
          break;
        }
      m = build(c, b) * cover(a, c);
    }
    return maps_.emplace(pair_key(a, b), std::move(m)).first->second;
  };
  for (std::size_t a = 0; a < P.size(); ++a)
    for (std::size_t b = 0; b < P.size(); ++b)
      if (P.leq(a, b)) build(a, b);
  finalized_ = true;
}

const Matrix& ExitFunctor::map(std::size_t a, std::size_t b) const {
  if (!finalized_) throw Error(ErrorKind::kNotFunctorial, "functor used before finalize()");
  auto it = maps_.find(pair_key(a, b));
  if (it == maps_.end()) throw Error(ErrorKind::kNotComparable, "strata are not comparable");
  return it->second;
}

std::vector<std::size_t> ExitFunctor::support() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < dims_.size(); ++s)
    if (dims_[s] > 0) out.push_back(s);
  return out;
}

ExitFunctor indicator_functor(std::shared_ptr<const ExitPoset> poset, const std::vector<bool>& upset) {
  const ExitPoset& P = *poset;
  std::vector<std::size_t> dims(P.size());
  for (std::size_t s = 0; s < P.size(); ++s) dims[s] = upset[s] ? 1 : 0;
  ExitFunctor f(poset, dims);
  for (auto [a, b] : P.covers()) {
    if (upset[a] && !upset[b]) throw Error(ErrorKind::kNotUpClosed, "support of an indicator functor");
    if (upset[a]) f.set_cover_map(a, b, Matrix::identity(1));
  }
  f.finalize();
  return f;
}

// ---------------------------------------------------------------------------
// Complexes

FunctorComplex FunctorComplex::single(ExitFunctor f, int degree) {
  FunctorComplex c;
  c.lo = degree;
  c.terms.push_back(std::move(f));
  return c;
}

const ExitFunctor* FunctorComplex::term(int q) const {
  if (q < lo || q > hi()) return nullptr;
  return &terms[q - lo];
}

void FunctorComplex::validate() const {
  if (terms.empty()) throw Error(ErrorKind::kShapeMismatch, "complex without terms");
  if (diffs.size() + 1 != terms.size()) throw Error(ErrorKind::kShapeMismatch, "one differential per gap");
  const ExitPoset& P = poset();
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    for (std::size_t s = 0; s < P.size(); ++s) {
      const Matrix& d = diffs[i][s];
      if (d.rows() != terms[i + 1].dim(s) || d.cols() != terms[i].dim(s))
        throw Error(ErrorKind::kShapeMismatch, "differential shape");
      if (i + 1 < diffs.size() && !(diffs[i + 1][s] * d).is_zero())
        throw Error(ErrorKind::kNotAChainMap, "d^2 != 0 at " + P.stratum(s).to_string());
    }
    for (auto [a, b] : P.covers())
      if (!(diffs[i][b] * terms[i].map(a, b) == terms[i + 1].map(a, b) * diffs[i][a]))
        throw Error(ErrorKind::kNotAChainMap, "differential is not natural");
  }
}

std::string to_string(const GradedDims& g) {
  if (g.empty()) return "0";
  std::string out;
  for (auto [deg, dim] : g) {
    if (!out.empty()) out += " + ";
    out += (dim == 1 ? std::string("k") : "k^" + std::to_string(dim)) + "[" + std::to_string(-deg) + "]";
  }
  return out;
}

namespace {

std::size_t term_dim(const FunctorComplex& c, int q, std::size_t s) {
  const ExitFunctor* f = c.term(q);
  return f ? f->dim(s) : 0;
}

// d^q at stratum s (zero when out of range).
Matrix diff_at(const FunctorComplex& c, int q, std::size_t s) {
  if (q >= c.lo && q < c.hi()) return c.diffs[q - c.lo][s];
  return zero_map(term_dim(c, q + 1, s), term_dim(c, q, s));
}

}  // namespace

void ComplexMap::validate() const {
  source.validate();
  target.validate();
  const ExitPoset& P = source.poset();
  if (components.size() != source.terms.size()) throw Error(ErrorKind::kShapeMismatch, "components per degree");
  for (int q = source.lo; q <= source.hi(); ++q) {
    const auto& comp = components[q - source.lo];
    for (std::size_t s = 0; s < P.size(); ++s) {
      if (comp[s].rows() != term_dim(target, q, s) || comp[s].cols() != term_dim(source, q, s))
        throw Error(ErrorKind::kShapeMismatch, "chain map component shape");
      // f d = d f
      const Matrix next = q + 1 <= source.hi() ? components[q + 1 - source.lo][s]
                                               : zero_map(term_dim(target, q + 1, s), term_dim(source, q + 1, s));
      if (!(next * diff_at(source, q, s) == diff_at(target, q, s) * comp[s]))
        throw Error(ErrorKind::kNotAChainMap, "does not commute with differentials");
    }
    if (target.term(q) == nullptr) continue;
    for (auto [a, b] : P.covers())
      if (!(comp[b] * source.term(q)->map(a, b) == target.term(q)->map(a, b) * comp[a]))
        throw Error(ErrorKind::kNotAChainMap, "component is not natural");
  }
  // Target terms below or above the source range receive zero.
}

// ---------------------------------------------------------------------------
// Generators

namespace {

std::vector<bool> quadrant_complement(const RootedTree& rt, const ExitPoset& P, Vertex a) {
  std::vector<bool> u(P.size(), false);
  const auto below = members(rt.down_set(a));
  for (std::size_t s = 0; s < P.size(); ++s)
    u[s] = std::any_of(below.begin(), below.end(), [&](Vertex g) { return P.stratum(s)[g] < 0; });
  return u;
}

void check_vertex(const RootedTree& rt, Vertex a) {
  if (a < 0 || static_cast<std::size_t>(a) >= rt.size())
    throw Error(ErrorKind::kUnknownVertex, "vertex index " + std::to_string(a));
}

// One exit poset per tree size, shared by every functor built for it.
std::shared_ptr<const ExitPoset> exit_poset_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const ExitPoset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const ExitPoset>(n);
  return slot;
}

}  // namespace

FunctorComplex generator_P(const RootedTree& rt, Vertex a) {
  check_vertex(rt, a);
  auto P = exit_poset_for(rt.size());
  return FunctorComplex::single(indicator_functor(P, quadrant_complement(rt, *P, a)));
}

FunctorComplex constant_functor(const RootedTree& rt) {
  auto P = exit_poset_for(rt.size());
  return FunctorComplex::single(indicator_functor(P, std::vector<bool>(P->size(), true)));
}

ComplexMap triangle_map_u(const RootedTree& rt, Vertex a) {
  check_vertex(rt, a);
  if (a == rt.root()) throw Error(ErrorKind::kRootHasNoParent, rt.tree().label(a) + " is the root");
  ComplexMap m{generator_P(rt, rt.parent(a)), generator_P(rt, a), {}};
  const ExitFunctor& src = m.source.terms[0];
  const ExitFunctor& dst = m.target.terms[0];
  std::vector<Matrix> comp;
  for (std::size_t s = 0; s < src.poset().size(); ++s) {
    Matrix c(dst.dim(s), src.dim(s));
    if (src.dim(s) == 1) c.at(0, 0) = 1;
    comp.push_back(std::move(c));
  }
  m.components.push_back(std::move(comp));
  m.validate();
  return m;
}

FunctorComplex cone(const ComplexMap& m) {
  m.validate();
  const FunctorComplex& A = m.source;
  const FunctorComplex& B = m.target;
  const ExitPoset& P = A.poset();
  auto poset = A.terms.front().poset_ptr();
  FunctorComplex c;
  c.lo = std::min(A.lo - 1, B.lo);
  const int hi = std::max(A.hi() - 1, B.hi());
  auto comp = [&](int q, std::size_t s) {
    if (q >= A.lo && q <= A.hi()) return m.components[q - A.lo][s];
    return zero_map(term_dim(B, q, s), term_dim(A, q, s));
  };
  for (int n = c.lo; n <= hi; ++n) {
    std::vector<std::size_t> dims(P.size());
    for (std::size_t s = 0; s < P.size(); ++s) dims[s] = term_dim(A, n + 1, s) + term_dim(B, n, s);
    ExitFunctor f(poset, dims);
    for (auto [a, b] : P.covers()) {
      Matrix block(dims[b], dims[a]);
      const std::size_t ra = term_dim(A, n + 1, a), rb = term_dim(A, n + 1, b);
      if (const ExitFunctor* fa = A.term(n + 1)) {
        const Matrix& x = fa->map(a, b);
        for (std::size_t i = 0; i < x.rows(); ++i)
          for (std::size_t j = 0; j < x.cols(); ++j) block.at(i, j) = x.at(i, j);
      }
      if (const ExitFunctor* fb = B.term(n)) {
        const Matrix& y = fb->map(a, b);
        for (std::size_t i = 0; i < y.rows(); ++i)
          for (std::size_t j = 0; j < y.cols(); ++j) block.at(rb + i, ra + j) = y.at(i, j);
      }
      f.set_cover_map(a, b, std::move(block));
    }
    f.finalize();
    c.terms.push_back(std::move(f));
  }
  for (int n = c.lo; n < hi; ++n) {
    std::vector<Matrix> d;
    for (std::size_t s = 0; s < P.size(); ++s) {
      // (x, y) in A^{n+1} + B^n  ->  (-d_A x, f x + d_B y) in A^{n+2} + B^{n+1}
      const std::size_t a1 = term_dim(A, n + 1, s), b0 = term_dim(B, n, s);
      const std::size_t a2 = term_dim(A, n + 2, s), b1 = term_dim(B, n + 1, s);
      Matrix blk(a2 + b1, a1 + b0);
      const Matrix dA = diff_at(A, n + 1, s), dB = diff_at(B, n, s), fx = comp(n + 1, s);
      for (std::size_t i = 0; i < a2; ++i)
        for (std::size_t j = 0; j < a1; ++j) blk.at(i, j) = -dA.at(i, j);
      for (std::size_t i = 0; i < b1; ++i) {
        for (std::size_t j = 0; j < a1; ++j) blk.at(a2 + i, j) = fx.at(i, j);
        for (std::size_t j = 0; j < b0; ++j) blk.at(a2 + i, a1 + j) = dB.at(i, j);
      }
      d.push_back(std::move(blk));
    }
    c.diffs.push_back(std::move(d));
  }
  c.validate();
  return c;
}

FunctorComplex generator_S(const RootedTree& rt, Vertex a) {
  check_vertex(rt, a);
  if (a == rt.root()) return generator_P(rt, a);
  return cone(triangle_map_u(rt, a));
}

std::vector<GradedDims> stalk_cohomology(const FunctorComplex& f, const Field& field) {
  const ExitPoset& P = f.poset();
  std::vector<GradedDims> out(P.size());
  for (std::size_t s = 0; s < P.size(); ++s)
    for (int q = f.lo; q <= f.hi(); ++q) {
      const std::size_t h = term_dim(f, q, s) - rank(diff_at(f, q, s), field) - rank(diff_at(f, q - 1, s), field);
      if (h > 0) out[s][q] = h;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Bar complex

namespace {

struct ChainTable {
  std::vector<std::vector<int>> chains;
  std::map<std::vector<int>, int> index;
};

}  // namespace

BarComplex bar_complex(const FunctorComplex& m, const FunctorComplex& n, const std::vector<bool>& domain,
                       const std::vector<bool>& excluded_bottoms) {
  const ExitPoset& P = m.poset();
  if (n.poset().size() != P.size()) throw Error(ErrorKind::kShapeMismatch, "functors over different posets");
  auto in_domain = [&](std::size_t s) { return domain.empty() || domain[s]; };
  auto bottom_ok = [&](std::size_t s) { return excluded_bottoms.empty() || !excluded_bottoms[s]; };
  auto m_nonzero = [&](std::size_t s) {
    for (int p = m.lo; p <= m.hi(); ++p)
      if (term_dim(m, p, s) > 0) return true;
    return false;
  };

  // Chains whose bottom carries some M-stalk; faces obtained by dropping the
  // bottom may start elsewhere and are looked up lazily.
  ChainTable table;
  std::vector<std::vector<int>> up(P.size());
  for (std::size_t a = 0; a < P.size(); ++a)
    if (in_domain(a))
      for (std::size_t b = 0; b < P.size(); ++b)
        if (in_domain(b) && P.less(a, b)) up[a].push_back(static_cast<int>(b));
  std::vector<int> chain;
  std::function<void(int)> extend = [&](int top) {
    chain.push_back(top);
    table.index.emplace(chain, static_cast<int>(table.chains.size()));
    table.chains.push_back(chain);
    for (int next : up[top]) extend(next);
    chain.pop_back();
  };
  for (std::size_t s = 0; s < P.size(); ++s)
    if (in_domain(s) && bottom_ok(s) && m_nonzero(s)) extend(static_cast<int>(s));

  // Block (chain, p, q): Hom(M^p(bottom), N^q(top)) in total degree k + q - p,
  // stored row-major as j * dim M^p(bottom) + i.
  const int np = static_cast<int>(m.terms.size()), nq = static_cast<int>(n.terms.size());
  int max_len = 0;
  for (const auto& c : table.chains) max_len = std::max(max_len, static_cast<int>(c.size()));
  const int deg_lo = n.lo - m.hi();
  const int deg_hi = (max_len - 1) + n.hi() - m.lo;
  BarComplex bar;
  for (int t = deg_lo; t <= deg_hi; ++t) bar.degrees.push_back(t);
  bar.dims.assign(bar.degrees.size(), 0);
  std::vector<std::vector<long>> offset(table.chains.size(), std::vector<long>(np * nq, -1));
  for (std::size_t c = 0; c < table.chains.size(); ++c) {
    const auto& ch = table.chains[c];
    const int k = static_cast<int>(ch.size()) - 1;
    for (int p = m.lo; p <= m.hi(); ++p)
      for (int q = n.lo; q <= n.hi(); ++q) {
        const std::size_t size = term_dim(m, p, ch.front()) * term_dim(n, q, ch.back());
        if (size == 0) continue;
        std::size_t& dim = bar.dims[k + q - p - deg_lo];
        offset[c][(p - m.lo) * nq + (q - n.lo)] = static_cast<long>(dim);
        dim += size;
      }
  }
  if (bar.degrees.empty()) return bar;
  for (std::size_t i = 0; i + 1 < bar.degrees.size(); ++i) bar.diffs.emplace_back(bar.dims[i + 1], bar.dims[i]);

  auto off = [&](int c, int p, int q) -> long {
    if (c < 0 || p < m.lo || p > m.hi() || q < n.lo || q > n.hi()) return -1;
    return offset[c][(p - m.lo) * nq + (q - n.lo)];
  };
  auto find = [&](const std::vector<int>& ch) {
    auto it = table.index.find(ch);
    return it == table.index.end() ? -1 : it->second;
  };
  auto matrix_for = [&](int col_degree) -> SparseMatrix& { return bar.diffs[col_degree - deg_lo]; };

  std::vector<int> face;
  for (std::size_t cc = 0; cc < table.chains.size(); ++cc) {
    const auto& ch = table.chains[cc];
    const int c = static_cast<int>(cc);
    const int k = static_cast<int>(ch.size()) - 1;
    const std::size_t bottom = ch.front(), top = ch.back();
    for (int p = m.lo; p <= m.hi(); ++p)
      for (int q = n.lo; q <= n.hi(); ++q) {
        const std::size_t dm = term_dim(m, p, bottom), dn = term_dim(n, q, top);
        // Bar part, written from the target chain `ch` (length k + 1 >= 2).
        const long row0 = off(c, p, q);
        if (row0 >= 0 && k >= 1) {
          const int t = (k - 1) + q - p;
          SparseMatrix& D = matrix_for(t);
          // Drop the top: N(prev_top < top) f.
          face.assign(ch.begin(), ch.end() - 1);
          const int f_top = find(face);
          const long c_top = off(f_top, p, q);
          if (c_top >= 0) {
            const std::size_t prev = ch[k - 1];
            const Matrix& nm = n.term(q)->map(prev, top);
            for (std::size_t jr = 0; jr < dn; ++jr)
              for (std::size_t j = 0; j < nm.cols(); ++j) {
                if (nm.at(jr, j) == 0) continue;
                for (std::size_t i = 0; i < dm; ++i)
                  D.add(row0 + jr * dm + i, c_top + j * dm + i, nm.at(jr, j));
              }
          }
          // Drop an inner element, sign (-1)^(k-i).
          for (int i = 1; i < k; ++i) {
            face.assign(ch.begin(), ch.end());
            face.erase(face.begin() + i);
            const long c_mid = off(find(face), p, q);
            if (c_mid < 0) continue;
            const Rational sign = (k - i) % 2 == 0 ? 1 : -1;
            for (std::size_t e = 0; e < dm * dn; ++e) D.add(row0 + e, c_mid + e, sign);
          }
          // Drop the bottom: (-1)^k f M(bottom < next).
          face.assign(ch.begin() + 1, ch.end());
          const long c_bot = off(find(face), p, q);
          if (c_bot >= 0) {
            const std::size_t next = ch[1];
            const Matrix& mm = m.term(p)->map(bottom, next);
            const std::size_t dm_next = term_dim(m, p, next);
            const Rational sign = k % 2 == 0 ? 1 : -1;
            for (std::size_t j = 0; j < dn; ++j)
              for (std::size_t i = 0; i < dm_next; ++i)
                for (std::size_t ir = 0; ir < dm; ++ir) {
                  if (mm.at(i, ir) == 0) continue;
                  D.add(row0 + j * dm + ir, c_bot + j * dm_next + i, sign * mm.at(i, ir));
                }
          }
        }
        // Internal part (-1)^k (d_N f - (-1)^{q-p} f d_M), written from the source block.
        const long col0 = off(c, p, q);
        if (col0 < 0) continue;
        const int t = k + q - p;
        if (t - deg_lo + 1 >= static_cast<int>(bar.degrees.size())) continue;
        SparseMatrix& D = matrix_for(t);
        const Rational sk = k % 2 == 0 ? 1 : -1;
        const long row_n = off(c, p, q + 1);
        if (row_n >= 0) {
          const Matrix dN = diff_at(n, q, top);
          for (std::size_t jr = 0; jr < dN.rows(); ++jr)
            for (std::size_t j = 0; j < dn; ++j) {
              if (dN.at(jr, j) == 0) continue;
              for (std::size_t i = 0; i < dm; ++i) D.add(row_n + jr * dm + i, col0 + j * dm + i, sk * dN.at(jr, j));
            }
        }
        const long row_m = off(c, p - 1, q);
        if (row_m >= 0) {
          const Matrix dM = diff_at(m, p - 1, bottom);  // M^{p-1} -> M^p
          const std::size_t dm_prev = term_dim(m, p - 1, bottom);
          const Rational s = -sk * ((q - p) % 2 == 0 ? 1 : -1);
          for (std::size_t j = 0; j < dn; ++j)
            for (std::size_t i = 0; i < dm; ++i)
              for (std::size_t ir = 0; ir < dm_prev; ++ir) {
                if (dM.at(i, ir) == 0) continue;
                D.add(row_m + j * dm_prev + ir, col0 + j * dm + i, s * dM.at(i, ir));
              }
        }
      }
  }
  return bar;
}

GradedDims BarComplex::cohomology(const Field& field) const {
  std::vector<std::size_t> ranks(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) ranks[i] = rank(diffs[i], field);
  GradedDims out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const std::size_t out_rank = i < ranks.size() ? ranks[i] : 0;
    const std::size_t in_rank = i > 0 ? ranks[i - 1] : 0;
    const std::size_t h = dims[i] - out_rank - in_rank;
    if (h > 0) out[degrees[i]] = h;
  }
  return out;
}

bool BarComplex::squares_to_zero() const {
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
    const SparseMatrix& a = diffs[i];
    const SparseMatrix& b = diffs[i + 1];
    for (std::size_t c = 0; c < a.cols(); ++c) {
      std::map<int, Rational> acc;
      for (const auto& e : a.column(c))
        for (const auto& f : b.column(e.row)) acc[f.row] += f.value * e.value;
      for (const auto& [row, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

GradedDims rhom(const FunctorComplex& m, const FunctorComplex& n, const Field& field) {
  return bar_complex(m, n).cohomology(field);
}

GradedDims rhom_on(const std::vector<bool>& domain, const FunctorComplex& m, const FunctorComplex& n,
                   const Field& field) {
  return bar_complex(m, n, domain).cohomology(field);
}

// ---------------------------------------------------------------------------
// Natural transformations

bool NaturalTransformation::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return m.is_zero(); });
}

std::vector<NaturalTransformation> natural_transformations(const ExitFunctor& f, const ExitFunctor& g) {
  const ExitPoset& P = f.poset();
  std::vector<std::size_t> offset(P.size() + 1, 0);
  for (std::size_t s = 0; s < P.size(); ++s) offset[s + 1] = offset[s] + g.dim(s) * f.dim(s);
  const std::size_t unknowns = offset.back();
  // Unknown (s, r, c) is entry (r, c) of eta_s, at offset[s] + r * f.dim(s) + c.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  for (auto [a, b] : P.covers()) {
    const Matrix& G = g.map(a, b);
    const Matrix& F = f.map(a, b);
    // (G eta_a - eta_b F)(r, c) = 0 for r < g.dim(b), c < f.dim(a)
    for (std::size_t r = 0; r < g.dim(b); ++r)
      for (std::size_t c = 0; c < f.dim(a); ++c) {
        std::vector<std::pair<std::size_t, Rational>> eq;
        for (std::size_t x = 0; x < g.dim(a); ++x)
          if (G.at(r, x) != 0) eq.emplace_back(offset[a] + x * f.dim(a) + c, G.at(r, x));
        for (std::size_t x = 0; x < f.dim(b); ++x)
          if (F.at(x, c) != 0) eq.emplace_back(offset[b] + r * f.dim(b) + x, -F.at(x, c));
        if (!eq.empty()) rows.push_back(std::move(eq));
      }
  }
  Matrix system(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [col, v] : rows[i]) system.at(i, col) += v;
  const Matrix basis = nullspace(system);
  std::vector<NaturalTransformation> out;
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    NaturalTransformation eta;
    for (std::size_t s = 0; s < P.size(); ++s) {
      Matrix c(g.dim(s), f.dim(s));
      for (std::size_t r = 0; r < g.dim(s); ++r)
        for (std::size_t x = 0; x < f.dim(s); ++x) c.at(r, x) = basis.at(offset[s] + r * f.dim(s) + x, k);
      eta.components.push_back(std::move(c));
    }
    out.push_back(std::move(eta));
  }
  return out;
}

NaturalTransformation canonical_generator(const RootedTree& rt, Vertex a, Vertex b) {
  check_vertex(rt, a);
  check_vertex(rt, b);
  if (!rt.leq(a, b))
    throw Error(ErrorKind::kNotComparable, rt.tree().label(a) + " is not below " + rt.tree().label(b));
  const FunctorComplex pa = generator_P(rt, a), pb = generator_P(rt, b);
  NaturalTransformation e;
  for (std::size_t s = 0; s < pa.poset().size(); ++s) {
    Matrix c(pb.terms[0].dim(s), pa.terms[0].dim(s));
    if (pa.terms[0].dim(s) == 1) c.at(0, 0) = 1;
    e.components.push_back(std::move(c));
  }
  return e;
}

NaturalTransformation compose(const RootedTree& rt, Vertex a, Vertex b, Vertex c,
                              const NaturalTransformation& x, const NaturalTransformation& y) {
  check_vertex(rt, a);
  check_vertex(rt, b);
  check_vertex(rt, c);
  if (!rt.leq(a, b) || !rt.leq(b, c)) throw Error(ErrorKind::kNotComparable, "composition needs a <= b <= c");
  if (x.components.size() != y.components.size()) throw Error(ErrorKind::kShapeMismatch, "composition");
  NaturalTransformation out;
  for (std::size_t s = 0; s < x.components.size(); ++s) out.components.push_back(y.components[s] * x.components[s]);
  return out;
}

// ---------------------------------------------------------------------------
// Sections, codirections, K_0

GradedDims sections_over(const std::vector<bool>& upset, const FunctorComplex& f, const Field& field) {
  const ExitPoset& P = f.poset();
  if (upset.size() != P.size()) throw Error(ErrorKind::kShapeMismatch, "stratum set size");
  for (auto [a, b] : P.covers())
    if (upset[a] && !upset[b])
      throw Error(ErrorKind::kNotUpClosed, P.stratum(a).to_string() + " in, " + P.stratum(b).to_string() + " out");
  auto poset = f.terms.front().poset_ptr();
  const FunctorComplex k = FunctorComplex::single(indicator_functor(poset, std::vector<bool>(P.size(), true)));
  return bar_complex(k, f, upset).cohomology(field);
}

bool codirection_test(const RootedTree& rt, const FunctorComplex& f, const Codirection& c, const Field& field) {
  const ExitPoset& P = f.poset();
  if (P.dimension() != rt.size()) throw Error(ErrorKind::kShapeMismatch, "functor is over another tree");
  check_vertex(rt, c.axis);
  if (c.base.size() != rt.size()) throw Error(ErrorKind::kBadIndexSet, "codirection base");
  if (c.base[c.axis] != 0) throw Error(ErrorKind::kAxisNotZero, "axis coordinate of the base stratum is nonzero");
  const std::size_t base = P.index_of(c.base);
  const std::vector<bool> star = P.star(base);
  std::vector<bool> toward(P.size(), false);
  for (std::size_t t = 0; t < P.size(); ++t) toward[t] = star[t] && P.stratum(t)[c.axis] == -c.sign;
  // Restriction is a quasi-isomorphism iff its (surjective) cochain map has an
  // acyclic kernel: cochains on chains of the star starting outside `toward`.
  auto poset = f.terms.front().poset_ptr();
  const FunctorComplex k = FunctorComplex::single(indicator_functor(poset, std::vector<bool>(P.size(), true)));
  return !bar_complex(k, f, star, toward).cohomology(field).empty();
}

std::vector<long> k0_class(const FunctorComplex& f) {
  const ExitPoset& P = f.poset();
  std::vector<long> chi(P.size(), 0);
  for (int q = f.lo; q <= f.hi(); ++q)
    for (std::size_t s = 0; s < P.size(); ++s)
      chi[s] += (q % 2 == 0 ? 1 : -1) * static_cast<long>(term_dim(f, q, s));
  return chi;
}

std::vector<long> k0_decompose(const RootedTree& rt, const FunctorComplex& f) {
  const ExitPoset& P = f.poset();
  if (P.dimension() != rt.size()) throw Error(ErrorKind::kShapeMismatch, "functor is over another tree");
  Matrix basis(P.size(), rt.size());
  for (Vertex a = 0; a < static_cast<Vertex>(rt.size()); ++a) {
    const auto chi = k0_class(generator_S(rt, a));
    for (std::size_t s = 0; s < P.size(); ++s) basis.at(s, a) = chi[s];
  }
  const auto target = k0_class(f);
  std::vector<Rational> rhs(target.begin(), target.end());
  const auto x = solve(basis, rhs);
  if (!x) throw Error(ErrorKind::kNotInSpan, "Euler vector is outside the span of the simples");
  std::vector<long> out;
  for (const Rational& v : *x) {
    if (v.get_den() != 1) throw Error(ErrorKind::kNotInSpan, "non-integral multiplicity " + v.get_str());
    out.push_back(v.get_num().get_si());
  }
  return out;
}

}  // namespace arbor
