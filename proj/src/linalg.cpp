#include "arbor/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

#include "arbor/error.hpp"
#include "arbor/simd/kernels.hpp"

namespace arbor {

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw Error(ErrorKind::kParse, "not a rational: '" + std::string(text) + "'");
  if (num.front() == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorKind::kParse, "zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // Fermat; p is prime and a != 0 mod p.
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::kBadField, std::to_string(p) + " is not prime");
  if (p > simd::kMaxDoubleModulus)
    throw Error(ErrorKind::kBadField,
                "prime " + std::to_string(p) + " exceeds " + std::to_string(simd::kMaxDoubleModulus));
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q") return rationals();
  if (text.substr(0, 3) == "fp:") {
    std::uint64_t p = 0;
    const char* first = text.data() + 3;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec == std::errc() && ptr == last && first != last) return prime(p);
  }
  throw Error(ErrorKind::kBadField, "expected 'q' or 'fp:P', got '" + std::string(text) + "'");
}

std::string Field::name() const { return is_rational() ? "q" : "fp:" + std::to_string(p_); }

std::uint64_t Field::reduce(const Rational& q) const {
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
  if (den == 0)
    throw Error(ErrorKind::kBadField, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p_));
  return num * inverse_mod(den, p_) % p_;
}

// ---------------------------------------------------------------------------
// Dense rational matrices

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::kShapeMismatch, "matrix product");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += x * b.at(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::kShapeMismatch, "matrix sum");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Rational(-1) * b; }

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix c = a;
  for (Rational& x : c.data_) x *= s;
  return c;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    const Rational inv = 1 / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const Rational f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return rref(copy).size();
}

std::size_t rank(const Matrix& m, const Field& field) {
  if (field.is_rational()) return rank(m);
  SparseMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) s.add(i, j, m.at(i, j));
  return rank(s, field);
}

Matrix nullspace(const Matrix& m) {
  Matrix r = m;
  const auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Matrix basis(m.cols(), m.cols() - pivots.size());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.at(free, out) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis.at(pivots[i], out) = -r.at(i, free);
    ++out;
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::kShapeMismatch, "solve: right-hand side");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
  return x;
}

// ---------------------------------------------------------------------------
// Sparse matrices

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
  if (row >= rows_ || col >= cols_) throw Error(ErrorKind::kShapeMismatch, "sparse entry out of range");
  if (value == 0) return;
  auto& column = columns_[col];
  const int r = static_cast<int>(row);
  auto it = std::lower_bound(column.begin(), column.end(), r,
                             [](const Entry& e, int key) { return e.row < key; });
  if (it != column.end() && it->row == r) {
    it->value += value;
    if (it->value == 0) column.erase(it);
  } else {
    column.insert(it, Entry{r, value});
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const Entry& e : columns_[c]) m.at(e.row, c) = e.value;
  return m;
}

// ---------------------------------------------------------------------------
// Rank by column reduction: each column is reduced against earlier pivot
// columns keyed by their lowest nonzero row until its own lowest row is new.

namespace {

template <typename T>
using SparseColumn = std::vector<std::pair<int, T>>;

std::size_t rank_sparse_q(const SparseMatrix& m) {
  std::vector<SparseColumn<Rational>> pivot_of(m.rows());
  std::vector<bool> has_pivot(m.rows(), false);
  std::size_t r = 0;
  SparseColumn<Rational> work, next;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    work.clear();
    for (const auto& e : m.column(c)) work.emplace_back(e.row, e.value);
    while (!work.empty() && has_pivot[work.back().first]) {
      const auto& piv = pivot_of[work.back().first];  // low entry normalized to 1
      const Rational f = work.back().second;
      next.clear();
      std::size_t i = 0, j = 0;
      while (i < work.size() || j < piv.size()) {
        if (j == piv.size() || (i < work.size() && work[i].first < piv[j].first)) {
          next.push_back(std::move(work[i++]));
        } else if (i == work.size() || piv[j].first < work[i].first) {
          next.emplace_back(piv[j].first, -f * piv[j].second);
          ++j;
        } else {
          Rational v = work[i].second - f * piv[j].second;
          if (v != 0) next.emplace_back(work[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      std::swap(work, next);
    }
    if (work.empty()) continue;
    const Rational inv = 1 / work.back().second;
    for (auto& e : work) e.second *= inv;
    const int low = work.back().first;
    pivot_of[low] = work;
    has_pivot[low] = true;
    ++r;
  }
  return r;
}

std::size_t rank_sparse_modp(const SparseMatrix& m, const Field& field) {
  const std::uint64_t p = field.characteristic();
  std::vector<SparseColumn<std::uint64_t>> pivot_of(m.rows());
  std::vector<bool> has_pivot(m.rows(), false);
  std::size_t r = 0;
  SparseColumn<std::uint64_t> work, next;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    work.clear();
    for (const auto& e : m.column(c)) {
      const std::uint64_t v = field.reduce(e.value);
      if (v != 0) work.emplace_back(e.row, v);
    }
    while (!work.empty() && has_pivot[work.back().first]) {
      const auto& piv = pivot_of[work.back().first];
      const std::uint64_t f = p - work.back().second;  // work += f * piv
      next.clear();
      std::size_t i = 0, j = 0;
      while (i < work.size() || j < piv.size()) {
        if (j == piv.size() || (i < work.size() && work[i].first < piv[j].first)) {
          next.push_back(work[i++]);
        } else if (i == work.size() || piv[j].first < work[i].first) {
          next.emplace_back(piv[j].first, f * piv[j].second % p);
          ++j;
        } else {
          const std::uint64_t v = (work[i].second + f * piv[j].second) % p;
          if (v != 0) next.emplace_back(work[i].first, v);
          ++i;
          ++j;
        }
      }
      std::swap(work, next);
    }
    if (work.empty()) continue;
    const std::uint64_t inv = inverse_mod(work.back().second, p);
    for (auto& e : work) e.second = e.second * inv % p;
    const int low = work.back().first;
    pivot_of[low] = work;
    has_pivot[low] = true;
    ++r;
  }
  return r;
}

// Bit-packed columns over F_2; only pivot columns are kept.
std::size_t rank_dense_gf2(const SparseMatrix& m, const simd::Kernels& k) {
  const std::size_t words = (m.rows() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> pivot_of(m.rows());
  std::vector<std::uint64_t> work(words);
  const Field f2 = Field::prime(2);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::fill(work.begin(), work.end(), 0);
    long low = -1;
    for (const auto& e : m.column(c)) {
      if (f2.reduce(e.value) == 0) continue;
      work[e.row / 64] |= std::uint64_t{1} << (e.row % 64);
      low = std::max<long>(low, e.row);
    }
    while (low >= 0 && !pivot_of[low].empty()) {
      k.xor_into(work.data(), pivot_of[low].data(), static_cast<std::size_t>(low) / 64 + 1);
      // Only rows below the old low can remain.
      long w = low / 64;
      low = -1;
      for (; w >= 0; --w) {
        if (work[w] != 0) {
          low = w * 64 + 63 - __builtin_clzll(work[w]);
          break;
        }
      }
    }
    if (low < 0) continue;
    pivot_of[low].assign(work.begin(), work.begin() + low / 64 + 1);
    ++r;
  }
  return r;
}

// Columns of residues stored as doubles and updated with axpy_mod.
std::size_t rank_dense_modp(const SparseMatrix& m, const Field& field, const simd::Kernels& k) {
  const std::uint64_t p = field.characteristic();
  const double pd = static_cast<double>(p);
  std::vector<std::vector<double>> pivot_of(m.rows());
  std::vector<double> work(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::fill(work.begin(), work.end(), 0.0);
    long low = -1;
    for (const auto& e : m.column(c)) {
      const std::uint64_t v = field.reduce(e.value);
      if (v == 0) continue;
      work[e.row] = static_cast<double>(v);
      low = std::max<long>(low, e.row);
    }
    while (low >= 0 && !pivot_of[low].empty()) {
      const double factor = pd - work[low];
      k.axpy_mod(work.data(), pivot_of[low].data(), factor, pd, static_cast<std::size_t>(low) + 1);
      while (low >= 0 && work[low] == 0.0) --low;
    }
    if (low < 0) continue;
    const std::uint64_t inv = inverse_mod(static_cast<std::uint64_t>(work[low]), p);
    auto& piv = pivot_of[low];
    piv.assign(work.begin(), work.begin() + low + 1);
    for (double& x : piv) x = static_cast<double>(static_cast<std::uint64_t>(x) * inv % p);
    ++r;
  }
  return r;
}

// Memory guard for the dense variants, in bytes of pivot storage.
constexpr double kDenseBudget = 256.0 * 1024 * 1024;
// Below this fill ratio sparse reduction wins (boundary matrices sit near 1e-3).
constexpr double kDenseFill = 0.05;

double dense_bytes(const SparseMatrix& m, const Field& field) {
  const double rows = static_cast<double>(m.rows());
  const double pivots = static_cast<double>(std::min(m.rows(), m.cols()));
  return field.characteristic() == 2 ? rows * pivots / 8 : rows * pivots * 8;
}

}  // namespace

std::size_t rank(const SparseMatrix& m, const Field& field, RankMethod method) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (method == RankMethod::kAuto) {
    const double fill = static_cast<double>(m.nonzeros()) /
                        (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
    const bool dense = !field.is_rational() && fill >= kDenseFill &&
                       dense_bytes(m, field) <= kDenseBudget;
    method = dense ? RankMethod::kDense : RankMethod::kSparse;
  }
  if (method == RankMethod::kDense) {
    if (field.is_rational())
      throw Error(ErrorKind::kBadField, "dense rank is only available over prime fields");
    const simd::Kernels& k = simd::active_kernels();
    return field.characteristic() == 2 ? rank_dense_gf2(m, k) : rank_dense_modp(m, field, k);
  }
  return field.is_rational() ? rank_sparse_q(m) : rank_sparse_modp(m, field);
}

}  // namespace arbor
