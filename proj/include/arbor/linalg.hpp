#pragma once

// Exact linear algebra: rationals (GMP), prime fields, dense and sparse rank.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

using Rational = mpq_class;

// Accepts "3", "-3", "3/2"; throws Error(kParse).
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

// Coefficient field: the rationals or a prime field F_p with p below
// simd::kMaxDoubleModulus.
class Field {
 public:
  static Field rationals() { return Field(0); }
  // Throws BadField when p is not a supported prime.
  static Field prime(std::uint64_t p);
  // "q" or "fp:P"; throws BadField.
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;
  // Image of q in F_p; throws BadField when p divides the denominator.
  std::uint64_t reduce(const Rational& q) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);

// Dense matrix over the rationals, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(const Matrix& m);
std::size_t rank(const Matrix& m, const Field& field);
// Columns form a basis of the right kernel.
Matrix nullspace(const Matrix& m);
// Some x with a x = b, or nullopt.
std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b);

// Column-major sparse matrix assembled from (row, col, value) triplets;
// duplicate positions are summed.
class SparseMatrix {
 public:
  struct Entry {
    int row;
    Rational value;
  };

  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  void add(std::size_t row, std::size_t col, const Rational& value);
  // Sorted by row, no zeros.
  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }
  std::size_t nonzeros() const;
  Matrix to_dense() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Entry>> columns_;
};

enum class RankMethod {
  kAuto,
  // Dense columns updated by the SIMD kernels; prime fields only.
  kDense,
  kSparse,
};

std::size_t rank(const SparseMatrix& m, const Field& field, RankMethod method = RankMethod::kAuto);

}  // namespace arbor
