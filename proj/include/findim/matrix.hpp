#pragma once

// Dense matrices over a prime field F_p and the handful of exact
// elimination routines everything else is built on.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace findim {

using Scalar = std::uint32_t;

/// Largest prime accepted; products of two reduced scalars fit in 64 bits.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;
inline constexpr Scalar kDefaultPrime = 32003;

bool is_prime(std::uint64_t n);

inline Scalar add_mod(Scalar a, Scalar b, Scalar p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Scalar>(s >= p ? s - p : s);
}
inline Scalar sub_mod(Scalar a, Scalar b, Scalar p) {
  return a >= b ? a - b : static_cast<Scalar>(std::uint64_t{a} + p - b);
}
inline Scalar mul_mod(Scalar a, Scalar b, Scalar p) {
  return static_cast<Scalar>(std::uint64_t{a} * b % p);
}
inline Scalar neg_mod(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }
Scalar pow_mod(Scalar a, std::uint64_t e, Scalar p);
Scalar inv_mod(Scalar a, Scalar p);
/// Reduces a signed integer into [0, p).
Scalar reduce_mod(std::int64_t v, Scalar p);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Scalar prime);

  static Matrix identity(std::size_t n, Scalar prime);
  static Matrix column_vector(std::span<const Scalar> values, Scalar prime);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar prime() const { return prime_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Scalar>& data() const { return data_; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(Scalar s) const;
  Matrix transpose() const;

  bool is_zero() const;
  bool operator==(const Matrix& rhs) const = default;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  std::vector<Scalar> column(std::size_t c) const;

  static Matrix hstack(std::span<const Matrix> parts, std::size_t rows, Scalar prime);
  static Matrix vstack(std::span<const Matrix> parts, std::size_t cols, Scalar prime);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Scalar prime_ = kDefaultPrime;
  std::vector<Scalar> data_;
};

struct Echelon {
  Matrix reduced;                   // reduced row echelon form, zero rows trimmed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0} as columns; the basis vector for free column f is 1 at f
/// and 0 at every other free column, so coordinates of a kernel element are its
/// entries at the free columns.
struct Nullspace {
  Matrix basis;
  std::vector<std::size_t> free_columns;
};
Nullspace nullspace(const Matrix& m);

/// Linearly independent columns of m spanning its column space (leftmost choice).
Matrix column_basis(const Matrix& m);
/// Standard basis vectors e_k (greedy, increasing k) completing the columns of
/// `basis` (assumed independent) to a basis of the ambient space.
Matrix complement_columns(const Matrix& basis);
/// Solution X of a X = b, if one exists.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);

/// Incrementally maintained row space in reduced echelon form. Rows are
/// reduced on insertion, so membership and reduction are single passes.
class RowSpace {
 public:
  RowSpace(std::size_t width, Scalar prime) : width_(width), prime_(prime) {}

  std::size_t width() const { return width_; }
  std::size_t dimension() const { return rows_.size(); }
  /// Reduces v in place against the stored rows; returns true if v became zero.
  bool reduce(std::vector<Scalar>& v) const;
  /// Adds v if it is not already in the span; returns true when added.
  bool insert(std::vector<Scalar> v);
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const;

 private:
  std::size_t width_;
  Scalar prime_;
  std::vector<std::vector<Scalar>> rows_;  // sorted by pivot
  std::vector<std::size_t> pivots_;
};

}  // namespace findim
