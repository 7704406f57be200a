#include "findim/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "findim/error.hpp"

namespace findim {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Scalar pow_mod(Scalar a, std::uint64_t e, Scalar p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

Scalar inv_mod(Scalar a, Scalar p) {
  if (a % p == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_p");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce_mod(t, p);
}

Scalar reduce_mod(std::int64_t v, Scalar p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Scalar>(r);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Scalar prime)
    : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, Scalar prime) {
  Matrix m(n, n, prime);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column_vector(std::span<const Scalar> values, Scalar prime) {
  Matrix m(values.size(), 1, prime);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i] % prime;
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  assert(cols_ == rhs.rows_);
  Matrix out(rows_, rhs.cols_, prime_);
  if (out.empty() || cols_ == 0) return out;
  std::vector<std::uint64_t> acc(rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = (*this)(i, k);
      if (a == 0) continue;
      const Scalar* b = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        acc[j] = (acc[j] + a * b[j]) % prime_;
      }
    }
    for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) = static_cast<Scalar>(acc[j]);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
  Matrix out(rows_, cols_, prime_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = add_mod(data_[i], rhs.data_[i], prime_);
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
  Matrix out(rows_, cols_, prime_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], rhs.data_[i], prime_);
  return out;
}

Matrix Matrix::scaled(Scalar s) const {
  Matrix out(rows_, cols_, prime_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = mul_mod(data_[i], s, prime_);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, prime_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  assert(r0 + nr <= rows_ && c0 + nc <= cols_);
  Matrix out(nr, nc, prime_);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  assert(r0 + m.rows_ <= rows_ && c0 + m.cols_ <= cols_);
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(rows_, cols.size(), prime_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_, prime_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  return out;
}

std::vector<Scalar> Matrix::column(std::size_t c) const {
  std::vector<Scalar> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

Matrix Matrix::hstack(std::span<const Matrix> parts, std::size_t rows, Scalar prime) {
  std::size_t cols = 0;
  for (const auto& m : parts) {
    assert(m.rows() == rows);
    cols += m.cols();
  }
  Matrix out(rows, cols, prime);
  std::size_t c = 0;
  for (const auto& m : parts) {
    out.set_block(0, c, m);
    c += m.cols();
  }
  return out;
}

Matrix Matrix::vstack(std::span<const Matrix> parts, std::size_t cols, Scalar prime) {
  std::size_t rows = 0;
  for (const auto& m : parts) {
    assert(m.cols() == cols);
    rows += m.rows();
  }
  Matrix out(rows, cols, prime);
  std::size_t r = 0;
  for (const auto& m : parts) {
    out.set_block(r, 0, m);
    r += m.rows();
  }
  return out;
}

Echelon rref(Matrix m) {
  const Scalar p = m.prime();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r) {
      auto a = m.row(sel);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Scalar inv = inv_mod(m(r, c), p);
    auto pivot_row = m.row(r);
    for (std::size_t j = c; j < cols; ++j) pivot_row[j] = mul_mod(pivot_row[j], inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Scalar f = m(i, c);
      if (f == 0) continue;
      auto target = m.row(i);
      for (std::size_t j = c; j < cols; ++j) {
        if (pivot_row[j] != 0) target[j] = sub_mod(target[j], mul_mod(f, pivot_row[j], p), p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.block(0, 0, r, cols), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Nullspace nullspace(const Matrix& m) {
  const Scalar p = m.prime();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Nullspace out;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.free_columns.push_back(c);
  out.basis = Matrix(m.cols(), out.free_columns.size(), p);
  for (std::size_t k = 0; k < out.free_columns.size(); ++k) {
    const std::size_t f = out.free_columns[k];
    out.basis(f, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      out.basis(e.pivots[r], k) = neg_mod(e.reduced(r, f), p);
    }
  }
  return out;
}

Matrix column_basis(const Matrix& m) {
  Echelon e = rref(m);
  return m.select_columns(e.pivots);
}

Matrix complement_columns(const Matrix& basis) {
  const std::size_t n = basis.rows();
  const Scalar p = basis.prime();
  RowSpace span(n, p);
  for (std::size_t c = 0; c < basis.cols(); ++c) span.insert(basis.column(c));
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < n && span.dimension() < n; ++k) {
    std::vector<Scalar> e(n, 0);
    e[k] = 1;
    if (span.insert(std::move(e))) chosen.push_back(k);
  }
  Matrix out(n, chosen.size(), p);
  for (std::size_t j = 0; j < chosen.size(); ++j) out(chosen[j], j) = 1;
  return out;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows());
  const Scalar p = a.prime();
  const std::size_t n = a.cols();
  std::vector<Matrix> parts{a, b};
  Echelon e = rref(Matrix::hstack(parts, a.rows(), p));
  Matrix x(n, b.cols(), p);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t c = e.pivots[r];
    if (c >= n) return std::nullopt;  // inconsistent
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.reduced(r, n + j);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.rows(), m.prime()));
}

bool RowSpace::reduce(std::vector<Scalar>& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar f = v[pivots_[i]];
    if (f == 0) continue;
    const auto& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < width_; ++j) {
      if (row[j] != 0) v[j] = sub_mod(v[j], mul_mod(f, row[j], prime_), prime_);
    }
  }
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

bool RowSpace::insert(std::vector<Scalar> v) {
  assert(v.size() == width_);
  if (reduce(v)) return false;
  std::size_t lead = 0;
  while (v[lead] == 0) ++lead;
  const Scalar inv = inv_mod(v[lead], prime_);
  for (std::size_t j = lead; j < width_; ++j) v[j] = mul_mod(v[j], inv, prime_);
  for (auto& row : rows_) {
    const Scalar f = row[lead];
    if (f == 0) continue;
    for (std::size_t j = lead; j < width_; ++j) {
      if (v[j] != 0) row[j] = sub_mod(row[j], mul_mod(f, v[j], prime_), prime_);
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
  const auto idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, lead);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

bool RowSpace::is_pivot(std::size_t col) const {
  return std::binary_search(pivots_.begin(), pivots_.end(), col);
}

}  // namespace findim
