#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "findim/matrix.hpp"

using namespace findim;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, Scalar p, int zero_bias = 0) {
  Matrix m(r, c, p);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = (zero_bias && rng() % zero_bias) ? 0 : static_cast<Scalar>(rng() % p);
  return m;
}

// Size of the row space by enumerating every combination: p^rank.
std::size_t span_size(const Matrix& m) {
  const Scalar p = m.prime();
  std::set<std::vector<Scalar>> seen;
  std::vector<Scalar> coeff(m.rows(), 0);
  while (true) {
    std::vector<Scalar> v(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v[j] = add_mod(v[j], mul_mod(coeff[i], m(i, j), p), p);
    seen.insert(v);
    std::size_t k = 0;
    while (k < coeff.size() && ++coeff[k] == p) coeff[k++] = 0;
    if (k == coeff.size()) break;
  }
  return seen.size();
}

}  // namespace

TEST_CASE("scalar arithmetic") {
  const Scalar p = 32003;
  CHECK(mul_mod(inv_mod(12345, p), 12345, p) == 1);
  CHECK(reduce_mod(-1, p) == p - 1);
  CHECK(reduce_mod(-32004, p) == p - 1);
  CHECK(pow_mod(3, p - 1, p) == 1);
  CHECK(is_prime(32003));
  CHECK_FALSE(is_prime(32001));
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("rank agrees with brute-force span enumeration") {
  std::mt19937_64 rng(7);
  for (Scalar p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      Matrix m = random_matrix(rng, r, c, p, 2);
      std::size_t expected = 1, k = 0;
      const std::size_t size = span_size(m);
      while (expected < size) {
        expected *= p;
        ++k;
      }
      REQUIRE(expected == size);
      CHECK(rank(m) == k);
    }
  }
}

TEST_CASE("elimination identities on random matrices") {
  std::mt19937_64 rng(11);
  const Scalar p = 32003;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix a = random_matrix(rng, r, c, p, trial % 2 ? 3 : 0);
    const std::size_t rk = rank(a);
    CHECK(rk == rank(a.transpose()));

    Nullspace ns = nullspace(a);
    CHECK(ns.basis.cols() == c - rk);
    CHECK((a * ns.basis).is_zero());
    for (std::size_t k = 0; k < ns.free_columns.size(); ++k) {
      for (std::size_t l = 0; l < ns.free_columns.size(); ++l) {
        CHECK(ns.basis(ns.free_columns[l], k) == (k == l ? 1u : 0u));
      }
    }

    Echelon e = rref(a);
    CHECK(e.reduced.rows() == rk);
    CHECK(rref(e.reduced).reduced == e.reduced);

    Matrix cb = column_basis(a);
    CHECK(cb.cols() == rk);
    CHECK(rank(cb) == rk);
    Matrix full = Matrix::hstack(std::vector<Matrix>{cb, complement_columns(cb)}, r, p);
    CHECK(rank(full) == r);

    Matrix x = random_matrix(rng, c, 2, p);
    Matrix b = a * x;
    auto sol = solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(a * *sol == b);
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(3);
  const Scalar p = 101;
  int invertible = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    Matrix a = random_matrix(rng, n, n, p);
    auto inv = inverse(a);
    CHECK(inv.has_value() == (rank(a) == n));
    if (inv) {
      ++invertible;
      CHECK(a * *inv == Matrix::identity(n, p));
      CHECK(*inv * a == Matrix::identity(n, p));
    }
  }
  CHECK(invertible > 0);
  Matrix singular(2, 2, p);
  singular(0, 0) = 1;
  singular(1, 0) = 2;
  CHECK_FALSE(inverse(singular).has_value());
}

TEST_CASE("row space") {
  RowSpace rs(3, 7);
  CHECK(rs.insert({1, 2, 3}));
  CHECK(rs.insert({0, 1, 1}));
  CHECK_FALSE(rs.insert({1, 3, 4}));
  CHECK(rs.dimension() == 2);
  std::vector<Scalar> v{2, 4, 6};
  CHECK(rs.reduce(v));
  std::vector<Scalar> w{0, 0, 1};
  CHECK_FALSE(rs.reduce(w));
  CHECK(rs.is_pivot(0));
  CHECK(rs.is_pivot(1));
  CHECK_FALSE(rs.is_pivot(2));
}

TEST_CASE("empty shapes") {
  Matrix z(0, 3, 7);
  CHECK(rank(z) == 0);
  CHECK(nullspace(z).basis.cols() == 3);
  Matrix w(3, 0, 7);
  CHECK(rank(w) == 0);
  CHECK(nullspace(w).basis.cols() == 0);
}
