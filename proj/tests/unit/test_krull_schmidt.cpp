#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "findim/error.hpp"
#include "findim/krull_schmidt.hpp"
#include "support.hpp"

using namespace findim;

namespace {

Matrix random_invertible(std::mt19937_64& rng, std::size_t n, Scalar p) {
  while (true) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<Scalar>(rng() % p);
    if (inverse(m)) return m;
  }
}

Module scramble(const Module& m, std::mt19937_64& rng) {
  std::vector<Matrix> changes;
  for (int v = 1; v <= m.vertex_count(); ++v) changes.push_back(random_invertible(rng, static_cast<std::size_t>(m.dim(v)), m.prime()));
  return change_basis(m, changes);
}

}  // namespace

TEST_CASE("polynomial roots match brute force") {
  std::mt19937_64 rng(5);
  for (Scalar p : {5u, 7u, 101u, 1031u}) {
    for (int trial = 0; trial < 20; ++trial) {
      poly::Poly f(1 + rng() % 6);
      for (auto& c : f) c = static_cast<Scalar>(rng() % p);
      f.push_back(1);
      std::vector<Scalar> expected;
      if (p < 2000) {
        for (Scalar x = 0; x < p; ++x) {
          Scalar v = 0;
          for (auto it = f.rbegin(); it != f.rend(); ++it) v = add_mod(mul_mod(v, x, p), *it, p);
          if (v == 0) expected.push_back(x);
        }
      }
      CHECK(poly::roots(f, p) == expected);
    }
  }
  // Large prime path: (x - 3)(x - 10)(x^2 + 1) over 32003, where -1 is not a square.
  const Scalar p = 32003;
  poly::Poly f{1};
  for (poly::Poly g : {poly::Poly{p - 3, 1}, poly::Poly{p - 10, 1}, poly::Poly{1, 0, 1}}) {
    poly::Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = add_mod(h[i + j], mul_mod(f[i], g[j], p), p);
    f = h;
  }
  CHECK(poly::roots(f, p) == std::vector<Scalar>{3, 10});
}

TEST_CASE("endomorphism algebras") {
  auto a = test::corpus("ex53");
  for (int v = 1; v <= 3; ++v) {
    EndAlgebraData e = end_algebra(simple(a, v));
    CHECK(e.dim == 1);
    CHECK(e.semisimple_dim == 1);
  }
  EndAlgebraData e = end_algebra(power(simple(a, 1), 2));
  CHECK(e.dim == 4);
  CHECK(e.semisimple_dim == 4);
  CHECK_FALSE(e.commutative);
  CHECK(end_algebra(projective(a, 2)).dim == 1);
}

TEST_CASE("indecomposability") {
  auto a = test::corpus("ex53");
  for (int v = 1; v <= 3; ++v) {
    CHECK(is_indecomposable(simple(a, v)));
    CHECK(is_indecomposable(projective(a, v)));
  }
  CHECK_FALSE(is_indecomposable(direct_sum({simple(a, 1), simple(a, 1)}, a)));
  CHECK_FALSE(is_indecomposable(syzygy(simple(a, 1))));
  CHECK_FALSE(is_indecomposable(regular(a)));
}

TEST_CASE("ex54 family M_t") {
  auto a = test::corpus("ex54");
  for (Scalar t : {0u, 1u, 2u, 3u, 5u}) {
    Module m = corpus_mt(a, t);
    CHECK(m.satisfies_relations());
    Indecomposability ind = indecomposability(m);
    CHECK(ind.indecomposable);
    CHECK_FALSE(ind.non_split);
  }
  CHECK_FALSE(is_isomorphic(corpus_mt(a, 1), corpus_mt(a, 2)));
  std::mt19937_64 rng(9);
  CHECK(is_isomorphic(corpus_mt(a, 4), scramble(corpus_mt(a, 4), rng)));
}

TEST_CASE("decompose recovers a scrambled direct sum") {
  std::mt19937_64 rng(17);
  auto a = test::corpus("ex53");
  std::vector<Module> pieces{simple(a, 1), simple(a, 2), simple(a, 3), projective(a, 1), projective(a, 3),
                             syzygy(simple(a, 2))};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Module> parts;
    std::map<int, int> chosen;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < count; ++k) {
      const int idx = static_cast<int>(rng() % pieces.size());
      parts.push_back(pieces[static_cast<std::size_t>(idx)]);
      ++chosen[idx];
    }
    Module m = scramble(direct_sum(parts, a), rng);
    ClassRegistry reg(a);
    std::map<std::size_t, int> expected;
    std::map<int, int> expected_proj;
    for (auto [idx, k] : chosen) {
      const auto& piece = pieces[static_cast<std::size_t>(idx)];
      const auto id = reg.register_module(piece);
      if (reg.info(id).projective) {
        expected_proj[reg.info(id).vertex] += k;
      } else {
        expected[id] += k;
      }
    }
    DecompositionResult d = reg.decompose(m);
    std::map<std::size_t, int> got;
    for (const auto& s : d.summands) got[s.class_id] += s.multiplicity;
    std::map<int, int> got_proj(d.projective_part.begin(), d.projective_part.end());
    CHECK(got == expected);
    CHECK(got_proj == expected_proj);
    CHECK(d.round_trip.is_isomorphism());
    CHECK(d.round_trip.target.dims() == m.dims());
  }
}

TEST_CASE("registry labels and omega") {
  auto a = test::corpus("ex53");
  ClassRegistry reg(a);
  const auto s2 = reg.register_module(simple(a, 2));
  CHECK(reg.info(s2).witness.label() == "S(2)");
  auto om = reg.omega(s2);
  REQUIRE(om.size() == 1);
  CHECK(reg.info(om.front().first).witness.label() == "3/1");
  CHECK(om.front().second == 1);
  const auto p1 = reg.register_module(projective(a, 1));
  CHECK(reg.info(p1).projective);
  CHECK(reg.info(p1).vertex == 1);
  CHECK(reg.info(p1).witness.label() == "P(1)");
  CHECK(reg.register_module(simple(a, 2)) == s2);
  CHECK_THROWS_AS(reg.register_module(regular(a)), Error);
}

TEST_CASE("field too small") {
  auto a = build_algebra(corpus_algebra("ex53"), 2);
  try {
    end_algebra(power(simple(a, 1), 2));
    FAIL("expected FieldTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldTooSmall);
  }
}
