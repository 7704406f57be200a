#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "findim/error.hpp"
#include "support.hpp"

using namespace findim;

namespace {

// Paths of a monomial algebra: walk every path, stop at one that contains a
// relation as a contiguous subpath. Relations are given in application order.
std::size_t monomial_dimension(const Quiver& q, const std::vector<std::vector<int>>& zero_paths, int max_len = 40) {
  auto contains_relation = [&](const std::vector<int>& path) {
    for (const auto& r : zero_paths) {
      if (r.size() > path.size()) continue;
      // Only suffixes need checking: every prefix was checked before.
      if (std::equal(r.begin(), r.end(), path.end() - static_cast<std::ptrdiff_t>(r.size()))) return true;
    }
    return false;
  };
  std::size_t count = 0;
  std::vector<int> path;
  std::function<void(int)> walk = [&](int at) {
    ++count;
    if (static_cast<int>(path.size()) >= max_len) throw std::runtime_error("oracle: not finite");
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      if (q.arrow(a).source != at) continue;
      path.push_back(static_cast<int>(a));
      if (!contains_relation(path)) walk(q.arrow(a).target);
      path.pop_back();
    }
  };
  for (int v = 1; v <= q.vertex_count(); ++v) walk(v);
  return count;
}

std::vector<std::vector<int>> monomial_relations(const PathAlgebra& a) {
  std::vector<std::vector<int>> out;
  for (const auto& r : a.relations()) {
    REQUIRE(r.terms.size() == 1);
    out.push_back(r.terms.front().path.arrows);
  }
  return out;
}

void check_associative(const PathAlgebra& a) {
  const std::size_t n = a.dimension();
  const Scalar p = a.prime();
  auto mult = [&](const SparseVector& x, std::size_t b) {
    std::vector<Scalar> out(n, 0);
    for (auto [i, c] : x)
      for (auto [k, d] : a.product(i, b)) out[k] = add_mod(out[k], mul_mod(c, d, p), p);
    return out;
  };
  auto lmult = [&](std::size_t a0, const SparseVector& x) {
    std::vector<Scalar> out(n, 0);
    for (auto [i, c] : x)
      for (auto [k, d] : a.product(a0, i)) out[k] = add_mod(out[k], mul_mod(c, d, p), p);
    return out;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) CHECK(mult(a.product(x, y), z) == lmult(x, a.product(y, z)));
}

}  // namespace

TEST_CASE("ex53 basis matches monomial enumeration") {
  auto a = test::corpus("ex53");
  CHECK(a->dimension() == monomial_dimension(a->quiver(), monomial_relations(*a)));
  CHECK(a->dimension() == 10);
  CHECK(a->nilpotency_degree() == 3);
  check_associative(*a);
}

TEST_CASE("ex23 basis matches monomial enumeration") {
  auto a = test::corpus("ex23");
  CHECK(a->dimension() == monomial_dimension(a->quiver(), monomial_relations(*a)));
  CHECK(a->vertex_count() == 2);
  check_associative(*a);
}

TEST_CASE("random monomial algebras") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    std::string text = "field 101\nvertices";
    for (int v = 1; v <= n; ++v) text += " " + std::to_string(v);
    text += "\n";
    std::vector<std::tuple<std::string, int, int>> arrows;
    const int arrow_count = 2 + static_cast<int>(rng() % 3);
    for (int k = 0; k < arrow_count; ++k) {
      const int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
      const int t = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
      arrows.emplace_back("y" + std::to_string(k), s, t);
      text += "arrow y" + std::to_string(k) + " " + std::to_string(s) + " " + std::to_string(t) + "\n";
    }
    // Kill every composable pair except a random few; this keeps things finite.
    for (const auto& [n1, s1, t1] : arrows) {
      for (const auto& [n2, s2, t2] : arrows) {
        if (t1 != s2) continue;
        if (rng() % 3 == 0 && s1 != t2) continue;
        text += "rel " + n2 + "*" + n1 + "\n";
      }
    }
    AlgebraPtr a;
    try {
      a = test::from_text(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotFiniteDimensional);
      continue;
    }
    std::size_t oracle = 0;
    try {
      oracle = monomial_dimension(a->quiver(), monomial_relations(*a));
    } catch (const std::runtime_error&) {
      continue;
    }
    CHECK(a->dimension() == oracle);
    check_associative(*a);
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("ex54 with its binomial relation") {
  auto a = test::corpus("ex54");
  const Quiver& q = a->quiver();
  auto path = [&](std::vector<std::string> names) {
    Path p;
    p.source = q.arrow(static_cast<std::size_t>(q.find_arrow(names.back()))).source;
    for (auto it = names.rbegin(); it != names.rend(); ++it) p.arrows.push_back(q.find_arrow(*it));
    return p;
  };
  // Normal words: rewrite g*b*a -> g*a. Overlaps with the length-4 zeros give
  // l*g*a = d*g*a = 0 and g*a*l = g*a*d = 0; g*b*a itself is never normal.
  std::vector<std::vector<int>> zeros;
  for (const auto& r : a->relations())
    if (r.terms.size() == 1) zeros.push_back(r.terms.front().path.arrows);
  for (auto names : std::vector<std::vector<std::string>>{
           {"g", "b", "a"}, {"l", "g", "a"}, {"d", "g", "a"}, {"g", "a", "l"}, {"g", "a", "d"}}) {
    zeros.push_back(path(names).arrows);
  }
  CHECK(a->dimension() == monomial_dimension(q, zeros));
  CHECK(a->dimension() == 26);
  CHECK(a->nilpotency_degree() == 5);
  check_associative(*a);
  CHECK(a->reduce_path(path({"g", "a"})) == a->reduce_path(path({"g", "b", "a"})));
  CHECK_FALSE(a->reduce_path(path({"b", "b", "b", "a"})).empty());
  CHECK(a->reduce_path(path({"l", "g", "a"})).empty());
  CHECK(a->reduce_path(path({"g", "a", "d"})).empty());
  CHECK(a->reduce_path(path({"b", "b", "b", "b"})).empty());
}

TEST_CASE("paths_from and trivial paths") {
  auto a = test::corpus("ex53");
  std::size_t total = 0;
  for (int v = 1; v <= 3; ++v) {
    total += a->paths_from(v).size();
    const auto& tp = a->basis()[a->trivial_path(v)];
    CHECK(tp.length == 0);
    CHECK(tp.source == v);
    CHECK(path_name(a->quiver(), tp.path) == "e" + std::to_string(v));
  }
  CHECK(total == a->dimension());
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(test::linear(2, {}, 4), Error);
  try {
    test::linear(2, {}, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  try {
    test::from_text("field 7\nvertices 1\narrow x 1 1\n");
    FAIL("loop without relations must not be finite dimensional");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFiniteDimensional);
  }
}

TEST_CASE("A3 with a zero relation") {
  auto a = test::linear(3, {"x2*x1"});
  CHECK(a->dimension() == 5);
  CHECK(a->nilpotency_degree() == 2);
}
