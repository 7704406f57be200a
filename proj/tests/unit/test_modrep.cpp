#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "findim/error.hpp"
#include "findim/modrep.hpp"
#include "support.hpp"

using namespace findim;

namespace {

// Counts homomorphisms M -> N by enumerating every tuple of matrices over F_p.
std::size_t brute_force_hom_count(const Module& m, const Module& n) {
  const Scalar p = m.prime();
  const int nv = m.vertex_count();
  std::vector<std::size_t> offsets;
  std::size_t entries = 0;
  for (int v = 1; v <= nv; ++v) {
    offsets.push_back(entries);
    entries += static_cast<std::size_t>(m.dim(v) * n.dim(v));
  }
  REQUIRE(entries <= 12);
  std::vector<Scalar> x(entries, 0);
  std::size_t count = 0;
  while (true) {
    std::vector<Matrix> maps;
    for (int v = 1; v <= nv; ++v) {
      Matrix f(static_cast<std::size_t>(n.dim(v)), static_cast<std::size_t>(m.dim(v)), p);
      for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = 0; c < f.cols(); ++c) f(r, c) = x[offsets[static_cast<std::size_t>(v - 1)] + r * f.cols() + c];
      maps.push_back(f);
    }
    bool ok = true;
    const auto& arrows = m.algebra().quiver().arrows();
    for (std::size_t a = 0; a < arrows.size() && ok; ++a) {
      const auto s = static_cast<std::size_t>(arrows[a].source - 1), t = static_cast<std::size_t>(arrows[a].target - 1);
      ok = maps[t] * m.arrow(a) == n.arrow(a) * maps[s];
    }
    count += ok;
    std::size_t k = 0;
    while (k < entries && ++x[k] == p) x[k++] = 0;
    if (k == entries) break;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("Hom dimension agrees with brute force over F_2 and F_3") {
  for (unsigned p : {2u, 3u}) {
    auto a = build_algebra(corpus_algebra("ex53"), p);
    std::vector<Module> mods;
    for (int v = 1; v <= 3; ++v) {
      mods.push_back(simple(a, v));
      mods.push_back(projective(a, v));
    }
    mods.push_back(syzygy(simple(a, 1)));
    mods.push_back(syzygy(simple(a, 2)));
    int compared = 0;
    for (const auto& m : mods) {
      for (const auto& n : mods) {
        std::size_t entries = 0;
        for (int v = 1; v <= 3; ++v) entries += static_cast<std::size_t>(m.dim(v) * n.dim(v));
        if (ipow(p, entries) > 5000) continue;
        const std::size_t d = hom_dim(m, n);
        CHECK(ipow(p, d) == brute_force_hom_count(m, n));
        ++compared;
      }
    }
    CHECK(compared >= 30);
  }
}

TEST_CASE("Hom basis elements are homomorphisms; coordinates are free entries") {
  auto a = test::corpus("ex53");
  Module p1 = projective(a, 1), p3 = projective(a, 3);
  HomSpace h = hom_space(p3, p1);
  REQUIRE_FALSE(h.basis.empty());
  for (std::size_t k = 0; k < h.basis.size(); ++k) {
    CHECK(h.basis[k].is_homomorphism());
    auto flat = flatten(h.basis[k]);
    for (std::size_t l = 0; l < h.free_positions.size(); ++l) CHECK(flat[h.free_positions[l]] == (k == l ? 1u : 0u));
  }
}

TEST_CASE("Yoneda: dim Hom(P(i), M) = dim M_i") {
  for (const char* name : {"ex23", "ex53", "ex54"}) {
    auto a = test::corpus(name);
    const int n = a->vertex_count();
    std::vector<Module> mods{regular(a), radical_power_quotient(a, 2)};
    for (int v = 1; v <= n; ++v) mods.push_back(simple(a, v));
    for (const auto& m : mods)
      for (int i = 1; i <= n; ++i) CHECK(hom_dim(projective(a, i), m) == static_cast<std::size_t>(m.dim(i)));
  }
}

TEST_CASE("Ext^1 between simples counts arrows") {
  for (const char* name : {"ex23", "ex53", "ex54"}) {
    auto a = test::corpus(name);
    const Quiver& q = a->quiver();
    for (int i = 1; i <= q.vertex_count(); ++i) {
      for (int j = 1; j <= q.vertex_count(); ++j) {
        std::size_t arrows = 0;
        for (const auto& ar : q.arrows()) arrows += ar.source == i && ar.target == j;
        CHECK(ext1_dim(simple(a, i), simple(a, j)) == arrows);
      }
      for (int j = 1; j <= q.vertex_count(); ++j) CHECK(ext1_dim(projective(a, i), simple(a, j)) == 0);
    }
  }
}

TEST_CASE("ex53 canonical modules") {
  auto a = test::corpus("ex53");
  CHECK(projective(a, 1).dims() == std::vector<int>{1, 1, 2});
  CHECK(projective(a, 2).dims() == std::vector<int>{1, 1, 1});
  CHECK(projective(a, 3).dims() == std::vector<int>{1, 0, 2});
  CHECK(regular(a).total_dim() == 10);
  CHECK(radical_power_quotient(a, 1).dims() == std::vector<int>{1, 1, 1});
  CHECK(radical_power_quotient(a, 2).dims() == std::vector<int>{2, 2, 3});
  CHECK(radical_power_quotient(a, 3).dims() == regular(a).dims());
  for (int v = 1; v <= 3; ++v) {
    CHECK(projective(a, v).satisfies_relations());
    CHECK(top(projective(a, v)).dims() == simple(a, v).dims());
    CHECK(syzygy(projective(a, v)).is_zero());
  }
}

TEST_CASE("ex53 syzygies") {
  auto a = test::corpus("ex53");
  CHECK(syzygy(simple(a, 1)).dims() == std::vector<int>{0, 1, 2});
  CHECK(syzygy(simple(a, 1), 2).dims() == std::vector<int>{2, 0, 1});
  CHECK(syzygy(simple(a, 2)).dims() == std::vector<int>{1, 0, 1});
  CHECK(ext1_dim(simple(a, 2), projective(a, 3)) == 1);
  CHECK(ext1_dim(simple(a, 1), projective(a, 3)) == 0);
}

TEST_CASE("projective cover data is consistent") {
  for (const char* name : {"ex23", "ex53", "ex54"}) {
    auto a = test::corpus(name);
    std::vector<Module> mods{radical_power_quotient(a, 2)};
    for (int v = 1; v <= a->vertex_count(); ++v) {
      mods.push_back(simple(a, v));
      mods.push_back(radical(projective(a, v)).module);
    }
    for (const auto& m : mods) {
      CoverData c = projective_cover(m);
      CHECK(c.epi.is_homomorphism());
      CHECK(c.epi.is_surjective());
      CHECK(c.kernel_inclusion.is_injective());
      CHECK(compose(c.epi, c.kernel_inclusion).is_zero());
      CHECK(c.cover.total_dim() == m.total_dim() + c.kernel.total_dim());
      // Minimality: tops agree.
      CHECK(top(c.cover).dims() == top(m).dims());
      CHECK(c.kernel.satisfies_relations());
    }
  }
}

TEST_CASE("submodules, quotients, kernels and images") {
  auto a = test::corpus("ex53");
  Module p1 = projective(a, 1);
  Subobject rad = radical(p1);
  CHECK(rad.inclusion.is_injective());
  Quotient q = quotient(p1, rad.inclusion);
  CHECK(q.module.dims() == std::vector<int>{1, 0, 0});
  CHECK(q.projection.is_surjective());
  Subobject k = kernel(q.projection);
  CHECK(k.module.dims() == rad.module.dims());
  Subobject im = image(rad.inclusion);
  CHECK(im.module.dims() == rad.module.dims());
  CHECK_THROWS_AS(quotient(p1, q.projection), Error);

  ModuleElement gen(3);
  gen[0] = {1};
  gen[1] = {0};
  gen[2] = {0, 0};
  CHECK(submodule_generated(p1, {gen}).module.dims() == p1.dims());
}

TEST_CASE("direct sums") {
  auto a = test::corpus("ex53");
  DirectSum ds = direct_sum_with_maps({simple(a, 1), projective(a, 3)}, a);
  CHECK(ds.sum.dims() == std::vector<int>{2, 0, 2});
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(ds.injections[i].is_injective());
    CHECK(ds.projections[i].is_surjective());
    CHECK(compose(ds.projections[i], ds.injections[i]).is_isomorphism());
    CHECK(compose(ds.projections[1 - i], ds.injections[i]).is_zero());
  }
  CHECK(direct_sum({}, a).is_zero());
  CHECK(power(simple(a, 2), 3).dims() == std::vector<int>{0, 3, 0});
}

TEST_CASE("universal extension") {
  auto a = test::corpus("ex53");
  Extension e = universal_extension(simple(a, 2), projective(a, 3));
  CHECK(e.multiplicity == 1);
  CHECK(e.middle.dims() == std::vector<int>{1, 1, 2});
  CHECK(e.middle.satisfies_relations());
  CHECK(e.inclusion.is_injective());
  CHECK(e.projection.is_surjective());
  CHECK(compose(e.projection, e.inclusion).is_zero());
  CHECK(ext1_dim(e.middle, projective(a, 3)) == 0);

  Extension none = universal_extension(simple(a, 1), projective(a, 3));
  CHECK(none.multiplicity == 0);
  CHECK(none.middle.dims() == simple(a, 1).dims());
}

TEST_CASE("trace quotient") {
  auto a = test::corpus("ex53");
  CHECK(trace_quotient(projective(a, 1), {2, 3}).dims() == std::vector<int>{1, 0, 0});
  CHECK(trace_quotient(projective(a, 3), {}).dims() == projective(a, 3).dims());
}

TEST_CASE("modules over different algebras do not mix") {
  auto a = test::corpus("ex53");
  auto b = test::corpus("ex53");
  CHECK_THROWS_AS(hom_dim(simple(a, 1), simple(b, 1)), Error);
}
