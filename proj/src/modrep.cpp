#include "findim/modrep.hpp"

#include <deque>

#include "findim/error.hpp"

namespace findim {

namespace {

std::size_t as_size(int v) { return static_cast<std::size_t>(v); }

void require_same_algebra(const Module& m, const Module& n) {
  if (!m.same_algebra(n)) throw Error(ErrorCode::AlgebraMismatch, "modules over different algebras");
}

std::size_t arrow_basis_index(const PathAlgebra& alg, std::size_t a) {
  const Arrow& arr = alg.quiver().arrow(a);
  SparseVector nf = alg.reduce_path(Path{arr.source, {static_cast<int>(a)}});
  if (nf.size() != 1) throw Error(ErrorCode::BadRelation, "arrow " + arr.name + " lies in the ideal");
  return nf.front().first;
}

Matrix zero_matrix(int rows, int cols, Scalar p) { return Matrix(as_size(rows), as_size(cols), p); }

// Layout of the unknowns of a Hom system: f_v is dims_N(v) x dims_M(v), row-major.
struct HomLayout {
  std::vector<std::size_t> offset;
  std::size_t total = 0;

  HomLayout(const Module& m, const Module& n) {
    for (int v = 1; v <= m.vertex_count(); ++v) {
      offset.push_back(total);
      total += as_size(n.dim(v)) * as_size(m.dim(v));
    }
  }
};

ModuleMorphism unflatten(const Module& m, const Module& n, const HomLayout& layout,
                         const Matrix& basis, std::size_t col) {
  ModuleMorphism f{m, n, {}};
  for (int v = 1; v <= m.vertex_count(); ++v) {
    Matrix block = zero_matrix(n.dim(v), m.dim(v), m.prime());
    std::size_t k = layout.offset[as_size(v - 1)];
    for (int r = 0; r < n.dim(v); ++r)
      for (int c = 0; c < m.dim(v); ++c) block(as_size(r), as_size(c)) = basis(k++, col);
    f.maps.push_back(std::move(block));
  }
  return f;
}

}  // namespace

// ---- canonical modules ----------------------------------------------------

Module projective(const AlgebraPtr& algebra, int vertex) {
  const PathAlgebra& alg = *algebra;
  if (vertex < 1 || vertex > alg.vertex_count()) {
    throw Error(ErrorCode::IndexError, "vertex " + std::to_string(vertex) + " out of range");
  }
  const Scalar p = alg.prime();
  const auto n = as_size(alg.vertex_count());
  std::vector<int> dims(n, 0);
  // position of each basis path inside its target's block
  std::vector<std::size_t> position(alg.dimension(), SIZE_MAX);
  std::vector<bool> member(alg.dimension(), false);
  for (std::size_t b : alg.paths_from(vertex)) {
    const auto t = as_size(alg.basis()[b].target - 1);
    position[b] = as_size(dims[t]++);
    member[b] = true;
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& arr = alg.quiver().arrow(a);
    Matrix m = zero_matrix(dims[as_size(arr.target - 1)], dims[as_size(arr.source - 1)], p);
    const std::size_t ab = arrow_basis_index(alg, a);
    for (std::size_t b : alg.paths_from(vertex)) {
      if (alg.basis()[b].target != arr.source) continue;
      for (const auto& [idx, coef] : alg.product(ab, b)) {
        if (member[idx]) m(position[idx], position[b]) = coef;
      }
    }
    maps.push_back(std::move(m));
  }
  return Module(algebra, std::move(dims), std::move(maps), "P(" + std::to_string(vertex) + ")");
}

Module simple(const AlgebraPtr& algebra, int vertex) {
  if (vertex < 1 || vertex > algebra->vertex_count()) {
    throw Error(ErrorCode::IndexError, "vertex " + std::to_string(vertex) + " out of range");
  }
  std::vector<int> dims(as_size(algebra->vertex_count()), 0);
  dims[as_size(vertex - 1)] = 1;
  std::vector<Matrix> maps;
  for (const auto& arr : algebra->quiver().arrows()) {
    maps.push_back(zero_matrix(dims[as_size(arr.target - 1)], dims[as_size(arr.source - 1)],
                               algebra->prime()));
  }
  return Module(algebra, std::move(dims), std::move(maps), "S(" + std::to_string(vertex) + ")");
}

Module regular(const AlgebraPtr& algebra) {
  std::vector<Module> parts;
  for (int v = 1; v <= algebra->vertex_count(); ++v) parts.push_back(projective(algebra, v));
  return direct_sum(parts, algebra).with_label("R");
}

Module radical_power_quotient(const AlgebraPtr& algebra, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "radical power must be at least 1");
  const PathAlgebra& alg = *algebra;
  std::vector<Module> parts;
  for (int v = 1; v <= alg.vertex_count(); ++v) {
    Module proj = projective(algebra, v);
    // basis paths of length >= k span rad^k P(v)
    std::vector<Matrix> spans;
    std::vector<std::vector<std::size_t>> chosen(as_size(alg.vertex_count()));
    std::vector<int> seen(as_size(alg.vertex_count()), 0);
    for (std::size_t b : alg.paths_from(v)) {
      const auto t = as_size(alg.basis()[b].target - 1);
      const auto pos = as_size(seen[t]++);
      if (alg.basis()[b].length >= as_size(k)) chosen[t].push_back(pos);
    }
    for (int w = 1; w <= alg.vertex_count(); ++w) {
      const auto& cols = chosen[as_size(w - 1)];
      Matrix s = zero_matrix(proj.dim(w), static_cast<int>(cols.size()), alg.prime());
      for (std::size_t j = 0; j < cols.size(); ++j) s(cols[j], j) = 1;
      spans.push_back(std::move(s));
    }
    Subobject rad_k = subspace_submodule(proj, spans);
    parts.push_back(quotient(proj, rad_k.inclusion).module);
  }
  return direct_sum(parts, algebra).with_label("radq(" + std::to_string(k) + ")");
}

// ---- subobjects -----------------------------------------------------------

Subobject subspace_submodule(const Module& m, const std::vector<Matrix>& spans) {
  const PathAlgebra& alg = m.algebra();
  const Scalar p = m.prime();
  std::vector<Matrix> bases;
  std::vector<int> dims;
  for (const auto& s : spans) {
    bases.push_back(column_basis(s));
    dims.push_back(static_cast<int>(bases.back().cols()));
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& arr = alg.quiver().arrow(a);
    const Matrix& bs = bases[as_size(arr.source - 1)];
    const Matrix& bt = bases[as_size(arr.target - 1)];
    auto induced = solve(bt, m.arrow(a) * bs);
    if (!induced) throw Error(ErrorCode::InvalidArgument, "subspace is not closed under " + arr.name);
    maps.push_back(std::move(*induced));
  }
  Module sub(m.algebra_ptr(), std::move(dims), std::move(maps));
  ModuleMorphism inc{sub, m, bases};
  (void)p;
  return {sub, inc};
}

Subobject submodule_generated(const Module& m, const std::vector<ModuleElement>& elements) {
  const PathAlgebra& alg = m.algebra();
  const Scalar p = m.prime();
  const auto n = as_size(m.vertex_count());
  std::vector<RowSpace> spaces;
  std::vector<std::vector<std::vector<Scalar>>> gens(n);
  for (int v = 1; v <= m.vertex_count(); ++v) spaces.emplace_back(as_size(m.dim(v)), p);
  std::deque<std::pair<int, std::vector<Scalar>>> queue;
  auto push = [&](int v, std::vector<Scalar> x) {
    std::vector<Scalar> probe = x;
    if (spaces[as_size(v - 1)].reduce(probe)) return;
    spaces[as_size(v - 1)].insert(std::move(probe));
    gens[as_size(v - 1)].push_back(x);
    queue.emplace_back(v, std::move(x));
  };
  for (const auto& el : elements) {
    if (el.size() != n) throw Error(ErrorCode::InvalidArgument, "element has wrong number of components");
    for (int v = 1; v <= m.vertex_count(); ++v) {
      const auto& comp = el[as_size(v - 1)];
      if (comp.size() != as_size(m.dim(v))) {
        throw Error(ErrorCode::InvalidArgument, "element component has wrong length");
      }
      std::vector<Scalar> x(comp.begin(), comp.end());
      for (auto& s : x) s %= p;
      push(v, std::move(x));
    }
  }
  while (!queue.empty()) {
    auto [v, x] = std::move(queue.front());
    queue.pop_front();
    Matrix col = Matrix::column_vector(x, p);
    for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
      const Arrow& arr = alg.quiver().arrow(a);
      if (arr.source != v) continue;
      push(arr.target, (m.arrow(a) * col).column(0));
    }
  }
  std::vector<Matrix> spans;
  for (int v = 1; v <= m.vertex_count(); ++v) {
    const auto& g = gens[as_size(v - 1)];
    Matrix s = zero_matrix(m.dim(v), static_cast<int>(g.size()), p);
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t i = 0; i < g[j].size(); ++i) s(i, j) = g[j][i];
    spans.push_back(std::move(s));
  }
  return subspace_submodule(m, spans);
}

Quotient quotient(const Module& m, const ModuleMorphism& inclusion) {
  require_same_algebra(m, inclusion.target);
  if (!inclusion.is_injective()) throw Error(ErrorCode::NotInjective, "quotient by a non-monomorphism");
  const PathAlgebra& alg = m.algebra();
  const Scalar p = m.prime();
  std::vector<Matrix> proj, section;
  std::vector<int> dims;
  for (int v = 1; v <= m.vertex_count(); ++v) {
    const Matrix& b = inclusion.at(v);
    Matrix c = complement_columns(b);
    std::vector<Matrix> parts{b, c};
    Matrix t = Matrix::hstack(parts, as_size(m.dim(v)), p);
    Matrix tinv = *inverse(t);
    proj.push_back(tinv.block(b.cols(), 0, c.cols(), tinv.cols()));
    section.push_back(c);
    dims.push_back(static_cast<int>(c.cols()));
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& arr = alg.quiver().arrow(a);
    maps.push_back(proj[as_size(arr.target - 1)] * m.arrow(a) * section[as_size(arr.source - 1)]);
  }
  Module q(m.algebra_ptr(), std::move(dims), std::move(maps));
  return {q, ModuleMorphism{m, q, std::move(proj)}, std::move(section)};
}

Subobject kernel(const ModuleMorphism& f) {
  const Module& m = f.source;
  std::vector<Matrix> spans;
  for (int v = 1; v <= m.vertex_count(); ++v) spans.push_back(nullspace(f.at(v)).basis);
  return subspace_submodule(m, spans);
}

Subobject image(const ModuleMorphism& f) {
  std::vector<Matrix> spans;
  for (int v = 1; v <= f.target.vertex_count(); ++v) spans.push_back(f.at(v));
  return subspace_submodule(f.target, spans);
}

DirectSum direct_sum_with_maps(const std::vector<Module>& parts, const AlgebraPtr& algebra) {
  const PathAlgebra& alg = *algebra;
  const Scalar p = alg.prime();
  const auto n = as_size(alg.vertex_count());
  std::vector<int> dims(n, 0);
  for (const auto& part : parts) {
    if (part.algebra_ptr() != algebra) throw Error(ErrorCode::AlgebraMismatch, "direct sum across algebras");
    for (std::size_t v = 0; v < n; ++v) dims[v] += part.dims()[v];
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& arr = alg.quiver().arrow(a);
    Matrix m = zero_matrix(dims[as_size(arr.target - 1)], dims[as_size(arr.source - 1)], p);
    std::size_t r = 0, c = 0;
    for (const auto& part : parts) {
      m.set_block(r, c, part.arrow(a));
      r += part.arrow(a).rows();
      c += part.arrow(a).cols();
    }
    maps.push_back(std::move(m));
  }
  std::string label;
  for (const auto& part : parts) {
    if (!label.empty()) label += " + ";
    label += part.label().empty() ? "?" : part.label();
  }
  Module sum(algebra, dims, std::move(maps), label);
  DirectSum out{sum, {}, {}};
  std::vector<std::size_t> offset(n, 0);
  for (const auto& part : parts) {
    ModuleMorphism inj{part, sum, {}}, prj{sum, part, {}};
    for (int v = 1; v <= alg.vertex_count(); ++v) {
      const auto vi = as_size(v - 1);
      Matrix i = zero_matrix(dims[vi], part.dim(v), p);
      for (std::size_t k = 0; k < as_size(part.dim(v)); ++k) i(offset[vi] + k, k) = 1;
      prj.maps.push_back(i.transpose());
      inj.maps.push_back(std::move(i));
      offset[vi] += as_size(part.dim(v));
    }
    out.injections.push_back(std::move(inj));
    out.projections.push_back(std::move(prj));
  }
  return out;
}

Module direct_sum(const std::vector<Module>& parts, const AlgebraPtr& algebra) {
  if (parts.empty()) return Module::zero(algebra);
  if (parts.size() == 1) return parts.front();
  return direct_sum_with_maps(parts, algebra).sum;
}

Module power(const Module& m, int copies) {
  std::vector<Module> parts(as_size(copies), m);
  return direct_sum(parts, m.algebra_ptr());
}

Subobject radical(const Module& m) {
  const PathAlgebra& alg = m.algebra();
  std::vector<Matrix> spans;
  for (int v = 1; v <= m.vertex_count(); ++v) {
    std::vector<Matrix> images;
    for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
      if (alg.quiver().arrow(a).target == v) images.push_back(m.arrow(a));
    }
    spans.push_back(images.empty() ? zero_matrix(m.dim(v), 0, m.prime())
                                   : Matrix::hstack(images, as_size(m.dim(v)), m.prime()));
  }
  return subspace_submodule(m, spans);
}

Module top(const Module& m) { return quotient(m, radical(m).inclusion).module; }

Module trace_quotient(const Module& m, const std::set<int>& vertices) {
  std::vector<ModuleElement> gens;
  for (int v : vertices) {
    if (v < 1 || v > m.vertex_count()) continue;
    for (int k = 0; k < m.dim(v); ++k) {
      ModuleElement el;
      for (int w = 1; w <= m.vertex_count(); ++w) el.emplace_back(as_size(m.dim(w)), 0);
      el[as_size(v - 1)][as_size(k)] = 1;
      gens.push_back(std::move(el));
    }
  }
  Subobject sub = submodule_generated(m, gens);
  return quotient(m, sub.inclusion).module;
}

// ---- Hom and Ext ------------------------------------------------------------

HomSpace hom_space(const Module& m, const Module& n) {
  require_same_algebra(m, n);
  const PathAlgebra& alg = m.algebra();
  const Scalar p = m.prime();
  HomLayout layout(m, n);
  RowSpace eqs(layout.total, p);
  std::vector<Scalar> row(layout.total);
  for (std::size_t a = 0; a < alg.arrow_count() && eqs.dimension() < layout.total; ++a) {
    const Arrow& arr = alg.quiver().arrow(a);
    const int s = arr.source, t = arr.target;
    const Matrix& ma = m.arrow(a);  // M_t x M_s
    const Matrix& na = n.arrow(a);  // N_t x N_s
    const std::size_t off_t = layout.offset[as_size(t - 1)];
    const std::size_t off_s = layout.offset[as_size(s - 1)];
    const auto mt = as_size(m.dim(t)), ms = as_size(m.dim(s));
    const auto nt = as_size(n.dim(t)), ns = as_size(n.dim(s));
    // (f_t M_a - N_a f_s)[r][c] = 0
    for (std::size_t r = 0; r < nt; ++r) {
      for (std::size_t c = 0; c < ms; ++c) {
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t k = 0; k < mt; ++k) {
          const Scalar x = ma(k, c);
          if (x) {
            auto& slot = row[off_t + r * mt + k];
            slot = add_mod(slot, x, p);
          }
        }
        for (std::size_t k = 0; k < ns; ++k) {
          const Scalar x = na(r, k);
          if (x) {
            auto& slot = row[off_s + k * ms + c];
            slot = sub_mod(slot, x, p);
          }
        }
        eqs.insert(row);
      }
    }
  }
  HomSpace out;
  const auto& pivots = eqs.pivots();
  std::vector<bool> is_pivot(layout.total, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t c = 0; c < layout.total; ++c)
    if (!is_pivot[c]) out.free_positions.push_back(c);
  Matrix basis(layout.total, out.free_positions.size(), p);
  for (std::size_t k = 0; k < out.free_positions.size(); ++k) {
    const std::size_t f = out.free_positions[k];
    basis(f, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = neg_mod(eqs.rows()[r][f], p);
  }
  for (std::size_t k = 0; k < out.free_positions.size(); ++k) {
    out.basis.push_back(unflatten(m, n, layout, basis, k));
  }
  return out;
}

std::vector<ModuleMorphism> hom_basis(const Module& m, const Module& n) {
  return hom_space(m, n).basis;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom_space(m, n).free_positions.size(); }

std::vector<Scalar> flatten(const ModuleMorphism& f) {
  std::vector<Scalar> out;
  for (const auto& m : f.maps) out.insert(out.end(), m.data().begin(), m.data().end());
  return out;
}

// ---- covers and syzygies ----------------------------------------------------

CoverData projective_cover(const Module& m) {
  const AlgebraPtr& algebra = m.algebra_ptr();
  const PathAlgebra& alg = *algebra;
  const Scalar p = m.prime();
  Subobject rad = radical(m);
  std::vector<Module> summands;
  // per summand: generator vector and its vertex
  std::vector<std::pair<int, std::vector<Scalar>>> generators;
  std::vector<int> tops(as_size(m.vertex_count()), 0);
  for (int v = 1; v <= m.vertex_count(); ++v) {
    Matrix comp = complement_columns(rad.inclusion.at(v));
    tops[as_size(v - 1)] = static_cast<int>(comp.cols());
    if (comp.cols() == 0) continue;
    Module pv = projective(algebra, v);
    for (std::size_t j = 0; j < comp.cols(); ++j) {
      summands.push_back(pv);
      generators.emplace_back(v, comp.column(j));
    }
  }
  Module cover = direct_sum(summands, algebra);
  ModuleMorphism epi{cover, m, {}};
  for (int w = 1; w <= m.vertex_count(); ++w) {
    std::vector<Matrix> blocks;
    for (const auto& [v, gen] : generators) {
      // columns: images of the basis paths of P(v) ending at w
      std::vector<std::vector<Scalar>> cols;
      Matrix g = Matrix::column_vector(gen, p);
      for (std::size_t b : alg.paths_from(v)) {
        const auto& bp = alg.basis()[b];
        if (bp.target != w) continue;
        cols.push_back((m.path_matrix(bp.path) * g).column(0));
      }
      Matrix block = zero_matrix(m.dim(w), static_cast<int>(cols.size()), p);
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) block(i, j) = cols[j][i];
      blocks.push_back(std::move(block));
    }
    epi.maps.push_back(blocks.empty() ? zero_matrix(m.dim(w), 0, p)
                                      : Matrix::hstack(blocks, as_size(m.dim(w)), p));
  }
  Subobject ker = kernel(epi);
  return CoverData{cover, std::move(tops), std::move(epi), ker.module, ker.inclusion};
}

Module syzygy(const Module& m, int k) {
  Module current = m;
  for (int i = 0; i < k; ++i) {
    if (current.is_zero()) break;
    current = projective_cover(current).kernel;
  }
  return current;
}

std::size_t ext1_dim(const Module& m, const Module& n) {
  require_same_algebra(m, n);
  CoverData cover = projective_cover(m);
  std::size_t hom_p0 = 0;
  for (int v = 1; v <= m.vertex_count(); ++v) {
    hom_p0 += as_size(cover.top_multiplicities[as_size(v - 1)]) * as_size(n.dim(v));
  }
  return hom_dim(cover.kernel, n) + hom_dim(m, n) - hom_p0;
}

Extension universal_extension(const Module& x, const Module& y) {
  require_same_algebra(x, y);
  const AlgebraPtr& algebra = x.algebra_ptr();
  const Scalar p = x.prime();
  CoverData cover = projective_cover(x);
  HomSpace from_syzygy = hom_space(cover.kernel, y);
  RowSpace inner(flatten(zero_morphism(cover.kernel, y)).size(), p);
  for (const auto& g : hom_basis(cover.cover, y)) inner.insert(flatten(compose(g, cover.kernel_inclusion)));
  std::vector<ModuleMorphism> classes;
  for (const auto& h : from_syzygy.basis) {
    if (inner.insert(flatten(h))) classes.push_back(h);
  }
  const int d = static_cast<int>(classes.size());
  if (d == 0) {
    return Extension{0, x, zero_morphism(Module::zero(algebra), x), identity_morphism(x)};
  }
  Module yd = power(y, d);
  DirectSum sum = direct_sum_with_maps({cover.cover, yd}, algebra);
  // x -> (iota x, -phi x)
  ModuleMorphism glue{cover.kernel, sum.sum, {}};
  for (int v = 1; v <= x.vertex_count(); ++v) {
    std::vector<Matrix> phi_parts;
    for (const auto& c : classes) phi_parts.push_back(c.at(v).scaled(p - 1));
    Matrix phi = Matrix::vstack(phi_parts, as_size(cover.kernel.dim(v)), p);
    std::vector<Matrix> parts{cover.kernel_inclusion.at(v), phi};
    glue.maps.push_back(Matrix::vstack(parts, as_size(cover.kernel.dim(v)), p));
  }
  Quotient e = quotient(sum.sum, glue);
  ModuleMorphism to_x{e.module, x, {}};
  ModuleMorphism from_y{yd, e.module, {}};
  for (int v = 1; v <= x.vertex_count(); ++v) {
    const auto vi = as_size(v - 1);
    to_x.maps.push_back(cover.epi.at(v) * sum.projections[0].at(v) * e.section[vi]);
    from_y.maps.push_back(e.projection.at(v) * sum.injections[1].at(v));
  }
  return Extension{d, e.module, std::move(from_y), std::move(to_x)};
}

}  // namespace findim
