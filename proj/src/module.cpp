#include "findim/module.hpp"

#include <numeric>

#include "findim/error.hpp"

namespace findim {

Module::Module(AlgebraPtr algebra, std::vector<int> dims, std::vector<Matrix> maps,
               std::string label) {
  if (!algebra) throw Error(ErrorCode::InvalidArgument, "module without an algebra");
  const auto n = static_cast<std::size_t>(algebra->vertex_count());
  if (dims.size() != n) throw Error(ErrorCode::InvalidArgument, "dimension vector has wrong length");
  if (maps.size() != algebra->arrow_count()) {
    throw Error(ErrorCode::InvalidArgument, "module needs one matrix per arrow");
  }
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const Arrow& arr = algebra->quiver().arrow(a);
    const auto rows = static_cast<std::size_t>(dims[static_cast<std::size_t>(arr.target - 1)]);
    const auto cols = static_cast<std::size_t>(dims[static_cast<std::size_t>(arr.source - 1)]);
    if (maps[a].rows() != rows || maps[a].cols() != cols) {
      throw Error(ErrorCode::InvalidArgument, "matrix for arrow " + arr.name + " has wrong shape");
    }
    if (maps[a].prime() != algebra->prime()) {
      maps[a] = Matrix(rows, cols, algebra->prime()) + maps[a];
    }
  }
  data_ = std::make_shared<const Data>(
      Data{std::move(algebra), std::move(dims), std::move(maps), std::move(label)});
}

Module Module::zero(AlgebraPtr algebra) {
  const auto n = static_cast<std::size_t>(algebra->vertex_count());
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < algebra->arrow_count(); ++a) maps.emplace_back(0, 0, algebra->prime());
  return Module(algebra, std::vector<int>(n, 0), std::move(maps), "0");
}

int Module::total_dim() const {
  return std::accumulate(data_->dims.begin(), data_->dims.end(), 0);
}

Matrix Module::path_matrix(const Path& path) const {
  const auto d = static_cast<std::size_t>(dim(path.source));
  Matrix m = Matrix::identity(d, prime());
  for (int a : path.arrows) m = arrow(static_cast<std::size_t>(a)) * m;
  return m;
}

Module Module::with_label(std::string label) const {
  Module out = *this;
  out.data_ = std::make_shared<const Data>(
      Data{data_->algebra, data_->dims, data_->maps, std::move(label)});
  return out;
}

bool Module::satisfies_relations() const {
  const PathAlgebra& alg = algebra();
  for (const auto& rel : alg.relations()) {
    const auto& first = rel.terms.front().path;
    const int tgt = path_target(alg.quiver(), first);
    Matrix sum(static_cast<std::size_t>(dim(tgt)), static_cast<std::size_t>(dim(first.source)),
               prime());
    for (const auto& term : rel.terms) {
      sum = sum + path_matrix(term.path).scaled(reduce_mod(term.coefficient, prime()));
    }
    if (!sum.is_zero()) return false;
  }
  // Paths of length L: extend layer by layer, only along nonzero products.
  struct Partial {
    Path path;
    Matrix action;
  };
  std::vector<Partial> layer;
  for (int v = 1; v <= vertex_count(); ++v) {
    if (dim(v) > 0) layer.push_back({Path{v, {}}, Matrix::identity(static_cast<std::size_t>(dim(v)), prime())});
  }
  for (int len = 1; len <= alg.nilpotency_degree() && !layer.empty(); ++len) {
    std::vector<Partial> next;
    for (const auto& part : layer) {
      const int end = path_target(alg.quiver(), part.path);
      for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
        if (alg.quiver().arrow(a).source != end) continue;
        Matrix act = arrow(a) * part.action;
        if (act.is_zero()) continue;
        Path p = part.path;
        p.arrows.push_back(static_cast<int>(a));
        next.push_back({std::move(p), std::move(act)});
      }
    }
    layer = std::move(next);
  }
  return layer.empty();
}

bool ModuleMorphism::is_homomorphism() const {
  const PathAlgebra& alg = source.algebra();
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& arr = alg.quiver().arrow(a);
    if (!(at(arr.target) * source.arrow(a) == target.arrow(a) * at(arr.source))) return false;
  }
  return true;
}

bool ModuleMorphism::is_zero() const {
  for (const auto& m : maps)
    if (!m.is_zero()) return false;
  return true;
}

bool ModuleMorphism::is_surjective() const {
  for (int v = 1; v <= target.vertex_count(); ++v)
    if (rank(at(v)) != static_cast<std::size_t>(target.dim(v))) return false;
  return true;
}

bool ModuleMorphism::is_injective() const {
  for (int v = 1; v <= source.vertex_count(); ++v)
    if (rank(at(v)) != static_cast<std::size_t>(source.dim(v))) return false;
  return true;
}

bool ModuleMorphism::is_isomorphism() const {
  return source.dims() == target.dims() && is_injective();
}

ModuleMorphism zero_morphism(const Module& source, const Module& target) {
  ModuleMorphism f{source, target, {}};
  for (int v = 1; v <= source.vertex_count(); ++v) {
    f.maps.emplace_back(static_cast<std::size_t>(target.dim(v)), static_cast<std::size_t>(source.dim(v)),
                        source.prime());
  }
  return f;
}

ModuleMorphism identity_morphism(const Module& m) {
  ModuleMorphism f{m, m, {}};
  for (int v = 1; v <= m.vertex_count(); ++v) {
    f.maps.push_back(Matrix::identity(static_cast<std::size_t>(m.dim(v)), m.prime()));
  }
  return f;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  ModuleMorphism h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(g.maps[v] * f.maps[v]);
  return h;
}

ModuleMorphism add(const ModuleMorphism& f, const ModuleMorphism& g) {
  ModuleMorphism h{f.source, f.target, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(f.maps[v] + g.maps[v]);
  return h;
}

ModuleMorphism scale(const ModuleMorphism& f, Scalar s) {
  ModuleMorphism h{f.source, f.target, {}};
  for (const auto& m : f.maps) h.maps.push_back(m.scaled(s));
  return h;
}

Module change_basis(const Module& m, const std::vector<Matrix>& base_changes) {
  std::vector<Matrix> inverses;
  for (const auto& b : base_changes) {
    auto inv = inverse(b);
    if (!inv) throw Error(ErrorCode::InvalidArgument, "base change is not invertible");
    inverses.push_back(*inv);
  }
  std::vector<Matrix> maps;
  const auto& q = m.algebra().quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto s = static_cast<std::size_t>(q.arrow(a).source - 1);
    const auto t = static_cast<std::size_t>(q.arrow(a).target - 1);
    maps.push_back(base_changes[t] * m.arrow(a) * inverses[s]);
  }
  return Module(m.algebra_ptr(), m.dims(), std::move(maps), m.label());
}

std::string dim_vector_string(const Module& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.dims().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m.dims()[i]);
  }
  return out + ")";
}

}  // namespace findim
