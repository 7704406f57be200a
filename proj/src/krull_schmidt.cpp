#include "findim/krull_schmidt.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "findim/error.hpp"

namespace findim {

namespace {

constexpr std::uint64_t kSplitSeed = 0x5eed5011175ULL;
constexpr int kSplitAttempts = 256;
constexpr int kRandomSplitAttempts = 4;

std::size_t as_size(int v) { return static_cast<std::size_t>(v); }

struct Position {
  int vertex;
  std::size_t row, col;
};

// Decodes flattened Hom(M,M) positions (vertex by vertex, row-major).
std::vector<Position> decode_positions(const Module& m, const std::vector<std::size_t>& flat) {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (int v = 1; v <= m.vertex_count(); ++v) {
    offset.push_back(total);
    total += as_size(m.dim(v)) * as_size(m.dim(v));
  }
  std::vector<Position> out;
  for (std::size_t f : flat) {
    int v = m.vertex_count();
    while (offset[as_size(v - 1)] > f) --v;
    const std::size_t local = f - offset[as_size(v - 1)];
    const auto d = as_size(m.dim(v));
    out.push_back({v, local / d, local % d});
  }
  return out;
}

ModuleMorphism combination(const Module& m, const std::vector<ModuleMorphism>& basis,
                           const std::vector<Scalar>& coords) {
  ModuleMorphism out = zero_morphism(m, m);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    out = add(out, scale(basis[k], coords[k]));
  }
  return out;
}

// End(M)/rad as a finite-dimensional algebra with its own structure constants.
class SemisimpleQuotient {
 public:
  explicit SemisimpleQuotient(const EndAlgebraData& e) : end_(e), rad_(e.dim, e.module.prime()) {
    p_ = e.module.prime();
    for (std::size_t c = 0; c < e.radical_basis.cols(); ++c) rad_.insert(e.radical_basis.column(c));
    for (std::size_t k = 0; k < e.dim; ++k)
      if (!rad_.is_pivot(k)) cset_.push_back(k);
    s_ = cset_.size();
    table_.assign(s_ * s_ * s_, 0);
    for (std::size_t a = 0; a < s_; ++a) {
      for (std::size_t b = 0; b < s_; ++b) {
        const std::size_t base = (cset_[a] * e.dim + cset_[b]) * e.dim;
        std::vector<Scalar> prod(e.structure.begin() + static_cast<std::ptrdiff_t>(base),
                                 e.structure.begin() + static_cast<std::ptrdiff_t>(base + e.dim));
        auto red = reduce(std::move(prod));
        std::copy(red.begin(), red.end(), table_.begin() + static_cast<std::ptrdiff_t>((a * s_ + b) * s_));
      }
    }
    one_ = reduce(e.unit);
  }

  std::size_t dim() const { return s_; }
  Scalar prime() const { return p_; }
  const std::vector<Scalar>& one() const { return one_; }

  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    rad_.reduce(v);
    std::vector<Scalar> out(s_);
    for (std::size_t k = 0; k < s_; ++k) out[k] = v[cset_[k]];
    return out;
  }

  std::vector<Scalar> lift(const std::vector<Scalar>& x) const {
    std::vector<Scalar> out(end_.dim, 0);
    for (std::size_t k = 0; k < s_; ++k) out[cset_[k]] = x[k];
    return out;
  }

  std::vector<Scalar> unit_vector(std::size_t a) const {
    std::vector<Scalar> out(s_, 0);
    out[a] = 1;
    return out;
  }

  std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::vector<Scalar> out(s_, 0);
    for (std::size_t a = 0; a < s_; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < s_; ++b) {
        if (y[b] == 0) continue;
        const Scalar w = mul_mod(x[a], y[b], p_);
        const Scalar* row = &table_[(a * s_ + b) * s_];
        for (std::size_t k = 0; k < s_; ++k)
          if (row[k]) out[k] = add_mod(out[k], mul_mod(w, row[k], p_), p_);
      }
    }
    return out;
  }

  std::vector<Scalar> pow(std::vector<Scalar> x, std::uint64_t e) const {
    std::vector<Scalar> out = one_;
    while (e) {
      if (e & 1) out = mul(out, x);
      e >>= 1;
      if (e) x = mul(x, x);
    }
    return out;
  }

  bool commutative() const {
    for (std::size_t a = 0; a < s_; ++a)
      for (std::size_t b = a + 1; b < s_; ++b)
        for (std::size_t k = 0; k < s_; ++k)
          if (table_[(a * s_ + b) * s_ + k] != table_[(b * s_ + a) * s_ + k]) return false;
    return true;
  }

  // Columns spanning the center.
  Matrix center() const {
    Matrix eqs(s_ * s_, s_, p_);
    for (std::size_t b = 0; b < s_; ++b)
      for (std::size_t k = 0; k < s_; ++k)
        for (std::size_t a = 0; a < s_; ++a)
          eqs(b * s_ + k, a) = sub_mod(table_[(a * s_ + b) * s_ + k], table_[(b * s_ + a) * s_ + k], p_);
    return nullspace(eqs).basis;
  }

  // Elements of the commutative subalgebra spanned by `basis` fixed by x -> x^p.
  std::vector<std::vector<Scalar>> frobenius_fixed(const Matrix& basis) const {
    Matrix diff(s_, basis.cols(), p_);
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      auto z = basis.column(c);
      auto fz = pow(z, p_);
      for (std::size_t k = 0; k < s_; ++k) diff(k, c) = sub_mod(fz[k], z[k], p_);
    }
    Matrix kernel = nullspace(diff).basis;
    std::vector<std::vector<Scalar>> out;
    for (std::size_t c = 0; c < kernel.cols(); ++c) {
      std::vector<Scalar> x(s_, 0);
      for (std::size_t j = 0; j < basis.cols(); ++j) {
        const Scalar w = kernel(j, c);
        if (!w) continue;
        for (std::size_t k = 0; k < s_; ++k) x[k] = add_mod(x[k], mul_mod(w, basis(k, j), p_), p_);
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  poly::Poly minimal_polynomial(const std::vector<Scalar>& x) const {
    RowSpace span(s_, p_);
    std::vector<std::vector<Scalar>> powers{one_};
    span.insert(one_);
    while (true) {
      auto next = mul(powers.back(), x);
      if (!span.insert(next)) {
        Matrix a(s_, powers.size(), p_), b(s_, 1, p_);
        for (std::size_t j = 0; j < powers.size(); ++j)
          for (std::size_t k = 0; k < s_; ++k) a(k, j) = powers[j][k];
        for (std::size_t k = 0; k < s_; ++k) b(k, 0) = next[k];
        auto sol = solve(a, b);
        poly::Poly f(powers.size() + 1, 0);
        for (std::size_t j = 0; j < powers.size(); ++j) f[j] = neg_mod((*sol)(j, 0), p_);
        f.back() = 1;
        return f;
      }
      powers.push_back(std::move(next));
    }
  }

 private:
  const EndAlgebraData& end_;
  Scalar p_ = 0;
  RowSpace rad_;
  std::vector<std::size_t> cset_;
  std::size_t s_ = 0;
  std::vector<Scalar> table_;
  std::vector<Scalar> one_;
};

bool is_scalar_multiple_of(const std::vector<Scalar>& x, const std::vector<Scalar>& one, Scalar p) {
  Matrix m(x.size(), 2, p);
  for (std::size_t k = 0; k < x.size(); ++k) {
    m(k, 0) = one[k];
    m(k, 1) = x[k];
  }
  return rank(m) < 2;
}

bool is_power_of_linear(const poly::Poly& f, Scalar c, Scalar p) {
  // f == (x - c)^deg f
  poly::Poly g{1};
  const poly::Poly lin{neg_mod(c, p), 1};
  for (std::size_t k = 1; k < f.size(); ++k) {
    poly::Poly next(g.size() + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      next[i] = add_mod(next[i], mul_mod(g[i], lin[0], p), p);
      next[i + 1] = add_mod(next[i + 1], g[i], p);
    }
    g = std::move(next);
  }
  return g == f;
}

ModuleMorphism lift_shifted(const EndAlgebraData& e, const SemisimpleQuotient& s,
                            const std::vector<Scalar>& x, Scalar c) {
  ModuleMorphism phi = combination(e.module, e.hom.basis, s.lift(x));
  return add(phi, scale(identity_morphism(e.module), neg_mod(c, s.prime())));
}

Matrix matrix_power(Matrix m, std::size_t e) {
  Matrix out = Matrix::identity(m.rows(), m.prime());
  while (e) {
    if (e & 1) out = out * m;
    e >>= 1;
    if (e) m = m * m;
  }
  return out;
}

// Roots of the polynomial annihilating a random vector under a; each is an
// eigenvalue of a.
std::vector<Scalar> krylov_eigenvalues(const Matrix& a, std::mt19937_64& rng) {
  const Scalar p = a.prime();
  const std::size_t n = a.rows();
  std::vector<Scalar> v(n);
  for (auto& x : v) x = static_cast<Scalar>(rng() % p);
  std::vector<Matrix> cols{Matrix::column_vector(v, p)};
  while (true) {
    Matrix next = a * cols.back();
    Matrix k = Matrix::hstack(cols, n, p);
    if (auto c = solve(k, next)) {
      poly::Poly f(cols.size() + 1, 0);
      for (std::size_t i = 0; i < cols.size(); ++i) f[i] = neg_mod((*c)(i, 0), p);
      f.back() = 1;
      return poly::roots(f, p);
    }
    cols.push_back(std::move(next));
  }
}

// Fitting split attempt with random endomorphisms. Cheap for modules with a
// large End, where the structure constants would be expensive.
std::optional<ModuleMorphism> random_splitting_endomorphism(const Module& m, const HomSpace& hom) {
  const Scalar p = m.prime();
  std::mt19937_64 rng(kSplitSeed);
  const auto n = as_size(m.total_dim());
  for (int attempt = 0; attempt < kRandomSplitAttempts; ++attempt) {
    std::vector<Scalar> coords(hom.basis.size());
    for (auto& c : coords) c = static_cast<Scalar>(rng() % p);
    const ModuleMorphism phi = combination(m, hom.basis, coords);
    int v = 1 + static_cast<int>(rng() % as_size(m.vertex_count()));
    while (m.dim(v) == 0) v = v % m.vertex_count() + 1;
    for (Scalar c : krylov_eigenvalues(phi.at(v), rng)) {
      ModuleMorphism shifted = add(phi, scale(identity_morphism(m), neg_mod(c, p)));
      bool nilpotent = true;
      for (const auto& mat : shifted.maps)
        if (!mat.empty() && !matrix_power(mat, n).is_zero()) nilpotent = false;
      if (!nilpotent) return shifted;
    }
  }
  return std::nullopt;
}

// An endomorphism that is neither nilpotent nor invertible, or nothing when
// the module is indecomposable.
std::optional<ModuleMorphism> splitting_endomorphism(const Module& m) {
  if (m.total_dim() <= 1) return std::nullopt;
  HomSpace hom = hom_space(m, m);
  if (hom.basis.size() == 1) return std::nullopt;
  if (auto phi = random_splitting_endomorphism(m, hom)) return phi;
  EndAlgebraData e = end_algebra_from(m, std::move(hom));
  if (e.semisimple_dim == 1) return std::nullopt;
  SemisimpleQuotient s(e);
  const Scalar p = s.prime();

  Matrix center = s.center();
  auto fixed = s.frobenius_fixed(center);
  if (fixed.size() >= 2) {
    for (const auto& z : fixed) {
      if (is_scalar_multiple_of(z, s.one(), p)) continue;
      auto r = poly::roots(s.minimal_polynomial(z), p);
      if (r.empty()) continue;
      return lift_shifted(e, s, z, r.front());
    }
    throw Error(ErrorCode::ValidationFailed, "central idempotent search failed");
  }
  if (center.cols() > 1) {
    throw Error(ErrorCode::NonSplit, "summand with dimension vector " + dim_vector_string(m) +
                                         " has a non-split endomorphism field over F_" +
                                         std::to_string(p));
  }
  // End/rad is a full matrix algebra over F_p.
  std::mt19937_64 rng(kSplitSeed);
  std::uniform_int_distribution<Scalar> coef(0, p - 1);
  for (int attempt = 0; attempt < kSplitAttempts; ++attempt) {
    std::vector<Scalar> x;
    if (static_cast<std::size_t>(attempt) < s.dim()) {
      x = s.unit_vector(static_cast<std::size_t>(attempt));
    } else {
      x.resize(s.dim());
      for (auto& v : x) v = coef(rng);
    }
    auto f = s.minimal_polynomial(x);
    for (Scalar c : poly::roots(f, p)) {
      if (!is_power_of_linear(f, c, p)) return lift_shifted(e, s, x, c);
    }
  }
  throw Error(ErrorCode::CapExceeded, "no splitting endomorphism found for " + dim_vector_string(m));
}

std::string uniserial_label(const Module& m) {
  // Loewy layers, each simple, joined top to bottom.
  std::string out;
  Module current = m;
  while (!current.is_zero()) {
    Subobject rad = radical(current);
    int vertex = 0;
    for (int v = 1; v <= m.vertex_count(); ++v) {
      const int d = current.dim(v) - rad.module.dim(v);
      if (d == 0) continue;
      if (d > 1 || vertex != 0) return {};
      vertex = v;
    }
    if (!out.empty()) out += '/';
    out += std::to_string(vertex);
    current = rad.module;
  }
  return out;
}

}  // namespace

EndAlgebraData end_algebra(const Module& m) { return end_algebra_from(m, hom_space(m, m)); }

EndAlgebraData end_algebra_from(const Module& m, HomSpace hom) {
  EndAlgebraData e;
  e.module = m;
  e.hom = std::move(hom);
  const std::size_t d = e.hom.basis.size();
  const Scalar p = m.prime();
  e.dim = d;
  if (p <= d) {
    throw Error(ErrorCode::FieldTooSmall, "dim End = " + std::to_string(d) + " is not below p = " +
                                              std::to_string(p) + "; rerun with a larger prime");
  }
  auto positions = decode_positions(m, e.hom.free_positions);
  e.structure.assign(d * d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto& bi = e.hom.basis[i];
      const auto& bj = e.hom.basis[j];
      for (std::size_t k = 0; k < d; ++k) {
        const auto& pos = positions[k];
        const Matrix& gi = bi.at(pos.vertex);
        const Matrix& fj = bj.at(pos.vertex);
        Scalar acc = 0;
        for (std::size_t t = 0; t < gi.cols(); ++t) {
          const Scalar x = gi(pos.row, t);
          if (x) acc = add_mod(acc, mul_mod(x, fj(t, pos.col), p), p);
        }
        e.structure[(i * d + j) * d + k] = acc;
      }
    }
  }
  e.unit.assign(d, 0);
  for (std::size_t k = 0; k < d; ++k) e.unit[k] = positions[k].row == positions[k].col ? 1 : 0;

  // Trace form of the regular representation.
  std::vector<Scalar> tr(d, 0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t t = 0; t < d; ++t) tr[k] = add_mod(tr[k], e.structure[(k * d + t) * d + t], p);
  Matrix form(d, d, p);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Scalar acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc = add_mod(acc, mul_mod(e.structure[(i * d + j) * d + k], tr[k], p), p);
      form(i, j) = acc;
    }
  e.radical_basis = nullspace(form).basis;
  e.semisimple_dim = d - e.radical_basis.cols();
  e.commutative = SemisimpleQuotient(e).commutative();
  return e;
}

Indecomposability indecomposability(const Module& m) {
  if (m.is_zero()) return {};
  if (m.total_dim() == 1) return {true, false};
  EndAlgebraData e = end_algebra(m);
  if (e.semisimple_dim == 1) return {true, false};
  if (!e.commutative) return {};
  SemisimpleQuotient s(e);
  Matrix all = Matrix::identity(s.dim(), s.prime());
  const auto fixed = s.frobenius_fixed(all);
  if (fixed.size() != 1) return {};
  return {true, true};
}

bool is_indecomposable(const Module& m) { return indecomposability(m).indecomposable; }

std::optional<ModuleMorphism> find_isomorphism_indecomposable(const Module& m, const Module& n) {
  if (m.dims() != n.dims()) return std::nullopt;
  for (auto& f : hom_basis(m, n)) {
    if (f.is_isomorphism()) return f;
  }
  return std::nullopt;
}

std::vector<Piece> split_indecomposables(const Module& m) {
  std::vector<Piece> out;
  std::vector<Piece> todo{{m, identity_morphism(m)}};
  while (!todo.empty()) {
    Piece piece = std::move(todo.back());
    todo.pop_back();
    if (piece.module.is_zero()) continue;
    auto phi = splitting_endomorphism(piece.module);
    if (!phi) {
      out.push_back(std::move(piece));
      continue;
    }
    // Fitting: M = ker phi^N + im phi^N.
    ModuleMorphism power{piece.module, piece.module, {}};
    const auto n = as_size(piece.module.total_dim());
    for (const auto& mat : phi->maps) power.maps.push_back(matrix_power(mat, n));
    Subobject ker = kernel(power);
    Subobject img = image(power);
    if (ker.module.is_zero() || img.module.is_zero()) {
      throw Error(ErrorCode::ValidationFailed, "Fitting split produced a zero part");
    }
    // Pushed in reverse so the kernel part is handled first.
    todo.push_back({img.module, compose(piece.inclusion, img.inclusion)});
    todo.push_back({ker.module, compose(piece.inclusion, ker.inclusion)});
  }
  return out;
}

// ---- registry ---------------------------------------------------------------

ClassRegistry::ClassRegistry(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  for (int v = 1; v <= algebra_->vertex_count(); ++v) projective_dims_.push_back(projective(algebra_, v).dims());
}

std::size_t ClassRegistry::size() const {
  std::lock_guard lock(mutex_);
  return classes_.size();
}

ClassRegistry::ClassInfo ClassRegistry::info(std::size_t id) const {
  std::lock_guard lock(mutex_);
  if (id >= classes_.size()) throw Error(ErrorCode::IndexError, "class id out of range");
  return classes_[id];
}

std::size_t ClassRegistry::register_module(const Module& m) {
  if (m.algebra_ptr() != algebra_) throw Error(ErrorCode::AlgebraMismatch, "module is over a different algebra");
  if (!is_indecomposable(m)) throw Error(ErrorCode::NotIndecomposable, "module " + dim_vector_string(m) + " is not indecomposable");
  std::lock_guard lock(mutex_);
  return classify_locked(m).first;
}

std::pair<std::size_t, ModuleMorphism> ClassRegistry::classify(const Module& indecomposable) {
  std::lock_guard lock(mutex_);
  return classify_locked(indecomposable);
}

std::pair<std::size_t, ModuleMorphism> ClassRegistry::classify_locked(const Module& m) {
  if (m.algebra_ptr() != algebra_) throw Error(ErrorCode::AlgebraMismatch, "module is over a different algebra");
  auto& bucket = by_dims_[m.dims()];
  for (std::size_t id : bucket) {
    if (auto iso = find_isomorphism_indecomposable(classes_[id].witness, m)) return {id, *iso};
  }
  ClassInfo info;
  Module t = top(m);
  int top_vertex = 0, top_total = 0;
  for (int v = 1; v <= m.vertex_count(); ++v) {
    if (t.dim(v) > 0) top_vertex = v;
    top_total += t.dim(v);
  }
  if (top_total == 1 && m.dims() == projective_dims_[as_size(top_vertex - 1)]) {
    info.projective = true;
    info.vertex = top_vertex;
  }
  const std::size_t id = classes_.size();
  std::string label;
  if (info.projective) {
    label = "P(" + std::to_string(top_vertex) + ")";
  } else if (m.total_dim() == 1) {
    label = "S(" + std::to_string(top_vertex) + ")";
  } else {
    label = uniserial_label(m);
    if (label.empty()) label = "X" + std::to_string(id) + dim_vector_string(m);
  }
  info.witness = m.with_label(label);
  classes_.push_back(info);
  omega_.emplace_back();
  bucket.push_back(id);
  return {id, identity_morphism(info.witness)};
}

DecompositionResult ClassRegistry::decompose(const Module& m) {
  std::lock_guard lock(mutex_);
  if (m.algebra_ptr() != algebra_) throw Error(ErrorCode::AlgebraMismatch, "module is over a different algebra");
  struct Found {
    std::size_t id;
    ModuleMorphism to_m;  // witness -> m
  };
  std::vector<Found> found;
  for (auto& piece : split_indecomposables(m)) {
    auto [id, iso] = classify_locked(piece.module);
    found.push_back({id, compose(piece.inclusion, iso)});
  }
  std::stable_sort(found.begin(), found.end(), [this](const Found& a, const Found& b) {
    const auto& ca = classes_[a.id];
    const auto& cb = classes_[b.id];
    auto key = [](const ClassInfo& c, std::size_t id) {
      return std::make_tuple(c.projective ? 1 : 0, c.projective ? static_cast<std::size_t>(c.vertex) : id);
    };
    return key(ca, a.id) < key(cb, b.id);
  });

  DecompositionResult out;
  std::vector<Module> witnesses;
  for (const auto& f : found) {
    const ClassInfo& c = classes_[f.id];
    witnesses.push_back(c.witness);
    if (c.projective) {
      if (!out.projective_part.empty() && out.projective_part.back().first == c.vertex) {
        ++out.projective_part.back().second;
      } else {
        out.projective_part.emplace_back(c.vertex, 1);
      }
    } else if (!out.summands.empty() && out.summands.back().class_id == f.id) {
      ++out.summands.back().multiplicity;
    } else {
      out.summands.push_back({f.id, 1, c.witness});
    }
  }
  Module sum = direct_sum(witnesses, algebra_);
  out.round_trip = ModuleMorphism{sum, m, {}};
  for (int v = 1; v <= m.vertex_count(); ++v) {
    std::vector<Matrix> blocks;
    for (const auto& f : found) blocks.push_back(f.to_m.at(v));
    out.round_trip.maps.push_back(blocks.empty() ? Matrix(as_size(m.dim(v)), 0, m.prime())
                                                 : Matrix::hstack(blocks, as_size(m.dim(v)), m.prime()));
  }
  if (!out.round_trip.is_homomorphism() || !out.round_trip.is_isomorphism()) {
    throw Error(ErrorCode::ValidationFailed, "decomposition of " + dim_vector_string(m) + " failed its round trip");
  }
  return out;
}

std::vector<std::pair<std::size_t, int>> ClassRegistry::omega(std::size_t id) {
  std::lock_guard lock(mutex_);
  if (id >= classes_.size()) throw Error(ErrorCode::IndexError, "class id out of range");
  if (omega_[id]) return *omega_[id];
  std::vector<std::pair<std::size_t, int>> result;
  if (!classes_[id].projective) {
    Module w = classes_[id].witness;
    for (const auto& s : decompose(syzygy(w)).summands) result.emplace_back(s.class_id, s.multiplicity);
  }
  omega_[id] = result;
  return result;
}

DecompositionResult decompose(const Module& m) {
  ClassRegistry registry(m.algebra_ptr());
  return registry.decompose(m);
}

bool is_isomorphic(const Module& m, const Module& n) {
  if (!m.same_algebra(n)) throw Error(ErrorCode::AlgebraMismatch, "modules over different algebras");
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  ClassRegistry registry(m.algebra_ptr());
  auto a = registry.decompose(m);
  auto b = registry.decompose(n);
  if (a.projective_part != b.projective_part || a.summands.size() != b.summands.size()) return false;
  for (std::size_t k = 0; k < a.summands.size(); ++k) {
    if (a.summands[k].class_id != b.summands[k].class_id ||
        a.summands[k].multiplicity != b.summands[k].multiplicity) {
      return false;
    }
  }
  return true;
}

// ---- polynomials ------------------------------------------------------------

namespace poly {

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

namespace {

std::pair<Poly, Poly> divmod(Poly a, const Poly& f, Scalar p) {
  a = trim(std::move(a));
  const Poly g = trim(f);
  if (g.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (a.size() < g.size()) return {Poly{}, a};
  Poly q(a.size() - g.size() + 1, 0);
  const Scalar inv_lead = inv_mod(g.back(), p);
  for (std::size_t i = a.size(); i-- >= g.size();) {
    const Scalar c = findim::mul_mod(a[i], inv_lead, p);
    if (c == 0) continue;
    const std::size_t shift = i - (g.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < g.size(); ++j) a[shift + j] = sub_mod(a[shift + j], findim::mul_mod(c, g[j], p), p);
  }
  return {trim(q), trim(a)};
}

Poly monic(Poly f, Scalar p) {
  f = trim(std::move(f));
  if (f.empty()) return f;
  const Scalar inv = inv_mod(f.back(), p);
  for (auto& c : f) c = findim::mul_mod(c, inv, p);
  return f;
}

Scalar evaluate(const Poly& f, Scalar x, Scalar p) {
  Scalar acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = add_mod(findim::mul_mod(acc, x, p), f[i], p);
  return acc;
}

Poly sub_one(Poly f, Scalar p) {
  if (f.empty()) f.push_back(0);
  f[0] = sub_mod(f[0], 1, p);
  return trim(std::move(f));
}

void split_linear(const Poly& g, Scalar p, std::mt19937_64& rng, std::vector<Scalar>& out) {
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(findim::mul_mod(neg_mod(g[0], p), inv_mod(g[1], p), p));
    return;
  }
  std::uniform_int_distribution<Scalar> coef(0, p - 1);
  while (true) {
    const Poly lin{coef(rng), 1};
    Poly h = gcd(g, sub_one(pow_mod(lin, (p - 1) / 2, g, p), p), p);
    if (h.size() > 1 && h.size() < g.size()) {
      split_linear(h, p, rng, out);
      split_linear(monic(divmod(g, h, p).first, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

Poly mod(const Poly& a, const Poly& f, Scalar p) { return divmod(a, f, p).second; }

Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, Scalar p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = add_mod(prod[i + j], findim::mul_mod(a[i], b[j], p), p);
  }
  return mod(prod, f, p);
}

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& f, Scalar p) {
  Poly out = mod(Poly{1}, f, p);
  Poly b = mod(base, f, p);
  while (e) {
    if (e & 1) out = mul_mod(out, b, f, p);
    e >>= 1;
    if (e) b = mul_mod(b, b, f, p);
  }
  return out;
}

Poly gcd(Poly a, Poly b, Scalar p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a), p);
}

std::vector<Scalar> roots(const Poly& f_in, Scalar p) {
  Poly f = monic(f_in, p);
  std::vector<Scalar> out;
  if (f.size() < 2) return out;
  if (p < 1024) {
    for (Scalar c = 0; c < p; ++c)
      if (evaluate(f, c, p) == 0) out.push_back(c);
    return out;
  }
  // Product of the distinct linear factors: gcd(f, x^p - x).
  Poly xp = pow_mod(Poly{0, 1}, p, f, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = sub_mod(xp[1], 1, p);
  Poly g = gcd(f, xp, p);
  std::mt19937_64 rng(kSplitSeed);
  if (g.size() >= 2) split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace poly

}  // namespace findim
