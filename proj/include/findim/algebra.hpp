#pragma once

// Bound quiver algebras kQ/I over F_p: quiver data, admissible relations, the
// residue path basis and its multiplication table.
//
// Vertices are numbered 1..n everywhere in the public interface. Paths are
// stored in application order (first arrow applied first) while text uses
// function order, so "g*d*b" is stored as {b, d, g}.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "findim/matrix.hpp"

namespace findim {

struct Arrow {
  std::string name;
  int source = 1;
  int target = 1;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(int vertex_count, std::vector<Arrow> arrows);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
  /// Index of the arrow with this name, or -1.
  int find_arrow(const std::string& name) const;

 private:
  int vertex_count_ = 0;
  std::vector<Arrow> arrows_;
};

/// A path in application order; `source` matters only for trivial paths.
struct Path {
  int source = 1;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
  auto operator<=>(const Path&) const = default;
};

int path_target(const Quiver& q, const Path& path);
/// Renders a path in function order, e.g. "g*d*b" or "e3".
std::string path_name(const Quiver& q, const Path& path);

struct RelationTerm {
  std::int64_t coefficient = 1;
  Path path;
};

struct Relation {
  std::vector<RelationTerm> terms;
};

struct BasisPath {
  Path path;
  int source = 1;
  int target = 1;
  std::size_t length = 0;
};

/// Sparse coordinate vector in the path basis.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

class PathAlgebra {
 public:
  static constexpr int kDefaultDepthCap = 32;

  /// Builds kQ/(I + J^L) where L is the least length with J^L inside I + J^{L+1};
  /// for an admissible I this is kQ/I itself.
  static std::shared_ptr<const PathAlgebra> build(Quiver quiver, std::vector<Relation> relations,
                                                  std::uint64_t prime,
                                                  int depth_cap = kDefaultDepthCap);

  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation>& relations() const { return relations_; }
  Scalar prime() const { return prime_; }
  int vertex_count() const { return quiver_.vertex_count(); }
  std::size_t arrow_count() const { return quiver_.arrows().size(); }

  const std::vector<BasisPath>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  int nilpotency_degree() const { return nilpotency_degree_; }

  /// Normal form of an arbitrary path (zero when it lies in the ideal).
  SparseVector reduce_path(const Path& path) const;
  /// Coordinates of basis[a] * basis[b] (function order: b first, then a).
  const SparseVector& product(std::size_t a, std::size_t b) const {
    return mult_table_[a * basis_.size() + b];
  }
  /// Basis indices of the paths starting at `vertex`, in basis order.
  const std::vector<std::size_t>& paths_from(int vertex) const {
    return paths_from_[static_cast<std::size_t>(vertex - 1)];
  }
  std::size_t trivial_path(int vertex) const {
    return trivial_[static_cast<std::size_t>(vertex - 1)];
  }

 private:
  PathAlgebra() = default;

  Quiver quiver_;
  std::vector<Relation> relations_;
  Scalar prime_ = kDefaultPrime;
  int nilpotency_degree_ = 0;
  std::vector<BasisPath> basis_;
  std::vector<SparseVector> mult_table_;
  std::vector<std::vector<std::size_t>> paths_from_;
  std::vector<std::size_t> trivial_;
  // Normal forms of every path shorter than the nilpotency degree.
  std::map<Path, SparseVector> normal_forms_;
};

}  // namespace findim
