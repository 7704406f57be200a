#pragma once

// Representations of a bound quiver algebra and morphisms between them.
// Column-vector convention: an arrow a: i -> j acts by a dims(j) x dims(i) matrix.

#include <memory>
#include <string>
#include <vector>

#include "findim/algebra.hpp"
#include "findim/matrix.hpp"

namespace findim {

using AlgebraPtr = std::shared_ptr<const PathAlgebra>;

/// Immutable module handle; copies share storage.
class Module {
 public:
  Module() = default;
  /// dims[v-1] is the dimension at vertex v; maps[a] the matrix of arrow a.
  Module(AlgebraPtr algebra, std::vector<int> dims, std::vector<Matrix> maps,
         std::string label = {});

  static Module zero(AlgebraPtr algebra);

  const AlgebraPtr& algebra_ptr() const { return data_->algebra; }
  const PathAlgebra& algebra() const { return *data_->algebra; }
  Scalar prime() const { return data_->algebra->prime(); }
  int vertex_count() const { return data_->algebra->vertex_count(); }

  int dim(int vertex) const { return data_->dims[static_cast<std::size_t>(vertex - 1)]; }
  const std::vector<int>& dims() const { return data_->dims; }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  const Matrix& arrow(std::size_t a) const { return data_->maps[a]; }
  const std::vector<Matrix>& arrow_maps() const { return data_->maps; }
  /// Action of a path (application order) as a dims(target) x dims(source) matrix.
  Matrix path_matrix(const Path& path) const;

  const std::string& label() const { return data_->label; }
  Module with_label(std::string label) const;

  /// Every relation, and every path of length equal to the nilpotency degree,
  /// acts as zero.
  bool satisfies_relations() const;

  bool same_algebra(const Module& other) const {
    return data_->algebra == other.data_->algebra;
  }

 private:
  struct Data {
    AlgebraPtr algebra;
    std::vector<int> dims;
    std::vector<Matrix> maps;
    std::string label;
  };
  std::shared_ptr<const Data> data_;
};

/// f_j : M_j -> N_j for every vertex j.
struct ModuleMorphism {
  Module source;
  Module target;
  std::vector<Matrix> maps;

  const Matrix& at(int vertex) const { return maps[static_cast<std::size_t>(vertex - 1)]; }
  /// Commutes with every arrow.
  bool is_homomorphism() const;
  bool is_zero() const;
  bool is_surjective() const;
  bool is_injective() const;
  bool is_isomorphism() const;
};

ModuleMorphism zero_morphism(const Module& source, const Module& target);
ModuleMorphism identity_morphism(const Module& m);
/// g after f.
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
ModuleMorphism add(const ModuleMorphism& f, const ModuleMorphism& g);
ModuleMorphism scale(const ModuleMorphism& f, Scalar s);
/// Same module transported along per-vertex invertible base changes:
/// the returned module has arrows B_j M_a B_i^{-1}.
Module change_basis(const Module& m, const std::vector<Matrix>& base_changes);

/// Dimension vector as a printable string "(d1,...,dn)".
std::string dim_vector_string(const Module& m);

}  // namespace findim
