#pragma once

// Endomorphism algebras, indecomposability, Krull-Schmidt decomposition and
// the registry of isomorphism classes of indecomposables.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "findim/modrep.hpp"

namespace findim {

/// End(M) with structure constants and its Jacobson radical.
struct EndAlgebraData {
  Module module;
  HomSpace hom;
  std::size_t dim = 0;
  /// structure[(i * dim + j) * dim + k] = coordinate k of basis[i] o basis[j]
  std::vector<Scalar> structure;
  std::vector<Scalar> unit;
  Matrix radical_basis;  // columns in End coordinates
  std::size_t semisimple_dim = 0;
  bool commutative = false;  // End/rad
};

/// Requires p > dim End(M); throws FieldTooSmall otherwise.
EndAlgebraData end_algebra(const Module& m);
EndAlgebraData end_algebra_from(const Module& m, HomSpace hom);

struct Indecomposability {
  bool indecomposable = false;
  /// End/rad is a field larger than F_p: indecomposable here, but it would
  /// split over the algebraic closure.
  bool non_split = false;
};

Indecomposability indecomposability(const Module& m);
bool is_indecomposable(const Module& m);

/// An invertible morphism m -> n when both are indecomposable and isomorphic.
std::optional<ModuleMorphism> find_isomorphism_indecomposable(const Module& m, const Module& n);

/// Splits m into indecomposable pieces with their inclusions into m.
struct Piece {
  Module module;
  ModuleMorphism inclusion;
};
std::vector<Piece> split_indecomposables(const Module& m);

struct Summand {
  std::size_t class_id = 0;
  int multiplicity = 0;
  Module witness;
};

struct DecompositionResult {
  std::vector<Summand> summands;                   // non-projective, by class id
  std::vector<std::pair<int, int>> projective_part;  // (vertex, multiplicity)
  /// Invertible map from the direct sum of witnesses (summands in order, each
  /// repeated, then projective classes by vertex) onto the input.
  ModuleMorphism round_trip;
};

/// Iso classes of indecomposables, in insertion order. All members lock an
/// internal mutex, so one registry may be shared between threads.
class ClassRegistry {
 public:
  explicit ClassRegistry(AlgebraPtr algebra);

  struct ClassInfo {
    Module witness;
    bool projective = false;
    int vertex = 0;  // top vertex when projective
  };

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t size() const;
  ClassInfo info(std::size_t id) const;

  /// Id of the class of an indecomposable module; throws NotIndecomposable.
  std::size_t register_module(const Module& m);
  /// Same as register_module but also returns an iso witness -> m.
  std::pair<std::size_t, ModuleMorphism> classify(const Module& indecomposable);

  DecompositionResult decompose(const Module& m);

  /// Non-projective classes of the syzygy of the witness, with multiplicities.
  std::vector<std::pair<std::size_t, int>> omega(std::size_t id);

 private:
  std::pair<std::size_t, ModuleMorphism> classify_locked(const Module& m);

  AlgebraPtr algebra_;
  mutable std::recursive_mutex mutex_;
  std::vector<ClassInfo> classes_;
  std::map<std::vector<int>, std::vector<std::size_t>> by_dims_;
  std::vector<std::optional<std::vector<std::pair<std::size_t, int>>>> omega_;
  std::vector<std::vector<int>> projective_dims_;
};

/// Decomposes with a throwaway registry.
DecompositionResult decompose(const Module& m);
bool is_isomorphic(const Module& m, const Module& n);

// F_p polynomial helpers, coefficients from the constant term upwards.
namespace poly {
using Poly = std::vector<Scalar>;
Poly trim(Poly f);
Poly mod(const Poly& a, const Poly& f, Scalar p);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, Scalar p);
Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& f, Scalar p);
Poly gcd(Poly a, Poly b, Scalar p);
/// Distinct roots in F_p, ascending.
std::vector<Scalar> roots(const Poly& f, Scalar p);
}  // namespace poly

}  // namespace findim
