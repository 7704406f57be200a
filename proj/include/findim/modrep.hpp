#pragma once

// Linear-algebra calculus of modules: canonical modules, Hom and Ext^1,
// subobjects and quotients, minimal projective covers, syzygies and universal
// extensions.

#include <cstddef>
#include <set>
#include <vector>

#include "findim/module.hpp"

namespace findim {

// ---- canonical modules ----------------------------------------------------

/// P(i): residue paths starting at i, arrows acting by post-composition.
Module projective(const AlgebraPtr& algebra, int vertex);
Module simple(const AlgebraPtr& algebra, int vertex);
/// The regular module, the direct sum of all P(i).
Module regular(const AlgebraPtr& algebra);
/// Direct sum of P(i)/rad^k P(i) over all vertices.
Module radical_power_quotient(const AlgebraPtr& algebra, int k);

// ---- subobjects -----------------------------------------------------------

struct Subobject {
  Module module;
  ModuleMorphism inclusion;
};

struct Quotient {
  Module module;
  ModuleMorphism projection;
  std::vector<Matrix> section;  // per-vertex right inverse of the projection
};

/// An element of M: one coordinate vector per vertex.
using ModuleElement = std::vector<std::vector<Scalar>>;

/// Smallest submodule containing the given elements.
Subobject submodule_generated(const Module& m, const std::vector<ModuleElement>& elements);
/// Submodule spanned at each vertex by the columns of `spans` (must be closed).
Subobject subspace_submodule(const Module& m, const std::vector<Matrix>& spans);
Quotient quotient(const Module& m, const ModuleMorphism& inclusion);
Subobject kernel(const ModuleMorphism& f);
Subobject image(const ModuleMorphism& f);

struct DirectSum {
  Module sum;
  std::vector<ModuleMorphism> injections;
  std::vector<ModuleMorphism> projections;
};
DirectSum direct_sum_with_maps(const std::vector<Module>& parts, const AlgebraPtr& algebra);
Module direct_sum(const std::vector<Module>& parts, const AlgebraPtr& algebra);
Module power(const Module& m, int copies);

Subobject radical(const Module& m);
Module top(const Module& m);
/// M modulo the submodule generated by its components at the given vertices.
Module trace_quotient(const Module& m, const std::set<int>& vertices);

// ---- Hom and Ext ------------------------------------------------------------

/// Basis of Hom(M, N) together with the coordinate positions: a morphism in the
/// span has coordinate k equal to its flattened entry at free_positions[k].
struct HomSpace {
  std::vector<ModuleMorphism> basis;
  std::vector<std::size_t> free_positions;
};

HomSpace hom_space(const Module& m, const Module& n);
std::vector<ModuleMorphism> hom_basis(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);
/// Flattens the per-vertex matrices (row-major, vertex by vertex).
std::vector<Scalar> flatten(const ModuleMorphism& f);

// ---- covers and syzygies ----------------------------------------------------

struct CoverData {
  Module cover;
  std::vector<int> top_multiplicities;  // d_j per vertex, index j-1
  ModuleMorphism epi;
  Module kernel;
  ModuleMorphism kernel_inclusion;
};

CoverData projective_cover(const Module& m);
Module syzygy(const Module& m, int k = 1);
std::size_t ext1_dim(const Module& m, const Module& n);

struct Extension {
  int multiplicity = 0;  // d = dim Ext^1(X, Y)
  Module middle;         // E
  ModuleMorphism inclusion;   // Y^d -> E
  ModuleMorphism projection;  // E -> X
};

/// Universal extension 0 -> Y^d -> E -> X -> 0 with d = dim Ext^1(X, Y).
Extension universal_extension(const Module& x, const Module& y);

}  // namespace findim
