#pragma once

// The group K of non-projective iso classes, Omega acting on it, projective
// dimension, and the Igusa-Todorov functions Phi and Psi.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "findim/krull_schmidt.hpp"

namespace findim {

inline constexpr int kDefaultDepth = 64;

enum class PdStatus { Finite, Infinite, Unknown };

struct PdResult {
  PdStatus status = PdStatus::Unknown;
  int value = 0;                   // when Finite
  std::vector<std::size_t> cycle;  // when Infinite: classes on an Omega cycle
  int depth_reached = 0;
};

/// Class id -> coefficient, non-projective classes only.
using KVector = std::map<std::size_t, long long>;

KVector k_class(const Module& m, ClassRegistry& registry);
/// Unit vectors of the distinct non-projective summand classes.
std::vector<KVector> span_generators(const Module& m, ClassRegistry& registry);
/// Omega applied `times` times on the lattice.
KVector omega_k(const KVector& v, ClassRegistry& registry, int times = 1);

PdResult pd(const Module& m, ClassRegistry& registry, int max_depth = kDefaultDepth);
PdResult pd_of_classes(const std::vector<std::size_t>& classes, ClassRegistry& registry,
                       int max_depth = kDefaultDepth);

struct PhiResult {
  std::optional<int> value;
  std::vector<long long> rank_trace;
  std::optional<int> orbit_closed_at;
  std::size_t orbit_size = 0;
};

PhiResult phi(const Module& m, ClassRegistry& registry, int max_depth = kDefaultDepth);
PhiResult phi_of_classes(const std::vector<std::size_t>& generators, ClassRegistry& registry,
                         int max_depth = kDefaultDepth);

struct PsiReport {
  int phi = 0;
  std::vector<long long> rank_trace;
  std::vector<std::size_t> c_m;  // summand classes of Omega^phi M
  int pfd_c_m = 0;
  int psi = 0;
};

/// Throws Undecided when Phi or some pd in C_M is not decided at max_depth.
PsiReport psi(const Module& m, ClassRegistry& registry, int max_depth = kDefaultDepth);
PsiReport psi_of_classes(const std::vector<std::size_t>& generators, ClassRegistry& registry,
                         int max_depth = kDefaultDepth);
int psi_dim_finite_family(const std::vector<Module>& modules, ClassRegistry& registry,
                          int max_depth = kDefaultDepth);

struct RadCubeReport {
  PsiReport psi;
  int bound = 0;
};

/// 2 + Psi(R/rad + R/rad^2); requires rad^3 = 0 (RadCubeNotZero otherwise).
RadCubeReport radcube_pfd_bound(const AlgebraPtr& algebra, ClassRegistry& registry,
                                int max_depth = kDefaultDepth);

/// Rank over Q of integer column vectors (fraction-free elimination).
std::size_t rational_rank(const std::vector<std::vector<long long>>& columns);

}  // namespace findim
