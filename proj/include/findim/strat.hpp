#pragma once

// Stratifying systems: verification, standard modules, theta-filtrations,
// Ext-projective stratifying systems and the finitistic-dimension bounds.
//
// Members of a system are addressed by their position 1..t.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "findim/igusa_todorov.hpp"

namespace findim {

struct StratSystem {
  std::vector<Module> theta;
  std::vector<int> indices;  // 1-based positions in the system this one was restricted from
  std::vector<int> not_indecomposable;
  std::vector<std::pair<int, int>> hom_violations;  // (j, i), j > i, Hom(theta(j), theta(i)) != 0
  std::vector<std::pair<int, int>> ext_violations;  // (j, i), j >= i, Ext^1(theta(j), theta(i)) != 0

  std::size_t size() const { return theta.size(); }
  const Module& at(int i) const { return theta[static_cast<std::size_t>(i - 1)]; }
  bool verified() const {
    return not_indecomposable.empty() && hom_violations.empty() && ext_violations.empty();
  }
};

/// Delta(i) = P(i) modulo the trace of the vertices above i.
std::vector<Module> standard_modules(const AlgebraPtr& algebra);
StratSystem verify_stratifying_system(const std::vector<Module>& theta);

/// Nonnegative m with sum m_i dim theta(i) = dim M (at most `cap` solutions).
std::vector<std::vector<int>> feasible_multiplicities(const Module& m, const std::vector<Module>& theta,
                                                      std::size_t cap = 4096);

struct FiltrationLayer {
  int index = 0;  // position in the system
  int multiplicity = 0;
  Module module;         // M_k
  ModuleMorphism epi;    // M_k -> theta(index)^multiplicity
  Module kernel;         // M_{k+1}
  ModuleMorphism kernel_inclusion;
};

struct FiltrationCertificate {
  Module module;
  std::vector<FiltrationLayer> layers;  // top-down, ending at 0
};

enum class Membership { Member, NonMember, Unknown };

struct FiltrationResult {
  Membership status = Membership::Unknown;
  std::optional<FiltrationCertificate> certificate;
};

struct FiltrationOptions {
  int depth_cap = kDefaultDepth;
  int random_attempts = 24;
  std::uint64_t seed = 1;
};

FiltrationResult filtration_search(const Module& m, const StratSystem& system,
                                   const FiltrationOptions& options = {});
bool verify_certificate(const FiltrationCertificate& cert, const StratSystem& system);

struct SupportData {
  std::vector<int> multiplicities;  // [M : theta(i)], index i-1
  std::vector<int> support;
  std::optional<int> min;  // empty: +infinity
  std::optional<int> max;  // empty: -infinity
};

SupportData support_data(const FiltrationCertificate& cert, std::size_t system_size);
StratSystem restrict_system(const StratSystem& system, const FiltrationCertificate& cert);

struct Epss {
  std::vector<Module> q;
  std::vector<ModuleMorphism> projection;  // Q(i) -> theta(i)
  std::vector<Module> k;
  std::vector<ModuleMorphism> kernel_inclusion;  // K(i) -> Q(i)
  std::vector<FiltrationCertificate> k_certificates;
  Module q_sum;
  int passes = 0;
};

Epss build_epss(const StratSystem& system, int iter_cap = 16);

struct ExtProjectiveCover {
  Module q0;
  std::vector<int> q_multiplicities;  // copies of Q(j) in q0, index j-1
  ModuleMorphism epsilon;
  Module kernel;
  ModuleMorphism kernel_inclusion;
  FiltrationCertificate kernel_certificate;
};

ExtProjectiveCover ext_projective_cover(const Module& m, const FiltrationCertificate& cert,
                                        const StratSystem& system, const Epss& epss);

bool is_ext_projective(const Module& x, const StratSystem& system);
bool is_ext_injective(const Module& x, const StratSystem& system);

struct InfinitePart {
  std::vector<int> infinity;  // positions with infinite pd
  int s = 0;
  std::vector<PdResult> pds;
};

/// Throws Undecided when some pd theta(i) is Unknown at max_depth.
InfinitePart infinite_part(const StratSystem& system, ClassRegistry& registry, int max_depth = kDefaultDepth);

struct Assumptions {
  bool three_finitistic = false;
  bool three_cardinal = false;
};

struct BoundReport {
  std::size_t card = 0;
  bool supported = true;
  std::vector<int> infinity;
  int s = 0;
  std::string theorem;
  std::optional<int> alpha, beta, epsilon0;
  std::optional<int> psi_dim_bound;   // card 1
  std::optional<int> finitistic_bound, cardinal_bound;  // card 3
  std::optional<int> bound;
  std::vector<std::string> assumptions_used;
};

BoundReport finitistic_bound(const StratSystem& system, const Epss* epss, ClassRegistry& registry,
                             int max_depth = kDefaultDepth, Assumptions assumptions = {});

enum class Verdict { Holds, Vacuous, Violated, Undecided };

struct ThreePropertySample {
  std::string label;
  std::vector<int> support_module;
  std::vector<int> support_kernel;
  PdResult pd_module;
  PdResult pd_kernel;
  Verdict finitistic = Verdict::Vacuous;
  Verdict cardinal = Verdict::Vacuous;
  std::string note;
};

struct ThreePropertiesReport {
  std::vector<int> infinity;
  std::vector<ThreePropertySample> samples;
  bool finitistic_counterexample = false;
  bool cardinal_counterexample = false;
};

ThreePropertiesReport check_three_properties(const StratSystem& system, const Epss& epss,
                                             const std::vector<std::pair<Module, FiltrationCertificate>>& samples,
                                             ClassRegistry& registry, int max_depth = kDefaultDepth);

struct StandardlyStratifiedResult {
  Membership status = Membership::Unknown;
  std::vector<FiltrationResult> projectives;
};

StandardlyStratifiedResult is_standardly_stratified(const AlgebraPtr& algebra, int max_depth = kDefaultDepth);

}  // namespace findim
