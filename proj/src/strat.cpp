#include "findim/strat.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "findim/error.hpp"

namespace findim {

namespace {

std::size_t as_size(int v) { return static_cast<std::size_t>(v); }

void enumerate(const std::vector<std::vector<int>>& dims, std::size_t k, std::vector<int>& remaining,
               std::vector<int>& current, std::vector<std::vector<int>>& out, std::size_t cap) {
  if (out.size() >= cap) return;
  if (k == dims.size()) {
    if (std::all_of(remaining.begin(), remaining.end(), [](int r) { return r == 0; })) out.push_back(current);
    return;
  }
  const auto& d = dims[k];
  int bound = -1;
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (d[v] == 0) continue;
    const int b = remaining[v] / d[v];
    bound = bound < 0 ? b : std::min(bound, b);
  }
  if (bound < 0) bound = 0;  // zero module: multiplicity carries no information
  for (int m = 0; m <= bound; ++m) {
    for (std::size_t v = 0; v < d.size(); ++v) remaining[v] -= m * d[v];
    current[k] = m;
    enumerate(dims, k + 1, remaining, current, out, cap);
    for (std::size_t v = 0; v < d.size(); ++v) remaining[v] += m * d[v];
  }
  current[k] = 0;
}

bool stacked_full_rank(const std::vector<ModuleMorphism>& maps, const ModuleMorphism& to_top, const Module& m) {
  // [pi h_1; ...; pi h_k] has full row rank at every vertex.
  for (int v = 1; v <= m.vertex_count(); ++v) {
    std::vector<Matrix> rows;
    std::size_t total = 0;
    for (const auto& h : maps) {
      rows.push_back(to_top.at(v) * h.at(v));
      total += rows.back().rows();
    }
    if (total == 0) continue;
    if (rank(Matrix::vstack(rows, as_size(m.dim(v)), m.prime())) != total) return false;
  }
  return true;
}

ModuleMorphism stack_maps(const Module& m, const Module& target, const std::vector<ModuleMorphism>& maps) {
  ModuleMorphism f{m, target, {}};
  for (int v = 1; v <= m.vertex_count(); ++v) {
    std::vector<Matrix> rows;
    for (const auto& h : maps) rows.push_back(h.at(v));
    f.maps.push_back(rows.empty() ? Matrix(0, as_size(m.dim(v)), m.prime())
                                  : Matrix::vstack(rows, as_size(m.dim(v)), m.prime()));
  }
  return f;
}

// Largest epi M -> theta^m found from Hom(M, theta) through the top of theta.
std::vector<ModuleMorphism> max_epi_components(const Module& m, const Module& theta, int random_attempts,
                                               std::mt19937_64& rng) {
  auto basis = hom_basis(m, theta);
  std::vector<ModuleMorphism> chosen;
  if (basis.empty()) return chosen;
  Quotient topq = quotient(theta, radical(theta).inclusion);
  const ModuleMorphism& to_top = topq.projection;
  for (const auto& h : basis) {
    chosen.push_back(h);
    if (!stacked_full_rank(chosen, to_top, m)) chosen.pop_back();
  }
  if (topq.module.total_dim() == 1) return chosen;  // functionals: the greedy pass is optimal
  std::uniform_int_distribution<Scalar> coef(0, m.prime() - 1);
  int failures = 0;
  while (failures < random_attempts) {
    ModuleMorphism g = zero_morphism(m, theta);
    for (const auto& h : basis) g = add(g, scale(h, coef(rng)));
    chosen.push_back(g);
    if (stacked_full_rank(chosen, to_top, m)) {
      failures = 0;
    } else {
      chosen.pop_back();
      ++failures;
    }
  }
  return chosen;
}

Membership search(const Module& m, const StratSystem& system, int first, int depth, const FiltrationOptions& opt,
                  std::mt19937_64& rng, std::vector<FiltrationLayer>& layers) {
  if (m.is_zero()) return Membership::Member;
  if (depth <= 0) return Membership::Unknown;
  const int t = static_cast<int>(system.size());
  std::vector<Module> tail(system.theta.begin() + first - 1, system.theta.end());
  auto feasible = feasible_multiplicities(m, tail);
  if (feasible.empty()) return Membership::NonMember;
  for (int i = first; i <= t; ++i) {
    const bool candidate = std::any_of(feasible.begin(), feasible.end(),
                                       [&](const std::vector<int>& f) { return f[as_size(i - first)] > 0; });
    if (!candidate) continue;
    auto parts = max_epi_components(m, system.at(i), opt.random_attempts, rng);
    if (parts.empty()) continue;
    const int mult = static_cast<int>(parts.size());
    Module target = power(system.at(i), mult);
    ModuleMorphism epi = stack_maps(m, target, parts);
    Subobject ker = kernel(epi);
    std::vector<FiltrationLayer> rest;
    if (search(ker.module, system, i + 1, depth - 1, opt, rng, rest) == Membership::Member) {
      layers.push_back({i, mult, m, epi, ker.module, ker.inclusion});
      layers.insert(layers.end(), rest.begin(), rest.end());
      return Membership::Member;
    }
  }
  return Membership::Unknown;
}

KVector classes_after_omega(const Module& m, int times, ClassRegistry& registry) {
  return omega_k(k_class(m, registry), registry, times);
}

std::vector<std::size_t> support_of(const std::vector<KVector>& parts) {
  std::set<std::size_t> ids;
  for (const auto& v : parts)
    for (const auto& [c, k] : v)
      if (k != 0) ids.insert(c);
  return {ids.begin(), ids.end()};
}

int psi_of(const std::vector<KVector>& parts, ClassRegistry& registry, int depth) {
  return psi_of_classes(support_of(parts), registry, depth).psi;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

std::vector<Module> standard_modules(const AlgebraPtr& algebra) {
  std::vector<Module> out;
  const int n = algebra->vertex_count();
  for (int i = 1; i <= n; ++i) {
    std::set<int> above;
    for (int j = i + 1; j <= n; ++j) above.insert(j);
    out.push_back(trace_quotient(projective(algebra, i), above).with_label("D(" + std::to_string(i) + ")"));
  }
  return out;
}

StratSystem verify_stratifying_system(const std::vector<Module>& theta) {
  if (theta.empty()) throw Error(ErrorCode::InvalidArgument, "empty stratifying system");
  StratSystem s;
  s.theta = theta;
  const int t = static_cast<int>(theta.size());
  for (int i = 1; i <= t; ++i) {
    s.indices.push_back(i);
    if (!theta.front().same_algebra(theta[as_size(i - 1)])) {
      throw Error(ErrorCode::AlgebraMismatch, "system members over different algebras");
    }
    if (!is_indecomposable(theta[as_size(i - 1)])) s.not_indecomposable.push_back(i);
  }
  for (int j = 1; j <= t; ++j) {
    for (int i = 1; i <= t; ++i) {
      if (j > i && hom_dim(s.at(j), s.at(i)) != 0) s.hom_violations.emplace_back(j, i);
      if (j >= i && ext1_dim(s.at(j), s.at(i)) != 0) s.ext_violations.emplace_back(j, i);
    }
  }
  return s;
}

std::vector<std::vector<int>> feasible_multiplicities(const Module& m, const std::vector<Module>& theta,
                                                      std::size_t cap) {
  std::vector<std::vector<int>> dims;
  for (const auto& th : theta) dims.push_back(th.dims());
  std::vector<int> remaining = m.dims();
  std::vector<int> current(theta.size(), 0);
  std::vector<std::vector<int>> out;
  enumerate(dims, 0, remaining, current, out, cap);
  return out;
}

FiltrationResult filtration_search(const Module& m, const StratSystem& system, const FiltrationOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<FiltrationLayer> layers;
  FiltrationResult out;
  out.status = search(m, system, 1, options.depth_cap, options, rng, layers);
  if (out.status == Membership::Member) out.certificate = FiltrationCertificate{m, std::move(layers)};
  return out;
}

bool verify_certificate(const FiltrationCertificate& cert, const StratSystem& system) {
  Module current = cert.module;
  for (const auto& layer : cert.layers) {
    if (layer.index < 1 || layer.index > static_cast<int>(system.size())) return false;
    if (layer.module.dims() != current.dims()) return false;
    if (!layer.epi.is_homomorphism() || !layer.epi.is_surjective()) return false;
    if (layer.epi.target.dims() != power(system.at(layer.index), layer.multiplicity).dims()) return false;
    if (!layer.kernel_inclusion.is_homomorphism() || !layer.kernel_inclusion.is_injective()) return false;
    if (!compose(layer.epi, layer.kernel_inclusion).is_zero()) return false;
    if (layer.kernel.total_dim() + layer.epi.target.total_dim() != layer.module.total_dim()) return false;
    current = layer.kernel;
  }
  return current.is_zero();
}

SupportData support_data(const FiltrationCertificate& cert, std::size_t system_size) {
  SupportData out;
  out.multiplicities.assign(system_size, 0);
  for (const auto& layer : cert.layers) out.multiplicities[as_size(layer.index - 1)] += layer.multiplicity;
  for (std::size_t i = 0; i < system_size; ++i) {
    if (out.multiplicities[i] == 0) continue;
    const int idx = static_cast<int>(i) + 1;
    out.support.push_back(idx);
    if (!out.min) out.min = idx;
    out.max = idx;
  }
  return out;
}

StratSystem restrict_system(const StratSystem& system, const FiltrationCertificate& cert) {
  SupportData sd = support_data(cert, system.size());
  StratSystem out;
  for (int i : sd.support) {
    out.theta.push_back(system.at(i));
    out.indices.push_back(system.indices.empty() ? i : system.indices[as_size(i - 1)]);
  }
  return out;
}

Epss build_epss(const StratSystem& system, int iter_cap) {
  const int t = static_cast<int>(system.size());
  Epss out;
  out.q.resize(as_size(t));
  out.projection.resize(as_size(t));
  out.k.resize(as_size(t));
  out.kernel_inclusion.resize(as_size(t));
  out.k_certificates.resize(as_size(t));
  for (int i = t; i >= 1; --i) {
    Module x = system.at(i);
    ModuleMorphism to_theta = identity_morphism(x);
    bool converged = false;
    int pass = 0;
    // Ascending j: each universal extension by theta(j) keeps Ext^1 against
    // the smaller theta(j') at zero, so one pass normally suffices.
    while (pass < iter_cap && !converged) {
      ++pass;
      for (int j = i + 1; j <= t; ++j) {
        Extension e = universal_extension(x, system.at(j));
        if (e.multiplicity == 0) continue;
        to_theta = compose(to_theta, e.projection);
        x = e.middle;
      }
      converged = true;
      for (int j = i + 1; j <= t && converged; ++j) converged = ext1_dim(x, system.at(j)) == 0;
    }
    if (!converged) {
      throw Error(ErrorCode::EpssNotConverged, "Q(" + std::to_string(i) + ") not Ext-projective after " +
                                                   std::to_string(iter_cap) + " passes");
    }
    out.passes = std::max(out.passes, pass);
    // When some End(theta(j)) is not a division ring the extension carries
    // superfluous copies of theta(j); keep the smallest indecomposable summand
    // that still maps onto theta(i).
    std::vector<Piece> pieces = split_indecomposables(x);
    if (pieces.size() > 1) {
      std::optional<std::pair<Module, ModuleMorphism>> best;
      for (const auto& pc : pieces) {
        ModuleMorphism f = compose(to_theta, pc.inclusion);
        if (f.is_surjective() && (!best || pc.module.total_dim() < best->first.total_dim())) best.emplace(pc.module, f);
      }
      if (!best) {
        throw Error(ErrorCode::CoverNotFound, "no indecomposable summand of the extension maps onto theta(" +
                                                  std::to_string(i) + ")");
      }
      x = best->first;
      to_theta = best->second;
    }
    const auto ii = as_size(i - 1);
    out.q[ii] = x.with_label("Q(" + std::to_string(i) + ")");
    to_theta.source = out.q[ii];
    out.projection[ii] = to_theta;
    Subobject ker = kernel(to_theta);
    out.k[ii] = ker.module.with_label("K(" + std::to_string(i) + ")");
    ker.inclusion.source = out.k[ii];
    ker.inclusion.target = out.q[ii];
    out.kernel_inclusion[ii] = ker.inclusion;
    FiltrationResult fr = filtration_search(out.k[ii], system);
    if (fr.status != Membership::Member) {
      throw Error(ErrorCode::ValidationFailed, "K(" + std::to_string(i) + ") has no filtration certificate");
    }
    for (const auto& layer : fr.certificate->layers) {
      if (layer.index <= i) {
        throw Error(ErrorCode::ValidationFailed, "K(" + std::to_string(i) + ") filters by theta(" +
                                                     std::to_string(layer.index) + ")");
      }
    }
    out.k_certificates[ii] = *fr.certificate;
  }
  out.q_sum = direct_sum(out.q, system.theta.front().algebra_ptr()).with_label("Q");
  for (int j = 1; j <= t; ++j) {
    if (ext1_dim(out.q_sum, system.at(j)) != 0) {
      throw Error(ErrorCode::ValidationFailed, "Ext^1(Q, theta(" + std::to_string(j) + ")) != 0");
    }
  }
  for (int i = 1; i <= t; ++i) {
    if (!is_indecomposable(out.q[as_size(i - 1)])) {
      throw Error(ErrorCode::ValidationFailed, "Q(" + std::to_string(i) + ") is decomposable");
    }
  }
  return out;
}

ExtProjectiveCover ext_projective_cover(const Module& m, const FiltrationCertificate& cert,
                                        const StratSystem& system, const Epss& epss) {
  const AlgebraPtr& algebra = m.algebra_ptr();
  const int t = static_cast<int>(system.size());
  SupportData sd = support_data(cert, system.size());
  if (m.is_zero()) {
    Module zero = Module::zero(algebra);
    return {zero, std::vector<int>(as_size(t), 0), zero_morphism(zero, m), zero, zero_morphism(zero, zero),
            FiltrationCertificate{zero, {}}};
  }
  const int lo = *sd.min;
  struct Candidate {
    int j;
    ModuleMorphism map;
  };
  std::vector<Candidate> cands;
  for (int j = lo; j <= t; ++j)
    for (auto& h : hom_basis(epss.q[as_size(j - 1)], m)) cands.push_back({j, std::move(h)});

  auto assemble = [&](const std::vector<Candidate>& cs) {
    std::vector<Module> parts;
    for (const auto& c : cs) parts.push_back(epss.q[as_size(c.j - 1)]);
    Module q0 = direct_sum(parts, algebra);
    ModuleMorphism eps{q0, m, {}};
    for (int v = 1; v <= m.vertex_count(); ++v) {
      std::vector<Matrix> blocks;
      for (const auto& c : cs) blocks.push_back(c.map.at(v));
      eps.maps.push_back(blocks.empty() ? Matrix(as_size(m.dim(v)), 0, m.prime())
                                        : Matrix::hstack(blocks, as_size(m.dim(v)), m.prime()));
    }
    return eps;
  };

  ModuleMorphism eps = assemble(cands);
  if (!eps.is_surjective()) {
    throw Error(ErrorCode::CoverNotFound, "Q-summands do not cover " + dim_vector_string(m));
  }
  Subobject ker = kernel(eps);
  FiltrationResult kr = filtration_search(ker.module, system);
  if (kr.status != Membership::Member) {
    throw Error(ErrorCode::CoverNotFound, "kernel of the full Q-approximation is not certified in F(theta)");
  }
  for (std::size_t k = cands.size(); k-- > 0;) {
    std::vector<Candidate> trial = cands;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
    ModuleMorphism e = assemble(trial);
    if (!e.is_surjective()) continue;
    Subobject tk = kernel(e);
    FiltrationResult tr = filtration_search(tk.module, system);
    if (tr.status != Membership::Member) continue;
    cands = std::move(trial);
    eps = std::move(e);
    ker = std::move(tk);
    kr = std::move(tr);
  }
  ExtProjectiveCover out;
  out.q_multiplicities.assign(as_size(t), 0);
  for (const auto& c : cands) ++out.q_multiplicities[as_size(c.j - 1)];
  out.q0 = eps.source;
  out.epsilon = eps;
  out.kernel = ker.module;
  out.kernel_inclusion = ker.inclusion;
  out.kernel_certificate = *kr.certificate;
  SupportData ks = support_data(out.kernel_certificate, system.size());
  if (ks.min && *ks.min <= lo) {
    throw Error(ErrorCode::CoverNotFound, "kernel does not raise min: " + std::to_string(*ks.min) +
                                              " <= " + std::to_string(lo));
  }
  return out;
}

bool is_ext_projective(const Module& x, const StratSystem& system) {
  for (const auto& th : system.theta)
    if (ext1_dim(x, th) != 0) return false;
  return true;
}

bool is_ext_injective(const Module& x, const StratSystem& system) {
  for (const auto& th : system.theta)
    if (ext1_dim(th, x) != 0) return false;
  return true;
}

InfinitePart infinite_part(const StratSystem& system, ClassRegistry& registry, int max_depth) {
  InfinitePart out;
  for (int i = 1; i <= static_cast<int>(system.size()); ++i) {
    PdResult r = pd(system.at(i), registry, max_depth);
    if (r.status == PdStatus::Unknown) {
      throw Error(ErrorCode::Undecided, "pd theta(" + std::to_string(i) + ") undecided within depth " +
                                            std::to_string(max_depth));
    }
    if (r.status == PdStatus::Infinite) {
      out.infinity.push_back(i);
    } else {
      out.s = std::max(out.s, r.value);
    }
    out.pds.push_back(std::move(r));
  }
  return out;
}

BoundReport finitistic_bound(const StratSystem& system, const Epss* epss, ClassRegistry& registry, int max_depth,
                             Assumptions assumptions) {
  InfinitePart ip = infinite_part(system, registry, max_depth);
  BoundReport out;
  out.infinity = ip.infinity;
  out.card = ip.infinity.size();
  out.s = ip.s;
  const int s = ip.s;
  auto theta_at = [&](int idx, int times) { return classes_after_omega(system.at(idx), times, registry); };
  auto q_at = [&](int times) { return classes_after_omega(epss->q_sum, times, registry); };
  switch (out.card) {
    case 0:
      out.theorem = "pd F(theta) = pd theta";
      out.bound = s;
      return out;
    case 1: {
      const int i0 = ip.infinity[0];
      out.theorem = "card 1";
      out.bound = s;
      out.psi_dim_bound = 1 + s + psi_of({theta_at(i0, s + 1)}, registry, max_depth);
      return out;
    }
    case 2: {
      if (!epss) throw Error(ErrorCode::MissingEpss, "card 2 needs the Ext-projective system");
      const int i0 = ip.infinity[0], i1 = ip.infinity[1];
      out.theorem = "card 2";
      out.alpha = psi_of({theta_at(i1, s + 1), theta_at(i0, s + 2)}, registry, max_depth);
      out.beta = psi_of({q_at(s + 1), theta_at(i1, s + 1)}, registry, max_depth);
      out.bound = s + 2 + std::min(*out.alpha, *out.beta);
      return out;
    }
    case 3: {
      if (!epss) throw Error(ErrorCode::MissingEpss, "card 3 needs the Ext-projective system");
      if (!assumptions.three_finitistic && !assumptions.three_cardinal) {
        throw Error(ErrorCode::MissingAssumption, "card 3 needs the 3-finitistic or 3-cardinal assumption");
      }
      const int i0 = ip.infinity[0], i1 = ip.infinity[1], i2 = ip.infinity[2];
      out.theorem = "card 3";
      if (assumptions.three_finitistic) {
        out.assumptions_used.push_back("3-finitistic");
        out.epsilon0 = psi_of({theta_at(i2, s + 1), theta_at(i1, s + 2)}, registry, max_depth);
        const int e0 = *out.epsilon0;
        const int a = s + e0 + 3, b = s + e0 + 4;
        const int tail = psi_of({theta_at(i1, a), theta_at(i2, a), q_at(a), theta_at(i0, b), theta_at(i1, b)},
                                registry, max_depth);
        out.finitistic_bound = s + 4 + e0 + tail;
      }
      if (assumptions.three_cardinal) {
        out.assumptions_used.push_back("3-cardinal");
        const int first = psi_of({theta_at(i2, s + 1), q_at(s + 2)}, registry, max_depth);
        const int second = psi_of({theta_at(i1, s + 1), theta_at(i2, s + 1), q_at(s + 1), theta_at(i0, s + 2),
                                   theta_at(i1, s + 2)},
                                  registry, max_depth);
        out.cardinal_bound = s + 2 + std::max(first, second);
      }
      if (out.finitistic_bound && out.cardinal_bound) {
        out.bound = std::min(*out.finitistic_bound, *out.cardinal_bound);
      } else {
        out.bound = out.finitistic_bound ? out.finitistic_bound : out.cardinal_bound;
      }
      return out;
    }
    default:
      out.supported = false;
      out.theorem = "unsupported";
      return out;
  }
}

ThreePropertiesReport check_three_properties(const StratSystem& system, const Epss& epss,
                                             const std::vector<std::pair<Module, FiltrationCertificate>>& samples,
                                             ClassRegistry& registry, int max_depth) {
  ThreePropertiesReport out;
  InfinitePart ip = infinite_part(system, registry, max_depth);
  if (ip.infinity.size() != 3) {
    throw Error(ErrorCode::InvalidArgument, "the 3-properties need card infinity = 3, got " +
                                                std::to_string(ip.infinity.size()));
  }
  out.infinity = ip.infinity;
  const int i0 = ip.infinity[0], i1 = ip.infinity[1], i2 = ip.infinity[2];
  for (const auto& [m, cert] : samples) {
    ThreePropertySample row;
    row.label = m.label().empty() ? dim_vector_string(m) : m.label();
    row.support_module = support_data(cert, system.size()).support;
    try {
      ExtProjectiveCover cover = ext_projective_cover(m, cert, system, epss);
      row.support_kernel = support_data(cover.kernel_certificate, system.size()).support;
      row.pd_module = pd(m, registry, max_depth);
      row.pd_kernel = pd(cover.kernel, registry, max_depth);
    } catch (const Error& e) {
      row.finitistic = row.cardinal = Verdict::Undecided;
      row.note = std::string(error_code_name(e.code())) + ": " + e.what();
      out.samples.push_back(std::move(row));
      continue;
    }
    // 3-finitistic: i1, i2 in Supp(Ker) and pd M finite => pd Ker finite.
    if (contains(row.support_kernel, i1) && contains(row.support_kernel, i2)) {
      if (row.pd_module.status == PdStatus::Unknown) {
        row.finitistic = Verdict::Undecided;
      } else if (row.pd_module.status == PdStatus::Infinite) {
        row.finitistic = Verdict::Vacuous;
      } else if (row.pd_kernel.status == PdStatus::Finite) {
        row.finitistic = Verdict::Holds;
      } else if (row.pd_kernel.status == PdStatus::Infinite) {
        row.finitistic = Verdict::Violated;
      } else {
        row.finitistic = Verdict::Undecided;
      }
    }
    // 3-cardinal: Supp(M) meets infinity in {i0, i1} => |Supp(Ker) meets infinity| <= 1.
    std::vector<int> meet_m, meet_k;
    for (int i : ip.infinity) {
      if (contains(row.support_module, i)) meet_m.push_back(i);
      if (contains(row.support_kernel, i)) meet_k.push_back(i);
    }
    if (meet_m == std::vector<int>{i0, i1}) row.cardinal = meet_k.size() <= 1 ? Verdict::Holds : Verdict::Violated;
    out.finitistic_counterexample |= row.finitistic == Verdict::Violated;
    out.cardinal_counterexample |= row.cardinal == Verdict::Violated;
    out.samples.push_back(std::move(row));
  }
  return out;
}

StandardlyStratifiedResult is_standardly_stratified(const AlgebraPtr& algebra, int max_depth) {
  StratSystem delta = verify_stratifying_system(standard_modules(algebra));
  StandardlyStratifiedResult out;
  out.status = Membership::Member;
  FiltrationOptions opt;
  opt.depth_cap = max_depth;
  for (int i = 1; i <= algebra->vertex_count(); ++i) {
    FiltrationResult r = filtration_search(projective(algebra, i), delta, opt);
    if (r.status == Membership::NonMember) {
      out.status = Membership::NonMember;
    } else if (r.status == Membership::Unknown && out.status == Membership::Member) {
      out.status = Membership::Unknown;
    }
    out.projectives.push_back(std::move(r));
  }
  return out;
}

}  // namespace findim
