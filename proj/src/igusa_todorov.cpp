#include "findim/igusa_todorov.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "findim/error.hpp"

namespace findim {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::size_t kMaxOrbitClasses = 4000;

std::size_t bareiss_rank(std::vector<std::vector<cpp_int>> rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows.size(), m = rows.front().size();
  std::size_t r = 0;
  cpp_int prev = 1;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m; ++j) {
        rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) / prev;
      }
      rows[i][c] = 0;
    }
    prev = rows[r][c];
    ++r;
  }
  return r;
}

// Closure of a class set under Omega, level by level.
struct Orbit {
  std::vector<std::size_t> classes;
  std::map<std::size_t, std::size_t> index;
  std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> edges;  // expanded only
  bool closed = false;
  int closed_at = 0;
  int levels = 0;
};

Orbit explore(const std::vector<std::size_t>& start, ClassRegistry& registry, int max_depth) {
  Orbit orbit;
  std::vector<std::size_t> level;
  for (std::size_t c : start) {
    if (registry.info(c).projective) continue;
    if (orbit.index.emplace(c, orbit.classes.size()).second) {
      orbit.classes.push_back(c);
      level.push_back(c);
    }
  }
  while (true) {
    if (level.empty()) {
      orbit.closed = true;
      orbit.closed_at = orbit.levels;
      return orbit;
    }
    if (orbit.levels >= max_depth || orbit.classes.size() > kMaxOrbitClasses) return orbit;
    std::vector<std::size_t> next;
    for (std::size_t c : level) {
      auto om = registry.omega(c);
      for (const auto& [d, k] : om) {
        if (orbit.index.emplace(d, orbit.classes.size()).second) {
          orbit.classes.push_back(d);
          next.push_back(d);
        }
      }
      orbit.edges.emplace(c, std::move(om));
    }
    ++orbit.levels;
    level = std::move(next);
  }
}

std::vector<std::size_t> non_projective_classes(const Module& m, ClassRegistry& registry) {
  std::vector<std::size_t> out;
  for (const auto& s : registry.decompose(m).summands) out.push_back(s.class_id);
  return out;
}

}  // namespace

std::size_t rational_rank(const std::vector<std::vector<long long>>& columns) {
  if (columns.empty()) return 0;
  std::vector<std::vector<cpp_int>> rows(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (long long x : columns[i]) rows[i].emplace_back(x);
  return bareiss_rank(std::move(rows));
}

KVector k_class(const Module& m, ClassRegistry& registry) {
  KVector out;
  for (const auto& s : registry.decompose(m).summands) out[s.class_id] += s.multiplicity;
  return out;
}

std::vector<KVector> span_generators(const Module& m, ClassRegistry& registry) {
  std::vector<KVector> out;
  for (std::size_t c : non_projective_classes(m, registry)) out.push_back(KVector{{c, 1}});
  return out;
}

KVector omega_k(const KVector& v, ClassRegistry& registry, int times) {
  KVector current = v;
  for (int t = 0; t < times; ++t) {
    KVector next;
    for (const auto& [c, k] : current) {
      if (k == 0) continue;
      for (const auto& [d, j] : registry.omega(c)) next[d] += k * j;
    }
    current = std::move(next);
  }
  return current;
}

// ---- projective dimension -----------------------------------------------------

PdResult pd_of_classes(const std::vector<std::size_t>& classes, ClassRegistry& registry, int max_depth) {
  PdResult out;
  Orbit orbit = explore(classes, registry, max_depth);
  out.depth_reached = orbit.levels;
  if (orbit.classes.empty()) {
    out.status = PdStatus::Finite;
    return out;
  }
  // Cycle search among expanded classes.
  std::map<std::size_t, int> color;  // 0 white, 1 on stack, 2 done
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cycle;
  std::function<bool(std::size_t)> dfs = [&](std::size_t c) -> bool {
    auto it = orbit.edges.find(c);
    if (it == orbit.edges.end()) return false;
    color[c] = 1;
    stack.push_back(c);
    for (const auto& [d, k] : it->second) {
      if (color[d] == 1) {
        auto pos = std::find(stack.begin(), stack.end(), d);
        cycle.assign(pos, stack.end());
        return true;
      }
      if (color[d] == 0 && dfs(d)) return true;
    }
    stack.pop_back();
    color[c] = 2;
    return false;
  };
  for (std::size_t c : orbit.classes) {
    if (color[c] == 0 && dfs(c)) {
      out.status = PdStatus::Infinite;
      out.cycle = cycle;
      return out;
    }
  }
  if (!orbit.closed) return out;
  std::map<std::size_t, int> memo;
  std::function<int(std::size_t)> longest = [&](std::size_t c) -> int {
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    int best = 1;
    for (const auto& [d, k] : orbit.edges.at(c)) best = std::max(best, 1 + longest(d));
    memo[c] = best;
    return best;
  };
  out.status = PdStatus::Finite;
  for (std::size_t c : orbit.classes) {
    if (std::find(classes.begin(), classes.end(), c) != classes.end()) out.value = std::max(out.value, longest(c));
  }
  return out;
}

PdResult pd(const Module& m, ClassRegistry& registry, int max_depth) {
  return pd_of_classes(non_projective_classes(m, registry), registry, max_depth);
}

// ---- Phi and Psi ----------------------------------------------------------------

PhiResult phi_of_classes(const std::vector<std::size_t>& generators, ClassRegistry& registry, int max_depth) {
  PhiResult out;
  Orbit orbit = explore(generators, registry, max_depth);
  out.orbit_size = orbit.classes.size();
  std::vector<std::size_t> gens;
  for (std::size_t c : generators)
    if (orbit.index.count(c) && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  const std::size_t n = orbit.classes.size();

  // Columns T^m G, iterated while they stay inside the expanded part.
  std::vector<std::vector<cpp_int>> cols;
  for (std::size_t g : gens) {
    std::vector<cpp_int> v(n);
    v[orbit.index.at(g)] = 1;
    cols.push_back(std::move(v));
  }
  const std::size_t steps = orbit.closed ? n : static_cast<std::size_t>(orbit.levels);
  for (std::size_t m = 0;; ++m) {
    out.rank_trace.push_back(static_cast<long long>(bareiss_rank(cols)));
    if (m == steps) break;
    bool inside = true;
    std::vector<std::vector<cpp_int>> next;
    for (const auto& v : cols) {
      std::vector<cpp_int> w(n);
      for (std::size_t i = 0; i < n && inside; ++i) {
        if (v[i] == 0) continue;
        auto it = orbit.edges.find(orbit.classes[i]);
        if (it == orbit.edges.end()) {
          inside = false;
          break;
        }
        for (const auto& [d, k] : it->second) w[orbit.index.at(d)] += v[i] * k;
      }
      next.push_back(std::move(w));
    }
    if (!inside) break;
    cols = std::move(next);
  }
  if (!orbit.closed) return out;
  out.orbit_closed_at = orbit.closed_at;
  const long long final_rank = out.rank_trace.back();
  int value = static_cast<int>(out.rank_trace.size()) - 1;
  while (value > 0 && out.rank_trace[static_cast<std::size_t>(value - 1)] == final_rank) --value;
  out.value = value;
  return out;
}

PhiResult phi(const Module& m, ClassRegistry& registry, int max_depth) {
  return phi_of_classes(non_projective_classes(m, registry), registry, max_depth);
}

PsiReport psi_of_classes(const std::vector<std::size_t>& generators, ClassRegistry& registry, int max_depth) {
  PhiResult ph = phi_of_classes(generators, registry, max_depth);
  if (!ph.value) {
    throw Error(ErrorCode::Undecided, "Phi undecided: Omega orbit not closed within depth " +
                                          std::to_string(max_depth));
  }
  PsiReport out;
  out.phi = *ph.value;
  out.rank_trace = ph.rank_trace;
  KVector v;
  for (std::size_t c : generators)
    if (!registry.info(c).projective) v[c] = 1;
  for (const auto& [c, k] : omega_k(v, registry, out.phi))
    if (k != 0) out.c_m.push_back(c);
  for (std::size_t c : out.c_m) {
    PdResult r = pd_of_classes({c}, registry, max_depth);
    if (r.status == PdStatus::Unknown) {
      throw Error(ErrorCode::Undecided, "pd of summand " + registry.info(c).witness.label() +
                                            " undecided within depth " + std::to_string(max_depth));
    }
    if (r.status == PdStatus::Finite) out.pfd_c_m = std::max(out.pfd_c_m, r.value);
  }
  out.psi = out.phi + out.pfd_c_m;
  return out;
}

PsiReport psi(const Module& m, ClassRegistry& registry, int max_depth) {
  return psi_of_classes(non_projective_classes(m, registry), registry, max_depth);
}

int psi_dim_finite_family(const std::vector<Module>& modules, ClassRegistry& registry, int max_depth) {
  if (modules.empty()) throw Error(ErrorCode::InvalidArgument, "empty family");
  int best = 0;
  for (const auto& m : modules) best = std::max(best, psi(m, registry, max_depth).psi);
  return best;
}

RadCubeReport radcube_pfd_bound(const AlgebraPtr& algebra, ClassRegistry& registry, int max_depth) {
  if (algebra->nilpotency_degree() > 3) {
    throw Error(ErrorCode::RadCubeNotZero, "rad^3 is nonzero (nilpotency degree " +
                                               std::to_string(algebra->nilpotency_degree()) + ")");
  }
  Module test = direct_sum({radical_power_quotient(algebra, 1), radical_power_quotient(algebra, 2)}, algebra);
  RadCubeReport out;
  out.psi = psi(test, registry, max_depth);
  out.bound = 2 + out.psi.psi;
  return out;
}

}  // namespace findim
