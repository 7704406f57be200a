#include "findim/algebra.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "findim/error.hpp"

namespace findim {

namespace {

constexpr std::size_t kMaxPathCount = 200000;

// Dense vector over an indexed set of paths.
struct PathSpace {
  std::vector<Path> paths;          // ordered by (length, source, arrows)
  std::map<Path, std::size_t> index;
  std::size_t max_length = 0;
};

bool path_order(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a < b;
}

PathSpace enumerate_paths(const Quiver& q, std::size_t max_length) {
  PathSpace space;
  space.max_length = max_length;
  std::vector<Path> layer;
  for (int v = 1; v <= q.vertex_count(); ++v) layer.push_back(Path{v, {}});
  std::vector<Path> all = layer;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Path> next;
    for (const auto& p : layer) {
      const int end = path_target(q, p);
      for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        if (q.arrow(a).source != end) continue;
        Path ext = p;
        ext.arrows.push_back(static_cast<int>(a));
        next.push_back(std::move(ext));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    if (all.size() > kMaxPathCount) {
      throw Error(ErrorCode::NotFiniteDimensional,
                  "path space exceeds " + std::to_string(kMaxPathCount) +
                      " paths before the relations bound the radical");
    }
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), path_order);
  space.paths = std::move(all);
  for (std::size_t i = 0; i < space.paths.size(); ++i) space.index.emplace(space.paths[i], i);
  return space;
}

Path concatenate(const Path& first, const Path& then) {
  Path out{first.source, first.arrows};
  out.arrows.insert(out.arrows.end(), then.arrows.begin(), then.arrows.end());
  return out;
}

// Multiplies a vector on the left (post-compose) or right (pre-compose) by an arrow,
// dropping paths longer than the space holds.
std::vector<Scalar> multiply_by_arrow(const Quiver& q, const PathSpace& space,
                                      const std::vector<Scalar>& v, int arrow, bool on_left) {
  std::vector<Scalar> out(v.size(), 0);
  const Arrow& a = q.arrow(static_cast<std::size_t>(arrow));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Path& p = space.paths[i];
    if (p.length() + 1 > space.max_length) continue;
    Path prod;
    if (on_left) {
      if (path_target(q, p) != a.source) continue;
      prod = p;
      prod.arrows.push_back(arrow);
    } else {
      if (p.source != a.target) continue;
      prod = Path{a.source, {arrow}};
      prod.arrows.insert(prod.arrows.end(), p.arrows.begin(), p.arrows.end());
    }
    out[space.index.at(prod)] = v[i];
  }
  return out;
}

RowSpace ideal_span(const Quiver& q, const PathSpace& space, const std::vector<Relation>& rels,
                    Scalar p) {
  RowSpace span(space.paths.size(), p);
  std::deque<std::vector<Scalar>> queue;
  auto push = [&](std::vector<Scalar> v) {
    if (span.reduce(v)) return;
    queue.push_back(v);
    span.insert(std::move(v));
  };
  for (const auto& rel : rels) {
    std::vector<Scalar> v(space.paths.size(), 0);
    for (const auto& term : rel.terms) {
      if (term.path.length() > space.max_length) continue;
      auto& slot = v[space.index.at(term.path)];
      slot = add_mod(slot, reduce_mod(term.coefficient, p), p);
    }
    push(std::move(v));
  }
  while (!queue.empty()) {
    auto v = std::move(queue.front());
    queue.pop_front();
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      push(multiply_by_arrow(q, space, v, static_cast<int>(a), true));
      push(multiply_by_arrow(q, space, v, static_cast<int>(a), false));
    }
  }
  return span;
}

void validate_relations(const Quiver& q, std::vector<Relation>& rels, Scalar p) {
  std::vector<Relation> kept;
  for (auto& rel : rels) {
    Relation cleaned;
    int src = 0, tgt = 0;
    for (auto& term : rel.terms) {
      if (term.path.length() < 2) {
        throw Error(ErrorCode::BadRelation,
                    "relation term of length " + std::to_string(term.path.length()) +
                        " is not in the square of the arrow ideal");
      }
      const int first = term.path.arrows.front();
      if (first < 0 || static_cast<std::size_t>(first) >= q.arrows().size()) {
        throw Error(ErrorCode::BadRelation, "relation uses an unknown arrow");
      }
      term.path.source = q.arrow(static_cast<std::size_t>(first)).source;
      for (std::size_t k = 1; k < term.path.length(); ++k) {
        const auto prev = static_cast<std::size_t>(term.path.arrows[k - 1]);
        const auto next = static_cast<std::size_t>(term.path.arrows[k]);
        if (next >= q.arrows().size() || q.arrow(prev).target != q.arrow(next).source) {
          throw Error(ErrorCode::BadRelation, "relation term " + path_name(q, term.path) +
                                                  " is not a path in the quiver");
        }
      }
      const int t = path_target(q, term.path);
      if (src == 0) {
        src = term.path.source;
        tgt = t;
      } else if (src != term.path.source || tgt != t) {
        throw Error(ErrorCode::BadRelation, "relation terms are not parallel");
      }
      if (reduce_mod(term.coefficient, p) != 0) cleaned.terms.push_back(term);
    }
    if (!cleaned.terms.empty()) kept.push_back(std::move(cleaned));
  }
  rels = std::move(kept);
}

}  // namespace

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
  if (vertex_count_ < 1) throw Error(ErrorCode::InvalidArgument, "quiver needs at least one vertex");
  std::set<std::string> names;
  for (const auto& a : arrows_) {
    if (a.source < 1 || a.source > vertex_count_ || a.target < 1 || a.target > vertex_count_) {
      throw Error(ErrorCode::InvalidArgument, "arrow " + a.name + " has an endpoint out of range");
    }
    if (!names.insert(a.name).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate arrow name " + a.name);
    }
  }
}

int Quiver::find_arrow(const std::string& name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].name == name) return static_cast<int>(a);
  return -1;
}

int path_target(const Quiver& q, const Path& path) {
  if (path.arrows.empty()) return path.source;
  return q.arrow(static_cast<std::size_t>(path.arrows.back())).target;
}

std::string path_name(const Quiver& q, const Path& path) {
  if (path.arrows.empty()) return "e" + std::to_string(path.source);
  std::string out;
  for (auto it = path.arrows.rbegin(); it != path.arrows.rend(); ++it) {
    if (!out.empty()) out += '*';
    out += q.arrow(static_cast<std::size_t>(*it)).name;
  }
  return out;
}

std::shared_ptr<const PathAlgebra> PathAlgebra::build(Quiver quiver, std::vector<Relation> relations,
                                                      std::uint64_t prime, int depth_cap) {
  if (prime > kMaxPrime || !is_prime(prime)) {
    throw Error(ErrorCode::NotPrime, std::to_string(prime) + " is not a supported prime");
  }
  const auto p = static_cast<Scalar>(prime);
  validate_relations(quiver, relations, p);

  std::shared_ptr<PathAlgebra> alg(new PathAlgebra());
  alg->quiver_ = std::move(quiver);
  alg->relations_ = std::move(relations);
  alg->prime_ = p;
  const Quiver& q = alg->quiver_;

  for (int n = 1; n <= depth_cap; ++n) {
    PathSpace space = enumerate_paths(q, static_cast<std::size_t>(n));
    RowSpace ideal = ideal_span(q, space, alg->relations_, p);
    bool bounded = true;
    for (std::size_t i = 0; i < space.paths.size() && bounded; ++i) {
      if (space.paths[i].length() != static_cast<std::size_t>(n)) continue;
      std::vector<Scalar> e(space.paths.size(), 0);
      e[i] = 1;
      bounded = ideal.reduce(e);
    }
    if (!bounded) continue;

    alg->nilpotency_degree_ = n;
    std::vector<std::size_t> basis_slot(space.paths.size(), SIZE_MAX);
    for (std::size_t i = 0; i < space.paths.size(); ++i) {
      if (ideal.is_pivot(i)) continue;
      const Path& path = space.paths[i];
      basis_slot[i] = alg->basis_.size();
      alg->basis_.push_back(BasisPath{path, path.source, path_target(q, path), path.length()});
    }
    for (std::size_t i = 0; i < space.paths.size(); ++i) {
      std::vector<Scalar> e(space.paths.size(), 0);
      e[i] = 1;
      ideal.reduce(e);
      SparseVector nf;
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] != 0) nf.emplace_back(basis_slot[j], e[j]);
      }
      alg->normal_forms_.emplace(space.paths[i], std::move(nf));
    }
    break;
  }
  if (alg->nilpotency_degree_ == 0) {
    throw Error(ErrorCode::NotFiniteDimensional,
                "no power of the arrow ideal up to length " + std::to_string(depth_cap) +
                    " lies in the ideal of relations");
  }

  const std::size_t dim = alg->basis_.size();
  alg->paths_from_.assign(static_cast<std::size_t>(q.vertex_count()), {});
  alg->trivial_.assign(static_cast<std::size_t>(q.vertex_count()), 0);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& b = alg->basis_[i];
    alg->paths_from_[static_cast<std::size_t>(b.source - 1)].push_back(i);
    if (b.length == 0) alg->trivial_[static_cast<std::size_t>(b.source - 1)] = i;
  }
  alg->mult_table_.assign(dim * dim, {});
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const auto& pa = alg->basis_[a];
      const auto& pb = alg->basis_[b];
      if (pb.target != pa.source) continue;
      alg->mult_table_[a * dim + b] = alg->reduce_path(concatenate(pb.path, pa.path));
    }
  }
  return alg;
}

SparseVector PathAlgebra::reduce_path(const Path& path) const {
  if (path.length() >= static_cast<std::size_t>(nilpotency_degree_)) return {};
  Path key = path;
  if (!key.arrows.empty()) key.source = quiver_.arrow(static_cast<std::size_t>(key.arrows.front())).source;
  auto it = normal_forms_.find(key);
  if (it == normal_forms_.end()) return {};
  return it->second;
}

}  // namespace findim
