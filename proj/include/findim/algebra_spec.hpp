#pragma once

// Line-oriented algebra description files:
//
//   field 32003
//   vertices 1 2 3
//   arrow a 1 2          # name source target
//   rel g*d*b            # function order: b first
//   rel g*a - g*b*a

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "findim/module.hpp"

namespace findim {

struct SpecArrow {
  std::string name;
  int source = 0;
  int target = 0;
  bool operator==(const SpecArrow&) const = default;
};

struct SpecTerm {
  std::int64_t coefficient = 1;
  std::vector<std::string> path;  // as written, function order
  bool operator==(const SpecTerm&) const = default;
};

struct SpecRelation {
  std::vector<SpecTerm> terms;
  bool operator==(const SpecRelation&) const = default;
};

struct AlgebraSpec {
  std::uint64_t prime = 0;
  std::vector<int> vertices;
  std::vector<SpecArrow> arrows;
  std::vector<SpecRelation> relations;
  bool operator==(const AlgebraSpec&) const = default;
};

/// Throws SyntaxError ("line L, column C: expected ..."), UnknownArrow,
/// NonParallelRelation or BadRelation.
AlgebraSpec parse_algebra_file(std::string_view text);
std::string render_algebra_spec(const AlgebraSpec& spec);

AlgebraPtr build_algebra(const AlgebraSpec& spec, std::optional<std::uint64_t> prime_override = std::nullopt,
                         int depth_cap = PathAlgebra::kDefaultDepthCap);

}  // namespace findim
