#pragma once

#include <string>
#include <vector>

#include "findim/algebra_spec.hpp"
#include "findim/corpus.hpp"

namespace findim::test {

inline AlgebraPtr corpus(const std::string& name) { return build_algebra(corpus_algebra(name)); }

inline AlgebraPtr from_text(const std::string& text) { return build_algebra(parse_algebra_file(text)); }

/// A_n linear quiver 1 -> 2 -> ... -> n with the given function-order relations.
inline AlgebraPtr linear(int n, const std::vector<std::string>& rels, unsigned prime = 32003) {
  std::string text = "field " + std::to_string(prime) + "\nvertices";
  for (int v = 1; v <= n; ++v) text += " " + std::to_string(v);
  text += "\n";
  for (int v = 1; v < n; ++v) {
    text += "arrow x" + std::to_string(v) + " " + std::to_string(v) + " " + std::to_string(v + 1) + "\n";
  }
  for (const auto& r : rels) text += "rel " + r + "\n";
  return from_text(text);
}

}  // namespace findim::test
