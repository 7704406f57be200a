#pragma once

// Built-in algebras: ex23, ex53, ex54. The texts match corpus/*.alg.

#include <string>
#include <string_view>
#include <vector>

#include "findim/algebra_spec.hpp"

namespace findim {

std::vector<std::string> corpus_names();
/// Throws UnknownCorpusName.
std::string_view corpus_text(std::string_view name);
AlgebraSpec corpus_algebra(std::string_view name);

/// The one-parameter family M_t over ex54: dims (4,8,0), gamma, lambda and
/// delta acting by zero. Throws AlgebraMismatch on other algebras.
Module corpus_mt(const AlgebraPtr& ex54, Scalar t);

}  // namespace findim
