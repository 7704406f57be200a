#include "findim/corpus.hpp"

#include "corpus_texts.hpp"
#include "findim/error.hpp"

namespace findim {

std::vector<std::string> corpus_names() { return {"ex23", "ex53", "ex54"}; }

std::string_view corpus_text(std::string_view name) {
  if (name == "ex23") return detail::kEx23Text;
  if (name == "ex53") return detail::kEx53Text;
  if (name == "ex54") return detail::kEx54Text;
  throw Error(ErrorCode::UnknownCorpusName, "unknown corpus algebra '" + std::string(name) + "'");
}

AlgebraSpec corpus_algebra(std::string_view name) { return parse_algebra_file(corpus_text(name)); }

Module corpus_mt(const AlgebraPtr& ex54, Scalar t) {
  const Quiver& q = ex54->quiver();
  const int a = q.find_arrow("a"), b = q.find_arrow("b");
  if (q.vertex_count() != 3 || q.arrows().size() != 5 || a < 0 || b < 0 || q.find_arrow("g") < 0 ||
      q.find_arrow("l") < 0 || q.find_arrow("d") < 0) {
    throw Error(ErrorCode::AlgebraMismatch, "mt is defined on ex54 only");
  }
  const Scalar p = ex54->prime();
  const std::vector<int> dims{4, 8, 0};
  std::vector<Matrix> maps;
  for (const auto& arrow : q.arrows()) {
    maps.emplace_back(static_cast<std::size_t>(dims[static_cast<std::size_t>(arrow.target - 1)]),
                      static_cast<std::size_t>(dims[static_cast<std::size_t>(arrow.source - 1)]), p);
  }
  Matrix& alpha = maps[static_cast<std::size_t>(a)];
  for (auto [r, c] : {std::pair{1, 1}, {4, 2}, {5, 3}, {6, 3}, {7, 4}}) alpha(r - 1, c - 1) = 1;
  alpha(7, 3) = t % p;
  Matrix& beta = maps[static_cast<std::size_t>(b)];
  for (int c = 1; c <= 6; ++c) beta(c + 1, c - 1) = 1;
  return Module(ex54, dims, std::move(maps), "M_" + std::to_string(t % p));
}

}  // namespace findim
