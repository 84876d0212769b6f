#pragma once

#include <random>
#include <vector>

#include "kh/diagram.hpp"

namespace kh::test {

inline LinkDiagram unknot() { return LinkDiagram::from_pd({}, 1); }

inline LinkDiagram left_trefoil() {
  return LinkDiagram::from_pd({{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}}, 0, std::array<int, 2>{1, 4});
}

inline LinkDiagram figure_eight() {
  return LinkDiagram::from_pd({{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}}, 0);
}

inline LinkDiagram marked_unlink() { return with_mark(LinkDiagram::from_pd({}, 2), 1, 2); }

inline LinkDiagram hopf() { return braid_closure({1, 1}, 2); }

inline LinkDiagram torus2(int m) { return braid_closure(std::vector<int>(static_cast<std::size_t>(m), 1), 2); }

inline std::vector<int> random_word(std::mt19937_64& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1), sign(0, 1);
  std::vector<int> w;
  for (int i = 0; i < length; ++i) w.push_back(gen(rng) * (sign(rng) ? 1 : -1));
  return w;
}

}  // namespace kh::test
