#include "kh/resolution_cube.hpp"

#include <algorithm>
#include <string>

#include "kh/detail/union_find.hpp"
#include "kh/error.hpp"

namespace kh {

SmoothingIndex smoothing_from_string(std::string_view zeros_and_ones) {
  if (zeros_and_ones.size() > static_cast<std::size_t>(kMaxCubeDimension)) {
    throw Error(Errc::LengthMismatch, "smoothing longer than the cube dimension limit");
  }
  SmoothingIndex eps{0, static_cast<int>(zeros_and_ones.size())};
  for (std::size_t p = 0; p < zeros_and_ones.size(); ++p) {
    if (zeros_and_ones[p] == '1') {
      eps.bits |= 1U << p;
    } else if (zeros_and_ones[p] != '0') {
      throw Error(Errc::MalformedSyntax, "smoothing strings use only 0 and 1");
    }
  }
  return eps;
}

CircleDecomposition resolve(const LinkDiagram& d, SmoothingIndex eps) {
  if (eps.length != d.crossing_count()) {
    throw Error(Errc::LengthMismatch, "smoothing of length " + std::to_string(eps.length) + " for " +
                                          std::to_string(d.crossing_count()) + " crossings");
  }
  const int edges = d.edge_count();
  detail::UnionFind uf(edges + 1);
  for (int x = 0; x < d.crossing_count(); ++x) {
    for (const auto& pr : smoothing_pairs(d.crossings()[x], eps.at(x) ? 1 : 0)) uf.unite(pr[0], pr[1]);
  }
  CircleDecomposition out;
  out.arc_to_circle.assign(static_cast<std::size_t>(edges + d.free_loops()), -1);
  // roots are class minima, so scanning labels upward numbers circles by
  // ascending minimum label
  std::vector<int> id_of_root(static_cast<std::size_t>(edges) + 1, -1);
  for (int label = 1; label <= edges; ++label) {
    const int root = uf.find(label);
    if (id_of_root[root] < 0) id_of_root[root] = out.circle_count++;
    out.arc_to_circle[label - 1] = id_of_root[root];
  }
  for (int k = 0; k < d.free_loops(); ++k) out.arc_to_circle[edges + k] = out.circle_count++;
  return out;
}

int edge_sign(SmoothingIndex eps, int position) {
  if (position < 0 || position >= eps.length) throw Error(Errc::IndexOutOfRange, "position outside smoothing");
  if (eps.at(position)) throw Error(Errc::PositionAlreadyOne, "edge must start at a 0 entry");
  const std::uint32_t before = eps.bits & ((1U << position) - 1U);
  return (std::popcount(before) % 2 == 0) ? 1 : -1;
}

CubeEdge classify_edge(const LinkDiagram& d, SmoothingIndex from, SmoothingIndex to) {
  if (from.length != to.length) throw Error(Errc::NotACubeEdge, "endpoints of different lengths");
  const std::uint32_t diff = from.bits ^ to.bits;
  if (std::popcount(diff) != 1 || (to.bits & diff) == 0) {
    throw Error(Errc::NotACubeEdge, "endpoints must differ in exactly one 0 -> 1 position");
  }
  const int position = std::countr_zero(diff);
  const auto a = resolve(d, from);
  const auto b = resolve(d, to);
  const auto& e = d.crossings()[position].edges;
  CubeEdge edge;
  edge.from = from;
  edge.to = to;
  edge.position = position;
  const std::uint32_t before = from.bits & ((1U << position) - 1U);
  edge.sign_exponent = std::popcount(before);
  // in `from` the crossing joins (a,b) and (c,d); in `to` it joins (a,d) and (b,c)
  const int ca = a.circle_of(e[0]);
  const int cc = a.circle_of(e[2]);
  if (ca != cc) {
    edge.kind = EdgeKind::Merge;
    edge.from_circles = {std::min(ca, cc), std::max(ca, cc)};
    edge.to_circles = {b.circle_of(e[0]), b.circle_of(e[0])};
  } else {
    edge.kind = EdgeKind::Split;
    const int x = b.circle_of(e[0]);
    const int y = b.circle_of(e[1]);
    edge.from_circles = {ca, ca};
    edge.to_circles = {std::min(x, y), std::max(x, y)};
  }
  return edge;
}

}  // namespace kh
