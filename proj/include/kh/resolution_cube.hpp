#pragma once

// The cube of resolutions {0,1}^c of a diagram: circle decompositions of each
// smoothing and the merge/split classification of the cube edges.

#include <array>
#include <bit>
#include <cstdint>
#include <string_view>
#include <vector>

#include "kh/diagram.hpp"

namespace kh {

/// Largest crossing count a SmoothingIndex can address.
inline constexpr int kMaxCubeDimension = 31;

/// A vertex of the cube; bit p is the smoothing of crossing p (input order).
struct SmoothingIndex {
  std::uint32_t bits = 0;
  int length = 0;

  int weight() const noexcept { return std::popcount(bits); }
  bool at(int position) const noexcept { return (bits >> position) & 1U; }

  friend bool operator==(const SmoothingIndex&, const SmoothingIndex&) = default;
};

SmoothingIndex smoothing_from_string(std::string_view zeros_and_ones);

struct CircleDecomposition {
  int circle_count = 0;
  /// arc_to_circle[label - 1] for crossing edges 1..edge_count, followed by one
  /// entry per free loop. Circles are numbered by ascending minimum arc label.
  std::vector<int> arc_to_circle;

  int circle_of(int label) const { return arc_to_circle[static_cast<std::size_t>(label - 1)]; }
};

enum class EdgeKind { Merge, Split };

struct CubeEdge {
  SmoothingIndex from;
  SmoothingIndex to;
  int position = 0;
  EdgeKind kind = EdgeKind::Merge;
  int sign_exponent = 0;
  /// Merge: the two circles of `from` that fuse (ascending); Split: the circle
  /// of `from` in slot 0.
  std::array<int, 2> from_circles{};
  /// Merge: the resulting circle of `to` in slot 0; Split: the two circles of
  /// `to` (ascending).
  std::array<int, 2> to_circles{};
};

CircleDecomposition resolve(const LinkDiagram& d, SmoothingIndex eps);

CubeEdge classify_edge(const LinkDiagram& d, SmoothingIndex from, SmoothingIndex to);

/// (-1)^l where l counts the 1s of eps before `position`.
int edge_sign(SmoothingIndex eps, int position);

}  // namespace kh
