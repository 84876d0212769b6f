#pragma once

// Oriented link diagrams in planar-diagram (PD) form.
//
// A crossing is the 4-tuple (a, b, c, d) of edge labels read counterclockwise
// starting at the incoming under-edge `a`; the under-strand runs a -> c. The
// sign is +1 when the over-strand enters at d and leaves at b, -1 otherwise.
// Crossingless components cannot be written in PD form and are carried as a
// count of free loops. Where a label is needed for one of them (twist marks),
// free loop k (0-based) is addressed as edge_count() + k + 1.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kh {

struct Crossing {
  std::array<int, 4> edges{};
  int sign = +1;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Two marked edges through which half-twists are inserted.
struct TwistRegion {
  std::array<int, 2> edges{};
  bool coherent = false;

  friend bool operator==(const TwistRegion&, const TwistRegion&) = default;
};

/// One end of an edge: crossing index and slot 0..3 (a, b, c, d).
struct Port {
  int crossing = -1;
  int slot = -1;

  friend bool operator==(const Port&, const Port&) = default;
};

struct EdgeEnds {
  Port tail;  // where the edge leaves a crossing
  Port head;  // where the edge enters a crossing
};

struct CrossingCounts {
  int n_plus = 0;
  int n_minus = 0;
  int writhe = 0;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// Builds a diagram from PD tuples, inferring every crossing sign from the
  /// under-strand orientations. Throws kh::Error on any invariant violation.
  static LinkDiagram from_pd(const std::vector<std::array<int, 4>>& tuples, int free_loops,
                             std::optional<std::array<int, 2>> mark = std::nullopt);

  /// Builds a diagram from tuples with known signs; the signs must be
  /// consistent with the under-strand orientations.
  static LinkDiagram from_signed(std::vector<Crossing> crossings, int free_loops,
                                 std::optional<std::array<int, 2>> mark = std::nullopt);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int edge_count() const noexcept { return 2 * crossing_count(); }
  int free_loops() const noexcept { return free_loops_; }
  const std::optional<TwistRegion>& marked_region() const noexcept { return mark_; }

  /// Tail and head ports of edge `label` (1-based).
  const EdgeEnds& edge_ends(int label) const { return ends_.at(static_cast<std::size_t>(label - 1)); }

  /// Face id of every corner; corner (x, s) is the region between slots s and
  /// s+1 of crossing x. Index is 4 * x + s.
  const std::vector<int>& corner_faces() const noexcept { return corner_face_; }
  int face_count() const noexcept { return face_count_; }
  int face_right_of(int label) const;
  int face_left_of(int label) const;

  bool is_loop_label(int label) const noexcept {
    return label > edge_count() && label <= edge_count() + free_loops_;
  }

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_ && a.mark_ == b.mark_;
  }

 private:
  void index_edges();
  void compute_faces();
  void attach_mark(std::optional<std::array<int, 2>> mark);

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::optional<TwistRegion> mark_;
  std::vector<EdgeEnds> ends_;
  std::vector<int> corner_face_;
  int face_count_ = 0;
};

/// Parses the PD text format: optional `loops=<k>` and `mark=<e1>,<e2>` header
/// lines, whitespace separated `X(a,b,c,d)` terms, `#` comments.
LinkDiagram parse_pd(std::string_view text);

/// Canonical text form; parse_pd(to_pd_text(d)) reproduces d unless some
/// component never passes under (then parsing throws AmbiguousOrientation).
std::string to_pd_text(const LinkDiagram& d);

CrossingCounts crossing_counts(const LinkDiagram& d);

/// Edge pairs joined by the 0-smoothing ((a,b), (c,d)) or the 1-smoothing
/// ((a,d), (b,c)). The 0-smoothing is the Kauffman A-smoothing; at a positive
/// crossing it is the oriented resolution.
inline std::array<std::array<int, 2>, 2> smoothing_pairs(const Crossing& x, int resolution) {
  const auto& e = x.edges;
  if (resolution == 0) return {{{e[0], e[1]}, {e[2], e[3]}}};
  return {{{e[0], e[3]}, {e[1], e[2]}}};
}

/// s0 (which = 0) or s1 (which = 1): circles after smoothing every crossing alike.
int global_smoothing_circles(const LinkDiagram& d, int which);

/// Connected pieces of the projection, free loops included. 1 means the
/// diagram is non-split.
int diagram_pieces(const LinkDiagram& d);

/// Returns a copy of `d` with the given mark attached and its coherence computed.
LinkDiagram with_mark(const LinkDiagram& d, int e1, int e2);

/// Splices n positive half-twists into the marked coherent pair. The mark of
/// the result sits on the top of the twist so insertions compose.
LinkDiagram insert_half_twists(const LinkDiagram& d, int n);

/// Closure of a braid word; generator g > 0 is sigma_g, g < 0 its inverse.
LinkDiagram braid_closure(const std::vector<int>& word, int strands);

/// Parses "1 1 -2" or "1,1,-2" style braid words.
std::vector<int> parse_braid_word(std::string_view text);

/// Swaps over and under at every crossing.
LinkDiagram mirror(const LinkDiagram& d);

/// Reidemeister I: adds a kink of the given sign on edge `label`.
LinkDiagram add_kink(const LinkDiagram& d, int label, int sign);

/// Reidemeister II: pushes the first edge over the second. Both edges must
/// bound a common face; their orientations are arbitrary.
LinkDiagram add_clasp(const LinkDiagram& d, int over_label, int under_label);

/// Adds one crossingless unknotted component.
LinkDiagram add_free_loop(const LinkDiagram& d);

/// FNV-1a hash of the canonical text, rendered as 16 hex digits.
std::string fingerprint(const LinkDiagram& d);

}  // namespace kh
