#pragma once

// The bigraded Khovanov cochain complex over Q of a link diagram, before the
// (n+, n-) normalisation. Generators of C^{i,j} are pairs (eps, labels) with
// |eps| = i and j = #1 - #X + i. Blocks d^i|_j are produced on demand.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/exact_linalg.hpp"

namespace kh {

inline constexpr int kDefaultBudget = 16;

using Bidegree = std::pair<int, int>;  // (i, j)

class GradedComplex {
 public:
  const LinkDiagram& diagram() const noexcept { return diagram_; }
  int crossing_count() const noexcept { return diagram_.crossing_count(); }

  /// Nonzero dimensions of C^{i,j}.
  const std::map<Bidegree, std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(int i, int j) const;

  /// Sorted q-gradings that occur anywhere in the complex.
  std::vector<int> q_gradings() const;

  /// d^i restricted to q-grading j, as a dim(i+1, j) x dim(i, j) matrix.
  SparseIntMatrix block(int i, int j) const;

  /// Circle count of the smoothing with the given bit pattern.
  int circle_count(std::uint32_t eps) const { return circles_[eps]; }

  /// Test hook: negates entry number `entry` (in column-major order) of the
  /// block (i, j) whenever it is produced.
  void set_sign_mutant(int i, int j, std::size_t entry) { mutant_ = Mutant{i, j, entry}; }

  /// One line per nonzero entry: `i j row col num den`.
  std::string dump_triplets() const;

 private:
  friend GradedComplex build_complex(const LinkDiagram& d, int budget);

  struct Mutant {
    int i;
    int j;
    std::size_t entry;
  };

  /// Offset of every smoothing's generators inside its (|eps|, j) block, or
  /// -1 when the smoothing contributes nothing in grading j.
  std::vector<std::int64_t> offsets(int j) const;

  LinkDiagram diagram_;
  std::vector<int> circles_;       // per smoothing
  std::vector<int> arc_to_circle_;  // per smoothing, stride = labels_
  int labels_ = 0;
  std::map<Bidegree, std::size_t> dims_;
  std::optional<Mutant> mutant_;
};

/// Throws BudgetExceeded when the diagram has more than `budget` crossings.
GradedComplex build_complex(const LinkDiagram& d, int budget = kDefaultBudget);

struct DSquaredReport {
  bool ok = true;
  std::optional<Bidegree> offending;  // first (i, j) with d^{i+1} d^i != 0
};

DSquaredReport verify_d_squared(const GradedComplex& c);

}  // namespace kh
