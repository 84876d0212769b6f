#pragma once

// Exact rank of sparse rational matrices.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kh/rational.hpp"

namespace kh {

struct MatrixEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  Rational value;
};

/// Sparse matrix over Q. Entries are kept sorted by (col, row), unique and
/// nonzero.
class SparseRationalMatrix {
 public:
  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Sorts, sums duplicates and drops zeros. Indices must be in range.
  static SparseRationalMatrix from_entries(std::size_t rows, std::size_t cols,
                                           std::vector<MatrixEntry> entries);

  /// Entries already sorted by (col, row), unique and nonzero; checked.
  static SparseRationalMatrix from_sorted(std::size_t rows, std::size_t cols,
                                          std::vector<MatrixEntry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::vector<MatrixEntry>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  friend bool operator==(const SparseRationalMatrix&, const SparseRationalMatrix&);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

/// Integer matrix in compressed-column form; row indices ascend within each
/// column and values are nonzero.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> col_start{0};
  std::vector<std::uint32_t> row_index;
  std::vector<std::int64_t> value;

  std::size_t nnz() const noexcept { return row_index.size(); }
};

SparseRationalMatrix to_rational(const SparseIntMatrix& m);

SparseRationalMatrix transpose(const SparseRationalMatrix& m);

/// a * b; a.cols() must equal b.rows().
SparseRationalMatrix multiply(const SparseRationalMatrix& a, const SparseRationalMatrix& b);

struct RankOptions {
  /// Recompute the rank modulo a random 62-bit prime and require agreement.
  bool verify_modular = false;
  std::uint64_t seed = 0x6b686f76616e6f76ULL;
};

/// Exact rank over Q by sparse elimination with Markowitz pivoting.
std::size_t rank(const SparseRationalMatrix& m, const RankOptions& options = {});

/// Same as above for an integer matrix, without materialising rationals up front.
std::size_t rank(const SparseIntMatrix& m, const RankOptions& options = {});

/// Rank over GF(p); p must be an odd prime below 2^62 not dividing any
/// denominator.
std::size_t rank_mod_prime(const SparseRationalMatrix& m, std::uint64_t p);
std::size_t rank_mod_prime(const SparseIntMatrix& m, std::uint64_t p);

bool is_probable_prime(std::uint64_t n);

/// Deterministic pseudo-random prime in [2^61, 2^62).
std::uint64_t random_prime_62(std::uint64_t seed);

}  // namespace kh
