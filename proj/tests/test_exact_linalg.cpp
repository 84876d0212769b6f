#include <doctest.h>

#include <random>

#include "kh/error.hpp"
#include "kh/exact_linalg.hpp"

using namespace kh;

namespace {

using Dense = std::vector<std::vector<mpq_class>>;

std::size_t textbook_rank(Dense a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

SparseRationalMatrix sparse_of(const Dense& a, std::size_t cols) {
  std::vector<MatrixEntry> e;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), Rational(a[i][j])});
  return SparseRationalMatrix::from_entries(a.size(), cols, e);
}

Dense random_dense(std::mt19937_64& rng, int rows, int cols, int zero_percent) {
  std::uniform_int_distribution<int> pct(0, 99), num(-9, 9), den(1, 7);
  Dense a(static_cast<std::size_t>(rows), std::vector<mpq_class>(static_cast<std::size_t>(cols)));
  for (auto& r : a)
    for (auto& x : r)
      if (pct(rng) >= zero_percent) {
        x = mpq_class(num(rng), den(rng));
        x.canonicalize();
      }
  return a;
}

SparseIntMatrix int_matrix(std::size_t rows, std::size_t cols, const std::vector<std::vector<std::int64_t>>& dense) {
  SparseIntMatrix m;
  m.rows = rows;
  m.cols = cols;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (dense[i][j] != 0) {
        m.row_index.push_back(static_cast<std::uint32_t>(i));
        m.value.push_back(dense[i][j]);
      }
    }
    m.col_start.push_back(m.row_index.size());
  }
  return m;
}

}  // namespace

TEST_CASE("trivial ranks") {
  CHECK(rank(SparseRationalMatrix(5, 7)) == 0);
  std::vector<MatrixEntry> id;
  for (std::uint32_t i = 0; i < 4; ++i) id.push_back({i, i, Rational(1)});
  CHECK(rank(SparseRationalMatrix::from_entries(4, 4, id)) == 4);
  CHECK(rank(SparseRationalMatrix(0, 0)) == 0);
}

TEST_CASE("from_entries merges duplicates and drops zeros") {
  const auto m = SparseRationalMatrix::from_entries(2, 2, {{0, 0, Rational(1)}, {0, 0, Rational(-1)}, {1, 0, Rational(1, 2)},
                                                           {1, 0, Rational(1, 2)}, {0, 1, Rational(0)}});
  REQUIRE(m.nnz() == 1);
  CHECK(m.entries()[0].row == 1);
  CHECK(m.entries()[0].value == Rational(1));
  try {
    SparseRationalMatrix::from_entries(2, 2, {{2, 0, Rational(1)}});
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("random 8x8 matrices against the textbook oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_dense(rng, 8, 8, trial % 90);
    const auto m = sparse_of(a, 8);
    const auto want = textbook_rank(a);
    CHECK(rank(m) == want);
    RankOptions opt;
    opt.verify_modular = true;
    CHECK(rank(m, opt) == want);
  }
}

TEST_CASE("property: rank is transpose invariant and submultiplicative") {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> side(1, 12);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = side(rng), k = side(rng), c = side(rng);
    const auto a = sparse_of(random_dense(rng, r, k, 70), static_cast<std::size_t>(k));
    const auto b = sparse_of(random_dense(rng, k, c, 70), static_cast<std::size_t>(c));
    CHECK(rank(a) == rank(transpose(a)));
    const auto ab = multiply(a, b);
    CHECK(rank(ab) <= std::min(rank(a), rank(b)));
    CHECK(transpose(transpose(a)) == a);
  }
}

TEST_CASE("integer matrices: unit pivots, non-unit remainder and overflow") {
  // rank 2: the third row is 2 * row0 + 3 * row1; no unit pivots after step one
  const auto m = int_matrix(3, 3, {{2, 4, 6}, {3, 5, 7}, {13, 23, 33}});
  CHECK(rank(m) == 2);
  CHECK(rank(to_rational(m)) == 2);
  CHECK(rank_mod_prime(m, 1000003) == 2);

  // entries too large for the 32-bit fast path
  const std::int64_t big = std::int64_t{1} << 40;
  const auto huge = int_matrix(2, 2, {{1, big}, {big, 1}});
  CHECK(rank(huge) == 2);
  const auto singular = int_matrix(2, 2, {{1, big}, {3, 3 * big}});
  CHECK(rank(singular) == 1);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::int64_t>> d(9, std::vector<std::int64_t>(11));
    Dense q(9, std::vector<mpq_class>(11));
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 11; ++j) {
        d[i][j] = (trial % 2 && v(rng) != 0) ? 0 : v(rng);
        q[i][j] = static_cast<long>(d[i][j]);
      }
    CHECK(rank(int_matrix(9, 11, d)) == textbook_rank(q));
  }
}

TEST_CASE("big rationals") {
  mpq_class huge("123456789012345678901234567890/7");
  Dense a{{huge, mpq_class(1)}, {mpq_class(1), 1 / huge}};
  CHECK(rank(sparse_of(a, 2)) == textbook_rank(a));
  CHECK(textbook_rank(a) == 1);
}

TEST_CASE("primes") {
  CHECK(is_probable_prime(2));
  CHECK(is_probable_prime(1000003));
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(561));
  CHECK_FALSE(is_probable_prime(3215031751ULL));
  const auto p = random_prime_62(42);
  CHECK(p >= (std::uint64_t{1} << 61));
  CHECK(p < (std::uint64_t{1} << 62));
  CHECK(is_probable_prime(p));
  CHECK(random_prime_62(42) == p);
  const auto m = sparse_of(Dense{{mpq_class(1, 3), mpq_class(2)}, {mpq_class(2, 3), mpq_class(4)}}, 2);
  CHECK(rank_mod_prime(m, p) == 1);
}
