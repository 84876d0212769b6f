#include <doctest.h>

#include <random>
#include <sstream>

#include "kh/error.hpp"
#include "kh/exact_linalg.hpp"
#include "kh/khovanov_complex.hpp"
#include "kh/resolution_cube.hpp"
#include "support.hpp"

using namespace kh;

namespace {

// d^{i+1} d^i == 0 by plain sparse multiplication
bool composites_vanish(const GradedComplex& cx) {
  for (const auto& [key, dim] : cx.dims()) {
    const auto [i, j] = key;
    if (cx.dim(i + 1, j) == 0 || cx.dim(i + 2, j) == 0) continue;
    const auto prod = multiply(to_rational(cx.block(i + 1, j)), to_rational(cx.block(i, j)));
    if (!prod.is_zero()) return false;
  }
  return true;
}

void check_bookkeeping(const GradedComplex& cx) {
  const int c = cx.crossing_count();
  std::map<int, std::size_t> by_i, expected;
  for (const auto& [key, dim] : cx.dims()) by_i[key.first] += dim;
  for (std::uint32_t eps = 0; eps < (1U << c); ++eps) {
    const int k = cx.circle_count(eps);
    expected[std::popcount(eps)] += std::size_t{1} << k;
    // grading parity: every j reached by this smoothing has j = k + i mod 2
    const int i = std::popcount(eps);
    for (int ones = 0; ones <= k; ++ones) {
      const int j = ones - (k - ones) + i;
      CHECK(((j - k - i) % 2 + 2) % 2 == 0);
      CHECK(cx.dim(i, j) > 0);
    }
  }
  CHECK(by_i == expected);
  for (const auto& [key, dim] : cx.dims()) {
    const auto b = cx.block(key.first, key.second);
    CHECK(b.cols == dim);
    CHECK(b.rows == cx.dim(key.first + 1, key.second));
  }
}

}  // namespace

TEST_CASE("unknot complex") {
  const auto cx = build_complex(kh::test::unknot());
  const std::map<Bidegree, std::size_t> want{{{0, -1}, 1}, {{0, 1}, 1}};
  CHECK(cx.dims() == want);
  CHECK(cx.block(0, 1).nnz() == 0);
  CHECK(verify_d_squared(cx).ok);
}

TEST_CASE("single kink complexes") {
  // positive curl: all-0 smoothing has two circles, the 1-smoothing one
  const auto pos = build_complex(add_kink(kh::test::unknot(), 1, +1));
  CHECK(pos.circle_count(0) == 2);
  CHECK(pos.circle_count(1) == 1);
  const std::map<Bidegree, std::size_t> want_pos{{{0, -2}, 1}, {{0, 0}, 2}, {{0, 2}, 1}, {{1, 0}, 1}, {{1, 2}, 1}};
  CHECK(pos.dims() == want_pos);
  // m: 1 (x) 1 -> 1 sits at j = 2, a 1 x 1 block with entry 1
  const auto m = pos.block(0, 2);
  CHECK(m.nnz() == 1);
  CHECK(m.value[0] == 1);
  CHECK(verify_d_squared(pos).ok);

  const auto neg = build_complex(add_kink(kh::test::unknot(), 1, -1));
  CHECK(neg.circle_count(0) == 1);
  CHECK(neg.circle_count(1) == 2);
  const std::map<Bidegree, std::size_t> want_neg{{{0, -1}, 1}, {{0, 1}, 1}, {{1, -1}, 1}, {{1, 1}, 2}, {{1, 3}, 1}};
  CHECK(neg.dims() == want_neg);
  // Delta(1) = 1 (x) X + X (x) 1
  CHECK(neg.block(0, 1).nnz() == 2);
  CHECK(verify_d_squared(neg).ok);
}

TEST_CASE("trefoil complex: d^2 = 0 two ways") {
  const auto cx = build_complex(kh::test::left_trefoil());
  check_bookkeeping(cx);
  CHECK(verify_d_squared(cx).ok);
  CHECK(composites_vanish(cx));
}

TEST_CASE("sign mutant breaks d^2") {
  const auto clean = build_complex(kh::test::left_trefoil());
  std::optional<Bidegree> target;
  for (const auto& [key, dim] : clean.dims()) {
    if (clean.dim(key.first + 1, key.second) && clean.dim(key.first + 2, key.second)) {
      target = key;
      break;
    }
  }
  REQUIRE(target);
  const auto nnz = clean.block(target->first, target->second).nnz();
  bool broke = false;
  for (std::size_t entry = 0; entry < nnz && !broke; ++entry) {
    auto cx = build_complex(kh::test::left_trefoil());
    cx.set_sign_mutant(target->first, target->second, entry);
    const auto r = verify_d_squared(cx);
    if (!r.ok) {
      broke = true;
      REQUIRE(r.offending);
      CHECK(*r.offending == *target);
      CHECK_FALSE(composites_vanish(cx));
    }
  }
  CHECK(broke);
}

TEST_CASE("property: random closures up to 10 crossings") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int strands = 2 + trial % 3;
    const auto d = braid_closure(kh::test::random_word(rng, strands, 1 + trial % 10), strands);
    const auto cx = build_complex(d);
    check_bookkeeping(cx);
    CHECK(verify_d_squared(cx).ok);
    CHECK(composites_vanish(cx));
  }
}

TEST_CASE("budget and triplet dump") {
  CHECK_THROWS_AS(build_complex(kh::test::left_trefoil(), 2), Error);
  try {
    build_complex(kh::test::left_trefoil(), 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
  const auto cx = build_complex(add_kink(kh::test::unknot(), 1, +1));
  std::istringstream in(cx.dump_triplets());
  int i, j, row, col;
  long num, den;
  int lines = 0;
  while (in >> i >> j >> row >> col >> num >> den) {
    ++lines;
    CHECK(i == 0);
    CHECK(den == 1);
  }
  CHECK(lines == 3);
}
