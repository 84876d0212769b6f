#include <doctest.h>

#include <random>

#include "kh/error.hpp"
#include "kh/homology.hpp"
#include "kh/jones_oracle.hpp"
#include "kh/resolution_cube.hpp"
#include "support.hpp"

using namespace kh;

namespace {

LaurentPoly a(std::int64_t k, std::int64_t c = 1) { return LaurentPoly::monomial('A', 1, k, c); }
LaurentPoly t2(std::int64_t k, std::int64_t c = 1) { return LaurentPoly::monomial('t', 2, k, c); }

// state sum over the Khovanov cube: sum A^{c - 2|eps|} delta^{k - 1}
LaurentPoly state_sum(const LinkDiagram& d) {
  const int c = d.crossing_count();
  LaurentPoly sum('A', 1);
  for (std::uint32_t eps = 0; eps < (1U << c); ++eps) {
    const int k = resolve(d, SmoothingIndex{eps, c}).circle_count;
    LaurentPoly term = a(c - 2 * std::popcount(eps));
    for (int i = 1; i < k; ++i) term *= loop_value();
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("bracket values") {
  CHECK(kauffman_bracket(kh::test::unknot()) == a(0));
  CHECK(kauffman_bracket(add_kink(kh::test::unknot(), 1, +1)) == a(3, -1));
  CHECK(kauffman_bracket(LinkDiagram::from_pd({}, 2)) == a(2, -1) + a(-2, -1));
  CHECK(loop_value() == a(2, -1) + a(-2, -1));
}

TEST_CASE("Jones values") {
  CHECK(jones_polynomial(kh::test::unknot()) == t2(0));
  CHECK(jones_polynomial(add_kink(kh::test::unknot(), 1, +1)) == t2(0));
  CHECK(jones_polynomial(add_kink(kh::test::unknot(), 1, -1)) == t2(0));
  CHECK(jones_polynomial(kh::test::left_trefoil()) == t2(-2) + t2(-6) - t2(-8));
  CHECK(jones_polynomial(kh::test::figure_eight()) == t2(4) - t2(2) + t2(0) - t2(-2) + t2(-4));
  CHECK(jones_polynomial(kh::test::hopf()) == t2(1, -1) + t2(5, -1));
}

TEST_CASE("skein relation") {
  const auto u = kh::test::unknot();
  CHECK(skein_check(add_kink(u, 1, +1), add_kink(u, 1, -1), LinkDiagram::from_pd({}, 2)));
  CHECK_FALSE(skein_check(add_kink(u, 1, +1), add_kink(u, 1, -1), u));
  // T(2,3), T(2,1), T(2,2)
  CHECK(skein_check(kh::test::torus2(3), kh::test::torus2(1), kh::test::torus2(2)));
}

TEST_CASE("twist recursion along the trefoil family") {
  std::vector<LaurentPoly> v;
  for (int n = 0; n <= 6; ++n) v.push_back(jones_polynomial(insert_half_twists(kh::test::left_trefoil(), n)));
  for (int n = 1; n + 1 <= 6; ++n) CHECK(twist_recursion_holds(v[n - 1], v[n], v[n + 1]));
  CHECK_FALSE(twist_recursion_holds(v[0], v[1], v[3]));
  CHECK_FALSE(twist_recursion_holds(v[1], v[0], v[2]));
}

TEST_CASE("property: loops, mirrors and the state sum") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int strands = 2 + trial % 3;
    const auto d = braid_closure(kh::test::random_word(rng, strands, 1 + trial % 9), strands);
    const auto bracket = kauffman_bracket(d);
    CHECK(kauffman_bracket(add_free_loop(d)) == loop_value() * bracket);
    CHECK(jones_polynomial(mirror(d)) == invert_variable(jones_polynomial(d)));
    CHECK(bracket == state_sum(d));
    CHECK(jones_polynomial(d) == jones_from_kh(khovanov_homology(d)));
  }
}

TEST_CASE("budget") {
  try {
    kauffman_bracket(kh::test::torus2(5), 4);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}
