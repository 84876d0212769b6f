#include <doctest.h>

#include <map>

#include "kh/diagram.hpp"
#include "kh/error.hpp"
#include "kh/homology.hpp"
#include "support.hpp"

using namespace kh;
using kh::test::left_trefoil;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no kh::Error thrown");
  return Errc::Overflow;
}

// every label appears exactly twice among the crossing slots
bool degree_two(const LinkDiagram& d) {
  std::map<int, int> seen;
  for (const auto& x : d.crossings())
    for (int e : x.edges) ++seen[e];
  for (const auto& [label, n] : seen)
    if (n != 2) return false;
  return static_cast<int>(seen.size()) == d.edge_count();
}

}  // namespace

TEST_CASE("parse the left trefoil") {
  const auto d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  CHECK(d.crossing_count() == 3);
  CHECK(d.edge_count() == 6);
  CHECK(degree_two(d));
  const auto c = crossing_counts(d);
  CHECK(c.n_plus == 0);
  CHECK(c.n_minus == 3);
  CHECK(c.writhe == -3);
}

TEST_CASE("empty crossing list with one loop is the unknot") {
  const auto d = parse_pd("loops=1\n");
  CHECK(d.crossing_count() == 0);
  CHECK(d.free_loops() == 1);
  const auto c = crossing_counts(d);
  CHECK((c.n_plus == 0 && c.n_minus == 0 && c.writhe == 0));
  CHECK(global_smoothing_circles(d, 0) == 1);
  CHECK(global_smoothing_circles(d, 1) == 1);
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { parse_pd("X(1,4,2,5) X(3,6,4,1)"); }) == Errc::EdgeDegreeError);
  CHECK(code_of([] { parse_pd("X(1,4,2,5"); }) == Errc::MalformedSyntax);
  CHECK(code_of([] { parse_pd("Y(1,2,3,4)"); }) == Errc::MalformedSyntax);
  CHECK(code_of([] { insert_half_twists(kh::test::figure_eight(), 1); }) == Errc::NoMarkedRegion);
  CHECK(code_of([] { insert_half_twists(left_trefoil(), -1); }) == Errc::NegativeTwistCount);
}

TEST_CASE("comments and headers round-trip") {
  const auto d = parse_pd("# a comment\nmark=1,4\nX(1,4,2,5) X(3,6,4,1)\n X(5,2,6,3) # trailing\n");
  CHECK(d == left_trefoil());
  CHECK(parse_pd(to_pd_text(d)) == d);
  CHECK(fingerprint(d).size() == 16);
  CHECK(fingerprint(d) == fingerprint(parse_pd(to_pd_text(d))));
}

TEST_CASE("marked trefoil pair is coherent") {
  REQUIRE(left_trefoil().marked_region());
  CHECK(left_trefoil().marked_region()->coherent);
}

TEST_CASE("braid closures") {
  const auto u = braid_closure({}, 1);
  CHECK(u.crossing_count() == 0);
  CHECK(u.free_loops() == 1);

  const auto t3 = braid_closure({1, 1, 1}, 2);
  CHECK(t3.crossing_count() == 3);
  CHECK(degree_two(t3));

  const auto t4 = braid_closure({1, 1, 1, 1}, 2);
  const auto c = crossing_counts(t4);
  CHECK(t4.crossing_count() == 4);
  CHECK((c.n_plus == 4 && c.n_minus == 0 && c.writhe == 4));

  CHECK(parse_braid_word("1 1 -2") == std::vector<int>{1, 1, -2});
  CHECK(parse_braid_word("1,-1") == std::vector<int>{1, -1});
}

TEST_CASE("mirror") {
  CHECK(mirror(kh::test::unknot()) == kh::test::unknot());
  const auto right = mirror(left_trefoil());
  CHECK(crossing_counts(right).writhe == 3);
  CHECK(crossing_counts(mirror(right)).writhe == -3);
  CHECK(mirror(mirror(left_trefoil())) == left_trefoil());
  const auto fig8 = kh::test::figure_eight();
  CHECK(mirror(mirror(fig8)) == fig8);
}

TEST_CASE("half-twist insertion") {
  const auto base = left_trefoil();
  const auto same = insert_half_twists(base, 0);
  CHECK(same.crossing_count() == 3);
  CHECK(khovanov_homology(same).ranks == khovanov_homology(base).ranks);

  for (int n = 1; n <= 4; ++n) {
    const auto d = insert_half_twists(base, n);
    CHECK(d.crossing_count() == 3 + n);
    CHECK(crossing_counts(d).n_plus == n);
    CHECK(degree_two(d));
  }

  // unlink with n = 2 is the Hopf link
  const auto h = insert_half_twists(kh::test::marked_unlink(), 2);
  CHECK(h.crossing_count() == 2);
  CHECK(crossing_counts(h).n_plus == 2);
  CHECK(khovanov_homology(h).ranks == khovanov_homology(kh::test::hopf()).ranks);
}

TEST_CASE("property: twist composition") {
  const auto base = left_trefoil();
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3 - a; ++b) {
      const auto twice = insert_half_twists(insert_half_twists(base, a), b);
      const auto once = insert_half_twists(base, a + b);
      CHECK(twice.crossing_count() == base.crossing_count() + a + b);
      CHECK(khovanov_homology(twice).ranks == khovanov_homology(once).ranks);
    }
  }
}

TEST_CASE("property: s0 is stable under coherent twisting") {
  for (const auto& base : {left_trefoil(), kh::test::marked_unlink()}) {
    const int s0 = global_smoothing_circles(base, 0);
    for (int n = 0; n <= 10; ++n) CHECK(global_smoothing_circles(insert_half_twists(base, n), 0) == s0);
  }
}

TEST_CASE("property: random braid closures are valid diagrams") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int strands = 2 + trial % 4;
    const auto word = kh::test::random_word(rng, strands, 1 + trial % 14);
    const auto d = braid_closure(word, strands);
    CHECK(degree_two(d));
    const auto c = crossing_counts(d);
    CHECK(c.n_plus + c.n_minus == d.crossing_count());
    // PD text cannot orient a component that never passes under
    try {
      const auto back = parse_pd(to_pd_text(d));
      CHECK(back == d);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::AmbiguousOrientation);
    }
    CHECK(mirror(mirror(d)) == d);
    const auto m = crossing_counts(mirror(d));
    CHECK((m.n_plus == c.n_minus && m.n_minus == c.n_plus));
  }
}

TEST_CASE("Reidemeister helpers") {
  const auto u = kh::test::unknot();
  const auto k = add_kink(u, 1, +1);
  CHECK(k.crossing_count() == 1);
  CHECK(k.free_loops() == 0);
  CHECK(crossing_counts(k).n_plus == 1);
  CHECK(crossing_counts(add_kink(u, 1, -1)).n_minus == 1);

  const auto t = left_trefoil();
  CHECK(add_kink(t, 2, -1).crossing_count() == 4);
  const auto c = add_clasp(t, 1, 4);
  CHECK(c.crossing_count() == 5);
  CHECK(crossing_counts(c).writhe == -3);
  CHECK(add_free_loop(t).free_loops() == 1);
}

TEST_CASE("projection pieces") {
  CHECK(diagram_pieces(kh::test::unknot()) == 1);
  CHECK(diagram_pieces(kh::test::marked_unlink()) == 2);
  CHECK(diagram_pieces(left_trefoil()) == 1);
  CHECK(diagram_pieces(add_free_loop(left_trefoil())) == 2);
  CHECK(diagram_pieces(braid_closure({1, 3}, 4)) == 2);
}
