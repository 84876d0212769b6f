#include <doctest.h>

#include "kh/error.hpp"
#include "kh/experiments.hpp"
#include "support.hpp"

using namespace kh;

TEST_CASE("trailing window") {
  CHECK(trailing_window(0) == 0);
  CHECK(trailing_window(1) == 1);
  CHECK(trailing_window(3) == 1);
  CHECK(trailing_window(10) == 4);
  CHECK(trailing_window(12) == 4);
}

TEST_CASE("trefoil twist scan to n = 9") {
  const auto r = twist_scan(kh::test::left_trefoil(), 9);
  REQUIRE(r.rows.size() == 10);
  const std::vector<int> i_max{0, 0, 0, 0, 0, 2, 3, 4, 5, 6};
  const std::vector<Rational> mdeg{-1, Rational(-1, 2), 0, Rational(1, 2), 0, Rational(5, 2), 4, Rational(11, 2), 7,
                                   Rational(17, 2)};
  for (int n = 0; n <= 9; ++n) {
    const auto& row = r.rows[n];
    CHECK(row.error.empty());
    CHECK(row.crossings == 3 + n);
    CHECK(row.i_max == i_max[n]);
    CHECK(row.mdeg == mdeg[n]);
    CHECK(row.f == Rational(2) * row.mdeg + Rational(1 - row.n_plus + 2 * row.n_minus));
    CHECK(row.k == (row.f - Rational(2) + Rational(3)) / Rational(2));
    CHECK(row.s0 == 3);
    CHECK(row.jones_kh == row.jones_bracket);
  }
  CHECK_FALSE(r.rows[0].delta_i_max);
  CHECK_FALSE(r.rows[0].delta_mdeg);
  CHECK(*r.rows[5].delta_mdeg == Rational(5, 2));
  REQUIRE(r.stabilization_n);
  CHECK(*r.stabilization_n == 6);
  REQUIRE(r.mdeg_stabilization_n);
  CHECK(*r.mdeg_stabilization_n == 6);

  CHECK(r.verdict("sandwich")->pass);
  CHECK(r.verdict("spanning")->pass);
  CHECK(r.verdict("twist_skein")->pass);
  CHECK(r.verdict("slope")->pass);
  CHECK(r.verdict("slope_sandwich")->pass);
  // the bigon family reaches T(2,2) at n = 5, where Mdeg jumps by 5/2
  const auto* bound = r.verdict("mdeg_increment_bound");
  CHECK_FALSE(bound->pass);
  CHECK(*bound->first_row == 5);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("unlink scan gives T(2, n)") {
  const auto r = torus_scan(2, 10);
  REQUIRE(r.rows.size() == 11);
  for (int m = 1; 2 * m <= 10; ++m) CHECK(r.rows[2 * m].i_max == 2 * m);
  CHECK(r.verdict("spanning")->pass);
  CHECK(r.verdict("sandwich")->pass);
  CHECK(r.verdict("slope")->pass);
  CHECK(r.verdict("slope_sandwich")->pass);
  CHECK(*r.stabilization_n == 3);
}

TEST_CASE("CSV and text reports") {
  const auto r = twist_scan(kh::test::left_trefoil(), 4);
  const auto csv = scan_csv(r);
  CHECK(csv.rfind("# format=1\nn,crossings,i_max,mdeg_num,mdeg_den,f_num,f_den,k_num,k_den,delta_i_max,"
                  "delta_mdeg_num,delta_mdeg_den\n0,3,0,-1,1,5,1,3,1,,,\n1,4,0,-1,2,5,1,3,1,0,1,2\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 5);
  const auto text = scan_text(r);
  CHECK(text.rfind("format=1\nkind=twist-scan\nrows=5\n", 0) == 0);
  CHECK(text.find("verdict sandwich pass") != std::string::npos);
  CHECK(text.find("jones=t^(-1) + t^(-3) - t^(-4)") != std::string::npos);
}

TEST_CASE("determinism across thread counts") {
  ScanOptions pool;
  pool.threads = 4;
  ScanOptions rows = pool;
  rows.parallel_rows = true;
  const auto base = kh::test::left_trefoil();
  const auto want = scan_csv(twist_scan(base, 6));
  CHECK(scan_csv(twist_scan(base, 6)) == want);
  CHECK(scan_csv(twist_scan(base, 6, pool)) == want);
  CHECK(scan_csv(twist_scan(base, 6, rows)) == want);
  CHECK(scan_text(twist_scan(base, 6, rows)) == scan_text(twist_scan(base, 6)));
}

TEST_CASE("bounds report") {
  CHECK(bounds_report(kh::test::unknot(), khovanov_homology(kh::test::unknot())).pass);
  const auto t = khovanov_homology(kh::test::left_trefoil());
  CHECK(bounds_report(kh::test::left_trefoil(), t).pass);
  for (const auto& [key, r] : t.ranks) CHECK(key.first >= -3);
  for (int m = 1; m <= 10; ++m) {
    const auto d = kh::test::torus2(m);
    CHECK(bounds_report(d, khovanov_homology(d)).pass);
  }
  // an unnormalised table is accepted too
  const auto raw = homology_table(build_complex(kh::test::figure_eight()));
  CHECK(bounds_report(kh::test::figure_eight(), raw).pass);
  // a table from a different diagram is caught
  CHECK_FALSE(bounds_report(kh::test::unknot(), t).pass);
}

TEST_CASE("scan errors") {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Overflow;
  };
  CHECK(code([] { twist_scan(kh::test::figure_eight(), 2); }) == Errc::NoMarkedRegion);
  CHECK(code([] { twist_scan(kh::test::left_trefoil(), -1); }) == Errc::NegativeTwistCount);
  ScanOptions tight;
  tight.budget = 5;
  CHECK(code([&] { twist_scan(kh::test::left_trefoil(), 3, tight); }) == Errc::BudgetExceeded);
}

TEST_CASE("exploratory torus rows for p = 3") {
  const auto r = torus_scan(3, 3);
  CHECK(r.rows.size() == 4);
  CHECK(r.verdict("jones_agreement")->pass);
  CHECK(r.verdict("spanning")->pass);
  CHECK(r.rows[2].jones_bracket.str() == "-t^(4) + t^(3) + t");
}
