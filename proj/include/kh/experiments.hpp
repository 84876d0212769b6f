#pragma once

// Twist-family and torus-family scans with per-row bound checks.

#include <optional>
#include <string>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/homology.hpp"
#include "kh/laurent.hpp"
#include "kh/rational.hpp"

namespace kh {

struct Verdict {
  std::string name;
  bool pass = true;
  std::string detail;  // first counterexample, or a short summary
  std::optional<int> first_row;
};

struct TwistScanRow {
  int n = 0;
  int crossings = 0;
  int n_plus = 0;
  int n_minus = 0;
  int s0 = 0;
  int s1 = 0;
  int i_max = 0;           // of the normalised table
  int max_h_degree = 0;    // max i with H^i(D_n) != 0 (unnormalised)
  Rational mdeg;
  Rational f;
  Rational k;
  std::optional<int> delta_i_max;
  std::optional<Rational> delta_mdeg;
  LaurentPoly jones_kh{'t', 2};
  LaurentPoly jones_bracket{'t', 2};
  KhovanovTable table;  // normalised
  std::string error;    // nonempty if the row could not be computed
};

struct ScanReport {
  std::string kind;
  std::vector<TwistScanRow> rows;
  std::optional<int> stabilization_n;       // delta_i_max == 1 on the trailing window
  std::optional<int> mdeg_stabilization_n;  // delta_mdeg == 3/2 on the trailing window
  std::vector<Verdict> verdicts;

  const Verdict* verdict(const std::string& name) const;
  bool all_pass() const;
};

struct ScanOptions {
  int budget = kDefaultBudget;
  int threads = 1;            // per-block rank pool inside each row
  bool parallel_rows = false;  // rows on separate threads instead
};

/// D_n = n positive half-twists in the marked coherent region of `base`.
ScanReport twist_scan(const LinkDiagram& base, int n_max, const ScanOptions& options = {});

/// p = 2: the twist scan of a marked two-component unlink, so D_n = T(2, n).
/// p >= 3: closures of (sigma_1 ... sigma_{p-1})^n; exploratory rows with
/// the bound verdicts only.
ScanReport torus_scan(int p, int n_max, const ScanOptions& options = {});

/// Spanning band s1 - 2 - c <= j - 2i <= 2 - s0 on every unnormalised entry,
/// and -n_minus <= i <= n_plus on the normalised table. `table` may be either
/// normalised or not.
Verdict bounds_report(const LinkDiagram& d, const KhovanovTable& table);

/// Length of the trailing window used for stabilisation: ceil(n_max / 3).
int trailing_window(int n_max);

std::string scan_csv(const ScanReport& report);
std::string scan_text(const ScanReport& report);

}  // namespace kh
