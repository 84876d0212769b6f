#include "kh/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "kh/error.hpp"
#include "kh/jones_oracle.hpp"

namespace kh {

namespace {

struct BaseData {
  int s0 = 0;
  int crossings = 0;
  int n_minus = 0;
};

TwistScanRow compute_row(const LinkDiagram& dn, int n, const BaseData& base, const ScanOptions& options,
                         int threads) {
  TwistScanRow row;
  row.n = n;
  row.crossings = dn.crossing_count();
  try {
    const auto counts = crossing_counts(dn);
    row.n_plus = counts.n_plus;
    row.n_minus = counts.n_minus;
    row.s0 = global_smoothing_circles(dn, 0);
    row.s1 = global_smoothing_circles(dn, 1);
    HomologyOptions hopts;
    hopts.threads = threads;
    const auto raw = homology_table(build_complex(dn, options.budget), hopts);
    row.max_h_degree = i_max(raw);
    row.table = normalize(raw);
    row.i_max = i_max(row.table);
    row.jones_kh = jones_from_kh(row.table);
    row.jones_bracket = jones_polynomial(dn, options.budget);
    row.mdeg = mdeg(row.jones_bracket);
    row.f = Rational(2) * row.mdeg + Rational(1 - row.n_plus + 2 * row.n_minus);
    row.k = (row.f - Rational(2) + Rational(base.s0)) / Rational(2);
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::optional<int> trailing_run_start(const std::vector<TwistScanRow>& rows, int n_max,
                                      const std::function<bool(const TwistScanRow&)>& hits) {
  if (n_max < 1 || static_cast<int>(rows.size()) != n_max + 1) return std::nullopt;
  int start = n_max + 1;
  while (start - 1 >= 1 && hits(rows[static_cast<std::size_t>(start - 1)])) --start;
  if (n_max + 1 - start >= trailing_window(n_max)) return start;
  return std::nullopt;
}

void fill_deltas(std::vector<TwistScanRow>& rows) {
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const auto& prev = rows[n - 1];
    auto& cur = rows[n];
    if (!prev.error.empty() || !cur.error.empty()) continue;
    cur.delta_i_max = cur.i_max - prev.i_max;
    cur.delta_mdeg = cur.mdeg - prev.mdeg;
  }
}

Verdict per_row(const std::string& name, const std::vector<TwistScanRow>& rows,
                const std::function<std::string(const TwistScanRow&)>& violation) {
  Verdict v{name, true, "", std::nullopt};
  for (const auto& row : rows) {
    if (!row.error.empty()) continue;
    const std::string why = violation(row);
    if (!why.empty()) {
      v.pass = false;
      v.first_row = row.n;
      v.detail = why;
      return v;
    }
  }
  v.detail = "all rows";
  return v;
}

std::vector<TwistScanRow> run_rows(const std::function<LinkDiagram(int)>& family, int n_max, const BaseData& base,
                                   const ScanOptions& options) {
  std::vector<TwistScanRow> rows(static_cast<std::size_t>(n_max) + 1);
  auto one = [&](int n, int threads) {
    try {
      rows[static_cast<std::size_t>(n)] = compute_row(family(n), n, base, options, threads);
    } catch (const Error& e) {
      rows[static_cast<std::size_t>(n)].n = n;
      rows[static_cast<std::size_t>(n)].error = e.what();
    }
  };
  if (options.parallel_rows && options.threads > 1) {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(options.threads, n_max + 1); ++t) {
      pool.emplace_back([&] {
        for (int n; (n = next.fetch_add(1)) <= n_max;) one(n, 1);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (int n = 0; n <= n_max; ++n) one(n, options.threads);
  }
  fill_deltas(rows);
  return rows;
}

Verdict errors_verdict(const std::vector<TwistScanRow>& rows) {
  Verdict v{"rows_computed", true, "all rows", std::nullopt};
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      v.pass = false;
      v.first_row = row.n;
      v.detail = row.error;
      break;
    }
  }
  return v;
}

Verdict jones_verdict(const std::vector<TwistScanRow>& rows) {
  return per_row("jones_agreement", rows, [](const TwistScanRow& r) -> std::string {
    if (r.jones_kh == r.jones_bracket) return "";
    return "from homology " + r.jones_kh.str() + " but bracket gives " + r.jones_bracket.str();
  });
}

Verdict spanning_verdict(const std::vector<TwistScanRow>& rows, const std::function<LinkDiagram(int)>& family) {
  Verdict v{"spanning", true, "all rows", std::nullopt};
  for (const auto& row : rows) {
    if (!row.error.empty()) continue;
    auto b = bounds_report(family(row.n), row.table);
    if (!b.pass) {
      v.pass = false;
      v.first_row = row.n;
      v.detail = b.detail;
      break;
    }
  }
  return v;
}

}  // namespace

int trailing_window(int n_max) { return (n_max + 2) / 3; }

const Verdict* ScanReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

bool ScanReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Verdict bounds_report(const LinkDiagram& d, const KhovanovTable& table) {
  Verdict v{"bounds", true, "", std::nullopt};
  const auto counts = crossing_counts(d);
  const int c = d.crossing_count();
  const int s0 = global_smoothing_circles(d, 0);
  const int s1 = global_smoothing_circles(d, 1);
  // a split diagram is a disjoint union; the band widens by 2 per extra piece
  const int m = diagram_pieces(d);
  const int low = s1 - 2 * m - c;
  const int high = 2 * m - s0;
  const KhovanovTable normal = table.normalized ? table : normalize(table);
  for (const auto& [key, r] : normal.ranks) {
    if (r == 0) continue;
    const auto [i, j] = key;
    if (i > counts.n_plus || i < -counts.n_minus) {
      v.pass = false;
      v.detail = "KH^{" + std::to_string(i) + "," + std::to_string(j) + "} outside [-" +
                 std::to_string(counts.n_minus) + ", " + std::to_string(counts.n_plus) + "]";
      return v;
    }
    const int hi = i + counts.n_minus;
    const int hj = j - counts.n_plus + 2 * counts.n_minus;
    const int band = hj - 2 * hi;
    if (band < low || band > high) {
      v.pass = false;
      v.detail = "H^{" + std::to_string(hi) + "," + std::to_string(hj) + "} has j-2i = " + std::to_string(band) +
                 " outside [" + std::to_string(low) + ", " + std::to_string(high) + "]";
      return v;
    }
  }
  v.detail = "band [" + std::to_string(low) + ", " + std::to_string(high) + "]";
  if (m > 1) v.detail += " over " + std::to_string(m) + " pieces";
  return v;
}

ScanReport twist_scan(const LinkDiagram& base, int n_max, const ScanOptions& options) {
  if (n_max < 0) throw Error(Errc::NegativeTwistCount, "n_max must be nonnegative");
  if (!base.marked_region()) throw Error(Errc::NoMarkedRegion, "twist scan needs a marked region");
  if (!base.marked_region()->coherent) throw Error(Errc::IncoherentRegion, "marked strands are not coherent");
  if (base.crossing_count() + n_max > options.budget) {
    throw Error(Errc::BudgetExceeded, "D_" + std::to_string(n_max) + " would have " +
                                          std::to_string(base.crossing_count() + n_max) +
                                          " crossings, above the budget of " + std::to_string(options.budget));
  }
  const BaseData data{global_smoothing_circles(base, 0), base.crossing_count(), crossing_counts(base).n_minus};
  auto family = [&base](int n) { return insert_half_twists(base, n); };

  ScanReport report;
  report.kind = "twist-scan";
  report.rows = run_rows(family, n_max, data, options);
  const auto& rows = report.rows;
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const TwistScanRow& r) { return r.error.empty(); });
  const Rational three_halves(3, 2);
  if (all_ok) {
    report.stabilization_n = trailing_run_start(rows, n_max, [](const TwistScanRow& r) { return r.delta_i_max == 1; });
    report.mdeg_stabilization_n = trailing_run_start(
        rows, n_max, [&](const TwistScanRow& r) { return r.delta_mdeg && *r.delta_mdeg == three_halves; });
  }

  auto& out = report.verdicts;
  out.push_back(errors_verdict(rows));
  out.push_back(jones_verdict(rows));
  out.push_back(spanning_verdict(rows, family));
  int split_rows = 0;
  for (const auto& r : rows) {
    if (r.error.empty() && diagram_pieces(family(r.n)) > 1) ++split_rows;
  }
  out.push_back(per_row("sandwich", rows, [&](const TwistScanRow& r) -> std::string {
    if (diagram_pieces(family(r.n)) > 1) return "";
    if (r.k <= Rational(r.max_h_degree) && r.max_h_degree <= r.crossings) return "";
    return "k=" + r.k.str() + " max_h=" + std::to_string(r.max_h_degree) + " c=" + std::to_string(r.crossings);
  }));

  if (split_rows > 0 && out.back().pass) {
    out.back().detail = "all rows; " + std::to_string(split_rows) + " split diagram(s) not covered";
  }

  Verdict slope{"slope", report.stabilization_n.has_value(), "", std::nullopt};
  slope.detail = slope.pass ? "delta_i_max = 1 from n=" + std::to_string(*report.stabilization_n)
                            : "delta_i_max is not 1 on the last " + std::to_string(trailing_window(n_max)) + " rows";
  out.push_back(slope);

  Verdict mstab{"mdeg_stabilization", report.mdeg_stabilization_n.has_value(), "", std::nullopt};
  mstab.detail = mstab.pass ? "delta_mdeg = 3/2 from n=" + std::to_string(*report.mdeg_stabilization_n)
                            : "delta_mdeg is not 3/2 on the last " + std::to_string(trailing_window(n_max)) + " rows";
  out.push_back(mstab);

  out.push_back(per_row("mdeg_increment_bound", rows, [&](const TwistScanRow& r) -> std::string {
    if (!r.delta_mdeg || *r.delta_mdeg <= three_halves) return "";
    return "delta_mdeg=" + r.delta_mdeg->str() + " exceeds 3/2";
  }));

  Verdict skein{"twist_skein", true, "", std::nullopt};
  for (int n = 1; n + 1 <= n_max && skein.pass; ++n) {
    const auto& a = rows[static_cast<std::size_t>(n - 1)];
    const auto& b = rows[static_cast<std::size_t>(n)];
    const auto& c = rows[static_cast<std::size_t>(n + 1)];
    if (!a.error.empty() || !b.error.empty() || !c.error.empty()) continue;
    if (!twist_recursion_holds(a.jones_bracket, b.jones_bracket, c.jones_bracket)) {
      skein.pass = false;
      skein.first_row = n;
      skein.detail = "V(" + std::to_string(n + 1) + ") != t^2 V(" + std::to_string(n - 1) + ") + (t^(3/2) - t^(1/2)) V(" +
                     std::to_string(n) + ")";
    }
  }
  if (skein.pass) skein.detail = n_max >= 2 ? "1 <= n <= " + std::to_string(n_max - 1) : "no interior rows";
  out.push_back(skein);

  Verdict ss{"slope_sandwich", true, "", std::nullopt};
  if (!report.mdeg_stabilization_n) {
    ss.detail = "not applicable: Mdeg has not stabilised";
  } else {
    const int big_n = *report.mdeg_stabilization_n;
    const Rational k_n = rows[static_cast<std::size_t>(big_n)].k;
    for (int n = big_n; n <= n_max; ++n) {
      const auto& r = rows[static_cast<std::size_t>(n)];
      const Rational lower = k_n + Rational(n - big_n);
      const int middle = r.i_max + data.n_minus;
      const int upper = data.crossings + n;
      if (!(lower <= Rational(middle)) || middle > upper) {
        ss.pass = false;
        ss.first_row = n;
        ss.detail = lower.str() + " <= " + std::to_string(middle) + " <= " + std::to_string(upper) + " fails";
        break;
      }
    }
    if (ss.pass) ss.detail = "rows n >= " + std::to_string(big_n);
  }
  out.push_back(ss);
  return report;
}

ScanReport torus_scan(int p, int n_max, const ScanOptions& options) {
  if (p < 2) throw Error(Errc::IndexOutOfRange, "torus links need at least two strands");
  if (n_max < 0) throw Error(Errc::NegativeTwistCount, "n_max must be nonnegative");
  if (p == 2) {
    auto base = with_mark(LinkDiagram::from_pd({}, 2), 1, 2);
    auto report = twist_scan(base, n_max, options);
    report.kind = "torus-scan p=2";
    return report;
  }
  if ((p - 1) * n_max > options.budget) {
    throw Error(Errc::BudgetExceeded, "T(" + std::to_string(p) + "," + std::to_string(n_max) + ") needs " +
                                          std::to_string((p - 1) * n_max) + " crossings");
  }
  auto family = [p](int n) {
    std::vector<int> word;
    for (int r = 0; r < n; ++r) {
      for (int g = 1; g < p; ++g) word.push_back(g);
    }
    return braid_closure(word, p);
  };
  const BaseData data{p, 0, 0};
  ScanReport report;
  report.kind = "torus-scan p=" + std::to_string(p);
  report.rows = run_rows(family, n_max, data, options);
  report.verdicts.push_back(errors_verdict(report.rows));
  report.verdicts.push_back(jones_verdict(report.rows));
  report.verdicts.push_back(spanning_verdict(report.rows, family));
  return report;
}

namespace {

std::string num(const Rational& r) { return r.numerator_str(); }
std::string den(const Rational& r) { return r.denominator_str(); }

}  // namespace

std::string scan_csv(const ScanReport& report) {
  std::ostringstream os;
  os << "# format=1\n"
     << "n,crossings,i_max,mdeg_num,mdeg_den,f_num,f_den,k_num,k_den,delta_i_max,delta_mdeg_num,delta_mdeg_den\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << r.crossings << ',';
    if (!r.error.empty()) {
      os << ",,,,,,,,,\n";
      continue;
    }
    os << r.i_max << ',' << num(r.mdeg) << ',' << den(r.mdeg) << ',' << num(r.f) << ',' << den(r.f) << ','
       << num(r.k) << ',' << den(r.k) << ',';
    if (r.delta_i_max) os << *r.delta_i_max;
    os << ',';
    if (r.delta_mdeg) os << num(*r.delta_mdeg) << ',' << den(*r.delta_mdeg);
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::string scan_text(const ScanReport& report) {
  std::ostringstream os;
  const int n_max = static_cast<int>(report.rows.size()) - 1;
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  os << "format=1\n"
     << "kind=" << report.kind << "\n"
     << "rows=" << report.rows.size() << "\n"
     << "trailing_window=" << trailing_window(n_max) << "\n"
     << "stabilization_n=" << opt(report.stabilization_n) << "\n"
     << "mdeg_stabilization_n=" << opt(report.mdeg_stabilization_n) << "\n";
  for (const auto& v : report.verdicts) {
    os << "verdict " << v.name << ' ' << (v.pass ? "pass" : "fail");
    if (v.first_row) os << " row=" << *v.first_row;
    os << " : " << v.detail << "\n";
  }
  for (const auto& r : report.rows) {
    os << "row n=" << r.n << " crossings=" << r.crossings;
    if (!r.error.empty()) {
      os << " error=" << r.error << "\n";
      continue;
    }
    os << " n_plus=" << r.n_plus << " n_minus=" << r.n_minus << " s0=" << r.s0 << " s1=" << r.s1
       << " i_max=" << r.i_max << " max_h=" << r.max_h_degree << " mdeg=" << r.mdeg << " f=" << r.f << " k=" << r.k
       << " delta_i_max=" << (r.delta_i_max ? std::to_string(*r.delta_i_max) : "-")
       << " delta_mdeg=" << (r.delta_mdeg ? r.delta_mdeg->str() : "-") << " jones=" << r.jones_bracket << "\n";
  }
  return os.str();
}

}  // namespace kh
