#include "kh/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "kh/error.hpp"
#include "kh/exact_linalg.hpp"
#include "kh/experiments.hpp"
#include "kh/homology.hpp"
#include "kh/jones_oracle.hpp"

namespace kh {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string ranks_text(const KhovanovTable& t) {
  std::string out;
  for (const auto& [key, r] : t.ranks) {
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(key.first) + "," + std::to_string(key.second) + "):" + std::to_string(r);
  }
  return out.empty() ? "{}" : "{" + out + "}";
}

// Naive dense Gaussian elimination over mpq, kept deliberately simple.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const mpq_class factor = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= factor * a[r][k];
    }
    ++r;
  }
  return r;
}

struct Fixture {
  std::string name;
  LinkDiagram diagram;
  KhovanovTable raw;
  KhovanovTable normal;
  std::string error;
};

Fixture compute_fixture(const NamedDiagram& nd, int budget) {
  Fixture f{nd.name, nd.diagram, {}, {}, {}};
  try {
    auto cx = build_complex(nd.diagram, budget);
    const auto sq = verify_d_squared(cx);
    if (!sq.ok) {
      f.error = "d^2 != 0 at (" + std::to_string(sq.offending->first) + "," + std::to_string(sq.offending->second) + ")";
      return f;
    }
    f.raw = homology_table(cx);
    f.normal = normalize(f.raw);
  } catch (const Error& e) {
    f.error = e.what();
  }
  return f;
}

class Runner {
 public:
  Runner(const AcceptanceOptions& options, const std::function<void(const CriterionResult&)>& cb)
      : options_(options), cb_(cb) {}

  std::vector<CriterionResult> run() {
    trefoil_ground_truth();
    cochains();
    dual_jones();
    invariance();
    torus_anchor();
    scan_slope();
    scan_mdeg();
    spanning();
    sandwich();
    skein();
    linear_algebra();
    determinism();
    return results_;
  }

 private:
  void emit(int id, std::string name, bool pass, std::string detail, double seconds) {
    results_.push_back({id, std::move(name), pass, std::move(detail), seconds});
    if (cb_) cb_(results_.back());
  }

  LinkDiagram trefoil() const {
    return LinkDiagram::from_pd({{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}}, 0, std::array<int, 2>{1, 4});
  }

  std::string trefoil_line() {
    const auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
      const auto t = khovanov_homology(trefoil(), options_.budget);
      const std::map<Bidegree, std::size_t> expected{{{-3, -9}, 1}, {{-2, -5}, 1}, {{0, -3}, 1}, {{0, -1}, 1}};
      pass = t.ranks == expected;
      detail = ranks_text(t);
    } catch (const Error& e) {
      detail = e.what();
    }
    last_seconds_ = since(t0);
    if (last_seconds_ >= kTrefoilSeconds) {
      pass = false;
      detail += "; slower than the 1 s limit";
    }
    return (pass ? "1" : "0") + detail;
  }

  void trefoil_ground_truth() {
    trefoil_line_ = trefoil_line();
    emit(1, "trefoil_ground_truth", trefoil_line_[0] == '1', trefoil_line_.substr(1), last_seconds_);
  }

  void cochains() {
    const auto t0 = Clock::now();
    std::vector<NamedDiagram> all;
    try {
      all = load_fixtures(options_.fixtures_dir);
    } catch (const Error& e) {
      emit(2, "cochain_validity", false, e.what(), since(t0));
      return;
    }
    const auto n_fixtures = all.size();
    auto randoms = random_braid_closures(kAcceptanceSeed, kRandomClosures, kRandomClosureMaxCrossings);
    all.insert(all.end(), randoms.begin(), randoms.end());
    std::string failure;
    for (const auto& nd : all) {
      fixtures_.push_back(compute_fixture(nd, options_.budget));
      if (failure.empty() && !fixtures_.back().error.empty()) failure = nd.name + ": " + fixtures_.back().error;
    }
    const double secs = since(t0);
    bool pass = failure.empty() && n_fixtures > 0;
    std::string detail = std::to_string(n_fixtures) + " fixtures and " + std::to_string(randoms.size()) +
                         " random closures";
    if (n_fixtures == 0) detail = "no fixtures found";
    if (!failure.empty()) detail = failure;
    if (secs >= kCochainSeconds) {
      pass = false;
      detail += "; slower than the 120 s limit";
    }
    emit(2, "cochain_validity", pass, detail, secs);
  }

  void dual_jones() {
    const auto t0 = Clock::now();
    std::string failure;
    for (const auto& f : fixtures_) {
      if (!f.error.empty()) {
        failure = f.name + ": no table";
        break;
      }
      try {
        const auto a = jones_from_kh(f.normal);
        const auto b = jones_polynomial(f.diagram, options_.budget);
        if (!(a == b)) {
          failure = f.name + ": " + a.str() + " vs " + b.str();
          break;
        }
      } catch (const Error& e) {
        failure = f.name + ": " + e.what();
        break;
      }
    }
    emit(3, "dual_oracle_jones", failure.empty() && !fixtures_.empty(),
         failure.empty() ? std::to_string(fixtures_.size()) + " diagrams agree" : failure, since(t0));
  }

  std::string invariance_line() {
    const auto base = trefoil();
    std::string detail;
    bool pass = true;
    try {
      const auto t = khovanov_homology(base, options_.budget).ranks;
      const std::vector<std::pair<std::string, LinkDiagram>> moves{
          {"R1+", add_kink(base, 2, +1)}, {"R1-", add_kink(base, 3, -1)}, {"R2", add_clasp(base, 1, 4)}};
      for (const auto& [name, d] : moves) {
        const auto other = khovanov_homology(d, options_.budget).ranks;
        if (other != t) {
          pass = false;
          detail = name + " changes the table";
          break;
        }
      }
      if (pass) detail = "R1+, R1-, R2 leave the table unchanged";
    } catch (const Error& e) {
      pass = false;
      detail = e.what();
    }
    return (pass ? "1" : "0") + detail;
  }

  void invariance() {
    const auto t0 = Clock::now();
    invariance_line_ = invariance_line();
    emit(4, "invariance_regression", invariance_line_[0] == '1', invariance_line_.substr(1), since(t0));
  }

  void torus_anchor() {
    const auto t0 = Clock::now();
    ScanOptions so;
    so.budget = options_.budget;
    std::string detail;
    bool pass = true;
    try {
      torus_ = torus_scan(2, kTorusMaxN, so);
      torus_csv_ = scan_csv(torus_);
      for (int m = 1; 2 * m <= kTorusMaxN; ++m) {
        const auto& row = torus_.rows[static_cast<std::size_t>(2 * m)];
        if (!row.error.empty() || row.i_max != 2 * m) {
          pass = false;
          detail = "T(2," + std::to_string(2 * m) + "): " + (row.error.empty() ? "i_max " + std::to_string(row.i_max) : row.error);
          break;
        }
      }
      if (pass) detail = "i_max(T(2,2m)) = 2m for m = 1..5";
    } catch (const Error& e) {
      pass = false;
      detail = e.what();
    }
    const double secs = since(t0);
    if (secs >= kTorusSeconds) {
      pass = false;
      detail += "; slower than the 60 s limit";
    }
    emit(5, "torus_slope_anchor", pass, detail, secs);
  }

  const Verdict* scan_verdict(const std::string& name) const { return scan_ok_ ? scan_.verdict(name) : nullptr; }

  void scan_slope() {
    const auto t0 = Clock::now();
    ScanOptions so;
    so.budget = options_.budget;
    std::string detail;
    try {
      scan_ = twist_scan(trefoil(), options_.scan_max_n, so);
      scan_ok_ = true;
      scan_csv_ = scan_csv(scan_);
    } catch (const Error& e) {
      detail = e.what();
    }
    const double secs = since(t0);
    bool pass = false;
    if (scan_ok_) {
      const auto* rows = scan_.verdict("rows_computed");
      const auto* slope = scan_.verdict("slope");
      pass = rows->pass && slope->pass;
      detail = rows->pass ? slope->detail : rows->detail;
    }
    if (secs > kScanSeconds) {
      pass = false;
      detail += "; slower than the 15 min limit";
    }
    emit(6, "slope_stabilization", pass, detail, secs);
  }

  void scan_mdeg() {
    const auto* stab = scan_verdict("mdeg_stabilization");
    const auto* bound = scan_verdict("mdeg_increment_bound");
    if (!stab) {
      emit(7, "mdeg_increment", false, "scan unavailable", 0);
      return;
    }
    std::string detail = stab->detail;
    if (!bound->pass) detail += "; row " + std::to_string(*bound->first_row) + ": " + bound->detail;
    emit(7, "mdeg_increment", stab->pass && bound->pass, detail, 0);
  }

  void spanning() {
    const auto t0 = Clock::now();
    std::string failure;
    std::size_t checked = 0;
    for (const auto& f : fixtures_) {
      if (!f.error.empty()) continue;
      const auto v = bounds_report(f.diagram, f.raw);
      ++checked;
      if (!v.pass) {
        failure = f.name + ": " + v.detail;
        break;
      }
    }
    for (const auto* report : {&torus_, &scan_}) {
      const auto* v = report->verdict("spanning");
      if (!failure.empty() || !v) continue;
      checked += report->rows.size();
      if (!v->pass) failure = report->kind + " row " + std::to_string(*v->first_row) + ": " + v->detail;
    }
    emit(8, "spanning_bounds", failure.empty(),
         failure.empty() ? std::to_string(checked) + " tables, zero violations" : failure, since(t0));
  }

  void sandwich() {
    std::string failure;
    for (const auto* report : {&scan_, &torus_}) {
      const auto* v = report->verdict("sandwich");
      if (!v) {
        failure = "scan unavailable";
        break;
      }
      if (!v->pass) {
        failure = report->kind + " row " + std::to_string(*v->first_row) + ": " + v->detail;
        break;
      }
    }
    emit(9, "proof_sandwich", failure.empty(), failure.empty() ? "zero violations" : failure, 0);
  }

  void skein() {
    const auto* v = scan_verdict("twist_skein");
    emit(10, "twist_skein_identity", v && v->pass, v ? v->detail : "scan unavailable", 0);
  }

  std::string linear_algebra_line() {
    std::mt19937_64 rng(kAcceptanceSeed);
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < kRandomMatrices; ++trial) {
      const int rows = pick(1, kRandomMatrixMaxSide);
      const int cols = pick(1, kRandomMatrixMaxSide);
      std::vector<std::vector<mpq_class>> dense(static_cast<std::size_t>(rows),
                                                std::vector<mpq_class>(static_cast<std::size_t>(cols)));
      if (trial % 3 == 2) {
        // low rank by construction: (rows x k) times (k x cols)
        const int k = pick(0, std::min(rows, cols));
        std::vector<std::vector<int>> a(rows, std::vector<int>(k)), b(k, std::vector<int>(cols));
        for (auto& r : a) for (auto& x : r) x = pick(-3, 3);
        for (auto& r : b) for (auto& x : r) x = pick(-3, 3);
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j)
            for (int t = 0; t < k; ++t) dense[i][j] += mpq_class(a[i][t] * b[t][j], t + 1);
      } else {
        for (auto& r : dense)
          for (auto& x : r)
            if (pick(0, 1)) x = mpq_class(pick(-9, 9), pick(1, 6));
      }
      std::vector<MatrixEntry> entries;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          mpq_class v = dense[i][j];
          v.canonicalize();
          if (v != 0) entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), Rational(v)});
        }
      const auto m = SparseRationalMatrix::from_entries(rows, cols, entries);
      const auto expected = dense_rank(dense);
      RankOptions checked;
      checked.verify_modular = true;
      const auto got = rank(m);
      const auto got_checked = rank(m, checked);
      const auto got_t = rank(transpose(m));
      if (got != expected || got_checked != expected || got_t != expected) {
        return "0matrix " + std::to_string(trial) + " (" + std::to_string(rows) + "x" + std::to_string(cols) +
               "): rank " + std::to_string(got) + ", oracle " + std::to_string(expected);
      }
    }
    return "1" + std::to_string(kRandomMatrices) + " matrices agree with dense elimination";
  }

  void linear_algebra() {
    const auto t0 = Clock::now();
    linalg_line_ = linear_algebra_line();
    emit(11, "linear_algebra_oracle", linalg_line_[0] == '1', linalg_line_.substr(1), since(t0));
  }

  void determinism() {
    const auto t0 = Clock::now();
    std::string failure;
    try {
      ScanOptions pool;
      pool.budget = options_.budget;
      pool.threads = 4;
      ScanOptions rows_parallel = pool;
      rows_parallel.parallel_rows = true;
      ScanOptions single;
      single.budget = options_.budget;

      if (scan_csv(torus_scan(2, kTorusMaxN, single)) != torus_csv_) failure = "torus scan differs between runs";
      if (failure.empty() && scan_csv(torus_scan(2, kTorusMaxN, pool)) != torus_csv_)
        failure = "torus scan differs with a 4-thread rank pool";
      if (failure.empty() && scan_csv(torus_scan(2, kTorusMaxN, rows_parallel)) != torus_csv_)
        failure = "torus scan differs with 4 row threads";

      // the twist scan prefix: rows are independent of n_max
      const int prefix = std::min(options_.scan_max_n, 8);
      auto head = [](const std::string& csv, int lines) {
        std::size_t pos = 0;
        for (int i = 0; i < lines && pos != std::string::npos; ++i) {
          pos = csv.find('\n', pos);
          if (pos != std::string::npos) ++pos;
        }
        return csv.substr(0, pos);
      };
      const std::string want = head(scan_csv_, prefix + 3);
      if (failure.empty() && scan_ok_ && scan_csv(twist_scan(trefoil(), prefix, pool)) != want)
        failure = "twist scan differs with a 4-thread rank pool";
      if (failure.empty() && scan_ok_ && scan_csv(twist_scan(trefoil(), prefix, rows_parallel)) != want)
        failure = "twist scan differs with 4 row threads";

      if (failure.empty() && trefoil_line() != trefoil_line_) failure = "criterion 1 output differs";
      if (failure.empty() && invariance_line() != invariance_line_) failure = "criterion 4 output differs";
      if (failure.empty() && linear_algebra_line() != linalg_line_) failure = "criterion 11 output differs";
      if (failure.empty() && !scan_ok_) failure = "scan unavailable";
    } catch (const Error& e) {
      failure = e.what();
    }
    emit(12, "determinism", failure.empty(),
         failure.empty() ? "CSV and criterion lines identical across runs and thread counts 1 and 4" : failure,
         since(t0));
  }

  AcceptanceOptions options_;
  std::function<void(const CriterionResult&)> cb_;
  std::vector<CriterionResult> results_;
  std::vector<Fixture> fixtures_;
  ScanReport torus_;
  ScanReport scan_;
  bool scan_ok_ = false;
  std::string torus_csv_;
  std::string scan_csv_;
  std::string trefoil_line_;
  std::string invariance_line_;
  std::string linalg_line_;
  double last_seconds_ = 0;
};

}  // namespace

std::vector<NamedDiagram> load_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(Errc::MalformedSyntax, "fixture directory not found: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".pd") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<NamedDiagram> out;
  for (const auto& p : paths) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back({p.stem().string(), parse_pd(ss.str())});
  }
  return out;
}

std::vector<NamedDiagram> random_braid_closures(std::uint64_t seed, int count, int max_crossings) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<NamedDiagram> out;
  for (int k = 0; k < count; ++k) {
    const int strands = pick(2, 4);
    const int length = pick(1, max_crossings);
    std::vector<int> word;
    std::string name = "braid" + std::to_string(k) + "[";
    for (int i = 0; i < length; ++i) {
      const int g = pick(1, strands - 1) * (pick(0, 1) ? 1 : -1);
      word.push_back(g);
      name += (i ? "," : "") + std::to_string(g);
    }
    out.push_back({name + "]/" + std::to_string(strands), braid_closure(word, strands)});
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  return Runner(options, on_result).run();
}

std::string result_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + r.name + ": " + (r.pass ? "PASS" : "FAIL") + " (" + r.detail +
         ")";
}

}  // namespace kh
