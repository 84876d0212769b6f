#include "kh/homology.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "kh/error.hpp"

namespace kh {

namespace {

struct BlockTask {
  int i;
  int j;
  std::size_t work;  // rows + cols, used only to schedule big blocks first
  std::size_t rank = 0;
  bool composite_ok = true;
};

bool composite_vanishes(const SparseIntMatrix& first, const SparseIntMatrix& second) {
  std::vector<std::int64_t> acc(second.rows, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t col = 0; col < first.cols; ++col) {
    for (std::size_t t = first.col_start[col]; t < first.col_start[col + 1]; ++t) {
      const std::uint32_t mid = first.row_index[t];
      for (std::size_t u = second.col_start[mid]; u < second.col_start[mid + 1]; ++u) {
        const std::uint32_t r = second.row_index[u];
        if (acc[r] == 0) touched.push_back(r);
        acc[r] += first.value[t] * second.value[u];
      }
    }
    for (std::uint32_t r : touched) {
      if (acc[r] != 0) return false;
    }
    touched.clear();
  }
  return true;
}

void run_task(const GradedComplex& cx, const RankOptions& opts, BlockTask& task) {
  const auto a = cx.block(task.i, task.j);
  if (task.i + 1 < cx.crossing_count() && a.nnz() != 0) {
    const auto b = cx.block(task.i + 1, task.j);
    if (b.nnz() != 0) task.composite_ok = composite_vanishes(a, b);
  }
  if (task.composite_ok) task.rank = rank(a, opts);
}

}  // namespace

KhovanovTable homology_table(const GradedComplex& cx, const HomologyOptions& options) {
  const int c = cx.crossing_count();
  std::vector<BlockTask> tasks;
  for (const auto& [key, n] : cx.dims()) {
    const auto [i, j] = key;
    if (i < c && cx.dim(i + 1, j) > 0) tasks.push_back(BlockTask{i, j, n + cx.dim(i + 1, j)});
  }
  std::vector<std::size_t> order(tasks.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return tasks[x].work > tasks[y].work; });

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(tasks.size())));
  if (threads <= 1) {
    for (std::size_t k : order) run_task(cx, options.rank, tasks[k]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t n; (n = next.fetch_add(1)) < order.size();) {
          try {
            run_task(cx, options.rank, tasks[order[n]]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::map<Bidegree, std::size_t> block_rank;
  for (const auto& task : tasks) {
    if (!task.composite_ok) {
      throw Error(Errc::ComplexNotValid, "d^" + std::to_string(task.i + 1) + " d^" + std::to_string(task.i) +
                                             " is nonzero in q-grading " + std::to_string(task.j));
    }
    block_rank[{task.i, task.j}] = task.rank;
  }
  auto rank_at = [&](int i, int j) -> std::size_t {
    auto it = block_rank.find({i, j});
    return it == block_rank.end() ? 0 : it->second;
  };

  KhovanovTable table;
  const auto counts = crossing_counts(cx.diagram());
  table.meta = TableMeta{counts.n_plus, counts.n_minus, c, fingerprint(cx.diagram())};
  for (const auto& [key, n] : cx.dims()) {
    const auto [i, j] = key;
    const std::size_t h = n - rank_at(i, j) - rank_at(i - 1, j);
    if (h > 0) table.ranks[key] = h;
  }
  return table;
}

KhovanovTable normalize(const KhovanovTable& t) {
  if (t.normalized) throw Error(Errc::AlreadyNormalized, "table is already normalised");
  KhovanovTable out;
  out.meta = t.meta;
  out.normalized = true;
  const int np = t.meta.n_plus;
  const int nm = t.meta.n_minus;
  for (const auto& [key, r] : t.ranks) out.ranks[{key.first - nm, key.second + np - 2 * nm}] = r;
  return out;
}

int i_max(const KhovanovTable& t) {
  if (t.ranks.empty()) throw Error(Errc::EmptyTable, "no nonzero homology");
  int best = t.ranks.begin()->first.first;
  for (const auto& [key, r] : t.ranks) best = std::max(best, key.first);
  return best;
}

LaurentPoly euler_polynomial(const KhovanovTable& t) {
  LaurentPoly p('q', 1);
  for (const auto& [key, r] : t.ranks) {
    const auto v = static_cast<std::int64_t>(r);
    p.add_term(key.second, key.first % 2 == 0 ? v : -v);
  }
  return p;
}

LaurentPoly jones_from_kh(const KhovanovTable& t) {
  LaurentPoly qq('q', 1);
  qq.add_term(1, 1);
  qq.add_term(-1, 1);
  return substitute(exact_divide(euler_polynomial(t), qq), Substitution::QToMinusTHalf);
}

std::string to_text(const KhovanovTable& t) {
  std::ostringstream os;
  os << "format=1\n"
     << "n_plus=" << t.meta.n_plus << "\n"
     << "n_minus=" << t.meta.n_minus << "\n"
     << "crossings=" << t.meta.crossings << "\n"
     << "fingerprint=" << t.meta.fingerprint << "\n"
     << "normalized=" << (t.normalized ? "true" : "false") << "\n"
     << "i j rank\n";
  for (const auto& [key, r] : t.ranks) os << key.first << ' ' << key.second << ' ' << r << "\n";
  return os.str();
}

KhovanovTable parse_table(std::string_view text) {
  KhovanovTable t;
  std::istringstream is{std::string(text)};
  std::string line;
  bool header_done = false;
  bool saw_format = false;
  auto bad = [](const std::string& why) { return Error(Errc::MalformedSyntax, "table: " + why); };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (!header_done) {
      if (line == "i j rank") {
        header_done = true;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw bad("expected key=value, got '" + line + "'");
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      try {
        if (key == "format") {
          if (value != "1") throw bad("unsupported format " + value);
          saw_format = true;
        } else if (key == "n_plus") {
          t.meta.n_plus = std::stoi(value);
        } else if (key == "n_minus") {
          t.meta.n_minus = std::stoi(value);
        } else if (key == "crossings") {
          t.meta.crossings = std::stoi(value);
        } else if (key == "fingerprint") {
          t.meta.fingerprint = value;
        } else if (key == "normalized") {
          if (value != "true" && value != "false") throw bad("normalized must be true or false");
          t.normalized = value == "true";
        } else {
          throw bad("unknown key " + key);
        }
      } catch (const std::logic_error&) {
        throw bad("bad number in '" + line + "'");
      }
      continue;
    }
    std::istringstream row(line);
    long long i;
    long long j;
    long long r;
    std::string rest;
    if (!(row >> i >> j >> r) || (row >> rest) || r <= 0) throw bad("bad row '" + line + "'");
    if (!t.ranks.emplace(Bidegree{static_cast<int>(i), static_cast<int>(j)}, static_cast<std::size_t>(r)).second) {
      throw bad("duplicate row '" + line + "'");
    }
  }
  if (!saw_format) throw bad("missing format header");
  if (!header_done) throw bad("missing column header");
  return t;
}

KhovanovTable khovanov_homology(const LinkDiagram& d, int budget, const HomologyOptions& options) {
  return normalize(homology_table(build_complex(d, budget), options));
}

}  // namespace kh
