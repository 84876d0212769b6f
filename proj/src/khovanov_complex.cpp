#include "kh/khovanov_complex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <set>
#include <sstream>

#include "kh/error.hpp"
#include "kh/resolution_cube.hpp"

namespace kh {

namespace {

// binom[n][r] for n, r < 64
const std::array<std::array<std::uint64_t, 64>, 64>& binomials() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 64>, 64> t{};
    for (int n = 0; n < 64; ++n) {
      t[n][0] = 1;
      for (int r = 1; r <= n; ++r) t[n][r] = t[n - 1][r - 1] + (r <= n - 1 ? t[n - 1][r] : 0);
    }
    return t;
  }();
  return table;
}

// Position of `mask` among the k-bit masks with the same popcount, in
// ascending numeric order.
std::uint64_t colex_rank(std::uint64_t mask) {
  const auto& b = binomials();
  std::uint64_t r = 0;
  int t = 1;
  while (mask) {
    const int pos = std::countr_zero(mask);
    r += b[pos][t];
    ++t;
    mask &= mask - 1;
  }
  return r;
}

std::uint64_t next_same_popcount(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

// How one cube edge acts on the label masks of its source smoothing.
struct EdgePlan {
  std::uint32_t target = 0;
  std::int64_t sign = 1;
  bool merge = true;
  int k_to = 0;
  // source circle -> target circle for untouched circles; -1 for touched ones
  std::vector<int> image;
  int src_a = 0;  // touched source circles (merge: two, split: src_a only)
  int src_b = 0;
  int dst_a = 0;  // merge: result; split: the two new circles
  int dst_b = 0;
};

}  // namespace

GradedComplex build_complex(const LinkDiagram& d, int budget) {
  const int c = d.crossing_count();
  if (c > budget) {
    throw Error(Errc::BudgetExceeded,
                std::to_string(c) + " crossings exceeds the budget of " + std::to_string(budget));
  }
  if (c > kMaxCubeDimension || c > 30) throw Error(Errc::BudgetExceeded, "cube too large to index");
  GradedComplex out;
  out.diagram_ = d;
  out.labels_ = d.edge_count() + d.free_loops();
  const std::uint32_t vertices = 1U << c;
  out.circles_.resize(vertices);
  out.arc_to_circle_.resize(static_cast<std::size_t>(vertices) * out.labels_);
  const auto& b = binomials();
  for (std::uint32_t eps = 0; eps < vertices; ++eps) {
    const auto dec = resolve(d, SmoothingIndex{eps, c});
    out.circles_[eps] = dec.circle_count;
    std::copy(dec.arc_to_circle.begin(), dec.arc_to_circle.end(),
              out.arc_to_circle_.begin() + static_cast<std::ptrdiff_t>(eps) * out.labels_);
    const int i = std::popcount(eps);
    const int k = dec.circle_count;
    for (int x = 0; x <= k; ++x) out.dims_[{i, k - 2 * x + i}] += b[k][x];
  }
  return out;
}

std::size_t GradedComplex::dim(int i, int j) const {
  auto it = dims_.find({i, j});
  return it == dims_.end() ? 0 : it->second;
}

std::vector<int> GradedComplex::q_gradings() const {
  std::set<int> js;
  for (const auto& [key, n] : dims_) js.insert(key.second);
  return {js.begin(), js.end()};
}

std::vector<std::int64_t> GradedComplex::offsets(int j) const {
  const int c = crossing_count();
  const auto& b = binomials();
  std::vector<std::int64_t> off(circles_.size(), -1);
  std::vector<std::int64_t> running(static_cast<std::size_t>(c) + 1, 0);
  for (std::uint32_t eps = 0; eps < circles_.size(); ++eps) {
    const int i = std::popcount(eps);
    const int k = circles_[eps];
    const int twice_x = k + i - j;
    if (twice_x < 0 || twice_x % 2 != 0 || twice_x / 2 > k) continue;
    off[eps] = running[i];
    running[i] += static_cast<std::int64_t>(b[k][twice_x / 2]);
  }
  return off;
}

SparseIntMatrix GradedComplex::block(int i, int j) const {
  const int c = crossing_count();
  SparseIntMatrix m;
  m.rows = dim(i + 1, j);
  m.cols = dim(i, j);
  m.col_start.assign(1, 0);
  if (m.cols == 0) return m;
  if (m.rows == 0) {
    m.col_start.assign(m.cols + 1, 0);
    return m;
  }
  const auto off = offsets(j);
  const int L = labels_;
  auto circ = [&](std::uint32_t eps, int label) { return arc_to_circle_[static_cast<std::size_t>(eps) * L + label - 1]; };

  std::vector<std::pair<std::uint32_t, std::int64_t>> column;
  std::vector<EdgePlan> plans;
  for (std::uint32_t eps = 0; eps < circles_.size(); ++eps) {
    if (std::popcount(eps) != i || off[eps] < 0) continue;
    const int k = circles_[eps];
    const int x = (k + i - j) / 2;

    // representative label of each source circle: its smallest arc
    std::vector<int> rep(static_cast<std::size_t>(k), 0);
    for (int label = L; label >= 1; --label) rep[circ(eps, label)] = label;

    plans.clear();
    for (int p = 0; p < c; ++p) {
      if (eps & (1U << p)) continue;
      EdgePlan plan;
      plan.target = eps | (1U << p);
      plan.sign = (std::popcount(eps & ((1U << p) - 1U)) % 2 == 0) ? 1 : -1;
      plan.k_to = circles_[plan.target];
      const auto& e = diagram_.crossings()[p].edges;
      const int ca = circ(eps, e[0]);
      const int cc = circ(eps, e[2]);
      plan.merge = ca != cc;
      plan.src_a = ca;
      plan.src_b = cc;
      if (plan.merge) {
        plan.dst_a = circ(plan.target, e[0]);
      } else {
        plan.dst_a = circ(plan.target, e[0]);
        plan.dst_b = circ(plan.target, e[1]);
      }
      plan.image.assign(static_cast<std::size_t>(k), -1);
      for (int t = 0; t < k; ++t) {
        if (t != ca && t != cc) plan.image[t] = circ(plan.target, rep[t]);
      }
      plans.push_back(std::move(plan));
    }

    std::uint64_t mask = x == 0 ? 0 : ((std::uint64_t{1} << x) - 1);
    const std::uint64_t count = binomials()[k][x];
    for (std::uint64_t idx = 0; idx < count; ++idx, mask = (idx < count ? next_same_popcount(mask) : 0)) {
      column.clear();
      auto bit_of = [&](int t) { return (mask >> (k - 1 - t)) & 1U; };
      for (const auto& plan : plans) {
        const int kt = plan.k_to;
        std::uint64_t base = 0;
        for (int t = 0; t < k; ++t) {
          if (plan.image[t] >= 0 && bit_of(t)) base |= std::uint64_t{1} << (kt - 1 - plan.image[t]);
        }
        const auto emit = [&](std::uint64_t tmask) {
          if (off[plan.target] < 0) throw Error(Errc::ComplexNotValid, "differential leaves its q-grading");
          const auto row = static_cast<std::uint64_t>(off[plan.target]) + colex_rank(tmask);
          column.emplace_back(static_cast<std::uint32_t>(row), plan.sign);
        };
        if (plan.merge) {
          const auto xa = bit_of(plan.src_a);
          const auto xb = bit_of(plan.src_b);
          if (xa && xb) continue;  // m(X (x) X) = 0
          emit((xa || xb) ? base | (std::uint64_t{1} << (kt - 1 - plan.dst_a)) : base);
        } else {
          const std::uint64_t bit_a = std::uint64_t{1} << (kt - 1 - plan.dst_a);
          const std::uint64_t bit_b = std::uint64_t{1} << (kt - 1 - plan.dst_b);
          if (bit_of(plan.src_a)) {
            emit(base | bit_a | bit_b);  // Delta(X) = X (x) X
          } else {
            emit(base | bit_a);  // Delta(1) = X (x) 1 + 1 (x) X
            emit(base | bit_b);
          }
        }
      }
      std::sort(column.begin(), column.end());
      for (const auto& [row, v] : column) {
        if (row >= m.rows) throw Error(Errc::ComplexNotValid, "row index outside the target block");
        m.row_index.push_back(row);
        m.value.push_back(v);
      }
      m.col_start.push_back(m.row_index.size());
    }
  }
  if (m.col_start.size() != m.cols + 1) throw Error(Errc::ComplexNotValid, "column count mismatch");
  if (mutant_ && mutant_->i == i && mutant_->j == j && mutant_->entry < m.value.size()) {
    m.value[mutant_->entry] = -m.value[mutant_->entry];
  }
  return m;
}

std::string GradedComplex::dump_triplets() const {
  std::ostringstream os;
  for (int j : q_gradings()) {
    for (int i = 0; i < crossing_count(); ++i) {
      const auto m = block(i, j);
      for (std::size_t col = 0; col < m.cols; ++col) {
        for (std::size_t t = m.col_start[col]; t < m.col_start[col + 1]; ++t) {
          os << i << ' ' << j << ' ' << m.row_index[t] << ' ' << col << ' ' << m.value[t] << " 1\n";
        }
      }
    }
  }
  return os.str();
}

namespace {

bool composite_is_zero(const SparseIntMatrix& first, const SparseIntMatrix& second) {
  // second * first, column by column with a dense accumulator
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
    bool zero = true;
    for (std::uint32_t r : touched) {
      if (acc[r] != 0) zero = false;
      acc[r] = 0;
    }
    touched.clear();
    if (!zero) return false;
  }
  return true;
}

}  // namespace

DSquaredReport verify_d_squared(const GradedComplex& cx) {
  DSquaredReport report;
  const int c = cx.crossing_count();
  for (int j : cx.q_gradings()) {
    std::optional<SparseIntMatrix> prev;
    for (int i = 0; i + 1 < c; ++i) {
      auto cur = prev ? std::move(*prev) : cx.block(i, j);
      auto next = cx.block(i + 1, j);
      if (cur.nnz() != 0 && next.nnz() != 0 && !composite_is_zero(cur, next)) {
        report.ok = false;
        report.offending = Bidegree{i, j};
        return report;
      }
      prev = std::move(next);
    }
  }
  return report;
}

}  // namespace kh
