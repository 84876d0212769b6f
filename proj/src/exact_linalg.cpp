#include "kh/exact_linalg.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "kh/error.hpp"

namespace kh {

namespace {

bool entry_less(const MatrixEntry& a, const MatrixEntry& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

struct RationalField {
  using value_type = Rational;
  static constexpr bool kUnitPivotsOnly = false;
  value_type convert(const Rational& v) const { return v; }
  value_type convert(std::int64_t v) const { return Rational(v); }
  bool is_zero(const value_type& v) const { return v.is_zero(); }
  value_type inverse(const value_type& v) const { return Rational(1) / v; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  // x - f * y
  value_type fms(const value_type& x, const value_type& f, const value_type& y) const { return x - f * y; }
};

struct IntegerOverflow {};

// Small integers with pivots restricted to +-1, so every update stays
// integral. Values live in 32 bits to halve the working set.
struct UnitPivotIntegerField {
  using value_type = std::int32_t;
  static constexpr bool kUnitPivotsOnly = true;
  static value_type narrow(std::int64_t v) {
    if (v < std::numeric_limits<value_type>::min() + 1 || v > std::numeric_limits<value_type>::max()) {
      throw IntegerOverflow{};
    }
    return static_cast<value_type>(v);
  }
  value_type convert(std::int64_t v) const { return narrow(v); }
  bool is_zero(value_type v) const { return v == 0; }
  static bool is_unit(value_type v) { return v == 1 || v == -1; }
  value_type inverse(value_type v) const { return v; }
  value_type mul(value_type a, value_type b) const { return narrow(std::int64_t{a} * b); }
  value_type neg(value_type a) const { return -a; }
  value_type fms(value_type x, value_type f, value_type y) const { return narrow(std::int64_t{x} - std::int64_t{f} * y); }
};

struct ModField {
  using value_type = std::uint64_t;
  static constexpr bool kUnitPivotsOnly = false;
  std::uint64_t p;

  value_type convert(std::int64_t v) const {
    const auto mag = static_cast<std::uint64_t>(v < 0 ? -(v + 1) : v) % p;
    return v < 0 ? (p - 1 - mag) % p : mag;
  }

  value_type reduce(const mpz_class& z) const {
    mpz_class r = z % mpz_class(std::to_string(p));
    if (r < 0) r += mpz_class(std::to_string(p));
    return std::stoull(r.get_str());
  }
  value_type convert(const Rational& v) const {
    value_type num;
    value_type den;
    if (v.is_small()) {
      const std::int64_t n = v.small_num();
      const auto mag = static_cast<std::uint64_t>(n < 0 ? -n : n) % p;
      num = n < 0 ? (p - mag) % p : mag;
      den = static_cast<std::uint64_t>(v.small_den()) % p;
    } else {
      const mpq_class q = v.to_mpq();
      num = reduce(q.get_num());
      den = reduce(q.get_den());
    }
    if (den == 0) throw Error(Errc::ModularRankMismatch, "prime divides a denominator");
    return mulmod(num, inverse(den), p);
  }
  bool is_zero(value_type v) const { return v == 0; }
  value_type inverse(value_type v) const { return powmod(v, p - 2, p); }
  value_type mul(value_type a, value_type b) const { return mulmod(a, b, p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type fms(value_type x, value_type f, value_type y) const {
    const value_type t = mulmod(f, y, p);
    return x >= t ? x - t : x + (p - t);
  }
};

// Buckets of indices keyed by a count, as intrusive doubly linked lists so
// that moving an index to a new count is O(1).
class CountBuckets {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  CountBuckets(std::size_t items, std::size_t max_count)
      : head_(max_count + 1, kNone), next_(items, kNone), prev_(items, kNone), where_(items, kNone) {}

  void place(std::uint32_t x, std::size_t count) {
    remove(x);
    if (count == 0) return;
    const auto b = static_cast<std::uint32_t>(count);
    next_[x] = head_[b];
    prev_[x] = kNone;
    if (head_[b] != kNone) prev_[head_[b]] = x;
    head_[b] = x;
    where_[x] = b;
  }

  void remove(std::uint32_t x) {
    const std::uint32_t b = where_[x];
    if (b == kNone) return;
    if (prev_[x] != kNone) {
      next_[prev_[x]] = next_[x];
    } else {
      head_[b] = next_[x];
    }
    if (next_[x] != kNone) prev_[next_[x]] = prev_[x];
    where_[x] = kNone;
  }

  std::size_t max_count() const { return head_.size() - 1; }
  std::uint32_t head(std::size_t count) const { return head_[count]; }
  std::uint32_t next(std::uint32_t x) const { return next_[x]; }

 private:
  std::vector<std::uint32_t> head_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::uint32_t> where_;
};

// Right-looking sparse elimination. The pivot minimises the Markowitz cost
// (row_nnz - 1)(col_nnz - 1) over the few sparsest columns and rows, searched
// by increasing count; ties go to the lowest column, then row.
template <class Field>
class MarkowitzEliminator {
  using V = typename Field::value_type;
  struct Cell {
    std::uint32_t col;
    V val;
  };
  static constexpr int kCandidates = 4;

 public:
  MarkowitzEliminator(const Field& field, const SparseRationalMatrix& m) : MarkowitzEliminator(field, m.rows(), m.cols()) {
    for (const auto& e : m.entries()) add(e.row, e.col, field_.convert(e.value));
    finish_setup();
  }

  MarkowitzEliminator(const Field& field, const SparseIntMatrix& m) : MarkowitzEliminator(field, m.rows, m.cols) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      for (std::size_t t = m.col_start[c]; t < m.col_start[c + 1]; ++t) {
        add(m.row_index[t], static_cast<std::uint32_t>(c), field_.convert(m.value[t]));
      }
    }
    finish_setup();
  }

  std::size_t run() {
    std::size_t rank = 0;
    while (auto pivot = select_pivot()) {
      eliminate(pivot->first, pivot->second);
      ++rank;
    }
    return rank;
  }

  /// The not yet eliminated part, for a field that stopped early.
  SparseRationalMatrix remaining() const {
    std::vector<MatrixEntry> entries;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!row_active_[r]) continue;
      for (const auto& cell : rows_[r]) entries.push_back(MatrixEntry{r, cell.col, Rational(cell.val)});
    }
    return SparseRationalMatrix::from_entries(rows_.size(), col_count_.size(), std::move(entries));
  }

 private:
  MarkowitzEliminator(const Field& field, std::size_t rows, std::size_t cols)
      : field_(field),
        rows_(rows),
        row_active_(rows, 1),
        row_mark_(rows, 0),
        col_rows_(cols),
        col_count_(cols, 0),
        col_buckets_(cols, rows),
        row_buckets_(rows, cols) {}

  void add(std::uint32_t r, std::uint32_t c, V v) {
    rows_[r].push_back(Cell{c, std::move(v)});
    col_rows_[c].push_back(r);
    ++col_count_[c];
  }

  void finish_setup() {
    for (std::uint32_t c = 0; c < col_count_.size(); ++c) col_buckets_.place(c, col_count_[c]);
    for (std::uint32_t r = 0; r < rows_.size(); ++r) row_buckets_.place(r, rows_[r].size());
  }

  const Cell* find(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Cell& x, std::uint32_t k) { return x.col < k; });
    return (it != row.end() && it->col == c) ? &*it : nullptr;
  }

  bool row_in_col(std::uint32_t r, std::uint32_t c) const { return row_active_[r] && find(r, c) != nullptr; }

  using Candidate = std::pair<std::uint32_t, std::uint32_t>;  // row, col

  std::optional<Candidate> select_pivot() {
    std::optional<Candidate> best;
    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    bool found = false;
    auto consider = [&](std::uint32_t r, std::uint32_t c, const V& v) {
      if constexpr (Field::kUnitPivotsOnly) {
        if (!Field::is_unit(v)) return;
      }
      found = true;
      const std::uint64_t cost =
          static_cast<std::uint64_t>(rows_[r].size() - 1) * static_cast<std::uint64_t>(col_count_[c] - 1);
      if (!best || cost < best_cost || (cost == best_cost && Candidate{c, r} < Candidate{best->second, best->first})) {
        best = Candidate{r, c};
        best_cost = cost;
      }
    };

    int seen = 0;
    const std::size_t limit = std::max(col_buckets_.max_count(), row_buckets_.max_count());
    for (std::size_t b = 1; b <= limit && seen < kCandidates; ++b) {
      // nothing with count >= b can beat (b - 1)^2
      if (best && best_cost <= static_cast<std::uint64_t>(b - 1) * (b - 1)) break;
      if (b <= col_buckets_.max_count()) {
        for (auto c = col_buckets_.head(b); c != CountBuckets::kNone && seen < kCandidates; c = col_buckets_.next(c)) {
          found = false;
          for (std::uint32_t r : col_rows_[c]) {
            if (!row_active_[r]) continue;
            if (const Cell* cell = find(r, c)) consider(r, c, cell->val);
          }
          if (found) ++seen;
        }
      }
      if (b <= row_buckets_.max_count()) {
        for (auto r = row_buckets_.head(b); r != CountBuckets::kNone && seen < kCandidates; r = row_buckets_.next(r)) {
          found = false;
          for (const auto& cell : rows_[r]) consider(r, cell.col, cell.val);
          if (found) ++seen;
        }
      }
    }
    return best;
  }

  // Drops stale and duplicate row references from a column list.
  void compact_col(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::size_t kept = 0;
    for (std::uint32_t r : list) {
      if (!row_mark_[r] && row_in_col(r, c)) {
        row_mark_[r] = 1;
        list[kept++] = r;
      }
    }
    list.resize(kept);
    for (std::uint32_t r : list) row_mark_[r] = 0;
  }

  bool needs_compaction(std::uint32_t c) const {
    return col_rows_[c].size() > 2 * static_cast<std::size_t>(col_count_[c]) + 32;
  }

  void adjust_col(std::uint32_t c, int delta) {
    col_count_[c] = static_cast<std::uint32_t>(static_cast<int>(col_count_[c]) + delta);
    col_buckets_.place(c, col_count_[c]);
  }

  void eliminate(std::uint32_t pr, std::uint32_t pc) {
    const std::vector<Cell> pivot_row = std::move(rows_[pr]);
    rows_[pr].clear();
    row_active_[pr] = 0;
    row_buckets_.remove(pr);
    V pivot_inv{};
    for (const auto& cell : pivot_row) {
      if (cell.col == pc) pivot_inv = field_.inverse(cell.val);
    }

    count_delta_.assign(pivot_row.size(), 0);
    std::vector<std::uint32_t> targets;
    targets.swap(col_rows_[pc]);
    for (std::uint32_t r : targets) {
      if (!row_active_[r]) continue;
      const Cell* hit = find(r, pc);
      if (!hit) continue;
      const V factor = field_.mul(hit->val, pivot_inv);
      auto& row = rows_[r];
      scratch_.clear();
      scratch_.reserve(row.size() + pivot_row.size());
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < pivot_row.size()) {
        if (j == pivot_row.size() || (i < row.size() && row[i].col < pivot_row[j].col)) {
          scratch_.push_back(std::move(row[i++]));
        } else if (i == row.size() || pivot_row[j].col < row[i].col) {
          const auto col = pivot_row[j].col;
          scratch_.push_back(Cell{col, field_.neg(field_.mul(factor, pivot_row[j].val))});
          col_rows_[col].push_back(r);
          ++count_delta_[j];
          ++j;
        } else {
          const auto col = row[i].col;
          if (col != pc) {
            V v = field_.fms(row[i].val, factor, pivot_row[j].val);
            if (field_.is_zero(v)) {
              --count_delta_[j];
            } else {
              scratch_.push_back(Cell{col, std::move(v)});
            }
          }
          ++i;
          ++j;
        }
      }
      // copy back rather than swap so capacity tracks the row's own size
      row.clear();
      row.reserve(scratch_.size());
      std::move(scratch_.begin(), scratch_.end(), std::back_inserter(row));
      row_buckets_.place(r, row.size());
    }

    // counts change only in the pivot row's columns; apply them once
    for (std::size_t k = 0; k < pivot_row.size(); ++k) {
      const auto col = pivot_row[k].col;
      if (col == pc) continue;
      adjust_col(col, count_delta_[k] - 1);
      if (needs_compaction(col)) compact_col(col);
    }
    col_count_[pc] = 0;
    col_buckets_.remove(pc);
  }

  Field field_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<char> row_active_;
  std::vector<char> row_mark_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  CountBuckets col_buckets_;
  CountBuckets row_buckets_;
  std::vector<Cell> scratch_;
  std::vector<int> count_delta_;
};

}  // namespace

SparseRationalMatrix SparseRationalMatrix::from_entries(std::size_t rows, std::size_t cols,
                                                        std::vector<MatrixEntry> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw Error(Errc::IndexOutOfRange, "matrix entry out of range");
  }
  std::sort(entries.begin(), entries.end(), entry_less);
  std::vector<MatrixEntry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const MatrixEntry& e) { return e.value.is_zero(); });
  SparseRationalMatrix m(rows, cols);
  m.entries_ = std::move(merged);
  return m;
}

SparseRationalMatrix SparseRationalMatrix::from_sorted(std::size_t rows, std::size_t cols,
                                                       std::vector<MatrixEntry> entries) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.row >= rows || e.col >= cols) throw Error(Errc::IndexOutOfRange, "matrix entry out of range");
    if (e.value.is_zero()) throw Error(Errc::IndexOutOfRange, "explicit zero entry");
    if (k > 0 && !entry_less(entries[k - 1], e)) throw Error(Errc::IndexOutOfRange, "entries not strictly sorted");
  }
  SparseRationalMatrix m(rows, cols);
  m.entries_ = std::move(entries);
  return m;
}

bool operator==(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    const auto& x = a.entries_[k];
    const auto& y = b.entries_[k];
    if (x.row != y.row || x.col != y.col || !(x.value == y.value)) return false;
  }
  return true;
}

SparseRationalMatrix transpose(const SparseRationalMatrix& m) {
  std::vector<MatrixEntry> t;
  t.reserve(m.nnz());
  for (const auto& e : m.entries()) t.push_back(MatrixEntry{e.col, e.row, e.value});
  std::sort(t.begin(), t.end(), entry_less);
  return SparseRationalMatrix::from_sorted(m.cols(), m.rows(), std::move(t));
}

SparseRationalMatrix multiply(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::LengthMismatch, "incompatible matrix shapes");
  std::vector<std::size_t> a_start(a.cols() + 1, 0);
  for (const auto& e : a.entries()) ++a_start[e.col + 1];
  for (std::size_t c = 0; c < a.cols(); ++c) a_start[c + 1] += a_start[c];

  std::vector<Rational> acc(a.rows());
  std::vector<char> touched(a.rows(), 0);
  std::vector<std::uint32_t> rows_hit;
  std::vector<MatrixEntry> out;
  const auto& be = b.entries();
  for (std::size_t k = 0; k < be.size();) {
    const std::uint32_t col = be[k].col;
    for (; k < be.size() && be[k].col == col; ++k) {
      const auto& bv = be[k];
      for (std::size_t t = a_start[bv.row]; t < a_start[bv.row + 1]; ++t) {
        const auto& av = a.entries()[t];
        if (!touched[av.row]) {
          touched[av.row] = 1;
          rows_hit.push_back(av.row);
          acc[av.row] = Rational(0);
        }
        acc[av.row] += av.value * bv.value;
      }
    }
    std::sort(rows_hit.begin(), rows_hit.end());
    for (std::uint32_t r : rows_hit) {
      if (!acc[r].is_zero()) out.push_back(MatrixEntry{r, col, acc[r]});
      touched[r] = 0;
    }
    rows_hit.clear();
  }
  return SparseRationalMatrix::from_sorted(a.rows(), b.cols(), std::move(out));
}

namespace {

std::size_t rational_rank(const SparseRationalMatrix& m) {
  return MarkowitzEliminator<RationalField>(RationalField{}, m).run();
}

// Unit pivots in machine integers first; whatever is left (or everything, on
// overflow) goes through the rational eliminator.
std::size_t rational_rank(const SparseIntMatrix& m) {
  try {
    MarkowitzEliminator<UnitPivotIntegerField> fast(UnitPivotIntegerField{}, m);
    const std::size_t r = fast.run();
    const auto rest = fast.remaining();
    return r + (rest.is_zero() ? 0 : rational_rank(rest));
  } catch (const IntegerOverflow&) {
    return rational_rank(to_rational(m));
  }
}

template <class Matrix>
std::size_t exact_rank(const Matrix& m, const RankOptions& options) {
  if (m.nnz() == 0) return 0;
  const std::size_t r = rational_rank(m);
  if (options.verify_modular) {
    const std::uint64_t p = random_prime_62(options.seed);
    const std::size_t rp = rank_mod_prime(m, p);
    if (rp != r) {
      throw Error(Errc::ModularRankMismatch, "exact rank " + std::to_string(r) + " but rank mod " +
                                                 std::to_string(p) + " is " + std::to_string(rp));
    }
  }
  return r;
}

}  // namespace

std::size_t rank(const SparseRationalMatrix& m, const RankOptions& options) { return exact_rank(m, options); }
std::size_t rank(const SparseIntMatrix& m, const RankOptions& options) { return exact_rank(m, options); }

std::size_t rank_mod_prime(const SparseRationalMatrix& m, std::uint64_t p) {
  if (m.is_zero()) return 0;
  return MarkowitzEliminator<ModField>(ModField{p}, m).run();
}

std::size_t rank_mod_prime(const SparseIntMatrix& m, std::uint64_t p) {
  if (m.nnz() == 0) return 0;
  return MarkowitzEliminator<ModField>(ModField{p}, m).run();
}

SparseRationalMatrix to_rational(const SparseIntMatrix& m) {
  std::vector<MatrixEntry> entries;
  entries.reserve(m.nnz());
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (std::size_t t = m.col_start[c]; t < m.col_start[c + 1]; ++t) {
      entries.push_back(MatrixEntry{m.row_index[t], static_cast<std::uint32_t>(c), Rational(m.value[t])});
    }
  }
  return SparseRationalMatrix::from_sorted(m.rows, m.cols, std::move(entries));
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these bases are a deterministic witness set below 2^64
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime_62(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    const std::uint64_t candidate = (rng() & ((1ULL << 61) - 1)) | (1ULL << 61) | 1ULL;
    if (is_probable_prime(candidate)) return candidate;
  }
}

}  // namespace kh
