#include "kh/jones_oracle.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

#include "kh/error.hpp"

namespace kh {

namespace {

using Tuple = std::array<int, 4>;

LaurentPoly monomial_a(std::int64_t e, std::int64_t c = 1) { return LaurentPoly::monomial('A', 1, e, c); }

LaurentPoly power(const LaurentPoly& p, int n) {
  LaurentPoly r = LaurentPoly::constant(p.variable(), p.unit_denominator(), 1);
  for (int k = 0; k < n; ++k) r *= p;
  return r;
}

// Order in which crossings are expanded: each next crossing shares as many
// labels as possible with those already taken, which keeps the boundary of
// the residual diagram short and memo hits frequent.
std::vector<Tuple> expansion_order(const LinkDiagram& d) {
  const auto& xs = d.crossings();
  const int n = static_cast<int>(xs.size());
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::vector<char> seen(static_cast<std::size_t>(d.edge_count()) + 1, 0);
  std::vector<Tuple> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    int best_score = -1;
    for (int x = 0; x < n; ++x) {
      if (taken[x]) continue;
      int score = 0;
      for (int label : xs[x].edges) score += seen[label];
      if (score > best_score) {
        best = x;
        best_score = score;
      }
    }
    taken[best] = 1;
    for (int label : xs[best].edges) seen[label] = 1;
    order.push_back(xs[best].edges);
  }
  return order;
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

class BracketExpander {
 public:
  explicit BracketExpander(std::vector<Tuple> order) : order_(std::move(order)) {}

  // Sum over states of the residual order_[depth..] with the given labels of
  // A^{#0 - #1} delta^{circles closed}.
  LaurentPoly expand(std::size_t depth, const std::vector<int>& labels) {
    if (depth == order_.size()) return monomial_a(0);
    const auto key = canonical(depth, labels);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    LaurentPoly total('A', 1);
    for (int resolution = 0; resolution < 2; ++resolution) {
      std::vector<int> rest(labels.begin() + 4, labels.end());
      const int* e = labels.data();
      const std::array<std::array<int, 2>, 2> pairs =
          resolution == 0 ? std::array<std::array<int, 2>, 2>{{{e[0], e[1]}, {e[2], e[3]}}}
                          : std::array<std::array<int, 2>, 2>{{{e[0], e[3]}, {e[1], e[2]}}};
      int closed = 0;
      std::array<std::array<int, 2>, 2> pending = pairs;
      for (int k = 0; k < 2; ++k) {
        const int a = pending[k][0];
        const int b = pending[k][1];
        if (a == b) {
          ++closed;
          continue;
        }
        // the arc through a and b becomes one arc named a
        for (int& x : rest) {
          if (x == b) x = a;
        }
        for (int m = k + 1; m < 2; ++m) {
          for (int& x : pending[m]) {
            if (x == b) x = a;
          }
        }
      }
      LaurentPoly term = expand(depth + 1, rest) * power(delta_, closed);
      total += term * monomial_a(resolution == 0 ? 1 : -1);
    }
    memo_.emplace(key, total);
    return total;
  }

  static std::vector<int> initial_labels(const std::vector<Tuple>& order) {
    std::vector<int> labels;
    for (const auto& t : order) labels.insert(labels.end(), t.begin(), t.end());
    return labels;
  }

 private:
  static std::vector<int> canonical(std::size_t depth, const std::vector<int>& labels) {
    std::vector<int> key;
    key.reserve(labels.size() + 1);
    key.push_back(static_cast<int>(depth));
    std::map<int, int> rename;
    for (int x : labels) {
      auto [it, inserted] = rename.try_emplace(x, static_cast<int>(rename.size()));
      key.push_back(it->second);
    }
    return key;
  }

  std::vector<Tuple> order_;
  LaurentPoly delta_ = loop_value();
  std::unordered_map<std::vector<int>, LaurentPoly, VectorHash> memo_;
};

}  // namespace

LaurentPoly loop_value() { return monomial_a(2, -1) + monomial_a(-2, -1); }

LaurentPoly kauffman_bracket(const LinkDiagram& d, int budget) {
  if (d.crossing_count() > budget) {
    throw Error(Errc::BudgetExceeded, std::to_string(d.crossing_count()) + " crossings exceeds the budget of " +
                                          std::to_string(budget));
  }
  auto order = expansion_order(d);
  const auto labels = BracketExpander::initial_labels(order);
  BracketExpander expander(std::move(order));
  const LaurentPoly states = expander.expand(0, labels);
  // every state has at least one circle, so one factor of delta divides out
  return exact_divide(states * power(loop_value(), d.free_loops()), loop_value());
}

LaurentPoly jones_polynomial(const LinkDiagram& d, int budget) {
  const int w = crossing_counts(d).writhe;
  const LaurentPoly writhe_factor = monomial_a(-3 * w, (w % 2 == 0) ? 1 : -1);  // (-A)^{-3w}
  const LaurentPoly quarter = substitute(writhe_factor * kauffman_bracket(d, budget), Substitution::AToTQuarter);
  for (const auto& [k, c] : quarter.terms()) {
    if (k % 2 != 0) {
      throw Error(Errc::QuarterExponentResidue, "t^(" + std::to_string(k) + "/4) in " + quarter.str());
    }
  }
  return quarter.with_unit(2);
}

bool skein_holds(const LaurentPoly& v_plus, const LaurentPoly& v_minus, const LaurentPoly& v_zero) {
  const auto t = [](std::int64_t half_units, std::int64_t c = 1) { return LaurentPoly::monomial('t', 2, half_units, c); };
  return t(-2) * v_plus - t(2) * v_minus == (t(1) - t(-1)) * v_zero;
}

bool skein_check(const LinkDiagram& l_plus, const LinkDiagram& l_minus, const LinkDiagram& l_zero) {
  return skein_holds(jones_polynomial(l_plus), jones_polynomial(l_minus), jones_polynomial(l_zero));
}

bool twist_recursion_holds(const LaurentPoly& v_prev, const LaurentPoly& v, const LaurentPoly& v_next) {
  const auto t = [](std::int64_t half_units, std::int64_t c = 1) { return LaurentPoly::monomial('t', 2, half_units, c); };
  return v_next == t(4) * v_prev + (t(3) - t(1)) * v;
}

LaurentPoly invert_variable(const LaurentPoly& p) {
  LaurentPoly r(p.variable(), p.unit_denominator());
  for (const auto& [k, c] : p.terms()) r.add_term(-k, c);
  return r;
}

}  // namespace kh
