#pragma once

// Rational Khovanov homology ranks computed blockwise from a GradedComplex.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "kh/exact_linalg.hpp"
#include "kh/khovanov_complex.hpp"
#include "kh/laurent.hpp"

namespace kh {

struct TableMeta {
  int n_plus = 0;
  int n_minus = 0;
  int crossings = 0;
  std::string fingerprint;

  friend bool operator==(const TableMeta&, const TableMeta&) = default;
};

struct KhovanovTable {
  std::map<Bidegree, std::size_t> ranks;  // nonzero entries only, sorted (i, j)
  TableMeta meta;
  bool normalized = false;

  std::size_t rank(int i, int j) const {
    auto it = ranks.find({i, j});
    return it == ranks.end() ? 0 : it->second;
  }

  friend bool operator==(const KhovanovTable&, const KhovanovTable&) = default;
};

struct HomologyOptions {
  int threads = 1;
  RankOptions rank;
};

/// Unnormalised H^{i,j}(D). Every composite d^{i+1} d^i is checked first;
/// a nonzero one throws ComplexNotValid.
KhovanovTable homology_table(const GradedComplex& c, const HomologyOptions& options = {});

/// KH^{i,j} = H^{i+n-, j-n++2n-}. Throws AlreadyNormalized.
KhovanovTable normalize(const KhovanovTable& t);

/// Largest i with a nonzero entry. Throws EmptyTable.
int i_max(const KhovanovTable& t);

/// sum (-1)^i rank q^j, as a polynomial in q.
LaurentPoly euler_polynomial(const KhovanovTable& t);

/// Jones polynomial in t^{1/2} recovered from a normalised table.
LaurentPoly jones_from_kh(const KhovanovTable& t);

/// Text form: `format=1`, meta lines, then `i j rank` rows in (i, j) order.
std::string to_text(const KhovanovTable& t);
KhovanovTable parse_table(std::string_view text);

/// Convenience: build, check and normalise in one go.
KhovanovTable khovanov_homology(const LinkDiagram& d, int budget = kDefaultBudget,
                                const HomologyOptions& options = {});

}  // namespace kh
