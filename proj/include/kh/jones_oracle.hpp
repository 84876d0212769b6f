#pragma once

// Kauffman bracket and Jones polynomial by memoised skein expansion; an
// evaluation path independent of the Khovanov complex.

#include "kh/diagram.hpp"
#include "kh/khovanov_complex.hpp"
#include "kh/laurent.hpp"

namespace kh {

/// Bracket of an unoriented diagram as a polynomial in A, normalised so the
/// crossingless unknot is 1. Throws BudgetExceeded above `budget` crossings.
LaurentPoly kauffman_bracket(const LinkDiagram& d, int budget = kDefaultBudget);

/// (-A)^{-3w} <D> at A = t^{-1/4}, in half-integer powers of t. Throws
/// QuarterExponentResidue if a quarter power survives.
LaurentPoly jones_polynomial(const LinkDiagram& d, int budget = kDefaultBudget);

/// The loop value -A^2 - A^{-2}.
LaurentPoly loop_value();

/// t^{-1} V(L+) - t V(L-) == (t^{1/2} - t^{-1/2}) V(L0), all in t with unit 2.
bool skein_holds(const LaurentPoly& v_plus, const LaurentPoly& v_minus, const LaurentPoly& v_zero);

bool skein_check(const LinkDiagram& l_plus, const LinkDiagram& l_minus, const LinkDiagram& l_zero);

/// V(n+1) == t^2 V(n-1) + (t^{3/2} - t^{1/2}) V(n) for consecutive members of a
/// positive half-twist family.
bool twist_recursion_holds(const LaurentPoly& v_prev, const LaurentPoly& v, const LaurentPoly& v_next);

/// p(t) -> p(t^{-1}).
LaurentPoly invert_variable(const LaurentPoly& p);

}  // namespace kh
