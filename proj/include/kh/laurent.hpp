#pragma once

// Integer Laurent polynomials in one variable whose exponents are multiples
// of 1/unit_denominator. Exponents are stored pre-scaled: the key k stands for
// the exponent k / unit_denominator.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "kh/rational.hpp"

namespace kh {

class LaurentPoly {
 public:
  /// Zero polynomial in `variable` with the given exponent unit (1, 2 or 4).
  explicit LaurentPoly(char variable = 'q', int unit_denominator = 1);

  static LaurentPoly monomial(char variable, int unit_denominator, std::int64_t scaled_exponent,
                              std::int64_t coefficient = 1);
  static LaurentPoly constant(char variable, int unit_denominator, std::int64_t value) {
    return monomial(variable, unit_denominator, 0, value);
  }

  char variable() const noexcept { return var_; }
  int unit_denominator() const noexcept { return unit_; }
  const std::map<std::int64_t, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coefficient(std::int64_t scaled_exponent) const;

  /// Largest / smallest scaled exponent; throws ZeroPolynomial on zero.
  std::int64_t max_scaled() const;
  std::int64_t min_scaled() const;

  /// Copy with every scaled exponent multiplied by new_unit / unit; throws
  /// UnitMismatch if some exponent does not land on the new grid.
  LaurentPoly with_unit(int new_unit) const;

  std::string str() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.var_ == b.var_ && a.unit_ == b.unit_ && a.terms_ == b.terms_;
  }

  /// Adds c * x^(k/unit) in place.
  void add_term(std::int64_t scaled_exponent, std::int64_t c);

 private:
  char var_;
  int unit_;
  std::map<std::int64_t, std::int64_t> terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// Largest exponent with nonzero coefficient, as an exact rational.
Rational mdeg(const LaurentPoly& p);

/// Quotient of an exact division; throws InexactDivision otherwise.
LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den);

enum class Substitution {
  AToTQuarter,    // A -> t^(-1/4); A with unit 1 to t with unit 4
  QToMinusTHalf,  // q -> -t^(1/2); q with unit 1 to t with unit 2
};

LaurentPoly substitute(const LaurentPoly& p, Substitution rule);

/// Parses the rendering produced by str(), e.g. `t^(3/2) - 2*t + 1`.
LaurentPoly parse_laurent(std::string_view text, char variable, int unit_denominator);

}  // namespace kh
