#include "kh/laurent.hpp"

#include <cctype>
#include <numeric>
#include <ostream>

#include "kh/error.hpp"

namespace kh {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "Laurent coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "Laurent coefficient overflow");
  return r;
}

void require_same(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.variable() != b.variable() || a.unit_denominator() != b.unit_denominator()) {
    throw Error(Errc::UnitMismatch, std::string("cannot combine ") + a.variable() + " (unit " +
                                        std::to_string(a.unit_denominator()) + ") with " + b.variable() +
                                        " (unit " + std::to_string(b.unit_denominator()) + ")");
  }
}

std::string exponent_text(std::int64_t k, int unit) {
  const std::int64_t g = std::gcd(k < 0 ? -k : k, static_cast<std::int64_t>(unit));
  const std::int64_t num = k / g;
  const std::int64_t den = unit / g;
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

LaurentPoly::LaurentPoly(char variable, int unit_denominator) : var_(variable), unit_(unit_denominator) {
  if (unit_ != 1 && unit_ != 2 && unit_ != 4) {
    throw Error(Errc::UnitMismatch, "unit denominator must be 1, 2 or 4");
  }
}

LaurentPoly LaurentPoly::monomial(char variable, int unit_denominator, std::int64_t scaled_exponent,
                                  std::int64_t coefficient) {
  LaurentPoly p(variable, unit_denominator);
  p.add_term(scaled_exponent, coefficient);
  return p;
}

void LaurentPoly::add_term(std::int64_t k, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

std::int64_t LaurentPoly::coefficient(std::int64_t k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t LaurentPoly::max_scaled() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "degree of the zero polynomial");
  return terms_.rbegin()->first;
}

std::int64_t LaurentPoly::min_scaled() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "degree of the zero polynomial");
  return terms_.begin()->first;
}

LaurentPoly LaurentPoly::with_unit(int new_unit) const {
  LaurentPoly r(var_, new_unit);
  for (const auto& [k, c] : terms_) {
    const std::int64_t scaled = checked_mul(k, new_unit);
    if (scaled % unit_ != 0) {
      throw Error(Errc::UnitMismatch, "exponent " + exponent_text(k, unit_) + " is not a multiple of 1/" +
                                          std::to_string(new_unit));
    }
    r.terms_.emplace(scaled / unit_, c);
  }
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto [k, c] = *it;
    const std::int64_t mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string power;
    if (k == unit_) {
      power = std::string(1, var_);
    } else if (k != 0) {
      power = std::string(1, var_) + "^(" + exponent_text(k, unit_) + ")";
    }
    if (power.empty()) {
      out += std::to_string(mag);
    } else if (mag == 1) {
      out += power;
    } else {
      out += std::to_string(mag) + "*" + power;
    }
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(var_, unit_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, checked_mul(c, -1));
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  LaurentPoly r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  LaurentPoly r(a.var_, a.unit_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) r.add_term(checked_add(ka, kb), checked_mul(ca, cb));
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

Rational mdeg(const LaurentPoly& p) { return Rational(p.max_scaled(), p.unit_denominator()); }

LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
  require_same(num, den);
  if (den.is_zero()) throw Error(Errc::InexactDivision, "division by the zero polynomial");
  LaurentPoly quotient(num.variable(), num.unit_denominator());
  if (num.is_zero()) return quotient;
  const std::int64_t lead_k = den.max_scaled();
  const std::int64_t lead_c = den.coefficient(lead_k);
  const std::int64_t lowest_q = num.min_scaled() - den.min_scaled();
  LaurentPoly rem = num;
  while (!rem.is_zero()) {
    const std::int64_t k = rem.max_scaled() - lead_k;
    const std::int64_t c = rem.coefficient(rem.max_scaled());
    if (k < lowest_q || c % lead_c != 0) {
      throw Error(Errc::InexactDivision, "(" + num.str() + ") / (" + den.str() + ") leaves a remainder");
    }
    const auto term = LaurentPoly::monomial(num.variable(), num.unit_denominator(), k, c / lead_c);
    quotient += term;
    rem -= term * den;
  }
  return quotient;
}

LaurentPoly substitute(const LaurentPoly& p, Substitution rule) {
  switch (rule) {
    case Substitution::AToTQuarter: {
      if (p.variable() != 'A' || p.unit_denominator() != 1) {
        throw Error(Errc::UnitMismatch, "A -> t^(-1/4) needs an integer-exponent polynomial in A");
      }
      LaurentPoly r('t', 4);
      for (const auto& [k, c] : p.terms()) r.add_term(-k, c);
      return r;
    }
    case Substitution::QToMinusTHalf: {
      if (p.variable() != 'q' || p.unit_denominator() != 1) {
        throw Error(Errc::UnitMismatch, "q -> -t^(1/2) needs an integer-exponent polynomial in q");
      }
      LaurentPoly r('t', 2);
      for (const auto& [k, c] : p.terms()) r.add_term(k, (k % 2 == 0) ? c : -c);
      return r;
    }
  }
  throw Error(Errc::UnitMismatch, "unknown substitution");
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, char var, int unit) : s_(text), var_(var), unit_(unit) {}

  LaurentPoly parse() {
    LaurentPoly p(var_, unit_);
    skip_ws();
    if (s_.substr(pos_) == "0") return p;
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      std::int64_t sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      std::int64_t coeff = 1;
      bool have_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = read_int();
        have_coeff = true;
        skip_ws();
        if (peek() == '*') {
          ++pos_;
          skip_ws();
        } else {
          p.add_term(0, checked_mul(sign, coeff));
          continue;
        }
      }
      if (peek() != var_) fail(have_coeff ? "expected variable after *" : "expected a term");
      ++pos_;
      std::int64_t k = unit_;
      if (peek() == '^') {
        ++pos_;
        k = read_exponent();
      }
      p.add_term(k, checked_mul(sign, coeff));
    }
    if (first) fail("empty polynomial");
    return p;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::MalformedSyntax, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  std::int64_t read_int() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = checked_add(checked_mul(v, 10), s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }
  std::int64_t read_signed() {
    std::int64_t sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    return sign * read_int();
  }
  std::int64_t read_exponent() {
    std::int64_t num;
    std::int64_t den = 1;
    if (peek() == '(') {
      ++pos_;
      num = read_signed();
      if (peek() == '/') {
        ++pos_;
        den = read_int();
      }
      if (peek() != ')') fail("expected )");
      ++pos_;
    } else {
      num = read_signed();
    }
    if (den == 0 || checked_mul(num, unit_) % den != 0) fail("exponent off the 1/" + std::to_string(unit_) + " grid");
    return checked_mul(num, unit_) / den;
  }

  std::string_view s_;
  char var_;
  int unit_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, char variable, int unit_denominator) {
  return TermParser(text, variable, unit_denominator).parse();
}

}  // namespace kh
