#include "kh/rational.hpp"

#include <limits>
#include <ostream>

#include "kh/error.hpp"

namespace kh {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  const auto hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  const auto lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class z = hi;
  z <<= 64;
  z += lo;
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(Errc::InexactDivision, "zero denominator");
  set_small_or_big(n, d);
}

void Rational::set_small_or_big(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const u128 un = n < 0 ? static_cast<u128>(-n) : static_cast<u128>(n);
  u128 g = gcd128(un, static_cast<u128>(d));
  if (g == 0) g = 1;
  const u128 rn = un / g;
  const u128 rd = static_cast<u128>(d) / g;
  if (rn <= static_cast<u128>(kMax) && rd <= static_cast<u128>(kMax)) {
    num_ = n < 0 ? -static_cast<std::int64_t>(rn) : static_cast<std::int64_t>(rn);
    den_ = static_cast<std::int64_t>(rd);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  q.canonicalize();
  big_ = std::make_unique<mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

void Rational::assign(const mpq_class& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::numerator_str() const { return big_ ? big_->get_num().get_str() : std::to_string(num_); }
std::string Rational::denominator_str() const { return big_ ? big_->get_den().get_str() : std::to_string(den_); }

std::string Rational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        Rational r;
        r.num_ = s;
        return r;
      }
    }
    Rational r;
    r.set_small_or_big(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
        Rational r;
        r.num_ = p;
        return r;
      }
    }
    Rational r;
    r.set_small_or_big(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error(Errc::InexactDivision, "division by zero");
  if (!a.big_ && !b.big_) {
    Rational r;
    r.set_small_or_big(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    return r;
  }
  return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.to_mpq() == b.to_mpq();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace kh
