#include "polychrome/rational.hpp"

#include <bit>
#include <ostream>
#include <utility>

#include "polychrome/error.hpp"

namespace polychrome {

namespace {

constexpr int128 kSmallMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

std::uint64_t abs_u64(std::int64_t v) noexcept {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

uint128 abs_u128(int128 v) noexcept {
  return v < 0 ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
}

// gcd(|t|, g) for g > 0.
std::uint64_t gcd_i128(int128 t, std::uint64_t g) noexcept {
  const auto r = static_cast<std::uint64_t>(abs_u128(t) % g);
  return gcd_u64(r, g);
}

mpz_class mpz_from_i128(int128 v) {
  const uint128 m = abs_u128(v);
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (v < 0) z = -z;
  return z;
}

bool fits_small(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 &&
         mpz_cmp_si(z.get_mpz_t(), std::numeric_limits<long>::min()) != 0;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DivisionByZero();
  int128 n = num;
  int128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const auto g = gcd_i128(n, static_cast<std::uint64_t>(d));
  if (g > 1) {
    n /= g;
    d /= g;
  }
  set_small_or_big(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class copy(q);
  copy.canonicalize();
  if (copy.get_den() == 0) throw DivisionByZero();
  set_big(std::move(copy));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) {
      if (big_) {
        *big_ = *other.big_;
      } else {
        big_ = std::make_unique<mpq_class>(*other.big_);
      }
    } else {
      big_.reset();
    }
  }
  return *this;
}

void Rational::set_small_or_big(int128 num, int128 den) {
  if (num <= kSmallMax && num >= -kSmallMax && den <= kSmallMax) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  big_ = std::make_unique<mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

void Rational::set_big(const mpq_class& q) { set_big(mpq_class(q)); }

void Rational::set_big(mpq_class&& q) {
  if (fits_small(q.get_num()) && fits_small(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
    return;
  }
  if (big_) {
    *big_ = std::move(q);
  } else {
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
  num_ = 0;
  den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  for (char ch : text) {
    const bool ok = (ch >= '0' && ch <= '9') || ch == '-' || ch == '/';
    if (!ok) throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(q);
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(mpq_numref(q.get_mpq_t()), num_);
  mpz_set_si(mpq_denref(q.get_mpq_t()), den_);
  return q;
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(num_); }

mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(den_); }

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (is_zero()) throw DivisionByZero();
  if (!big_) {
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  mpq_class q = 1 / *big_;
  Rational r;
  r.set_big(std::move(q));
  return r;
}

std::optional<Rational> Rational::sqrt_exact() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class n = numerator();
  const mpz_class d = denominator();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      const int128 n = static_cast<int128>(num_) + rhs.num_;
      if (den_ == 1) {
        set_small_or_big(n, 1);
        return *this;
      }
      const auto g = gcd_i128(n, static_cast<std::uint64_t>(den_));
      set_small_or_big(n / g, den_ / static_cast<std::int64_t>(g));
      return *this;
    }
    const auto g = gcd_u64(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(rhs.den_));
    if (g == 1) {
      const int128 n = static_cast<int128>(num_) * rhs.den_ + static_cast<int128>(rhs.num_) * den_;
      const int128 d = static_cast<int128>(den_) * rhs.den_;
      set_small_or_big(n, d);
      return *this;
    }
    const auto gs = static_cast<std::int64_t>(g);
    const std::int64_t d1g = den_ / gs;
    const std::int64_t d2g = rhs.den_ / gs;
    const int128 t = static_cast<int128>(num_) * d2g + static_cast<int128>(rhs.num_) * d1g;
    const auto g2 = static_cast<std::int64_t>(gcd_i128(t, g));
    set_small_or_big(t / g2, static_cast<int128>(d1g) * (rhs.den_ / g2));
    return *this;
  }
  set_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const auto g1 = static_cast<std::int64_t>(gcd_u64(abs_u64(num_), static_cast<std::uint64_t>(rhs.den_)));
    const auto g2 = static_cast<std::int64_t>(gcd_u64(abs_u64(rhs.num_), static_cast<std::uint64_t>(den_)));
    const int128 n = static_cast<int128>(num_ / g1) * (rhs.num_ / g2);
    const int128 d = static_cast<int128>(den_ / g2) * (rhs.den_ / g1);
    set_small_or_big(n, d);
    return *this;
  }
  set_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.reciprocal(); }

Rational operator-(const Rational& value) {
  Rational r;
  if (value.big_) {
    r.big_ = std::make_unique<mpq_class>(-*value.big_);
  } else {
    r.num_ = -value.num_;
    r.den_ = value.den_;
  }
  return r;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  return cmp(lhs.to_mpq(), rhs.to_mpq()) == 0;
}

int compare(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) {
    if (lhs.den_ == rhs.den_) return (lhs.num_ > rhs.num_) - (lhs.num_ < rhs.num_);
    const int128 a = static_cast<int128>(lhs.num_) * rhs.den_;
    const int128 b = static_cast<int128>(rhs.num_) * lhs.den_;
    return (a > b) - (a < b);
  }
  const int c = cmp(lhs.to_mpq(), rhs.to_mpq());
  return (c > 0) - (c < 0);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  const int c = compare(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace polychrome
