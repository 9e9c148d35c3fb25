#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace polychrome {

__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Values whose numerator and denominator fit in a signed 64-bit word are
/// kept inline and combined with 128-bit intermediates; anything larger is
/// promoted to a GMP `mpq_class` and demoted again as soon as it fits.
/// Both representations are canonical, so structural equality decides
/// equality.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::signed_integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    set_small_or_big(static_cast<int128>(value), 1);
  }

  template <std::unsigned_integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    set_small_or_big(static_cast<int128>(value), 1);
  }

  /// num/den reduced; den == 0 throws DivisionByZero.
  Rational(std::int64_t num, std::int64_t den);

  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "p", "-p/q" (optional surrounding whitespace is not accepted).
  static Rational parse(std::string_view text);

  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_small() const noexcept { return !big_; }

  [[nodiscard]] mpq_class to_mpq() const;
  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] Rational abs() const;
  [[nodiscard]] Rational reciprocal() const;
  /// Exact square root when the value is the square of a rational.
  [[nodiscard]] std::optional<Rational> sqrt_exact() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& value);

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  friend int compare(const Rational& lhs, const Rational& rhs);

 private:
  void set_small_or_big(int128 num, int128 den);
  void set_big(const mpq_class& q);
  void set_big(mpq_class&& q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace polychrome
