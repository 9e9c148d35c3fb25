#pragma once

#include <array>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "polychrome/rational.hpp"

namespace polychrome {

/// Element c0 + c1*t + c2*t^2 + c3*t^3 of the quartic field Q(t), t = 2^(1/4),
/// embedded in the reals with t > 0.
class Quartic {
 public:
  Quartic() = default;
  Quartic(Rational c0, Rational c1, Rational c2, Rational c3)
      : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}
  explicit Quartic(const Rational& r) : c_{r, 0, 0, 0} {}

  /// The generator 2^(1/4).
  static Quartic theta() { return {0, 1, 0, 0}; }
  /// q * theta^power, power in 0..3.
  static Quartic monomial(const Rational& q, int power);

  [[nodiscard]] const Rational& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::array<Rational, 4>& coeffs() const { return c_; }

  [[nodiscard]] bool is_zero() const;
  /// True when c1 = c2 = c3 = 0.
  [[nodiscard]] bool is_rational() const;
  [[nodiscard]] int sign() const;
  [[nodiscard]] Quartic inverse() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;

  Quartic& operator+=(const Quartic& rhs);
  Quartic& operator-=(const Quartic& rhs);
  Quartic& operator*=(const Quartic& rhs);
  Quartic& operator/=(const Quartic& rhs);
  Quartic& operator*=(const Rational& rhs);

  friend Quartic operator+(Quartic a, const Quartic& b) { return a += b; }
  friend Quartic operator-(Quartic a, const Quartic& b) { return a -= b; }
  friend Quartic operator*(const Quartic& a, const Quartic& b);
  friend Quartic operator/(Quartic a, const Quartic& b) { return a /= b; }
  friend Quartic operator-(const Quartic& a);

  friend bool operator==(const Quartic& a, const Quartic& b) { return a.c_ == b.c_; }

 private:
  std::array<Rational, 4> c_{};
};

/// Exact sign of a quartic field element: zero test on the coefficient
/// vector, a certified double filter, then rational interval refinement
/// of 2^(1/4) until the enclosure excludes zero.
int quartic_sign(const Quartic& a);

/// Rational enclosure [lo, hi] of 2^(1/4) with hi - lo = 2^-bits.
std::pair<Rational, Rational> theta_bracket(unsigned bits);

enum class Backend { Rational = 0, Quartic2 = 1, Float64 = 2 };

const char* to_string(Backend backend);

/// Module-level tolerance used by predicates on Float64 scalars.
double float_epsilon();
void set_float_epsilon(double eps);

/// Scalar of one of three backends. Rational promotes into Quartic2 or
/// Float64 when combined with them; Quartic2 combined with Float64 throws
/// BackendMismatch.
class Scalar {
 public:
  Scalar() = default;
  template <std::integral T>
  Scalar(T value) : v_(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Quartic value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  static Scalar from_double(double value) {
    Scalar s;
    s.v_ = value;
    return s;
  }

  [[nodiscard]] Backend backend() const { return static_cast<Backend>(v_.index()); }
  [[nodiscard]] bool is_rational() const { return v_.index() == 0; }
  [[nodiscard]] bool is_quartic() const { return v_.index() == 1; }
  [[nodiscard]] bool is_float() const { return v_.index() == 2; }

  [[nodiscard]] const Rational& as_rational() const;
  [[nodiscard]] const Quartic& as_quartic() const;
  [[nodiscard]] double as_float() const;
  /// Value as a quartic element (Rational promoted); throws for Float64.
  [[nodiscard]] Quartic to_quartic() const;
  /// Rational value if the scalar lies in Q (including quartic with zero
  /// irrational part).
  [[nodiscard]] std::optional<Rational> rational_value() const;

  /// Sign of the value; Float64 values within float_epsilon() are zero.
  [[nodiscard]] int sign() const;
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] Scalar abs() const { return sign() < 0 ? -*this : *this; }
  [[nodiscard]] Scalar inverse() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a);

  /// Exact value equality (Rational and Quartic2 compare by value; Float64
  /// compares bitwise-equal doubles).
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// Total order consistent with the real embedding; -1, 0 or +1.
  friend int compare(const Scalar& a, const Scalar& b);

  /// Structural ordering (backend, then coefficients); cheap and suitable
  /// for containers, unrelated to the numeric order.
  friend bool structural_less(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, Quartic, double> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Quartic& q);

/// Common backend of two scalars under the promotion rule; throws
/// BackendMismatch for Quartic2 with Float64.
Backend common_backend(Backend a, Backend b);

/// The multiplicative classes Q*, 2^(1/2)Q*, 2^(1/4)Q*, 2^(-1/4)Q*.
enum class NormClass { QStar, Root2QStar, QuarticQStar, InvQuarticQStar };

const char* to_string(NormClass cls);

/// Class of a nonzero element of Q(2^(1/4)) or nullopt when it lies in
/// none of the four classes. Zero and Float64 inputs throw.
std::optional<NormClass> norm_class_of(const Scalar& a);

}  // namespace polychrome
