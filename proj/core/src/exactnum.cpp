#include "polychrome/exactnum.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polychrome/error.hpp"

namespace polychrome {

namespace {

std::atomic<double> g_float_epsilon{1e-9};

// theta^i, i = 0..3, correctly rounded.
constexpr double kThetaPowers[4] = {1.0, 1.189207115002721, 1.4142135623730951, 1.681792830507429};

// Certified double evaluation; returns 0 when the filter cannot decide.
int filtered_sign(const std::array<Rational, 4>& c) {
  double sum = 0.0;
  double magnitude = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Rational& ci = c[static_cast<std::size_t>(i)];
    if (ci.is_zero()) continue;
    const double d = ci.to_double();
    const double ad = std::fabs(d);
    if (!std::isfinite(d) || ad < 1e-280 || ad > 1e280) return 0;
    const double term = d * kThetaPowers[i];
    sum += term;
    magnitude += std::fabs(term);
  }
  if (std::fabs(sum) > 1e-12 * magnitude) return sum > 0 ? 1 : -1;
  return 0;
}

int refined_sign(const std::array<Rational, 4>& c) {
  for (unsigned bits = 64;; bits *= 2) {
    const auto [lo, hi] = theta_bracket(bits);
    const mpq_class qlo = lo.to_mpq();
    const mpq_class qhi = hi.to_mpq();
    mpq_class sum_lo = c[0].to_mpq();
    mpq_class sum_hi = sum_lo;
    mpq_class plo = 1;
    mpq_class phi = 1;
    for (std::size_t i = 1; i < 4; ++i) {
      plo *= qlo;
      phi *= qhi;
      const mpq_class ci = c[i].to_mpq();
      if (sgn(ci) > 0) {
        sum_lo += ci * plo;
        sum_hi += ci * phi;
      } else if (sgn(ci) < 0) {
        sum_lo += ci * phi;
        sum_hi += ci * plo;
      }
    }
    if (sgn(sum_lo) > 0) return 1;
    if (sgn(sum_hi) < 0) return -1;
  }
}

template <class Op>
Scalar mixed(const Scalar& a, const Scalar& b, Op op) {
  switch (common_backend(a.backend(), b.backend())) {
    case Backend::Rational:
      return Scalar(op(a.as_rational(), b.as_rational()));
    case Backend::Quartic2:
      return Scalar(op(a.to_quartic(), b.to_quartic()));
    case Backend::Float64:
      return Scalar::from_double(op(a.to_double(), b.to_double()));
  }
  return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Quartic

Quartic Quartic::monomial(const Rational& q, int power) {
  Quartic r;
  const int p = ((power % 4) + 4) % 4;
  r.c_[static_cast<std::size_t>(p)] = q;
  return r;
}

bool Quartic::is_zero() const {
  return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

bool Quartic::is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

int Quartic::sign() const { return quartic_sign(*this); }

Quartic Quartic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return Quartic(c_[0].reciprocal());
  const Quartic conj(c_[0], -c_[1], c_[2], -c_[3]);
  // a(t) a(-t) = p0 + p2 t^2
  const Quartic p = *this * conj;
  const Rational& p0 = p.c_[0];
  const Rational& p2 = p.c_[2];
  const Rational norm = p0 * p0 - Rational(2) * p2 * p2;
  Quartic r = conj * Quartic(p0, 0, -p2, 0);
  r *= norm.reciprocal();
  return r;
}

double Quartic::to_double() const {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += c_[static_cast<std::size_t>(i)].to_double() * kThetaPowers[i];
  return sum;
}

std::string Quartic::to_string() const {
  return "(" + c_[0].to_string() + "," + c_[1].to_string() + "," + c_[2].to_string() + "," +
         c_[3].to_string() + ")";
}

Quartic& Quartic::operator+=(const Quartic& rhs) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!rhs.c_[i].is_zero()) c_[i] += rhs.c_[i];
  }
  return *this;
}

Quartic& Quartic::operator-=(const Quartic& rhs) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!rhs.c_[i].is_zero()) c_[i] -= rhs.c_[i];
  }
  return *this;
}

Quartic operator*(const Quartic& a, const Quartic& b) {
  Quartic r;
  for (std::size_t i = 0; i < 4; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      if (b.c_[j].is_zero()) continue;
      Rational p = a.c_[i] * b.c_[j];
      std::size_t k = i + j;
      if (k >= 4) {
        k -= 4;
        p *= Rational(2);
      }
      r.c_[k] += p;
    }
  }
  return r;
}

Quartic& Quartic::operator*=(const Quartic& rhs) { return *this = *this * rhs; }

Quartic& Quartic::operator*=(const Rational& rhs) {
  for (auto& c : c_) {
    if (!c.is_zero()) c *= rhs;
  }
  return *this;
}

Quartic& Quartic::operator/=(const Quartic& rhs) {
  if (rhs.is_rational()) return *this *= rhs.c_[0].reciprocal();
  return *this = *this * rhs.inverse();
}

Quartic operator-(const Quartic& a) { return {-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]}; }

std::pair<Rational, Rational> theta_bracket(unsigned bits) {
  // m = floor(2^(1/4) * 2^bits) = floor((2 * 2^(4 bits))^(1/4))
  mpz_class radicand = 2;
  mpz_mul_2exp(radicand.get_mpz_t(), radicand.get_mpz_t(), 4UL * bits);
  mpz_class m;
  mpz_root(m.get_mpz_t(), radicand.get_mpz_t(), 4);
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  return {Rational(mpq_class(m, scale)), Rational(mpq_class(m + 1, scale))};
}

int quartic_sign(const Quartic& a) {
  const auto& c = a.coeffs();
  if (a.is_zero()) return 0;
  if (a.is_rational()) return c[0].sign();
  if (const int s = filtered_sign(c); s != 0) return s;
  return refined_sign(c);
}

// ---------------------------------------------------------------------------
// Scalar

const char* to_string(Backend backend) {
  switch (backend) {
    case Backend::Rational:
      return "rational";
    case Backend::Quartic2:
      return "quartic";
    case Backend::Float64:
      return "float";
  }
  return "?";
}

double float_epsilon() { return g_float_epsilon.load(std::memory_order_relaxed); }

void set_float_epsilon(double eps) {
  if (!(eps >= 0.0)) throw PreconditionError("float epsilon must be non-negative");
  g_float_epsilon.store(eps, std::memory_order_relaxed);
}

Backend common_backend(Backend a, Backend b) {
  if (a == b) return a;
  if (a == Backend::Rational) return b;
  if (b == Backend::Rational) return a;
  throw BackendMismatch(std::string(to_string(a)) + " with " + to_string(b));
}

const Rational& Scalar::as_rational() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return *r;
  throw BackendMismatch(std::string("expected rational, got ") + polychrome::to_string(backend()));
}

const Quartic& Scalar::as_quartic() const {
  if (const auto* q = std::get_if<Quartic>(&v_)) return *q;
  throw BackendMismatch(std::string("expected quartic, got ") + polychrome::to_string(backend()));
}

double Scalar::as_float() const {
  if (const auto* d = std::get_if<double>(&v_)) return *d;
  throw BackendMismatch(std::string("expected float, got ") + polychrome::to_string(backend()));
}

Quartic Scalar::to_quartic() const {
  if (const auto* q = std::get_if<Quartic>(&v_)) return *q;
  if (const auto* r = std::get_if<Rational>(&v_)) return Quartic(*r);
  throw BackendMismatch("float cannot be used as a quartic element");
}

std::optional<Rational> Scalar::rational_value() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return *r;
  if (const auto* q = std::get_if<Quartic>(&v_); q != nullptr && q->is_rational()) return q->coeff(0);
  return std::nullopt;
}

int Scalar::sign() const {
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_).sign();
    case 1:
      return quartic_sign(std::get<1>(v_));
    default: {
      const double d = std::get<2>(v_);
      if (std::fabs(d) <= float_epsilon()) return 0;
      return d > 0 ? 1 : -1;
    }
  }
}

double Scalar::to_double() const {
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_).to_double();
    case 1:
      return std::get<1>(v_).to_double();
    default:
      return std::get<2>(v_);
  }
}

std::string Scalar::to_string() const {
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_).to_string();
    case 1:
      return std::get<1>(v_).to_string();
    default: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", std::get<2>(v_));
      return buf;
    }
  }
}

Scalar Scalar::inverse() const {
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_).reciprocal();
    case 1:
      return std::get<1>(v_).inverse();
    default: {
      const double d = std::get<2>(v_);
      if (d == 0.0) throw DivisionByZero();
      return from_double(1.0 / d);
    }
  }
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (v_.index() == 0 && rhs.v_.index() == 0) {
    std::get<0>(v_) += std::get<0>(rhs.v_);
    return *this;
  }
  if (v_.index() == 1 && rhs.v_.index() == 1) {
    std::get<1>(v_) += std::get<1>(rhs.v_);
    return *this;
  }
  return *this = mixed(*this, rhs, [](const auto& x, const auto& y) { return x + y; });
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (v_.index() == 0 && rhs.v_.index() == 0) {
    std::get<0>(v_) -= std::get<0>(rhs.v_);
    return *this;
  }
  if (v_.index() == 1 && rhs.v_.index() == 1) {
    std::get<1>(v_) -= std::get<1>(rhs.v_);
    return *this;
  }
  return *this = mixed(*this, rhs, [](const auto& x, const auto& y) { return x - y; });
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (v_.index() == 0 && rhs.v_.index() == 0) {
    std::get<0>(v_) *= std::get<0>(rhs.v_);
    return *this;
  }
  if (v_.index() == 1 && rhs.v_.index() == 0) {
    std::get<1>(v_) *= std::get<0>(rhs.v_);
    return *this;
  }
  return *this = mixed(*this, rhs, [](const auto& x, const auto& y) { return x * y; });
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (v_.index() == 0 && rhs.v_.index() == 0) {
    std::get<0>(v_) /= std::get<0>(rhs.v_);
    return *this;
  }
  if (rhs.is_float() && rhs.as_float() == 0.0) throw DivisionByZero();
  return *this = mixed(*this, rhs, [](const auto& x, const auto& y) { return x / y; });
}

Scalar operator-(const Scalar& a) {
  switch (a.v_.index()) {
    case 0:
      return -std::get<0>(a.v_);
    case 1:
      return -std::get<1>(a.v_);
    default:
      return Scalar::from_double(-std::get<2>(a.v_));
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  const auto ia = a.v_.index();
  const auto ib = b.v_.index();
  if (ia == 0 && ib == 0) return std::get<0>(a.v_) == std::get<0>(b.v_);
  if (ia == 1 && ib == 1) return std::get<1>(a.v_) == std::get<1>(b.v_);
  if (ia == 2 || ib == 2) return a.to_double() == b.to_double();
  const Quartic& q = ia == 1 ? std::get<1>(a.v_) : std::get<1>(b.v_);
  const Rational& r = ia == 0 ? std::get<0>(a.v_) : std::get<0>(b.v_);
  return q.is_rational() && q.coeff(0) == r;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.v_.index() == 0 && b.v_.index() == 0) return compare(std::get<0>(a.v_), std::get<0>(b.v_));
  return (a - b).sign();
}

std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
  const int c = compare(a, b);
  if (c < 0) return std::weak_ordering::less;
  if (c > 0) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

bool structural_less(const Scalar& a, const Scalar& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
  switch (a.v_.index()) {
    case 0:
      return compare(std::get<0>(a.v_), std::get<0>(b.v_)) < 0;
    case 1: {
      const auto& ca = std::get<1>(a.v_).coeffs();
      const auto& cb = std::get<1>(b.v_).coeffs();
      for (std::size_t i = 0; i < 4; ++i) {
        const int c = compare(ca[i], cb[i]);
        if (c != 0) return c < 0;
      }
      return false;
    }
    default:
      return std::get<2>(a.v_) < std::get<2>(b.v_);
  }
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const Quartic& q) { return os << q.to_string(); }

// ---------------------------------------------------------------------------
// Norm classes

const char* to_string(NormClass cls) {
  switch (cls) {
    case NormClass::QStar:
      return "Q*";
    case NormClass::Root2QStar:
      return "2^(1/2)Q*";
    case NormClass::QuarticQStar:
      return "2^(1/4)Q*";
    case NormClass::InvQuarticQStar:
      return "2^(-1/4)Q*";
  }
  return "?";
}

std::optional<NormClass> norm_class_of(const Scalar& a) {
  if (a.is_float()) throw NotExact("norm class of a float scalar is not decidable");
  if (a.is_zero()) throw PreconditionError("norm class of zero");
  if (a.is_rational()) return NormClass::QStar;
  const auto& c = a.as_quartic().coeffs();
  int nonzero = 0;
  int position = 0;
  for (int i = 0; i < 4; ++i) {
    if (!c[static_cast<std::size_t>(i)].is_zero()) {
      ++nonzero;
      position = i;
    }
  }
  if (nonzero != 1) return std::nullopt;
  switch (position) {
    case 0:
      return NormClass::QStar;
    case 1:
      return NormClass::QuarticQStar;
    case 2:
      return NormClass::Root2QStar;
    default:
      // 2^(-1/4) = t^3 / 2
      return NormClass::InvQuarticQStar;
  }
}

}  // namespace polychrome
