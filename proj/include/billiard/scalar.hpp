#pragma once

// Exact real numbers for the billiard partition: rationals and elements of a
// single real quadratic field Q(sqrt(d)), with an explicitly requested
// floating-point fallback. "Distinct areas" is decided by exact equality.

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>
#include <utility>

#include "billiard/errors.hpp"

namespace billiard {

enum class Ordering { Less, Equal, Greater };

inline constexpr double kDefaultTolerance = 1e-9;

namespace detail {

inline int sgn(const mpq_class& q) { return mpq_sgn(q.get_mpq_t()); }

// Largest s with s*s dividing n; returns (s, n / s^2).
inline std::pair<long, long> split_square(long n) {
  long s = 1;
  long rest = n;
  for (long p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      s *= p;
    }
  }
  return {s, rest};
}

inline std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace detail

/// A real number that is either a reduced rational p/q, a quadratic
/// irrational a + b*sqrt(d) (a, b rational, d > 1 square-free, b != 0), or an
/// approximate double carrying an absolute tolerance.
///
/// Exact values never combine with approximate ones, and quadratic values with
/// different radicands never combine; both raise IncompatibleField.
class Scalar {
 public:
  enum class Kind { Rational, Quadratic, Float };

  Scalar() : Scalar(0L) {}

  template <std::integral I>
  Scalar(I v) : kind_(Kind::Rational), a_(static_cast<long>(v)) {
    refresh();
  }

  static Scalar rational(const mpq_class& q) {
    Scalar s;
    s.a_ = q;
    s.a_.canonicalize();
    s.refresh();
    return s;
  }

  static Scalar rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    return rational(mpq_class(num, den));
  }

  /// a + b*sqrt(d). Square factors of d are pulled into b; a perfect square d
  /// yields a Rational.
  static Scalar quadratic(const mpq_class& a, const mpq_class& b, long d) {
    if (d <= 0) throw DomainError("radicand must be positive");
    auto [s, rest] = detail::split_square(d);
    Scalar out;
    out.a_ = a;
    out.a_.canonicalize();
    out.b_ = b;
    out.b_.canonicalize();
    out.b_ *= s;
    out.d_ = rest;
    if (rest == 1) {
      out.a_ += out.b_;
      out.b_ = 0;
    }
    out.normalize();
    return out;
  }

  static Scalar sqrt_of(long d) { return quadratic(0, 1, d); }

  static Scalar approx(double value, double tol = kDefaultTolerance) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    if (!std::isfinite(value)) throw DomainError("non-finite approximate value");
    Scalar s;
    s.kind_ = Kind::Float;
    s.approx_ = value;
    s.err_ = tol;
    return s;
  }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ != Kind::Float; }
  bool is_rational() const { return kind_ == Kind::Rational; }

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& irrational_coeff() const { return b_; }
  /// 0 for rationals.
  long radicand() const { return d_; }
  /// Float tolerance; 0 for exact values.
  double tolerance() const { return kind_ == Kind::Float ? err_ : 0.0; }

  double to_double() const { return approx_; }

  int sign() const {
    if (kind_ == Kind::Float) {
      if (std::abs(approx_) <= err_) return 0;
      return approx_ > 0 ? 1 : -1;
    }
    return exact_sign(a_, b_, d_);
  }

  bool is_zero() const { return sign() == 0; }

  mpz_class floor() const {
    switch (kind_) {
      case Kind::Float:
        return mpz_class(std::floor(approx_));
      case Kind::Rational:
        return detail::floor_of(a_);
      case Kind::Quadratic:
        break;
    }
    // Bracket |b|*sqrt(d) = sqrt(P*Q)/Q between consecutive multiples of
    // 1/(Q*k) using the integer square root; refine k until both ends floor
    // to the same integer. Terminates because the value is irrational.
    mpq_class r = b_ * b_ * d_;
    mpz_class pq = r.get_num() * r.get_den();
    const mpz_class& den = r.get_den();
    mpz_class k = 1;
    const bool pos = detail::sgn(b_) > 0;
    for (;;) {
      mpz_class s = sqrt(mpz_class(pq * k * k));
      mpq_class lo(s, den * k);
      mpq_class hi(mpz_class(s + 1), den * k);
      lo.canonicalize();
      hi.canonicalize();
      mpq_class left = pos ? mpq_class(a_ + lo) : mpq_class(a_ - hi);
      mpq_class right = pos ? mpq_class(a_ + hi) : mpq_class(a_ - lo);
      mpz_class fl = detail::floor_of(left);
      if (fl == detail::floor_of(right)) return fl;
      k <<= 24;
    }
  }

  Scalar operator-() const {
    Scalar out = *this;
    if (kind_ == Kind::Float) {
      out.approx_ = -approx_;
      return out;
    }
    out.a_ = -a_;
    out.b_ = -b_;
    out.approx_ = -approx_;
    return out;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    if (!x.is_exact() || !y.is_exact()) return float_op(x, y, x.approx_ + y.approx_);
    Scalar out;
    out.d_ = common_radicand(x, y);
    out.a_ = x.a_ + y.a_;
    out.b_ = x.b_ + y.b_;
    out.normalize();
    return out;
  }

  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    if (!x.is_exact() || !y.is_exact()) return float_op(x, y, x.approx_ - y.approx_);
    Scalar out;
    out.d_ = common_radicand(x, y);
    out.a_ = x.a_ - y.a_;
    out.b_ = x.b_ - y.b_;
    out.normalize();
    return out;
  }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    if (!x.is_exact() || !y.is_exact()) return float_op(x, y, x.approx_ * y.approx_);
    Scalar out;
    out.d_ = common_radicand(x, y);
    mpq_mul(out.a_.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
    if (y.b_ == 0) {
      mpq_mul(out.b_.get_mpq_t(), x.b_.get_mpq_t(), y.a_.get_mpq_t());
    } else if (x.b_ == 0) {
      mpq_mul(out.b_.get_mpq_t(), x.a_.get_mpq_t(), y.b_.get_mpq_t());
    } else {
      mpq_class t;
      mpq_mul(t.get_mpq_t(), x.b_.get_mpq_t(), y.b_.get_mpq_t());
      mpz_mul_si(mpq_numref(t.get_mpq_t()), mpq_numref(t.get_mpq_t()), out.d_);
      mpq_canonicalize(t.get_mpq_t());
      mpq_add(out.a_.get_mpq_t(), out.a_.get_mpq_t(), t.get_mpq_t());
      mpq_mul(out.b_.get_mpq_t(), x.a_.get_mpq_t(), y.b_.get_mpq_t());
      mpq_mul(t.get_mpq_t(), x.b_.get_mpq_t(), y.a_.get_mpq_t());
      mpq_add(out.b_.get_mpq_t(), out.b_.get_mpq_t(), t.get_mpq_t());
    }
    out.normalize();
    return out;
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    if (!x.is_exact() || !y.is_exact()) {
      if (y.approx_ == 0.0) throw DomainError("division by zero");
      return float_op(x, y, x.approx_ / y.approx_);
    }
    if (y.sign() == 0) throw DomainError("division by zero");
    common_radicand(x, y);
    if (y.b_ == 0) {
      Scalar out = x;
      out.a_ /= y.a_;
      out.b_ /= y.a_;
      out.normalize();
      return out;
    }
    // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
    mpq_class norm = y.a_ * y.a_ - y.b_ * y.b_ * y.d_;
    Scalar conj;
    conj.d_ = y.d_;
    conj.a_ = y.a_ / norm;
    conj.b_ = -y.b_ / norm;
    conj.normalize();
    return x * conj;
  }

  Scalar& operator+=(const Scalar& o) {
    if (!is_exact() || !o.is_exact()) return *this = *this + o;
    d_ = common_radicand(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    if (!is_exact() || !o.is_exact()) return *this = *this - o;
    d_ = common_radicand(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Exact total order for exact values; approximate values are Equal when
  /// within the larger of the two tolerances.
  friend Ordering cmp(const Scalar& x, const Scalar& y) {
    if (x.is_exact() != y.is_exact())
      throw IncompatibleField("exact and approximate values cannot be compared");
    if (!x.is_exact()) {
      double diff = x.approx_ - y.approx_;
      if (std::abs(diff) <= std::max(x.err_, y.err_)) return Ordering::Equal;
      return diff < 0 ? Ordering::Less : Ordering::Greater;
    }
    long d = common_radicand(x, y);
    double diff = x.approx_ - y.approx_;
    double bound = x.err_ + y.err_;
    if (diff > bound) return Ordering::Greater;
    if (diff < -bound) return Ordering::Less;
    if ((x.d_ == y.d_ || x.b_ == 0 || y.b_ == 0) && x.a_ == y.a_ && x.b_ == y.b_) return Ordering::Equal;
    int s = exact_sign(x.a_ - y.a_, x.b_ - y.b_, d);
    return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
  }

  friend bool operator==(const Scalar& x, const Scalar& y) { return cmp(x, y) == Ordering::Equal; }
  friend bool operator<(const Scalar& x, const Scalar& y) { return cmp(x, y) == Ordering::Less; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return cmp(x, y) == Ordering::Greater; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return cmp(x, y) != Ordering::Greater; }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return cmp(x, y) != Ordering::Less; }

  /// Text form: `p/q`, `(a+b*sqrt(d))/c` with integers and common denominator
  /// c, or `~v±t`. Round-trips through from_string.
  std::string to_string() const {
    switch (kind_) {
      case Kind::Float:
        return "~" + detail::shortest(approx_) + "±" + detail::shortest(err_);
      case Kind::Rational:
        return a_.get_num().get_str() + "/" + a_.get_den().get_str();
      case Kind::Quadratic:
        break;
    }
    mpz_class c;
    mpz_lcm(c.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    mpz_class num_a = a_.get_num() * (c / a_.get_den());
    mpz_class num_b = b_.get_num() * (c / b_.get_den());
    std::string out = "(" + num_a.get_str();
    out += num_b < 0 ? "-" : "+";
    out += mpz_class(abs(num_b)).get_str() + "*sqrt(" + std::to_string(d_) + "))/" + c.get_str();
    return out;
  }

  static Scalar from_string(std::string_view text) {
    static const std::regex rat(R"(^(-?\d+)(?:/(\d+))?$)");
    static const std::regex quad(R"(^\((-?\d+)([+-])(\d+)\*sqrt\((\d+)\)\)/(\d+)$)");
    static const std::regex flt("^~([-+0-9.eE]+)±([-+0-9.eE]+)$");
    std::string s(text);
    std::smatch m;
    if (std::regex_match(s, m, rat)) {
      mpz_class num(m[1].str());
      mpz_class den(m[2].matched ? m[2].str() : std::string("1"));
      return rational(num, den);
    }
    if (std::regex_match(s, m, quad)) {
      mpz_class c(m[5].str());
      if (c == 0) throw ParseError("zero denominator", 0);
      mpq_class a(mpz_class(m[1].str()), c);
      mpq_class b(mpz_class(m[3].str()), c);
      a.canonicalize();
      b.canonicalize();
      if (m[2].str() == "-") b = -b;
      return quadratic(a, b, std::stol(m[4].str()));
    }
    if (std::regex_match(s, m, flt)) {
      return approx(std::stod(m[1].str()), std::stod(m[2].str()));
    }
    throw ParseError("unrecognised scalar '" + s + "'", 0);
  }

 private:
  static Scalar float_op(const Scalar& x, const Scalar& y, double value) {
    if (x.is_exact() || y.is_exact())
      throw IncompatibleField("exact and approximate values do not mix");
    return approx(value, std::max(x.err_, y.err_));
  }

  static long common_radicand(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw IncompatibleField("cannot combine sqrt(" + std::to_string(x.d_) + ") with sqrt(" +
                            std::to_string(y.d_) + ")");
  }

  // sign of a + b*sqrt(d), d square-free (or 0 when b == 0)
  static int exact_sign(const mpq_class& a, const mpq_class& b, long d) {
    int sa = detail::sgn(a);
    int sb = detail::sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    mpq_class lhs = a * a;
    mpq_class rhs = b * b * d;
    int c = mpq_cmp(lhs.get_mpq_t(), rhs.get_mpq_t());
    // a^2 > b^2 d: a dominates
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
  }

  void normalize() {
    if (b_ == 0) {
      d_ = 0;
      kind_ = Kind::Rational;
    } else {
      kind_ = Kind::Quadratic;
    }
    refresh();
  }

  void refresh() {
    double a = a_.get_d();
    double br = d_ == 0 ? 0.0 : b_.get_d() * std::sqrt(static_cast<double>(d_));
    approx_ = a + br;
    err_ = 1e-15 * (std::abs(a) + std::abs(br)) + std::numeric_limits<double>::denorm_min();
    if (!std::isfinite(approx_)) err_ = std::numeric_limits<double>::infinity();
  }

  Kind kind_ = Kind::Rational;
  mpq_class a_;
  mpq_class b_;
  long d_ = 0;
  // Exact kinds: double approximation and a bound on its absolute error.
  // Float kind: the value and its tolerance.
  double approx_ = 0.0;
  double err_ = 0.0;
};

inline Scalar frac(const Scalar& x) {
  if (!x.is_exact()) {
    double v = x.to_double();
    return Scalar::approx(v - std::floor(v), x.tolerance());
  }
  return x - Scalar::rational(mpq_class(x.floor()));
}

inline Scalar nearest_int_dist(const Scalar& x) {
  Scalar f = frac(x);
  Scalar g = (x.is_exact() ? Scalar(1) : Scalar::approx(1.0, x.tolerance())) - f;
  return f < g ? f : g;
}

inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }
inline const Scalar& min(const Scalar& x, const Scalar& y) { return y < x ? y : x; }
inline const Scalar& max(const Scalar& x, const Scalar& y) { return x < y ? y : x; }

/// A constant of the same world (exact or approximate) as `like`.
inline Scalar constant_like(const Scalar& like, const mpq_class& value) {
  if (like.is_exact()) return Scalar::rational(value);
  return Scalar::approx(value.get_d(), like.tolerance());
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

struct ScalarLess {
  bool operator()(const Scalar& x, const Scalar& y) const { return x < y; }
};

}  // namespace billiard
