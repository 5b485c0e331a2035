#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace kbl {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// Parse "p", "-p" or "p/q" (q > 0 after normalization).  The raw GMP string
/// constructor does not canonicalize, so we always reduce here.
Rational parse_rational(const std::string& s);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string rational_str(const Rational& r);

Rational rational_pow(const Rational& base, long exponent);

/// Exact k-th root, when both numerator and denominator are perfect k-th
/// powers (negative radicands allowed for odd k).
std::optional<Rational> kth_root_exact(const Rational& r, unsigned k);
std::optional<Rational> sqrt_exact(const Rational& r);

Integer gcd_int(const Integer& a, const Integer& b);
Integer factorial(unsigned n);

/// Element of Q(i).  Exact field arithmetic; conjugation is an involution.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(int r) : re(r), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  /// |z|^2 = z * conj(z), a nonnegative rational.
  Rational norm2() const { return re * re + im * im; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.norm2();
    if (n == 0) throw std::domain_error("GaussianRational: division by zero");
    GaussianRational p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// Parse "a/b+c/di", "a/b-c/di", "c/di" or a plain rational.
GaussianRational parse_gaussian(const std::string& s);
std::string gaussian_str(const GaussianRational& z);

/// Square root in Q(i) when it exists exactly.
std::optional<GaussianRational> sqrt_exact(const GaussianRational& z);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace kbl
