#include "kbl/numbers.hpp"

#include <cctype>

namespace kbl {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' && c != '+')
      throw std::invalid_argument("parse_rational: bad character in '" + s + "'");
  }
  auto slash = s.find('/');
  if (slash != std::string::npos && s.find('/', slash + 1) != std::string::npos)
    throw std::invalid_argument("parse_rational: multiple '/' in '" + s + "'");
  Rational r;
  try {
    r.assign(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  }
  mpq_canonicalize(r.backend().data());
  return r;
}

std::string rational_str(const Rational& r) {
  Integer num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("rational_pow: zero to negative power");
    return Rational(1) / rational_pow(base, -exponent);
  }
  Rational acc(1), b = base;
  long e = exponent;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

namespace {

std::optional<Integer> kth_root_int(const Integer& n, unsigned k) {
  if (n < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = kth_root_int(-n, k);
    if (!r) return std::nullopt;
    return -*r;
  }
  Integer root;
  int exact = mpz_root(root.backend().data(), n.backend().data(), k);
  if (!exact) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Rational> kth_root_exact(const Rational& r, unsigned k) {
  if (k == 0) throw std::invalid_argument("kth_root_exact: k = 0");
  if (k == 1) return r;
  auto num = kth_root_int(numerator(r), k);
  if (!num) return std::nullopt;
  auto den = kth_root_int(denominator(r), k);
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

std::optional<Rational> sqrt_exact(const Rational& r) { return kth_root_exact(r, 2); }

Integer gcd_int(const Integer& a, const Integer& b) { return gcd(a, b); }

Integer factorial(unsigned n) {
  Integer f(1);
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

GaussianRational parse_gaussian(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_gaussian: empty string");
  if (s.back() != 'i') return {parse_rational(s), Rational(0)};
  std::string body = s.substr(0, s.size() - 1);
  // Split at the last top-level '+' or '-' (not a leading sign, not after '/').
  for (size_t pos = body.size(); pos-- > 1;) {
    char c = body[pos];
    if ((c == '+' || c == '-') && body[pos - 1] != '/' && body[pos - 1] != '+' &&
        body[pos - 1] != '-') {
      std::string re = body.substr(0, pos);
      std::string im = (c == '+') ? body.substr(pos + 1) : body.substr(pos);
      if (im.empty() || im == "-" || im == "+") throw std::invalid_argument("parse_gaussian: '" + s + "'");
      return {parse_rational(re), parse_rational(im)};
    }
  }
  // Pure imaginary "c/di".
  return {Rational(0), parse_rational(body)};
}

std::string gaussian_str(const GaussianRational& z) {
  std::string im = rational_str(z.im);
  if (z.im >= 0) return rational_str(z.re) + "+" + im + "i";
  return rational_str(z.re) + im + "i";
}

std::optional<GaussianRational> sqrt_exact(const GaussianRational& z) {
  if (z.im == 0) {
    if (z.re >= 0) {
      auto u = sqrt_exact(z.re);
      if (!u) return std::nullopt;
      return GaussianRational(*u, Rational(0));
    }
    auto v = sqrt_exact(-z.re);
    if (!v) return std::nullopt;
    return GaussianRational(Rational(0), *v);
  }
  // w = u + vi with u^2 = (x + |z|)/2, v = y/(2u); needs |z| rational and
  // (x + |z|)/2 a rational square.
  auto mod = sqrt_exact(z.norm2());
  if (!mod) return std::nullopt;
  auto u2 = (z.re + *mod) / 2;
  auto u = sqrt_exact(u2);
  if (!u || *u == 0) return std::nullopt;
  Rational v = z.im / (2 * *u);
  return GaussianRational(*u, v);
}

}  // namespace kbl
