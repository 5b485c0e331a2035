#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kbl/linalg.hpp"
#include "kbl/numbers.hpp"

namespace kbl::classes {

/// Univariate polynomial over Q in the formal variable e = epsilon^2,
/// ascending coefficients, normalized (no trailing zeros).
class Poly {
 public:
  Poly() = default;
  Poly(Rational constant) : c_{std::move(constant)} { trim(); }
  explicit Poly(Vec<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly variable() { return Poly(Vec<Rational>{Rational(0), Rational(1)}); }

  const Vec<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational eval(const Rational& x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  Vec<Rational> c_;
};

/// Rational function num/den over Q, reduced, with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(Rational(0)), den_(Rational(1)) {}
  RatFunc(Rational constant) : num_(std::move(constant)), den_(Rational(1)) {}
  RatFunc(Poly num, Poly den);

  static RatFunc variable() { return RatFunc(Poly::variable(), Poly(Rational(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::optional<Rational> eval(const Rational& x) const;  // nullopt at a pole

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Poly num_, den_;
};

/// radicand^{1/index}, kept symbolic unless the root is exact.  index 1 or an
/// exact root collapse to the rational factor at construction.
struct Radical {
  Rational radicand = 1;
  unsigned index = 1;

  bool is_rational() const { return index == 1; }
  double value() const;
  friend bool operator==(const Radical& a, const Radical& b) {
    return a.radicand == b.radicand && a.index == b.index;
  }
};

/// a^{1/k} as (rational factor) * (irreducible-or-kept radical).
Radical make_radical(const Rational& radicand, unsigned index);

/// Class on Bl_n P^2 (or a P^1 x P^1 derived surface):
///   h * pi*H - sum_j e_j * PD[E_j].
struct BlowupClass {
  enum class Base { p2, p1xp1_derived };
  Rational h;
  Vec<Rational> e;
  Base base = Base::p2;

  friend bool operator==(const BlowupClass& a, const BlowupClass& b) {
    return a.h == b.h && a.e == b.e;
  }
};

Rational intersection(const BlowupClass& c1, const BlowupClass& c2);

/// alpha PD[A_1] + beta PD[A_2] - lambda PD[E] on Bl_q(P^1 x P^1), with the
/// standard Kaehler-cone membership flags.
struct RuledClass {
  Rational alpha, beta, lambda;
  bool in_kaehler_cone() const { return alpha > lambda && beta > lambda && lambda >= 0; }
};

/// (alpha+beta-lambda) H - (alpha-lambda) E_1 - (beta-lambda) E_2.
BlowupClass ruled_to_delpezzo(const RuledClass& r);

/// The class-lattice involution of the three-point blow-up:
///   H -> 2H - F1 - F2 - F3,  E1 -> H - F1 - F2,  E2 -> H - F1 - F3,
///   E3 -> H - F2 - F3,
/// i.e. H - aE1 - bE2 - cE3 -> (2-a-b-c)H - (1-a-b)F1 - (1-a-c)F2 - (1-b-c)F3.
BlowupClass cremona(const BlowupClass& c);

/// One exceptional-divisor coefficient of an epsilon-parametrized family:
/// value(eps) = rat(e) * radical, with e = eps^2.
struct FamilyCoeff {
  RatFunc rat;
  Radical radical;  // 1 unless a weight root stays irrational

  bool has_radical() const { return !radical.is_rational(); }
  std::optional<Rational> eval_exact(const Rational& eps_squared) const;
  double eval(double eps) const;
};

/// pi*[omega] family on a blow-up: h(e) * pi*H - sum_j coeff_j(e) * PD[E_j].
struct EpsilonFamily {
  size_t m = 2;
  RatFunc h = RatFunc(Rational(1));
  std::vector<FamilyCoeff> e_coeffs;
  Vec<Rational> weights;  // the a_j that generated the family (may be empty)
  bool condition_iii_verified = true;
  // Remark-2.3 weight drift |a~_j - a_j| <= c eps^{2/(2m+1)}; attached when
  // condition (iii) was not verified.
  std::optional<Rational> drift_exponent;
  std::vector<std::string> notes;

  std::optional<BlowupClass> eval_exact(const Rational& eps_squared) const;
};

/// Theorem family pi*[omega] - eps^2 sum_j a_j^{1/(m-1)} PD[E_j] over the
/// given base class.
EpsilonFamily epsilon_family(const BlowupClass& base, const Vec<Rational>& weights, size_t m,
                             bool condition_iii_verified = false);

/// The one-point blow-up families with extremal representatives for every
/// 0 < a < 1 (the Calabi classes on Bl_1 P^2).
EpsilonFamily calabi_one_point(const Rational& a);

struct ConstraintCheck {
  std::string text;   // e.g. "a1 < 1"
  bool satisfied;
  std::string values;
};

struct FamilyBundle {
  int family_case = 1;
  std::vector<EpsilonFamily> families;
  std::vector<ConstraintCheck> constraints;
  std::vector<std::string> notes;  // typo resolutions, unverified derivations,
                                   // known non-existence annotations
  bool all_constraints_hold() const {
    for (const auto& c : constraints)
      if (!c.satisfied) return false;
    return true;
  }
};

/// The printed two- and three-point blow-up class families, rebuilt
/// compositionally (Calabi + epsilon_family, the ruled correspondence, the
/// Cremona involution) and cross-checked coefficient-exactly against the
/// printed forms.  Throws std::logic_error if a cross-check ever fails.
///   case 1: Bl_{p1,p2} P^2           params (a1, a2)
///   case 2: Bl_{p1,p2,p3} P^2, general position   params (a1, a2, a3)
///   case 3: three collinear points   params (a1, a2, a3); second family
///           uses (a, a, b) with b < a.
FamilyBundle corollary_families(int family_case, const Vec<Rational>& params);

std::string class_to_json(const BlowupClass& c);
BlowupClass class_from_json(const std::string& text);
std::string family_to_json(const EpsilonFamily& f);

}  // namespace kbl::classes
