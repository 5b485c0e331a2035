#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kbl/numbers.hpp"

namespace kbl::radial {

/// U(m)-invariant Kaehler potential F(t), t = |v|^2, reduced to the momentum
/// profile psi(t) = t F'(t).  Closed-form kinds carry analytic psi
/// derivatives; sampled profiles carry grids.
class RadialPotential {
 public:
  enum class Kind { euclidean, fubini_study, burns_simanca_2, custom };

  static RadialPotential euclidean(size_t m);
  static RadialPotential fubini_study(size_t m);
  static RadialPotential burns_simanca2();  // m = 2 closed form t/2 + log t
  /// Custom closed form from F-derivatives (F', F'', F''', F'''').
  static RadialPotential custom(size_t m, std::function<double(double)> f1,
                                std::function<double(double)> f2,
                                std::function<double(double)> f3,
                                std::function<double(double)> f4);

  Kind kind() const { return kind_; }
  size_t m() const { return m_; }

  // psi and derivatives; metric positivity means psi/t > 0 and psi' > 0.
  double psi(double t) const;
  double psi1(double t) const;
  double psi2(double t) const;
  double psi3(double t) const;

 private:
  Kind kind_ = Kind::custom;
  size_t m_ = 2;
  std::function<double(double)> f1_, f2_, f3_, f4_;
};

/// Sampled momentum profile on a logarithmic grid, with derivatives.
struct MomentumProfile {
  size_t m = 2;
  std::vector<double> t;
  std::vector<double> psi;
  std::vector<double> psi1;
  std::vector<double> psi2;
  bool closed_form = false;  // m = 2 exact profile
  double psi_origin = 0;     // extrapolated psi(0+) (exceptional divisor size)
  double max_residual = 0;   // max |s(t)| over the accepted window
  double accepted_t_min = 0; // window start: psi(t_min) <= 1.01 psi(0+)
};

class RadialError : public std::runtime_error {
 public:
  RadialError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Scalar curvature of the radial metric at t:
///   s = -2 [ (m-1) G'/F' + (G' + t G'')/(F' + t F'') ],
///   G = (m-1) log F' + log(F' + t F''),
/// evaluated through the momentum profile (F' = psi/t, F' + tF'' = psi').
/// The finite-difference Laplacian oracle validates this formula on the
/// Euclidean, Fubini-Study and m=2 scalar-flat potentials before use.
double radial_scalar_curvature(const RadialPotential& p, double t);

/// Same formula from explicit psi data (used for sampled profiles).
double scalar_curvature_from_psi(size_t m, double t, double psi, double psi1, double psi2,
                                 double psi3);

/// Scalar curvature along a sampled profile; psi''' comes from fourth-order
/// finite differences of psi'' on the log grid.
std::vector<double> profile_scalar_curvature(const MomentumProfile& profile);

struct BurnsSimancaOptions {
  double grid_min = 1e-4;
  size_t grid_points = 10000;
  double ode_tolerance = 1e-10;
  double residual_tolerance = 1e-6;
  std::string cache_dir;  // empty = no cache
};

/// The scalar-flat profile on the blow-up of C^m at the origin:
/// m = 2 returns psi = t/2 + 1 exactly; m >= 3 integrates the third-order
/// scalar-flat ODE inward from the two-term asymptotics
///   psi = t/2 + (m-2) t^{2-m}
/// at t = T and accepts only if the residual stays below tolerance and
/// psi(0+) > 0.
MomentumProfile burns_simanca(size_t m, double T, const BurnsSimancaOptions& opts = {});

struct Schedules {
  double r_eps;
  double big_r_eps;
  Rational r_exponent;      // (2m-1)/(2m+1)
  Rational big_r_exponent;  // -2/(2m+1)
  Rational drift_exponent;  // 2/(2m+1)
};

Schedules schedules(double epsilon, size_t m);

/// c_2 = 2 |S^3|, c_m = 4 (m-1)(m-2) |S^{2m-1}| for m >= 3, with
/// |S^{2m-1}| = 2 pi^m / (m-1)!.
double mass_constant(size_t m);

/// Least-squares slope of log|psi - t/2| against log t over [t_lo, t_hi]:
/// the large-t decay exponent of the Burns-Simanca correction.
double fitted_decay_exponent(const MomentumProfile& profile, double t_lo, double t_hi);

void write_profile_csv(const MomentumProfile& profile, const std::string& path);

}  // namespace kbl::radial
