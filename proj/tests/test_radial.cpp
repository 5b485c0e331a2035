#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "kbl/radial.hpp"
#include "oracles.hpp"

using namespace kbl;
using namespace kbl::radial;

namespace {

std::vector<double> log_points(double lo, double hi, size_t n) {
  std::vector<double> t(n);
  for (size_t i = 0; i < n; ++i)
    t[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / double(n - 1));
  return t;
}

// Analytic psi(0+) prediction for the scalar-flat profile, from the first
// integral t G' psi^{m-1} = C of the curvature formula (derived by hand and
// cross-checked numerically below): psi(0+)^{m-1} = (m-2)/2^{m-2}.
double predicted_origin(size_t m) {
  return std::pow((m - 2.0) / std::pow(2.0, m - 2.0), 1.0 / (m - 1.0));
}

double first_integral(const MomentumProfile& p, size_t i) {
  double t = p.t[i], psi = p.psi[i], psi1 = p.psi1[i], psi2 = p.psi2[i];
  double m = static_cast<double>(p.m);
  double g1 = (m - 1.0) * (psi1 / psi - 1.0 / t) + psi2 / psi1;
  return t * g1 * std::pow(psi, m - 1.0);
}

}  // namespace

TEST_CASE("scalar curvature: euclidean metric is flat") {
  for (size_t m : {1u, 2u, 3u, 4u}) {
    auto p = RadialPotential::euclidean(m);
    for (double t : {0.5, 1.0, 10.0}) CHECK(radial_scalar_curvature(p, t) == 0.0);
  }
}

TEST_CASE("scalar curvature: Fubini-Study anchor 2m(m+1)") {
  for (size_t m : {1u, 2u, 3u, 4u}) {
    auto p = RadialPotential::fubini_study(m);
    double expect = 2.0 * m * (m + 1);
    for (double t : log_points(1e-2, 1e2, 100))
      CHECK(std::abs(radial_scalar_curvature(p, t) - expect) < 1e-10);
  }
}

TEST_CASE("scalar curvature: m=2 scalar-flat closed form") {
  auto p = RadialPotential::burns_simanca2();
  for (double t : log_points(1e-2, 1e4, 1000))
    CHECK(std::abs(radial_scalar_curvature(p, t)) < 1e-12);
}

TEST_CASE("finite-difference Laplacian oracle confirms the curvature formula") {
  // Independent route: s = -2 g^{jk} d_j d_kbar log det g by central
  // differences in real coordinates.
  auto fs_derivs = [](double t) {
    return std::pair<double, double>{1.0 / (1.0 + t), -1.0 / ((1.0 + t) * (1.0 + t))};
  };
  auto bs_derivs = [](double t) {
    return std::pair<double, double>{0.5 + 1.0 / t, -1.0 / (t * t)};
  };
  auto eu_derivs = [](double) { return std::pair<double, double>{0.5, 0.0}; };

  for (size_t m : {2u, 3u}) {
    for (double t0 : {0.7, 1.3}) {
      double fd = oracles::fd_radial_scalar_curvature(fs_derivs, m, t0);
      double exact = radial_scalar_curvature(RadialPotential::fubini_study(m), t0);
      CHECK(std::abs(fd - exact) < 1e-4 * std::abs(exact));
    }
    CHECK(std::abs(oracles::fd_radial_scalar_curvature(eu_derivs, m, 1.0)) < 1e-6);
  }
  // E_2 is scalar flat.
  CHECK(std::abs(oracles::fd_radial_scalar_curvature(bs_derivs, 2, 1.0)) < 1e-5);
  CHECK(std::abs(oracles::fd_radial_scalar_curvature(bs_derivs, 2, 3.0)) < 1e-5);
}

TEST_CASE("curvature is invariant under constant potential shifts") {
  // F and F + c share all derivatives; the curvature path only sees them.
  auto base = RadialPotential::fubini_study(2);
  auto shifted = RadialPotential::custom(
      2, [](double t) { return 1.0 / (1.0 + t); },
      [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); },
      [](double t) { return 2.0 / std::pow(1.0 + t, 3); },
      [](double t) { return -6.0 / std::pow(1.0 + t, 4); });
  for (double t : {0.3, 1.0, 5.0})
    CHECK(radial_scalar_curvature(base, t) == radial_scalar_curvature(shifted, t));
}

TEST_CASE("homothety scaling law s(a^2 g at a^2 t) = a^-2 s(g at t)") {
  // F_a(t) = a^2 F(t/a^2).
  auto scaled = [](const RadialPotential& p, size_t m, double a2) {
    return RadialPotential::custom(
        m, [&p, a2](double t) { return p.psi(t / a2) / (t / a2); },
        [&p, a2](double t) {
          double u = t / a2;
          return (p.psi1(u) - p.psi(u) / u) / (u * a2);
        },
        [&p, a2](double t) {
          double u = t / a2;
          // F''' = (psi'' - 2 F'')/t with F'' as above.
          double f2 = (p.psi1(u) - p.psi(u) / u) / u;
          return (p.psi2(u) - 2.0 * f2) / (u * a2 * a2);
        },
        [&p, a2](double t) {
          double u = t / a2;
          double f2 = (p.psi1(u) - p.psi(u) / u) / u;
          double f3 = (p.psi2(u) - 2.0 * f2) / u;
          return (p.psi3(u) - 3.0 * f3) / (u * a2 * a2 * a2);
        });
  };
  for (double a2 : {0.25, 4.0}) {
    for (size_t m : {2u, 3u}) {
      auto fs = RadialPotential::fubini_study(m);
      auto fsa = scaled(fs, m, a2);
      for (double t : {0.5, 2.0}) {
        double lhs = radial_scalar_curvature(fsa, a2 * t);
        double rhs = radial_scalar_curvature(fs, t) / a2;
        CHECK(std::abs(lhs - rhs) < 1e-8 * (std::abs(rhs) + 1));
      }
    }
    auto bs = RadialPotential::burns_simanca2();
    auto bsa = scaled(bs, 2, a2);
    for (double t : {0.5, 2.0})
      CHECK(std::abs(radial_scalar_curvature(bsa, a2 * t)) < 1e-8);
  }
}

TEST_CASE("burns-simanca m=2: exact closed form") {
  auto p = burns_simanca(2, 1e4);
  CHECK(p.closed_form);
  CHECK(p.psi_origin == doctest::Approx(1.0).epsilon(1e-12));
  for (size_t i = 0; i < p.t.size(); i += 997)
    CHECK(p.psi[i] == doctest::Approx(0.5 * p.t[i] + 1.0).epsilon(1e-15));
  CHECK(p.max_residual < 1e-12);
}

TEST_CASE("burns-simanca m=3: residual, asymptotics, origin value") {
  auto p = burns_simanca(3, 1e4);
  CHECK(p.max_residual < 1e-6);
  CHECK(p.psi_origin > 0);
  CHECK(p.psi_origin == doctest::Approx(predicted_origin(3)).epsilon(1e-4));
  double slope = fitted_decay_exponent(p, 1e3, 1e4);
  CHECK(std::abs(slope - (2.0 - 3.0)) < 0.1 * 1.0);  // within 10% of 2-m = -1

  // Shooting stability: T = 1e4 vs 1e5 agree to 4 significant digits.
  auto q = burns_simanca(3, 1e5);
  CHECK(std::abs(p.psi_origin - q.psi_origin) < 1e-4 * std::abs(p.psi_origin));

  // First integral of the scalar-flat equation: t G' psi^{m-1} = -(m-1)(m-2)/2^{m-2}.
  double expect = -(3.0 - 1.0) * (3.0 - 2.0) / 2.0;
  for (size_t i = p.t.size() / 4; i < p.t.size(); i += p.t.size() / 8)
    CHECK(first_integral(p, i) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("burns-simanca m=4: residual and decay") {
  auto p = burns_simanca(4, 1e4);
  CHECK(p.max_residual < 1e-6);
  CHECK(p.psi_origin == doctest::Approx(predicted_origin(4)).epsilon(1e-4));
  double slope = fitted_decay_exponent(p, 1e3, 1e4);
  CHECK(std::abs(slope - (2.0 - 4.0)) < 0.1 * 2.0);
}

TEST_CASE("burns-simanca cache round-trip") {
  auto dir = std::filesystem::temp_directory_path() / "kbl_cache_test";
  std::filesystem::remove_all(dir);
  BurnsSimancaOptions opts;
  opts.cache_dir = dir.string();
  auto p = burns_simanca(3, 1e3, opts);
  auto q = burns_simanca(3, 1e3, opts);  // second call loads the cache
  REQUIRE(p.t.size() == q.t.size());
  CHECK(p.psi_origin == doctest::Approx(q.psi_origin).epsilon(1e-12));
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("sampled-mode residual shrinks at the finite-difference order") {
  // Exact FS psi data on two grids; psi''' comes from finite differences,
  // so the curvature error should drop by ~2^4 when the grid doubles.
  auto make = [](size_t n) {
    MomentumProfile p;
    p.m = 2;
    auto fs = RadialPotential::fubini_study(2);
    for (double t : log_points(0.1, 10.0, n)) {
      p.t.push_back(t);
      p.psi.push_back(fs.psi(t));
      p.psi1.push_back(fs.psi1(t));
      p.psi2.push_back(fs.psi2(t));
    }
    return p;
  };
  auto err = [](const MomentumProfile& p) {
    auto s = profile_scalar_curvature(p);
    double worst = 0;
    for (size_t i = 4; i + 4 < s.size(); ++i) worst = std::max(worst, std::abs(s[i] - 12.0));
    return worst;
  };
  double e1 = err(make(200)), e2 = err(make(400));
  CHECK(e2 < e1 / 8.0);  // fourth-order stencil, allow slack
}

TEST_CASE("schedules") {
  auto s = schedules(1e-3, 2);
  CHECK(s.r_exponent == Rational(3, 5));
  CHECK(s.r_eps == doctest::Approx(std::pow(10.0, -1.8)).epsilon(1e-12));
  CHECK(s.big_r_eps == doctest::Approx(std::pow(10.0, 1.2)).epsilon(1e-12));
  CHECK(s.drift_exponent == Rational(2, 5));

  auto s3 = schedules(1e-2, 3);
  CHECK(s3.r_exponent == Rational(5, 7));
  CHECK(s3.r_eps == doctest::Approx(std::pow(10.0, -10.0 / 7.0)).epsilon(1e-12));

  // r_eps -> 0 and R_eps -> infinity along a decreasing epsilon sequence.
  double prev_r = 1, prev_R = 0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    auto sch = schedules(eps, 2);
    CHECK(sch.r_eps < prev_r);
    CHECK(sch.big_r_eps > prev_R);
    prev_r = sch.r_eps;
    prev_R = sch.big_r_eps;
  }
  CHECK_THROWS(schedules(1.5, 2));
  CHECK_THROWS(schedules(0.0, 2));
}

TEST_CASE("mass constants") {
  CHECK(mass_constant(2) == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(mass_constant(3) == doctest::Approx(8.0 * std::pow(M_PI, 3)).epsilon(1e-14));
  CHECK(mass_constant(4) == doctest::Approx(8.0 * std::pow(M_PI, 4)).epsilon(1e-14));
  // Sphere-area recursion oracle.
  for (size_t m : {2u, 3u, 4u, 5u}) {
    double sphere = oracles::sphere_area_recursion(2 * m - 1);
    double expect = (m == 2) ? 2.0 * sphere : 4.0 * (m - 1.0) * (m - 2.0) * sphere;
    CHECK(mass_constant(m) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("profile csv emission") {
  auto p = burns_simanca(2, 100.0);
  auto path = std::filesystem::temp_directory_path() / "kbl_profile.csv";
  write_profile_csv(p, path.string());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,psi,Fprime,s");
  std::filesystem::remove(path);
}
