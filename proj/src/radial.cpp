#include "kbl/radial.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kbl::radial {

namespace {

// psi = t F', psi' = F' + t F'', psi'' = 2 F'' + t F''', psi''' = 3 F''' + t F''''.
struct PsiFuncs {
  std::function<double(double)> f1, f2, f3, f4;
  double psi(double t) const { return t * f1(t); }
  double psi1(double t) const { return f1(t) + t * f2(t); }
  double psi2(double t) const { return 2 * f2(t) + t * f3(t); }
  double psi3(double t) const { return 3 * f3(t) + t * f4(t); }
};

}  // namespace

RadialPotential RadialPotential::euclidean(size_t m) {
  auto p = custom(
      m, [](double) { return 0.5; }, [](double) { return 0.0; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
  p.kind_ = Kind::euclidean;
  return p;
}

RadialPotential RadialPotential::fubini_study(size_t m) {
  // F = log(1+t): F^{(k)} = (-1)^{k-1} (k-1)! / (1+t)^k.
  auto p = custom(
      m, [](double t) { return 1.0 / (1.0 + t); },
      [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); },
      [](double t) { return 2.0 / std::pow(1.0 + t, 3); },
      [](double t) { return -6.0 / std::pow(1.0 + t, 4); });
  p.kind_ = Kind::fubini_study;
  return p;
}

RadialPotential RadialPotential::burns_simanca2() {
  // F = t/2 + log t.
  auto p = custom(
      2, [](double t) { return 0.5 + 1.0 / t; }, [](double t) { return -1.0 / (t * t); },
      [](double t) { return 2.0 / (t * t * t); }, [](double t) { return -6.0 / (t * t * t * t); });
  p.kind_ = Kind::burns_simanca_2;
  return p;
}

RadialPotential RadialPotential::custom(size_t m, std::function<double(double)> f1,
                                        std::function<double(double)> f2,
                                        std::function<double(double)> f3,
                                        std::function<double(double)> f4) {
  if (m < 1) throw std::invalid_argument("RadialPotential: m must be >= 1");
  RadialPotential p;
  p.kind_ = Kind::custom;
  p.m_ = m;
  p.f1_ = std::move(f1);
  p.f2_ = std::move(f2);
  p.f3_ = std::move(f3);
  p.f4_ = std::move(f4);
  return p;
}

double RadialPotential::psi(double t) const { return PsiFuncs{f1_, f2_, f3_, f4_}.psi(t); }
double RadialPotential::psi1(double t) const { return PsiFuncs{f1_, f2_, f3_, f4_}.psi1(t); }
double RadialPotential::psi2(double t) const { return PsiFuncs{f1_, f2_, f3_, f4_}.psi2(t); }
double RadialPotential::psi3(double t) const { return PsiFuncs{f1_, f2_, f3_, f4_}.psi3(t); }

double scalar_curvature_from_psi(size_t m, double t, double psi, double psi1, double psi2,
                                 double psi3) {
  if (t <= 0) throw RadialError("bad_t", "t must be positive");
  if (psi <= 0 || psi1 <= 0) throw RadialError("not_kahler_at_t", "metric positivity fails");
  double md = static_cast<double>(m);
  double g1 = (md - 1.0) * (psi1 / psi - 1.0 / t) + psi2 / psi1;
  double g2 = (md - 1.0) * (psi2 / psi - (psi1 / psi) * (psi1 / psi) + 1.0 / (t * t)) +
              psi3 / psi1 - (psi2 / psi1) * (psi2 / psi1);
  return -2.0 * ((md - 1.0) * g1 * t / psi + (g1 + t * g2) / psi1);
}

double radial_scalar_curvature(const RadialPotential& p, double t) {
  return scalar_curvature_from_psi(p.m(), t, p.psi(t), p.psi1(t), p.psi2(t), p.psi3(t));
}

namespace {

// Fourth-order central differences of y on a uniform log grid; one-sided
// fourth-order stencils at the ends.
std::vector<double> log_grid_derivative(const std::vector<double>& t,
                                        const std::vector<double>& y) {
  size_t n = t.size();
  std::vector<double> dy(n);
  double h = std::log(t[1] / t[0]);
  auto dx = [&](size_t i) {
    if (i >= 2 && i + 2 < n)
      return (-y[i + 2] + 8 * y[i + 1] - 8 * y[i - 1] + y[i - 2]) / (12 * h);
    if (i < 2)
      return (-25 * y[i] + 48 * y[i + 1] - 36 * y[i + 2] + 16 * y[i + 3] - 3 * y[i + 4]) /
             (12 * h);
    return (25 * y[i] - 48 * y[i - 1] + 36 * y[i - 2] - 16 * y[i - 3] + 3 * y[i - 4]) / (12 * h);
  };
  for (size_t i = 0; i < n; ++i) dy[i] = dx(i) / t[i];  // d/dt = (d/dx)/t
  return dy;
}

std::vector<double> make_log_grid(double lo, double hi, size_t n) {
  std::vector<double> t(n);
  double llo = std::log(lo), lhi = std::log(hi);
  for (size_t i = 0; i < n; ++i)
    t[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
  return t;
}

// Scalar-flat third-order ODE: from s = 0,
//   t G'' = -G' (1 + (m-1) t psi'/psi),
// which solves for psi''' through the G'' expression.
double scalar_flat_psi3(size_t m, double t, double psi, double psi1, double psi2) {
  double md = static_cast<double>(m);
  double g1 = (md - 1.0) * (psi1 / psi - 1.0 / t) + psi2 / psi1;
  double g2 = -g1 * (1.0 + (md - 1.0) * t * psi1 / psi) / t;
  return psi1 * (g2 - (md - 1.0) * (psi2 / psi - (psi1 / psi) * (psi1 / psi) + 1.0 / (t * t)) +
                 (psi2 / psi1) * (psi2 / psi1));
}

std::string cache_path(const BurnsSimancaOptions& opts, size_t m, double T) {
  std::ostringstream name;
  name << "bs_m" << m << "_T" << T << "_tol" << opts.ode_tolerance << "_n" << opts.grid_points
       << ".csv";
  return (std::filesystem::path(opts.cache_dir) / name.str()).string();
}

std::optional<MomentumProfile> load_cache(const std::string& path, size_t m) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  MomentumProfile p;
  p.m = m;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;  // header
  while (std::getline(in, line)) {
    std::istringstream row(line);
    double t, psi, psi1, psi2;
    char comma;
    if (!(row >> t >> comma >> psi >> comma >> psi1 >> comma >> psi2)) return std::nullopt;
    p.t.push_back(t);
    p.psi.push_back(psi);
    p.psi1.push_back(psi1);
    p.psi2.push_back(psi2);
  }
  if (p.t.empty()) return std::nullopt;
  return p;
}

void store_cache(const std::string& path, const MomentumProfile& p) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path);
  out.precision(17);
  out << "t,psi,psi1,psi2\n";
  for (size_t i = 0; i < p.t.size(); ++i)
    out << p.t[i] << "," << p.psi[i] << "," << p.psi1[i] << "," << p.psi2[i] << "\n";
}

void finalize_profile(MomentumProfile& p, double residual_tolerance, bool check_residual) {
  size_t n = p.t.size();
  for (size_t i = 0; i < n; ++i)
    if (!(p.psi[i] > 0) || !(p.psi1[i] > 0))
      throw RadialError("not_kahler_at_t", "metric positivity fails along the profile");
  // Extrapolate psi(0+) linearly from the two smallest grid points.
  p.psi_origin =
      (p.t[1] * p.psi[0] - p.t[0] * p.psi[1]) / (p.t[1] - p.t[0]);
  // Accepted window: from the first t with psi <= 1.01 psi(0+).
  size_t start = 0;
  while (start + 1 < n && p.psi[start] > 1.01 * p.psi_origin) ++start;
  p.accepted_t_min = p.t[start];
  auto s = profile_scalar_curvature(p);
  double worst = 0;
  for (size_t i = start; i < n; ++i) worst = std::max(worst, std::abs(s[i]));
  p.max_residual = worst;
  if (check_residual && worst > residual_tolerance) {
    std::ostringstream what;
    what << "scalar-flat residual " << worst << " exceeds tolerance " << residual_tolerance;
    throw RadialError("residual", what.str());
  }
}

}  // namespace

std::vector<double> profile_scalar_curvature(const MomentumProfile& profile) {
  auto psi3 = log_grid_derivative(profile.t, profile.psi2);
  std::vector<double> s(profile.t.size());
  for (size_t i = 0; i < profile.t.size(); ++i)
    s[i] = scalar_curvature_from_psi(profile.m, profile.t[i], profile.psi[i], profile.psi1[i],
                                     profile.psi2[i], psi3[i]);
  return s;
}

MomentumProfile burns_simanca(size_t m, double T, const BurnsSimancaOptions& opts) {
  if (m < 2) throw std::invalid_argument("burns_simanca: m must be >= 2");
  if (!(T > 1.0)) throw std::invalid_argument("burns_simanca: T must exceed 1");

  if (!opts.cache_dir.empty()) {
    if (auto cached = load_cache(cache_path(opts, m, T), m)) {
      finalize_profile(*cached, opts.residual_tolerance, m >= 3);
      cached->closed_form = (m == 2);
      return *cached;
    }
  }

  MomentumProfile p;
  p.m = m;
  p.t = make_log_grid(opts.grid_min, T, opts.grid_points);

  if (m == 2) {
    // E_2 closed form: psi = t/2 + 1 (the +1 is the log-term coefficient,
    // fixed by the closed form rather than solved for).
    p.closed_form = true;
    for (double t : p.t) {
      p.psi.push_back(0.5 * t + 1.0);
      p.psi1.push_back(0.5);
      p.psi2.push_back(0.0);
    }
    finalize_profile(p, opts.residual_tolerance, false);
    if (!opts.cache_dir.empty()) store_cache(cache_path(opts, m, T), p);
    return p;
  }

  // Inward shooting.  The two-term asymptotics psi = t/2 + (m-2) t^{2-m}
  // leave the t^{1-m} coefficient gamma free; generic gamma lands on a branch
  // that either loses metric positivity (psi' crosses zero) or flattens with
  // a fractional power (psi'' / psi' ~ (sigma-1)/t, sigma > 1).  The regular
  // profile psi = psi(0+) + alpha t + ... is the separatrix; bisect gamma on
  // the branch classifier.
  using State = std::array<double, 3>;
  double md = static_cast<double>(m);
  auto initial = [&](double gamma) {
    return State{T / 2 + (md - 2) * std::pow(T, 2.0 - md) + gamma * std::pow(T, 1.0 - md),
                 0.5 - (md - 2) * (md - 2) * std::pow(T, 1.0 - md) +
                     gamma * (1.0 - md) * std::pow(T, -md),
                 (md - 2) * (md - 2) * (md - 1) * std::pow(T, -md) +
                     gamma * md * (md - 1) * std::pow(T, -md - 1)};
  };
  auto rhs = [m](const State& y, State& dydt, double t) {
    dydt[0] = y[1];
    dydt[1] = y[2];
    dydt[2] = scalar_flat_psi3(m, t, y[0], y[1], y[2]);
  };

  namespace ode = boost::numeric::odeint;
  enum class Branch { positivity_lost, flattening, regular };
  // Integrate down the grid; record into the profile when requested.
  auto shoot = [&](double gamma, MomentumProfile* record) {
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(opts.ode_tolerance,
                                                                        opts.ode_tolerance);
    State y = initial(gamma);
    size_t i = p.t.size() - 1;
    if (record) {
      record->psi[i] = y[0];
      record->psi1[i] = y[1];
      record->psi2[i] = y[2];
    }
    double t_cur = T;
    while (i > 0) {
      double t_next = p.t[i - 1];
      try {
        ode::integrate_adaptive(stepper, rhs, y, t_cur, t_next, -(t_cur - t_next) / 64);
      } catch (const std::exception&) {
        return Branch::positivity_lost;
      }
      if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || y[0] <= 0 || y[1] <= 0)
        return Branch::positivity_lost;
      t_cur = t_next;
      --i;
      if (record) {
        record->psi[i] = y[0];
        record->psi1[i] = y[1];
        record->psi2[i] = y[2];
      }
    }
    double indicator = t_cur * y[2] / y[1];  // ~ sigma - 1 on the flat branch
    return indicator > 0.5 ? Branch::flattening : Branch::regular;
  };

  // Bracket the separatrix.
  double lo = 0, hi = 0;
  Branch lo_branch = shoot(0.0, nullptr);
  bool bracketed = false;
  for (double step : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    for (double sign : {1.0, -1.0}) {
      double g = sign * step;
      Branch b = shoot(g, nullptr);
      if (b != lo_branch) {
        lo = 0;
        hi = g;
        bracketed = true;
        break;
      }
    }
    if (bracketed) break;
  }
  if (!bracketed)
    throw RadialError("shooting_failed", "could not bracket the regular branch in gamma");
  for (int iter = 0; iter < 200 && std::abs(hi - lo) > 1e-13 * (1 + std::abs(lo)); ++iter) {
    double mid = 0.5 * (lo + hi);
    if (shoot(mid, nullptr) == lo_branch)
      lo = mid;
    else
      hi = mid;
  }

  p.psi.resize(p.t.size());
  p.psi1.resize(p.t.size());
  p.psi2.resize(p.t.size());
  double gamma_star = 0.5 * (lo + hi);
  if (shoot(gamma_star, &p) == Branch::positivity_lost)
    throw RadialError("shooting_failed", "separatrix shot lost positivity on the grid");
  finalize_profile(p, opts.residual_tolerance, true);
  if (!opts.cache_dir.empty()) store_cache(cache_path(opts, m, T), p);
  return p;
}

Schedules schedules(double epsilon, size_t m) {
  if (!(epsilon > 0) || !(epsilon < 1))
    throw std::invalid_argument("schedules: epsilon must lie in (0, 1)");
  if (m < 2) throw std::invalid_argument("schedules: m must be >= 2");
  long mm = static_cast<long>(m);
  Schedules s;
  s.r_exponent = Rational(2 * mm - 1, 2 * mm + 1);
  s.big_r_exponent = Rational(-2, 2 * mm + 1);
  s.drift_exponent = Rational(2, 2 * mm + 1);
  s.r_eps = std::pow(epsilon, to_double(s.r_exponent));
  s.big_r_eps = std::pow(epsilon, to_double(s.big_r_exponent));
  return s;
}

double mass_constant(size_t m) {
  if (m < 2) throw std::invalid_argument("mass_constant: m must be >= 2");
  // |S^{2m-1}| = 2 pi^m / (m-1)!
  double sphere = 2.0 * std::pow(M_PI, static_cast<double>(m));
  for (size_t k = 2; k < m; ++k) sphere /= static_cast<double>(k);
  if (m == 2) return 2.0 * sphere;
  return 4.0 * static_cast<double>(m - 1) * static_cast<double>(m - 2) * sphere;
}

double fitted_decay_exponent(const MomentumProfile& profile, double t_lo, double t_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = 0;
  for (size_t i = 0; i < profile.t.size(); ++i) {
    double t = profile.t[i];
    if (t < t_lo || t > t_hi) continue;
    double corr = profile.psi[i] - 0.5 * t;
    if (corr == 0) continue;
    double x = std::log(t), y = std::log(std::abs(corr));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw RadialError("fit_window", "too few points in the fit window");
  double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

void write_profile_csv(const MomentumProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_profile_csv: cannot open " + path);
  out.precision(17);
  auto s = profile_scalar_curvature(profile);
  out << "t,psi,Fprime,s\n";
  for (size_t i = 0; i < profile.t.size(); ++i)
    out << profile.t[i] << "," << profile.psi[i] << "," << profile.psi[i] / profile.t[i] << ","
        << s[i] << "\n";
}

}  // namespace kbl::radial
