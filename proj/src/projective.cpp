#include "kbl/projective.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace kbl::actions {

namespace {

using G = GaussianRational;

}  // namespace

HermitianGenerator::HermitianGenerator(Mat<GaussianRational> entries) : a_(std::move(entries)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0)
    throw std::invalid_argument("HermitianGenerator: matrix must be square and nonempty");
  for (size_t j = 0; j < a_.rows(); ++j) {
    if (a_(j, j).im != 0)
      throw std::invalid_argument("HermitianGenerator: diagonal must be real");
    for (size_t k = j + 1; k < a_.cols(); ++k)
      if (a_(j, k) != a_(k, j).conj())
        throw std::invalid_argument("HermitianGenerator: not Hermitian");
  }
}

Rational HermitianGenerator::trace() const {
  Rational t(0);
  for (size_t j = 0; j < a_.rows(); ++j) t += a_(j, j).re;
  return t;
}

HermitianGenerator operator+(const HermitianGenerator& x, const HermitianGenerator& y) {
  if (x.size() != y.size()) throw std::invalid_argument("HermitianGenerator: size mismatch");
  Mat<G> s(x.size(), x.size());
  for (size_t j = 0; j < x.size(); ++j)
    for (size_t k = 0; k < x.size(); ++k) s(j, k) = x(j, k) + y(j, k);
  return HermitianGenerator(std::move(s));
}

HermitianGenerator operator*(const Rational& c, const HermitianGenerator& x) {
  Mat<G> s(x.size(), x.size());
  for (size_t j = 0; j < x.size(); ++j)
    for (size_t k = 0; k < x.size(); ++k) s(j, k) = G(c) * x(j, k);
  return HermitianGenerator(std::move(s));
}

HermitianGenerator diagonal_generator(const std::vector<Rational>& d) {
  Mat<G> a(d.size(), d.size());
  for (size_t j = 0; j < d.size(); ++j) a(j, j) = G(d[j]);
  return HermitianGenerator(std::move(a));
}

HermitianGenerator symmetric_pair(size_t n, size_t j, size_t k) {
  Mat<G> a(n, n);
  a(j, k) = G(1);
  a(k, j) = G(1);
  return HermitianGenerator(std::move(a));
}

HermitianGenerator antisymmetric_pair(size_t n, size_t j, size_t k) {
  Mat<G> a(n, n);
  a(j, k) = G(Rational(0), Rational(1));
  a(k, j) = G(Rational(0), Rational(-1));
  return HermitianGenerator(std::move(a));
}

ProjectivePoint::ProjectivePoint(std::vector<GaussianRational> homogeneous)
    : z_(std::move(homogeneous)) {
  if (z_.size() < 2) throw std::invalid_argument("ProjectivePoint: need at least 2 coordinates");
  size_t lead = z_.size();
  for (size_t j = 0; j < z_.size(); ++j)
    if (!z_[j].is_zero()) {
      lead = j;
      break;
    }
  if (lead == z_.size()) throw std::invalid_argument("ProjectivePoint: zero vector");
  G inv = G(1) / z_[lead];
  for (auto& c : z_) c = c * inv;
}

ProjectivePoint coordinate_point(size_t m, size_t j) {
  std::vector<G> z(m + 1, G(0));
  z.at(j) = G(1);
  return ProjectivePoint(std::move(z));
}

GroupSpec GroupSpec::make(size_t m, const std::vector<std::vector<long>>& weights,
                          const std::vector<std::vector<size_t>>& perms) {
  GroupSpec g;
  g.m = m;
  for (const auto& w : weights) {
    if (w.size() != m + 1) throw std::invalid_argument("GroupSpec: weight vector length");
    // Shift-normalize to zero sum, keeping integrality: (m+1) w - sum(w).
    long sum = std::accumulate(w.begin(), w.end(), 0L);
    Vec<Rational> shifted(m + 1);
    for (size_t j = 0; j <= m; ++j)
      shifted[j] = Rational(static_cast<long>(m + 1) * w[j] - sum);
    auto prim = primitive_integer_vector(shifted);
    bool zero = std::all_of(prim.begin(), prim.end(), [](const Integer& x) { return x == 0; });
    if (!zero) g.circle_weights.push_back(std::move(prim));
  }
  for (const auto& p : perms) {
    if (p.size() != m + 1) throw std::invalid_argument("GroupSpec: permutation length");
    std::vector<bool> seen(m + 1, false);
    for (size_t img : p) {
      if (img > m || seen[img]) throw std::invalid_argument("GroupSpec: not a permutation");
      seen[img] = true;
    }
    g.permutations.push_back(p);
  }
  return g;
}

GroupSpec GroupSpec::full_torus(size_t m) {
  std::vector<std::vector<long>> weights;
  for (size_t i = 0; i < m; ++i) {
    std::vector<long> w(m + 1, 0);
    w[i] = 1;
    w[m] = -1;
    weights.push_back(std::move(w));
  }
  return make(m, weights, {});
}

GroupSpec GroupSpec::trivial(size_t m) { return make(m, {}, {}); }

Rational fs_potential(const HermitianGenerator& a, const ProjectivePoint& p) {
  if (a.size() != p.coords().size())
    throw std::invalid_argument("fs_potential: dimension mismatch");
  G quad(0), norm(0);
  const auto& z = p.coords();
  for (size_t j = 0; j < z.size(); ++j) {
    norm += z[j].conj() * z[j];
    for (size_t k = 0; k < z.size(); ++k) quad += z[j].conj() * a(j, k) * z[k];
  }
  if (quad.im != 0) throw std::logic_error("fs_potential: Hermitian form not real");
  size_t n = a.size();
  return quad.re / norm.re - a.trace() / Rational(static_cast<long>(n));
}

Rational l2_pairing(const HermitianGenerator& a, const HermitianGenerator& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l2_pairing: dimension mismatch");
  size_t n = a.size();  // m + 1
  G trab(0);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) trab += a(j, k) * b(k, j);
  if (trab.im != 0) throw std::logic_error("l2_pairing: tr(AB) not real");
  Rational ta = a.trace(), tb = b.trace();
  Rational nn(static_cast<long>(n));
  return (ta * tb + trab.re) / (nn * (nn + 1)) - ta * tb / (nn * nn);
}

namespace {

// Real parameter coordinates of an (m+1)x(m+1) Hermitian matrix: diagonal
// entries first, then (re, im) of the upper-triangle entries in (j,k) order.
struct HermParam {
  size_t n;
  size_t count() const { return n * n; }
  size_t diag(size_t j) const { return j; }
  size_t off_re(size_t j, size_t k) const { return n + 2 * pair_index(j, k); }
  size_t off_im(size_t j, size_t k) const { return n + 2 * pair_index(j, k) + 1; }
  size_t pair_index(size_t j, size_t k) const {
    // 0 <= j < k < n, lексicographic
    return j * n - j * (j + 1) / 2 + (k - j - 1);
  }
};

Vec<Rational> to_params(const HermitianGenerator& a) {
  HermParam hp{a.size()};
  Vec<Rational> v(hp.count(), Rational(0));
  for (size_t j = 0; j < a.size(); ++j) v[hp.diag(j)] = a(j, j).re;
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t k = j + 1; k < a.size(); ++k) {
      v[hp.off_re(j, k)] = a(j, k).re;
      v[hp.off_im(j, k)] = a(j, k).im;
    }
  return v;
}

HermitianGenerator from_params(size_t n, const Vec<Rational>& v) {
  HermParam hp{n};
  Mat<G> a(n, n);
  for (size_t j = 0; j < n; ++j) a(j, j) = G(v[hp.diag(j)]);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = j + 1; k < n; ++k) {
      a(j, k) = G(v[hp.off_re(j, k)], v[hp.off_im(j, k)]);
      a(k, j) = a(j, k).conj();
    }
  return HermitianGenerator(std::move(a));
}

HermitianGenerator from_params_primitive(size_t n, const Vec<Rational>& v) {
  auto prim = primitive_integer_vector(v);
  Vec<Rational> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = Rational(prim[i]);
  return from_params(n, w);
}

// Parameter indices of A -> P A P^T for the permutation sigma (images).
// Returns rows of (mapped - id) applied to a parameter vector.
void append_permutation_fixed_rows(const std::vector<size_t>& sigma, size_t n,
                                   std::vector<Vec<Rational>>& rows) {
  HermParam hp{n};
  auto row = [&](size_t) { return Vec<Rational>(hp.count(), Rational(0)); };
  // Image parameter p' in terms of source parameters: p'_{target} = ±p_{source}.
  // Fixed space: p_{target} - ±p_{source} = 0 for every parameter slot.
  for (size_t j = 0; j < n; ++j) {
    size_t tj = sigma[j];
    if (tj == j) continue;
    auto r = row(0);
    r[hp.diag(tj)] += 1;
    r[hp.diag(j)] -= 1;
    rows.push_back(std::move(r));
  }
  for (size_t j = 0; j < n; ++j)
    for (size_t k = j + 1; k < n; ++k) {
      size_t a = sigma[j], b = sigma[k];
      bool flip = a > b;
      if (flip) std::swap(a, b);
      if (a == j && b == k && !flip) continue;
      {
        auto r = row(0);
        r[hp.off_re(a, b)] += 1;
        r[hp.off_re(j, k)] -= 1;
        rows.push_back(std::move(r));
      }
      {
        auto r = row(0);
        r[hp.off_im(a, b)] += 1;
        r[hp.off_im(j, k)] -= flip ? Rational(-1) : Rational(1);
        rows.push_back(std::move(r));
      }
    }
}

std::vector<Vec<Rational>> canonical_kernel(const std::vector<Vec<Rational>>& rows, size_t cols) {
  Mat<Rational> m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return kernel_basis(m);
}

}  // namespace

std::vector<HermitianGenerator> invariant_algebra(const GroupSpec& g, size_t m) {
  size_t n = m + 1;
  HermParam hp{n};
  std::vector<Vec<Rational>> rows;

  // Traceless.
  {
    Vec<Rational> tr(hp.count(), Rational(0));
    for (size_t j = 0; j < n; ++j) tr[hp.diag(j)] = 1;
    rows.push_back(std::move(tr));
  }
  // Commutant of each circle factor: off-diagonal entries allowed only when
  // the weights agree.
  for (const auto& w : g.circle_weights) {
    for (size_t j = 0; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        if (w[j] == w[k]) continue;
        Vec<Rational> r1(hp.count(), Rational(0)), r2(hp.count(), Rational(0));
        r1[hp.off_re(j, k)] = 1;
        r2[hp.off_im(j, k)] = 1;
        rows.push_back(std::move(r1));
        rows.push_back(std::move(r2));
      }
  }
  for (const auto& sigma : g.permutations) append_permutation_fixed_rows(sigma, n, rows);

  std::vector<HermitianGenerator> basis;
  for (const auto& v : canonical_kernel(rows, hp.count()))
    basis.push_back(from_params_primitive(n, v));
  return basis;
}

LieSplit split_algebra(const std::vector<HermitianGenerator>& h_basis, const GroupSpec& g) {
  if (h_basis.empty()) {
    LieSplit out;
    out.m = g.m;
    out.group = g;
    return out;
  }
  size_t n = h_basis[0].size();
  size_t dim = h_basis.size();
  LieSplit out;
  out.m = n - 1;
  out.group = g;
  out.h_basis = h_basis;

  out.gram = Mat<Rational>(dim, dim);
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) out.gram(i, j) = l2_pairing(h_basis[i], h_basis[j]);
  auto sig = inertia(out.gram);
  if (sig.positive != dim)
    throw std::logic_error("split_algebra: Gram matrix is not positive definite");

  // k inside the matrix model: span of the circle-weight diagonal matrices.
  std::vector<Vec<Rational>> kvecs;
  for (const auto& w : g.circle_weights) {
    std::vector<Rational> d(n);
    for (size_t j = 0; j < n; ++j) d[j] = Rational(w[j]);
    kvecs.push_back(to_params(diagonal_generator(d)));
  }

  // h' = span(k) intersect span(h): kernel of [H | -K] stacked column-wise.
  HermParam hp{n};
  size_t cols = dim + kvecs.size();
  Mat<Rational> inter(hp.count(), cols);
  std::vector<Vec<Rational>> hvecs;
  for (const auto& h : h_basis) hvecs.push_back(to_params(h));
  for (size_t r = 0; r < hp.count(); ++r) {
    for (size_t i = 0; i < dim; ++i) inter(r, i) = hvecs[i][r];
    for (size_t i = 0; i < kvecs.size(); ++i) inter(r, dim + i) = -kvecs[i][r];
  }
  std::vector<Vec<Rational>> beta_rows;
  for (const auto& v : kernel_basis(inter))
    beta_rows.push_back(Vec<Rational>(v.begin(), v.begin() + dim));
  // Canonical independent h-coordinates of the intersection.
  Mat<Rational> beta_mat(beta_rows.size(), dim);
  for (size_t i = 0; i < beta_rows.size(); ++i)
    for (size_t j = 0; j < dim; ++j) beta_mat(i, j) = beta_rows[i][j];
  std::vector<size_t> pivots;
  size_t hprime_dim = rref(beta_mat, &pivots);
  for (size_t i = 0; i < hprime_dim; ++i) {
    Vec<Rational> coord(dim);
    for (size_t j = 0; j < dim; ++j) coord[j] = beta_mat(i, j);
    out.h_prime_coords.push_back(coord);
    Vec<Rational> params(hp.count(), Rational(0));
    for (size_t j = 0; j < dim; ++j)
      for (size_t r = 0; r < hp.count(); ++r) params[r] += coord[j] * hvecs[j][r];
    out.h_prime_basis.push_back(from_params_primitive(n, params));
  }

  // h'' = Gram orthocomplement of h' inside h.
  Mat<Rational> ortho(hprime_dim, dim);
  for (size_t i = 0; i < hprime_dim; ++i) {
    auto gx = mat_vec(out.gram, out.h_prime_coords[i]);
    for (size_t j = 0; j < dim; ++j) ortho(i, j) = gx[j];
  }
  for (const auto& coord : kernel_basis(ortho)) {
    out.h_doubleprime_coords.push_back(coord);
    Vec<Rational> params(hp.count(), Rational(0));
    for (size_t j = 0; j < dim; ++j)
      for (size_t r = 0; r < hp.count(); ++r) params[r] += coord[j] * hvecs[j][r];
    out.h_doubleprime_basis.push_back(from_params_primitive(n, params));
  }

  if (out.h_prime_coords.size() + out.h_doubleprime_coords.size() != dim)
    throw std::logic_error("split_algebra: dim h' + dim h'' != dim h");
  return out;
}

MomentVector moment_at(const ProjectivePoint& p, const LieSplit& split) {
  MomentVector mv;
  for (const auto& x : split.h_basis) mv.values.push_back(fs_potential(x, p));
  // Warn when p is not a common eigenvector of the weight matrices.
  mv.fixed_point = true;
  const auto& z = p.coords();
  for (const auto& w : split.group.circle_weights) {
    bool seen = false;
    Integer base(0);
    for (size_t j = 0; j < z.size(); ++j) {
      if (z[j].is_zero()) continue;
      if (!seen) {
        base = w[j];
        seen = true;
      } else if (w[j] != base) {
        mv.fixed_point = false;
      }
    }
  }
  return mv;
}

std::vector<std::pair<size_t, size_t>> orbit_equalities(
    const std::vector<ProjectivePoint>& points, const GroupSpec& g) {
  size_t n = g.m + 1;
  // Closure of the permutation generators.
  std::set<std::vector<size_t>> group;
  std::vector<size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  group.insert(id);
  std::vector<std::vector<size_t>> frontier = {id};
  while (!frontier.empty()) {
    std::vector<std::vector<size_t>> next;
    for (const auto& cur : frontier)
      for (const auto& gen : g.permutations) {
        std::vector<size_t> comp(n);
        for (size_t j = 0; j < n; ++j) comp[j] = gen[cur[j]];
        if (group.insert(comp).second) next.push_back(comp);
      }
    frontier = std::move(next);
  }

  // Union-find over point indices.
  std::vector<size_t> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& sigma : group) {
    for (size_t i = 0; i < points.size(); ++i) {
      std::vector<G> moved(n);
      for (size_t j = 0; j < n; ++j) moved[sigma[j]] = points[i].coords()[j];
      ProjectivePoint q(std::move(moved));
      for (size_t j = 0; j < points.size(); ++j)
        if (points[j] == q) parent[find(i)] = find(j);
    }
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  std::map<size_t, size_t> rep;
  for (size_t i = 0; i < points.size(); ++i) {
    size_t r = find(i);
    auto it = rep.find(r);
    if (it == rep.end())
      rep[r] = i;
    else
      pairs.emplace_back(it->second, i);
  }
  return pairs;
}

ConditionOneResult check_condition_i(const std::vector<ProjectivePoint>& points,
                                     const LieSplit& split, const GroupSpec& g) {
  size_t n = points.size();
  if (n == 0) throw std::invalid_argument("check_condition_i: no points");
  ConditionOneResult out;
  out.orbit_pairs = orbit_equalities(points, g);

  size_t k = split.h_doubleprime_basis.size();
  Mat<Rational> m(k + out.orbit_pairs.size(), n);
  for (size_t b = 0; b < k; ++b)
    for (size_t j = 0; j < n; ++j)
      m(b, j) = fs_potential(split.h_doubleprime_basis[b], points[j]);
  for (size_t r = 0; r < out.orbit_pairs.size(); ++r) {
    m(k + r, out.orbit_pairs[r].first) = 1;
    m(k + r, out.orbit_pairs[r].second) = -1;
  }

  auto cone = positive_kernel_witness(m);
  out.kernel = cone.kernel;
  out.min_coordinate = cone.min_coordinate;
  switch (cone.status) {
    case PositiveConeResult::Status::feasible:
      out.feasible = true;
      out.weights = cone.witness;
      break;
    case PositiveConeResult::Status::degenerate_feasible:
      out.degenerate = true;
      out.weights = cone.witness;
      out.certificate = cone.certificate;
      break;
    case PositiveConeResult::Status::infeasible:
      out.certificate = cone.certificate;
      break;
  }
  return out;
}

ConditionTwoResult check_condition_ii(const std::vector<ProjectivePoint>& points,
                                      const LieSplit& split) {
  ConditionTwoResult out;
  out.required_rank = split.h_doubleprime_basis.size();
  if (out.required_rank == 0) {
    out.spans = true;  // vacuous
    return out;
  }
  Mat<Rational> m(points.size(), out.required_rank);
  for (size_t j = 0; j < points.size(); ++j)
    for (size_t b = 0; b < out.required_rank; ++b)
      m(j, b) = fs_potential(split.h_doubleprime_basis[b], points[j]);
  Mat<Rational> work = m;
  std::vector<size_t> pivot_cols, pivot_rows;
  out.rank = rref(work, &pivot_cols, &pivot_rows);
  out.spans = (out.rank == out.required_rank);
  if (out.spans) {
    std::sort(pivot_rows.begin(), pivot_rows.end());
    out.witness_rows = pivot_rows;
    Mat<Rational> minor(out.required_rank, out.required_rank);
    for (size_t i = 0; i < out.required_rank; ++i)
      for (size_t b = 0; b < out.required_rank; ++b) minor(i, b) = m(pivot_rows[i], b);
    out.witness_minor = determinant(minor);
  } else {
    out.witness_minor = 0;
  }
  return out;
}

ConditionThreeResult check_condition_iii(const std::vector<ProjectivePoint>& points,
                                         const LieSplit& split) {
  ConditionThreeResult out;
  size_t k = split.h_doubleprime_basis.size();
  if (k == 0) {
    out.holds = true;
    return out;
  }
  size_t n = split.h_doubleprime_basis[0].size();
  // Unknown real coefficients c_b; equations: (X z) parallel to z at each point.
  std::vector<Vec<Rational>> rows;
  for (const auto& p : points) {
    const auto& z = p.coords();
    size_t lead = 0;
    while (z[lead].is_zero()) ++lead;  // normalized: z[lead] == 1
    std::vector<std::vector<G>> xz(k, std::vector<G>(n, G(0)));
    for (size_t b = 0; b < k; ++b)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) xz[b][i] += split.h_doubleprime_basis[b](i, j) * z[j];
    for (size_t i = 0; i < n; ++i) {
      if (i == lead) continue;
      Vec<Rational> re(k), im(k);
      for (size_t b = 0; b < k; ++b) {
        G w = xz[b][i] - xz[b][lead] * z[i];
        re[b] = w.re;
        im[b] = w.im;
      }
      rows.push_back(std::move(re));
      rows.push_back(std::move(im));
    }
  }
  Mat<Rational> m(rows.size(), k);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t b = 0; b < k; ++b) m(r, b) = rows[r][b];
  auto ker = kernel_basis(m);
  if (ker.empty()) {
    out.holds = true;
    return out;
  }
  out.holds = false;
  // Exhibit the first kernel element as a matrix.
  HermitianGenerator sum{Mat<G>(n, n)};
  for (size_t b = 0; b < k; ++b) sum = sum + ker[0][b] * split.h_doubleprime_basis[b];
  out.kernel_element = sum;
  return out;
}

CscPrediction csc_predictor(const std::vector<ProjectivePoint>& points,
                            const Vec<Rational>& weights, const LieSplit& split) {
  if (points.size() != weights.size())
    throw std::invalid_argument("csc_predictor: weights/points mismatch");
  CscPrediction out;
  out.moment_sum.assign(split.h_basis.size(), Rational(0));
  for (size_t b = 0; b < split.h_basis.size(); ++b)
    for (size_t j = 0; j < points.size(); ++j)
      out.moment_sum[b] += weights[j] * fs_potential(split.h_basis[b], points[j]);
  out.nonconstant = std::any_of(out.moment_sum.begin(), out.moment_sum.end(),
                                [](const Rational& x) { return x != 0; });
  return out;
}

DivisorZeros lift_zero_on_divisor(const GaussianRational& a, const GaussianRational& b,
                                  const GaussianRational& c, const GaussianRational& d) {
  if (a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero())
    throw std::invalid_argument("zero_jet");
  DivisorZeros out;
  if (c.is_zero()) {
    GaussianRational slope = a - d;
    if (slope.is_zero()) {
      if (b.is_zero()) {
        out.kind = DivisorZeros::Kind::whole_divisor;
        return out;
      }
      out.kind = DivisorZeros::Kind::point_at_infinity;
      return out;
    }
    out.kind = DivisorZeros::Kind::roots_exact;
    out.roots = {G(0) - b / slope};
    return out;
  }
  // c L^2 - (a-d) L - b = 0.
  GaussianRational disc = (a - d) * (a - d) + GaussianRational(Rational(4)) * b * c;
  GaussianRational den = GaussianRational(Rational(2)) * c;
  auto root = sqrt_exact(disc);
  if (root) {
    out.kind = DivisorZeros::Kind::roots_exact;
    out.roots = {((a - d) + *root) / den, ((a - d) - *root) / den};
    if (out.roots[0] == out.roots[1]) out.roots.pop_back();
    return out;
  }
  out.kind = DivisorZeros::Kind::roots_surd;
  out.surd_base = a - d;
  out.surd_den = den;
  out.discriminant = disc;
  return out;
}

TorusDimResult torus_dim_at_fixed_point(const GroupSpec& g, const ProjectivePoint& p, size_t m) {
  const auto& z = p.coords();
  std::vector<size_t> support;
  for (size_t j = 0; j < z.size(); ++j)
    if (!z[j].is_zero()) support.push_back(j);
  for (const auto& w : g.circle_weights)
    for (size_t s : support)
      if (w[s] != w[support[0]])
        throw std::invalid_argument("torus_dim_at_fixed_point: point not fixed by K0");

  // Induced weights on T_p: w_k - w_{support} for k outside the support; the
  // s-1 directions inside the support carry weight zero.
  std::vector<size_t> outside;
  for (size_t j = 0; j < z.size(); ++j)
    if (std::find(support.begin(), support.end(), j) == support.end()) outside.push_back(j);
  TorusDimResult out;
  if (!g.circle_weights.empty() && !outside.empty()) {
    Mat<Rational> ind(g.circle_weights.size(), outside.size());
    for (size_t i = 0; i < g.circle_weights.size(); ++i)
      for (size_t j = 0; j < outside.size(); ++j)
        ind(i, j) = Rational(g.circle_weights[i][outside[j]] - g.circle_weights[i][support[0]]);
    out.dim = rank(ind);
  }
  out.forces_h_pp_zero = (out.dim == m);
  return out;
}

}  // namespace kbl::actions
