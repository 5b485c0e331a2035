#include "kbl/exact_lp.hpp"

#include <limits>

namespace kbl {

namespace {

// Dense tableau simplex on  min c.x, A x = b, x >= 0  starting from a given
// basic feasible basis.  Bland's rule.  Returns false if unbounded.
struct Tableau {
  size_t m, n;                 // constraints, variables
  Mat<Rational> t;             // m x (n+1); last column is the rhs
  std::vector<size_t> basis;   // basis[i] = variable basic in row i

  Rational reduced_cost(const Vec<Rational>& c, size_t j) const {
    Rational r = c[j];
    for (size_t i = 0; i < m; ++i)
      if (t(i, j) != 0) r -= c[basis[i]] * t(i, j);
    return r;
  }

  void pivot(size_t row, size_t col) {
    Rational inv = Rational(1) / t(row, col);
    for (size_t j = 0; j <= n; ++j) t(row, j) *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || t(i, col) == 0) continue;
      Rational f = t(i, col);
      for (size_t j = 0; j <= n; ++j) t(i, j) -= f * t(row, j);
    }
    basis[row] = col;
  }

  // Only columns < enterable may enter the basis.
  bool optimize(const Vec<Rational>& c, size_t enterable) {
    for (;;) {
      size_t enter = n;
      for (size_t j = 0; j < enterable; ++j) {
        if (reduced_cost(c, j) < 0) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter == n) return true;
      size_t leave = m;
      Rational best;
      for (size_t i = 0; i < m; ++i) {
        if (t(i, enter) <= 0) continue;
        Rational ratio = t(i, n) / t(i, enter);
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const Mat<Rational>& a, const Vec<Rational>& b, const Vec<Rational>& c) {
  size_t m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("solve_lp: shape mismatch");

  // Phase 1: artificial variables, rows flipped so rhs >= 0.
  Tableau tab;
  tab.m = m;
  tab.n = n + m;
  tab.t = Mat<Rational>(m, tab.n + 1);
  std::vector<int> row_sign(m, 1);
  for (size_t i = 0; i < m; ++i) {
    int s = (b[i] < 0) ? -1 : 1;
    row_sign[i] = s;
    for (size_t j = 0; j < n; ++j) tab.t(i, j) = Rational(s) * a(i, j);
    tab.t(i, n + i) = 1;
    tab.t(i, tab.n) = Rational(s) * b[i];
  }
  tab.basis.resize(m);
  for (size_t i = 0; i < m; ++i) tab.basis[i] = n + i;

  Vec<Rational> phase1_cost(tab.n, Rational(0));
  for (size_t i = 0; i < m; ++i) phase1_cost[n + i] = 1;
  tab.optimize(phase1_cost, tab.n);  // bounded below by 0

  Rational art_sum(0);
  for (size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= n) art_sum += tab.t(i, tab.n);

  LpResult res;
  auto extract_dual = [&](const Vec<Rational>& cost) {
    // y solves (A_B)^T y = c_B over the *working* rows; undo the row flips.
    Mat<Rational> bt(m, m);
    Vec<Rational> cb(m);
    for (size_t i = 0; i < m; ++i) {
      size_t var = tab.basis[i];
      for (size_t r = 0; r < m; ++r) {
        if (var < n)
          bt(r, i) = Rational(row_sign[r]) * a(r, var);
        else
          bt(r, i) = (r == var - n) ? Rational(1) : Rational(0);
      }
      cb[i] = cost[var];
    }
    auto y = solve(bt.transpose(), cb);
    Vec<Rational> dual(m, Rational(0));
    if (y) {
      for (size_t r = 0; r < m; ++r) dual[r] = Rational(row_sign[r]) * (*y)[r];
    }
    return dual;
  };

  if (art_sum > 0) {
    res.status = LpResult::Status::infeasible;
    // Farkas: y.b = art_sum > 0 and A^T y <= 0 (phase-1 reduced costs >= 0).
    res.dual = extract_dual(phase1_cost);
    res.objective = art_sum;
    return res;
  }

  // Drive any residual artificial variables out of the basis (degeneracy).
  for (size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    size_t col = tab.n;
    for (size_t j = 0; j < n; ++j)
      if (tab.t(i, j) != 0) {
        col = j;
        break;
      }
    if (col < tab.n) tab.pivot(i, col);
    // Otherwise the row is identically zero over structural variables
    // (redundant constraint); the artificial stays basic at zero, harmless.
  }

  // Phase 2: artificial columns may not re-enter.  Any artificial still basic
  // sits at zero in a redundant row; zero cost keeps the duals clean.
  Vec<Rational> cost(tab.n, Rational(0));
  for (size_t j = 0; j < n; ++j) cost[j] = c[j];

  if (!tab.optimize(cost, n)) {
    res.status = LpResult::Status::unbounded;
    return res;
  }

  res.status = LpResult::Status::optimal;
  res.x.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t(i, tab.n);
  res.objective = 0;
  for (size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  res.dual = extract_dual(cost);
  return res;
}

PositiveConeResult positive_kernel_witness(const Mat<Rational>& m) {
  size_t k = m.rows(), n = m.cols();
  if (n == 0) throw std::invalid_argument("positive_kernel_witness: no variables");

  PositiveConeResult out;
  out.kernel = kernel_basis(m);

  // Variables (x_1..x_n, t+, t-, s_1..s_n):
  //   M x = 0,  sum x = 1,  x_j - t + t' - s_j = 0,  maximize t - t'.
  size_t rows = k + 1 + n, cols = 2 * n + 2;
  Mat<Rational> a(rows, cols);
  Vec<Rational> b(rows, Rational(0)), c(cols, Rational(0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
  for (size_t j = 0; j < n; ++j) a(k, j) = 1;
  b[k] = 1;
  for (size_t j = 0; j < n; ++j) {
    a(k + 1 + j, j) = 1;
    a(k + 1 + j, n) = -1;      // t+
    a(k + 1 + j, n + 1) = 1;   // t-
    a(k + 1 + j, n + 2 + j) = -1;  // slack
  }
  c[n] = -1;  // minimize -t
  c[n + 1] = 1;

  LpResult lp = solve_lp(a, b, c);

  if (lp.status == LpResult::Status::infeasible) {
    out.status = PositiveConeResult::Status::infeasible;
    // Farkas dual y over rows (k M-rows, the simplex row, n slack rows):
    // A^T y <= 0 on the x_j columns gives (M^T y)_j + y_simplex + y_slack_j <= 0,
    // on s_j columns gives -y_slack_j <= 0, and y.b = y_simplex > 0.  Hence
    // w = -y_{1..k} satisfies (M^T w)_j >= y_simplex > 0.
    out.certificate.assign(k, Rational(0));
    for (size_t i = 0; i < k; ++i) out.certificate[i] = -lp.dual[i];
    out.min_coordinate = 0;
    return out;
  }
  if (lp.status != LpResult::Status::optimal)
    throw std::logic_error("positive_kernel_witness: LP must be bounded");

  Rational t_star = -lp.objective;
  out.min_coordinate = t_star;
  out.witness.assign(n, Rational(0));
  for (size_t j = 0; j < n; ++j) out.witness[j] = lp.x[j];

  if (t_star > 0) {
    out.status = PositiveConeResult::Status::feasible;
    return out;
  }

  out.status = PositiveConeResult::Status::degenerate_feasible;
  // Stiemke certificate from the duals: with sigma = duals of the slack rows,
  // (M^T(-y))_j >= sigma_j >= 0 and sum sigma = 1, so M^T(-y) >= 0 and != 0.
  out.certificate.assign(k, Rational(0));
  for (size_t i = 0; i < k; ++i) out.certificate[i] = -lp.dual[i];
  return out;
}

}  // namespace kbl
