#include "kbl/linalg.hpp"

namespace kbl {

Inertia inertia(Mat<Rational> s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("inertia: not square");
  size_t n = s.rows();
  Inertia result;
  std::vector<bool> done(n, false);
  for (size_t step = 0; step < n; ++step) {
    // Find a nonzero diagonal pivot among the remaining indices.
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && s(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // All remaining diagonal entries vanish; look for an off-diagonal entry
      // and fold it onto the diagonal (rows i += j, cols i += j gives 2*s_ij).
      size_t oi = n, oj = n;
      for (size_t i = 0; i < n && oi == n; ++i) {
        if (done[i]) continue;
        for (size_t j = i + 1; j < n; ++j) {
          if (done[j]) continue;
          if (s(i, j) != 0) {
            oi = i;
            oj = j;
            break;
          }
        }
      }
      if (oi == n) {
        for (size_t i = 0; i < n; ++i)
          if (!done[i]) ++result.zero;
        return result;
      }
      for (size_t c = 0; c < n; ++c) s(oi, c) += s(oj, c);
      for (size_t r = 0; r < n; ++r) s(r, oi) += s(r, oj);
      piv = oi;
    }
    Rational d = s(piv, piv);
    if (d > 0)
      ++result.positive;
    else
      ++result.negative;
    // Clear the pivot row/column congruently.
    for (size_t r = 0; r < n; ++r) {
      if (r == piv || done[r] || s(r, piv) == 0) continue;
      Rational f = s(r, piv) / d;
      for (size_t c = 0; c < n; ++c) s(r, c) -= f * s(piv, c);
      for (size_t c = 0; c < n; ++c) s(c, r) -= f * s(c, piv);
    }
    done[piv] = true;
  }
  return result;
}

std::vector<Integer> primitive_integer_vector(const Vec<Rational>& v) {
  Integer lcm_den(1);
  for (const auto& x : v) lcm_den = lcm_den / gcd_int(lcm_den, denominator(x)) * denominator(x);
  std::vector<Integer> w(v.size());
  Integer g(0);
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
    g = gcd_int(g, w[i]);
  }
  if (g == 0) return w;
  for (auto& x : w) x /= g;
  return w;
}

}  // namespace kbl
