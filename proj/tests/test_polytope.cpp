#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "kbl/polytope.hpp"

using namespace kbl;
using namespace kbl::polytopes;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

Point ptq(std::initializer_list<const char*> xs) {
  Point p;
  for (const char* x : xs) p.push_back(parse_rational(x));
  return p;
}

DelzantPolytope poly2(std::vector<Point> verts, Validity mode = Validity::rational_simple) {
  return DelzantPolytope::from_vertices(2, std::move(verts), mode);
}

// Independent 2D oracle on an explicitly ordered polygon: shoelace area,
// exact centroid, and Donaldson boundary integrals with the lattice-length
// measure on each edge.
struct Polygon2Oracle {
  std::vector<Point> ordered;

  Rational area() const {
    Rational two_a(0);
    size_t n = ordered.size();
    for (size_t i = 0; i < n; ++i) {
      const Point& a = ordered[i];
      const Point& b = ordered[(i + 1) % n];
      two_a += a[0] * b[1] - b[0] * a[1];
    }
    return abs(two_a) / 2;
  }

  Point centroid() const {
    Rational two_a(0);
    Point c(2, Rational(0));
    size_t n = ordered.size();
    for (size_t i = 0; i < n; ++i) {
      const Point& a = ordered[i];
      const Point& b = ordered[(i + 1) % n];
      Rational cross = a[0] * b[1] - b[0] * a[1];
      two_a += cross;
      c[0] += (a[0] + b[0]) * cross;
      c[1] += (a[1] + b[1]) * cross;
    }
    c[0] /= 3 * two_a;
    c[1] /= 3 * two_a;
    return c;
  }

  // Lattice length of an edge: (b - a) = L * primitive direction.
  static Rational lattice_length(const Point& a, const Point& b) {
    Vec<Rational> d = {b[0] - a[0], b[1] - a[1]};
    auto prim = primitive_integer_vector(d);
    for (size_t j = 0; j < 2; ++j)
      if (prim[j] != 0) return d[j] / Rational(prim[j]);
    throw std::logic_error("degenerate edge");
  }

  Vec<Rational> futaki() const {
    Rational sigma(0);
    Vec<Rational> bd = {Rational(0), Rational(0)};
    size_t n = ordered.size();
    for (size_t i = 0; i < n; ++i) {
      const Point& a = ordered[i];
      const Point& b = ordered[(i + 1) % n];
      Rational len = lattice_length(a, b);
      sigma += len;
      bd[0] += len * (a[0] + b[0]) / 2;
      bd[1] += len * (a[1] + b[1]) / 2;
    }
    Point c = centroid();
    return {bd[0] - sigma * c[0], bd[1] - sigma * c[1]};
  }
};

const std::vector<Point> kHexagon = {pt({1, 0}), pt({1, 1}),   pt({0, 1}),
                                     pt({-1, 0}), pt({-1, -1}), pt({0, -1})};

bool is_zero(const Vec<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("volumes of the reference polygons") {
  CHECK(polytope_volume(standard_simplex(2)) == Rational(1, 2));
  CHECK(polytope_volume(poly2(kHexagon)) == Rational(3));
  CHECK(polytope_volume(reference_simplex(2)) == Rational(3, 2));
  // Shoelace oracle agrees.
  Polygon2Oracle hex{kHexagon};
  CHECK(hex.area() == Rational(3));
  Polygon2Oracle ref{{pt({1, 0}), pt({0, 1}), pt({-1, -1})}};
  CHECK(ref.area() == Rational(3, 2));
}

TEST_CASE("barycenters") {
  auto b1 = polytope_barycenter(reference_simplex(2));
  CHECK(b1[0] == 0);
  CHECK(b1[1] == 0);
  auto b2 = polytope_barycenter(poly2(kHexagon));
  CHECK(b2[0] == 0);
  CHECK(b2[1] == 0);
  auto square = poly2({pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})}, Validity::delzant);
  auto b3 = polytope_barycenter(square);
  CHECK(b3[0] == Rational(1, 2));
  CHECK(b3[1] == Rational(1, 2));
  // Oracle cross-check on the hexagon.
  Polygon2Oracle hex{kHexagon};
  auto c = hex.centroid();
  CHECK(c[0] == 0);
  CHECK(c[1] == 0);
}

TEST_CASE("barycenter lies strictly inside") {
  for (const auto& p : {standard_simplex(2), reference_simplex(2), poly2(kHexagon),
                        standard_simplex(3), reference_simplex(3)}) {
    auto b = polytope_barycenter(p);
    for (const auto& f : p.facets()) {
      Rational d(0);
      for (size_t j = 0; j < p.dim(); ++j) d += Rational(f.normal[j]) * b[j];
      CHECK(d < f.offset);
    }
  }
}

TEST_CASE("vertex/facet representations round-trip") {
  for (const auto& p : {poly2(kHexagon), reference_simplex(3),
                        corner_chop(standard_simplex(2), {0, Rational(1, 4)})}) {
    // Recompute vertices from facets: feasible intersections of dim facets.
    std::set<Point> from_facets;
    size_t dim = p.dim();
    size_t nf = p.facets().size();
    std::vector<bool> sel(nf, false);
    std::fill(sel.begin(), sel.begin() + dim, true);
    do {
      Mat<Rational> a(dim, dim);
      Vec<Rational> b(dim);
      size_t r = 0;
      for (size_t i = 0; i < nf; ++i) {
        if (!sel[i]) continue;
        for (size_t j = 0; j < dim; ++j) a(r, j) = Rational(p.facets()[i].normal[j]);
        b[r] = p.facets()[i].offset;
        ++r;
      }
      if (rank(a) != dim) continue;
      auto x = solve(a, b);
      if (!x) continue;
      bool ok = true;
      for (const auto& f : p.facets()) {
        Rational d(0);
        for (size_t j = 0; j < dim; ++j) d += Rational(f.normal[j]) * (*x)[j];
        if (d > f.offset) {
          ok = false;
          break;
        }
      }
      if (ok) from_facets.insert(*x);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    std::set<Point> from_input(p.vertices().begin(), p.vertices().end());
    CHECK(from_facets == from_input);
  }
}

TEST_CASE("degenerate and invalid inputs") {
  CHECK_THROWS_WITH_AS(poly2({pt({0, 0}), pt({1, 0}), pt({2, 0})}),
                       doctest::Contains("span"), PolytopeError);
  // Reference simplex corners are not unimodular: delzant mode rejects.
  CHECK_THROWS_AS(DelzantPolytope::from_vertices(
                      2, {pt({1, 0}), pt({0, 1}), pt({-1, -1})}, Validity::delzant),
                  PolytopeError);
  // A non-vertex input point is rejected by the simplicity check.
  CHECK_THROWS_AS(poly2({pt({0, 0}), pt({1, 0}), pt({0, 1}), ptq({"1/4", "1/4"})}),
                  PolytopeError);
}

TEST_CASE("corner chop: axis corner of the unit simplex") {
  auto p = standard_simplex(2);
  auto chopped = corner_chop(p, {0, Rational(1, 4)});  // vertex (0,0)
  std::set<Point> expect = {ptq({"1/4", "0"}), ptq({"0", "1/4"}), pt({1, 0}), pt({0, 1})};
  std::set<Point> got(chopped.vertices().begin(), chopped.vertices().end());
  CHECK(got == expect);
}

TEST_CASE("corner chop: removed volume is the corner simplex") {
  // Delzant corner in m=2: removed volume = a^2/2.
  auto p2 = standard_simplex(2);
  auto c2 = corner_chop(p2, {2, Rational(1, 3)});
  CHECK(polytope_volume(p2) - polytope_volume(c2) == Rational(1, 18));
  // m=3.
  auto p3 = standard_simplex(3);
  auto c3 = corner_chop(p3, {0, Rational(1, 4)});
  CHECK(polytope_volume(p3) - polytope_volume(c3) == Rational(1, 384));
  // Non-unimodular corner of the reference simplex: |det| = 3.
  auto r2 = reference_simplex(2);
  size_t idx = 0;  // lexicographically first vertex is (-1,-1)
  CHECK(r2.vertices()[idx] == pt({-1, -1}));
  auto rc = corner_chop(r2, {idx, Rational(1, 5)});
  CHECK(polytope_volume(r2) - polytope_volume(rc) == Rational(3) / Rational(50));
}

TEST_CASE("corner chop: weight validation") {
  auto p = standard_simplex(2);
  CHECK_THROWS_WITH_AS(corner_chop(p, {0, Rational(1)}), doctest::Contains("incident"),
                       PolytopeError);
  CHECK_THROWS_AS(corner_chop(p, {0, Rational(3, 2)}), PolytopeError);
  CHECK_THROWS_AS(corner_chop(p, {0, Rational(0)}), PolytopeError);
  // Sequential chops shrink the admissible range on shared edges.
  auto once = corner_chop(p, {0, Rational(1, 2)});
  size_t i10 = 0;
  for (size_t v = 0; v < once.vertices().size(); ++v)
    if (once.vertices()[v] == pt({1, 0})) i10 = v;
  CHECK_THROWS_AS(corner_chop(once, {i10, Rational(1, 2)}), PolytopeError);
  CHECK_NOTHROW(corner_chop(once, {i10, Rational(1, 4)}));
}

TEST_CASE("chopping all corners of the reference simplex equally recenters it") {
  auto p = reference_simplex(2);
  for (int round = 0; round < 3; ++round) {
    // Chop the vertex that is still an original corner each time.
    std::vector<Point> originals = {pt({-1, -1}), pt({0, 1}), pt({1, 0})};
    size_t idx = p.vertices().size();
    for (size_t v = 0; v < p.vertices().size(); ++v)
      for (const auto& o : originals)
        if (p.vertices()[v] == o) idx = v;
    REQUIRE(idx < p.vertices().size());
    p = corner_chop(p, {idx, Rational(1, 4)});
  }
  auto b = polytope_barycenter(p);
  CHECK(b[0] == 0);
  CHECK(b[1] == 0);
  CHECK(is_zero(futaki_linear_functional(p)));
}

TEST_CASE("futaki functional: reference data") {
  CHECK(is_zero(futaki_linear_functional(reference_simplex(2))));
  CHECK(is_zero(futaki_linear_functional(poly2(kHexagon))));
  CHECK(is_zero(futaki_linear_functional(standard_simplex(2))));
  CHECK(is_zero(futaki_linear_functional(standard_simplex(3))));

  // One chopped corner breaks the balance; cross-check against the ordered
  // polygon oracle.
  auto p = reference_simplex(2);
  size_t idx = 0;
  for (size_t v = 0; v < p.vertices().size(); ++v)
    if (p.vertices()[v] == pt({1, 0})) idx = v;
  auto chopped = corner_chop(p, {idx, Rational(1, 4)});
  auto futaki = futaki_linear_functional(chopped);
  CHECK(!is_zero(futaki));

  Polygon2Oracle oracle{{ptq({"3/4", "1/4"}), pt({0, 1}), pt({-1, -1}), ptq({"1/2", "-1/4"})}};
  CHECK(oracle.area() == polytope_volume(chopped));
  auto expect = oracle.futaki();
  CHECK(futaki[0] == expect[0]);
  CHECK(futaki[1] == expect[1]);
}

TEST_CASE("futaki functional: hexagon oracle agreement") {
  Polygon2Oracle oracle{kHexagon};
  auto expect = oracle.futaki();
  auto got = futaki_linear_functional(poly2(kHexagon));
  CHECK(got == expect);
}

TEST_CASE("futaki vanishing is invariant under lattice-affine maps") {
  std::mt19937_64 rng(7701);
  std::uniform_int_distribution<long> small(-2, 2);
  // Unimodular A, translation t; apply to a balanced and an unbalanced polygon.
  for (int trial = 0; trial < 20; ++trial) {
    long a = small(rng), b = small(rng);
    // Build [[1,a],[0,1]]*[[1,0],[b,1]] — always unimodular.
    long m00 = 1 + a * b, m01 = a, m10 = b, m11 = 1;
    long t0 = small(rng), t1 = small(rng);
    auto apply = [&](const std::vector<Point>& verts) {
      std::vector<Point> out;
      for (const auto& v : verts)
        out.push_back({Rational(m00) * v[0] + Rational(m01) * v[1] + Rational(t0),
                       Rational(m10) * v[0] + Rational(m11) * v[1] + Rational(t1)});
      return out;
    };
    auto hex = poly2(apply(kHexagon));
    CHECK(is_zero(futaki_linear_functional(hex)));

    auto chopped = corner_chop(reference_simplex(2), {0, Rational(1, 4)});
    auto moved = poly2(apply(chopped.vertices()));
    CHECK(!is_zero(futaki_linear_functional(moved)));
  }
}

TEST_CASE("in one dimension the boundary functional vanishes identically") {
  // sigma(dP) = 2 endpoints and the interior term cancels exactly for any
  // segment, so the vanishing criterion carries no content for m = 1.
  CHECK(is_zero(futaki_linear_functional(reference_simplex(1))));
  CHECK(blown_up_projective_futaki(1, {1, 2}, {Rational(1, 4), Rational(1, 3)}));
}

TEST_CASE("blown-up projective futaki: equal full chops balance, others do not") {
  for (size_t m : {2u, 3u}) {
    std::vector<size_t> all;
    for (size_t v = 1; v <= m + 1; ++v) all.push_back(v);
    std::vector<Rational> equal(m + 1, Rational(1, 4));
    CHECK(blown_up_projective_futaki(m, all, equal));
    // Unequal weights on the full set.
    std::vector<Rational> unequal = equal;
    unequal.back() = Rational(1, 3);
    CHECK(!blown_up_projective_futaki(m, all, unequal));
    // A proper subset with equal weights.
    if (m >= 2) {
      std::vector<size_t> sub = {1, 2};
      std::vector<Rational> w = {Rational(1, 4), Rational(1, 4)};
      CHECK(!blown_up_projective_futaki(m, sub, w));
    }
  }
  // m=3 spec sample: weights (1/4,1/4,1/4,1/3) on all four vertices.
  CHECK(!blown_up_projective_futaki(
      3, {1, 2, 3, 4},
      {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 3)}));
}

TEST_CASE("polytope json round-trip") {
  auto p = corner_chop(standard_simplex(2), {0, Rational(1, 4)});
  auto text = polytope_to_json(p);
  auto q = polytope_from_json(text, Validity::rational_simple);
  CHECK(q.vertices() == p.vertices());
  CHECK(q.dim() == p.dim());
}

TEST_CASE("determinism: repeated evaluation is bit-identical") {
  auto p = poly2(kHexagon);
  CHECK(polytope_volume(p) == polytope_volume(p));
  CHECK(futaki_linear_functional(p) == futaki_linear_functional(p));
  CHECK(polytope_barycenter(p) == polytope_barycenter(p));
}
