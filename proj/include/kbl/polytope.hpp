#pragma once

#include <string>
#include <vector>

#include "kbl/linalg.hpp"
#include "kbl/numbers.hpp"

namespace kbl::polytopes {

using Point = Vec<Rational>;

/// Facet inequality <normal, x> <= offset with primitive integer normal.
struct Facet {
  std::vector<Integer> normal;
  Rational offset;
};

enum class Validity {
  delzant,          // simple + unimodular corners
  rational_simple,  // simple rational polytope (chopped corners need this)
};

struct ChopSpec {
  size_t vertex_index;
  Rational weight;  // > 0
};

class PolytopeError : public std::runtime_error {
 public:
  PolytopeError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Exact-rational convex polytope with cross-validated vertex and facet
/// representations.  Vertices are stored in lexicographic order.
class DelzantPolytope {
 public:
  static DelzantPolytope from_vertices(size_t dim, std::vector<Point> vertices,
                                       Validity mode = Validity::delzant);

  size_t dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  Validity validity() const { return mode_; }

  /// Facet indices incident to vertex v (equality rows).
  const std::vector<size_t>& vertex_facets(size_t v) const { return vertex_facets_[v]; }
  /// Neighbor vertices of v along edges.
  std::vector<size_t> neighbors(size_t v) const;

 private:
  size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<size_t>> vertex_facets_;
  Validity mode_ = Validity::delzant;
};

Rational polytope_volume(const DelzantPolytope& p);
Point polytope_barycenter(const DelzantPolytope& p);

/// Truncate the chosen vertex: one new vertex at distance `weight` along each
/// primitive edge direction pointing into the polytope.  The result is
/// re-validated as a simple rational polytope.
DelzantPolytope corner_chop(const DelzantPolytope& p, const ChopSpec& c);

/// Donaldson's boundary-minus-interior functional on affine coordinates:
///   F_i = int_{dP} x_i dsigma - (sigma(dP)/Vol P) int_P x_i dx,
/// with dsigma normalized so the primitive facet normal has unit pairing.
/// F = 0 iff the torus Futaki characters vanish; translation invariant.
Vec<Rational> futaki_linear_functional(const DelzantPolytope& p);

/// Boundary measure sigma(dP) in the same normalization.
Rational boundary_measure(const DelzantPolytope& p);

/// conv{0, e_1, ..., e_m}: the moment polytope of (P^m, H).  Delzant.
DelzantPolytope standard_simplex(size_t m);

/// conv{e_1, ..., e_m, (-1,...,-1)}: the reference simplex for P^m used by
/// the vertex blow-up grids.  Simple but not unimodular; rational_simple.
DelzantPolytope reference_simplex(size_t m);

/// Chop the reference simplex of P^m at the given vertices (1-based index in
/// {1..m+1}) with the given weights, and test the Futaki functional.
bool blown_up_projective_futaki(size_t m, const std::vector<size_t>& chopped_vertices,
                                const std::vector<Rational>& weights);

std::string polytope_to_json(const DelzantPolytope& p);
DelzantPolytope polytope_from_json(const std::string& json_text,
                                   Validity mode = Validity::delzant);

}  // namespace kbl::polytopes
