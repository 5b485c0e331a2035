#include "kbl/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace kbl::polytopes {

namespace {

Rational dot(const std::vector<Integer>& u, const Point& x) {
  Rational s(0);
  for (size_t i = 0; i < u.size(); ++i) s += Rational(u[i]) * x[i];
  return s;
}

size_t affine_rank(const std::vector<Point>& pts, size_t dim) {
  if (pts.empty()) return 0;
  Mat<Rational> d(pts.size() - 1, dim);
  for (size_t i = 1; i < pts.size(); ++i)
    for (size_t j = 0; j < dim; ++j) d(i - 1, j) = pts[i][j] - pts[0][j];
  return rank(d) + 1;  // affine rank = linear rank of differences + 1 point
}

/// Primitive integer normal of the hyperplane through m affinely independent
/// points, or empty if they are dependent.
std::vector<Integer> hyperplane_normal(const std::vector<Point>& pts, size_t dim) {
  Mat<Rational> d(pts.size() - 1, dim);
  for (size_t i = 1; i < pts.size(); ++i)
    for (size_t j = 0; j < dim; ++j) d(i - 1, j) = pts[i][j] - pts[0][j];
  auto ker = kernel_basis(d);
  if (ker.size() != 1) return {};
  return primitive_integer_vector(ker[0]);
}

struct FacetKey {
  std::vector<std::string> normal;
  std::string offset;
  bool operator<(const FacetKey& o) const {
    return std::tie(normal, offset) < std::tie(o.normal, o.offset);
  }
};

FacetKey facet_key(const Facet& f) {
  FacetKey k;
  for (const auto& n : f.normal) k.normal.push_back(n.str());
  k.offset = rational_str(f.offset);
  return k;
}

using Face = std::vector<size_t>;  // sorted vertex ids

/// The (d-1)-dimensional subfaces of a d-face, as intersections with the
/// polytope's facets.
std::vector<Face> subfaces(const DelzantPolytope& p, const Face& face, size_t d) {
  std::set<Face> out;
  for (const auto& f : p.facets()) {
    Face s;
    for (size_t v : face)
      if (dot(f.normal, p.vertices()[v]) == f.offset) s.push_back(v);
    if (s.empty() || s.size() == face.size()) continue;
    std::vector<Point> pts;
    for (size_t v : s) pts.push_back(p.vertices()[v]);
    if (affine_rank(pts, p.dim()) == d) out.insert(s);  // affine dim d-1
  }
  return {out.begin(), out.end()};
}

void triangulate_face(const DelzantPolytope& p, const Face& face, size_t d,
                      std::vector<Face>& out) {
  if (face.size() == d + 1) {
    out.push_back(face);
    return;
  }
  size_t apex = face.front();  // smallest id = lexicographically least vertex
  for (const auto& s : subfaces(p, face, d)) {
    if (std::find(s.begin(), s.end(), apex) != s.end()) continue;
    std::vector<Face> sub;
    triangulate_face(p, s, d - 1, sub);
    for (auto& simplex : sub) {
      Face t;
      t.push_back(apex);
      t.insert(t.end(), simplex.begin(), simplex.end());
      out.push_back(std::move(t));
    }
  }
}

Point vertex_centroid(const DelzantPolytope& p) {
  Point c(p.dim(), Rational(0));
  for (const auto& v : p.vertices())
    for (size_t j = 0; j < p.dim(); ++j) c[j] += v[j];
  for (auto& x : c) x /= Rational(static_cast<long>(p.vertices().size()));
  return c;
}

struct SolidPiece {
  Rational volume;
  Point centroid;
};

/// Fan triangulation from the vertex centroid over triangulated facets.
std::vector<SolidPiece> solid_triangulation(const DelzantPolytope& p) {
  size_t m = p.dim();
  Point c = vertex_centroid(p);
  std::vector<SolidPiece> pieces;
  Rational mfact(factorial(static_cast<unsigned>(m)));
  for (size_t fi = 0; fi < p.facets().size(); ++fi) {
    Face fv;
    for (size_t v = 0; v < p.vertices().size(); ++v)
      if (dot(p.facets()[fi].normal, p.vertices()[v]) == p.facets()[fi].offset)
        fv.push_back(v);
    std::vector<Face> tris;
    triangulate_face(p, fv, m - 1, tris);
    for (const auto& tri : tris) {
      Mat<Rational> d(m, m);
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) d(i, j) = p.vertices()[tri[i]][j] - c[j];
      Rational vol = abs(determinant(d)) / mfact;
      if (vol == 0) continue;
      Point ctr = c;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) ctr[j] += p.vertices()[tri[i]][j];
      for (auto& x : ctr) x /= Rational(static_cast<long>(m + 1));
      pieces.push_back({vol, ctr});
    }
  }
  return pieces;
}

}  // namespace

DelzantPolytope DelzantPolytope::from_vertices(size_t dim, std::vector<Point> vertices,
                                               Validity mode) {
  if (dim == 0) throw PolytopeError("degenerate", "dimension must be positive");
  for (const auto& v : vertices)
    if (v.size() != dim) throw PolytopeError("degenerate", "vertex dimension mismatch");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() < dim + 1)
    throw PolytopeError("degenerate", "fewer than dim+1 distinct vertices");
  if (affine_rank(vertices, dim) != dim + 1)
    throw PolytopeError("degenerate", "vertices do not span the ambient dimension");

  DelzantPolytope p;
  p.dim_ = dim;
  p.vertices_ = std::move(vertices);
  p.mode_ = mode;

  // Supporting-hyperplane enumeration over all dim-subsets of vertices.
  size_t n = p.vertices_.size();
  std::map<FacetKey, Facet> found;
  std::vector<size_t> idx(dim);
  std::vector<bool> select(n, false);
  std::fill(select.begin(), select.begin() + dim, true);
  do {
    size_t k = 0;
    for (size_t i = 0; i < n; ++i)
      if (select[i]) idx[k++] = i;
    std::vector<Point> pts;
    for (size_t i : idx) pts.push_back(p.vertices_[i]);
    auto normal = hyperplane_normal(pts, dim);
    if (normal.empty()) continue;
    Rational offset = dot(normal, pts[0]);
    bool below = false, above = false;
    for (const auto& v : p.vertices_) {
      Rational d = dot(normal, v);
      if (d < offset) below = true;
      if (d > offset) above = true;
    }
    if (below && above) continue;
    if (above) {  // flip so the polytope satisfies <normal, x> <= offset
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    Facet f{std::move(normal), offset};
    found.emplace(facet_key(f), std::move(f));
  } while (std::prev_permutation(select.begin(), select.end()));

  for (auto& [key, f] : found) p.facets_.push_back(std::move(f));

  // Vertex/facet incidence and simplicity.
  p.vertex_facets_.resize(n);
  for (size_t v = 0; v < n; ++v) {
    for (size_t fi = 0; fi < p.facets_.size(); ++fi) {
      Rational d = dot(p.facets_[fi].normal, p.vertices_[v]);
      if (d > p.facets_[fi].offset)
        throw PolytopeError("degenerate", "vertex violates a facet inequality");
      if (d == p.facets_[fi].offset) p.vertex_facets_[v].push_back(fi);
    }
    if (p.vertex_facets_[v].size() != dim)
      throw PolytopeError("not_simple", "vertex not on exactly dim facets (simple polytope)");
  }

  // Cross-validation H -> V: every feasible intersection of dim facets with
  // independent normals must be one of the input vertices.
  if (p.facets_.size() >= dim) {
    std::vector<bool> fsel(p.facets_.size(), false);
    std::fill(fsel.begin(), fsel.begin() + dim, true);
    std::set<Point> vset(p.vertices_.begin(), p.vertices_.end());
    do {
      Mat<Rational> a(dim, dim);
      Vec<Rational> b(dim);
      size_t r = 0;
      for (size_t fi = 0; fi < p.facets_.size(); ++fi) {
        if (!fsel[fi]) continue;
        for (size_t j = 0; j < dim; ++j) a(r, j) = Rational(p.facets_[fi].normal[j]);
        b[r] = p.facets_[fi].offset;
        ++r;
      }
      if (rank(a) != dim) continue;
      auto x = solve(a, b);
      if (!x) continue;
      bool feasible = true;
      for (const auto& f : p.facets_)
        if (dot(f.normal, *x) > f.offset) {
          feasible = false;
          break;
        }
      if (feasible && !vset.count(*x))
        throw PolytopeError("representation_mismatch",
                            "facet representation has a vertex missing from the input");
    } while (std::prev_permutation(fsel.begin(), fsel.end()));
  }

  // Delzant condition: primitive edge directions form a unimodular basis.
  if (mode == Validity::delzant) {
    for (size_t v = 0; v < n; ++v) {
      auto nb = p.neighbors(v);
      if (nb.size() != dim)
        throw PolytopeError("not_simple", "vertex without dim incident edges");
      Mat<Rational> e(dim, dim);
      for (size_t i = 0; i < dim; ++i) {
        Vec<Rational> d(dim);
        for (size_t j = 0; j < dim; ++j) d[j] = p.vertices_[nb[i]][j] - p.vertices_[v][j];
        auto prim = primitive_integer_vector(d);
        for (size_t j = 0; j < dim; ++j) e(i, j) = Rational(prim[j]);
      }
      Rational det = determinant(e);
      if (det != 1 && det != -1)
        throw PolytopeError("not_delzant",
                            "corner is not unimodular (use rational_simple to relax)");
    }
  }
  return p;
}

std::vector<size_t> DelzantPolytope::neighbors(size_t v) const {
  std::vector<size_t> out;
  const auto& fv = vertex_facets_[v];
  for (size_t w = 0; w < vertices_.size(); ++w) {
    if (w == v) continue;
    size_t common = 0;
    for (size_t f : vertex_facets_[w])
      if (std::find(fv.begin(), fv.end(), f) != fv.end()) ++common;
    if (common == dim_ - 1) out.push_back(w);
  }
  return out;
}

Rational polytope_volume(const DelzantPolytope& p) {
  Rational vol(0);
  for (const auto& piece : solid_triangulation(p)) vol += piece.volume;
  if (vol <= 0) throw PolytopeError("degenerate", "nonpositive volume");
  return vol;
}

Point polytope_barycenter(const DelzantPolytope& p) {
  Rational vol(0);
  Point b(p.dim(), Rational(0));
  for (const auto& piece : solid_triangulation(p)) {
    vol += piece.volume;
    for (size_t j = 0; j < p.dim(); ++j) b[j] += piece.volume * piece.centroid[j];
  }
  if (vol <= 0) throw PolytopeError("degenerate", "nonpositive volume");
  for (auto& x : b) x /= vol;
  return b;
}

DelzantPolytope corner_chop(const DelzantPolytope& p, const ChopSpec& c) {
  size_t m = p.dim();
  if (c.vertex_index >= p.vertices().size())
    throw PolytopeError("bad_vertex", "chop vertex index out of range");
  if (c.weight <= 0) throw PolytopeError("bad_weight", "chop weight must be positive");
  const Point& v = p.vertices()[c.vertex_index];

  auto nb = p.neighbors(c.vertex_index);
  if (nb.size() != m) throw PolytopeError("not_simple", "chop vertex is not simple");
  std::sort(nb.begin(), nb.end());

  std::vector<Point> new_vertices;
  for (size_t w : nb) {
    Vec<Rational> d(m);
    for (size_t j = 0; j < m; ++j) d[j] = p.vertices()[w][j] - v[j];
    auto prim = primitive_integer_vector(d);
    // Edge parameter length: w = v + L * prim.
    Rational len(0);
    for (size_t j = 0; j < m; ++j)
      if (prim[j] != 0) {
        len = d[j] / Rational(prim[j]);
        break;
      }
    if (c.weight >= len)
      throw PolytopeError("weight_exceeds_polytope", "chop weight reaches an incident vertex");
    Point q = v;
    for (size_t j = 0; j < m; ++j) q[j] += c.weight * Rational(prim[j]);
    new_vertices.push_back(std::move(q));
  }

  // Chop hyperplane through the new vertices; the removed corner is on the
  // strict far side.  Every other old vertex must stay strictly inside.
  auto normal = hyperplane_normal(new_vertices, m);
  if (normal.empty())
    throw PolytopeError("weight_exceeds_polytope", "chop points are affinely dependent");
  Rational offset = dot(normal, new_vertices[0]);
  Rational at_v = dot(normal, v);
  if (at_v == offset)
    throw PolytopeError("weight_exceeds_polytope", "chop hyperplane passes through the vertex");
  if (at_v < offset) {
    for (auto& x : normal) x = -x;
    offset = -offset;
    at_v = -at_v;
  }
  for (size_t w = 0; w < p.vertices().size(); ++w) {
    if (w == c.vertex_index) continue;
    if (dot(normal, p.vertices()[w]) >= offset)
      throw PolytopeError("weight_exceeds_polytope",
                          "chop hyperplane crosses a non-incident vertex");
  }

  std::vector<Point> verts;
  for (size_t w = 0; w < p.vertices().size(); ++w)
    if (w != c.vertex_index) verts.push_back(p.vertices()[w]);
  for (auto& q : new_vertices) verts.push_back(std::move(q));
  return DelzantPolytope::from_vertices(m, std::move(verts), Validity::rational_simple);
}

namespace {

struct BoundaryIntegrals {
  Rational measure;      // sigma(dP)
  Vec<Rational> moment;  // int_{dP} x_i dsigma
};

BoundaryIntegrals boundary_integrals(const DelzantPolytope& p) {
  size_t m = p.dim();
  BoundaryIntegrals out{Rational(0), Vec<Rational>(m, Rational(0))};
  Rational fact(factorial(static_cast<unsigned>(m - 1)));
  for (size_t fi = 0; fi < p.facets().size(); ++fi) {
    const auto& f = p.facets()[fi];
    Rational u2(0);
    for (const auto& x : f.normal) u2 += Rational(x * x);
    Face fv;
    for (size_t v = 0; v < p.vertices().size(); ++v)
      if (dot(f.normal, p.vertices()[v]) == f.offset) fv.push_back(v);
    std::vector<Face> tris;
    triangulate_face(p, fv, m - 1, tris);
    for (const auto& tri : tris) {
      // sigma(simplex) = |det(w_1-w_0, ..., w_{m-1}-w_0, u)| / (<u,u> (m-1)!)
      Mat<Rational> d(m, m);
      for (size_t i = 1; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          d(i - 1, j) = p.vertices()[tri[i]][j] - p.vertices()[tri[0]][j];
      for (size_t j = 0; j < m; ++j) d(m - 1, j) = Rational(f.normal[j]);
      Rational sigma = abs(determinant(d)) / (u2 * fact);
      if (sigma == 0) continue;
      out.measure += sigma;
      for (size_t j = 0; j < m; ++j) {
        Rational mean(0);
        for (size_t i = 0; i < m; ++i) mean += p.vertices()[tri[i]][j];
        mean /= Rational(static_cast<long>(m));
        out.moment[j] += sigma * mean;
      }
    }
  }
  return out;
}

}  // namespace

Rational boundary_measure(const DelzantPolytope& p) { return boundary_integrals(p).measure; }

Vec<Rational> futaki_linear_functional(const DelzantPolytope& p) {
  auto bd = boundary_integrals(p);
  // int_P x_j dx = barycenter_j * Vol, so the functional reduces to
  // moment_j - sigma(dP) * barycenter_j.
  Point bc = polytope_barycenter(p);
  Vec<Rational> futaki(p.dim());
  for (size_t j = 0; j < p.dim(); ++j) futaki[j] = bd.moment[j] - bd.measure * bc[j];
  return futaki;
}

DelzantPolytope standard_simplex(size_t m) {
  std::vector<Point> verts;
  verts.emplace_back(m, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    Point e(m, Rational(0));
    e[i] = 1;
    verts.push_back(std::move(e));
  }
  return DelzantPolytope::from_vertices(m, std::move(verts), Validity::delzant);
}

DelzantPolytope reference_simplex(size_t m) {
  std::vector<Point> verts;
  for (size_t i = 0; i < m; ++i) {
    Point e(m, Rational(0));
    e[i] = 1;
    verts.push_back(std::move(e));
  }
  verts.emplace_back(m, Rational(-1));
  return DelzantPolytope::from_vertices(m, std::move(verts), Validity::rational_simple);
}

bool blown_up_projective_futaki(size_t m, const std::vector<size_t>& chopped_vertices,
                                const std::vector<Rational>& weights) {
  if (chopped_vertices.size() != weights.size())
    throw PolytopeError("bad_weight", "weights must match chopped vertices");
  std::set<size_t> seen;
  for (size_t v : chopped_vertices) {
    if (v < 1 || v > m + 1) throw PolytopeError("bad_vertex", "vertex index must be in 1..m+1");
    if (!seen.insert(v).second) throw PolytopeError("bad_vertex", "duplicate chop vertex");
  }
  // Original vertex coordinates: e_1..e_m then (-1,...,-1).
  auto original = [m](size_t one_based) {
    Point p(m, Rational(0));
    if (one_based <= m)
      p[one_based - 1] = 1;
    else
      std::fill(p.begin(), p.end(), Rational(-1));
    return p;
  };
  DelzantPolytope poly = reference_simplex(m);
  for (size_t i = 0; i < chopped_vertices.size(); ++i) {
    Point target = original(chopped_vertices[i]);
    size_t idx = poly.vertices().size();
    for (size_t v = 0; v < poly.vertices().size(); ++v)
      if (poly.vertices()[v] == target) {
        idx = v;
        break;
      }
    if (idx == poly.vertices().size())
      throw PolytopeError("bad_vertex", "chop vertex no longer present");
    poly = corner_chop(poly, {idx, weights[i]});
  }
  auto futaki = futaki_linear_functional(poly);
  for (const auto& x : futaki)
    if (x != 0) return false;
  return true;
}

std::string polytope_to_json(const DelzantPolytope& p) {
  nlohmann::json j;
  j["dim"] = p.dim();
  auto& verts = j["vertices"];
  verts = nlohmann::json::array();
  for (const auto& v : p.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(rational_str(x));
    verts.push_back(row);
  }
  return j.dump();
}

DelzantPolytope polytope_from_json(const std::string& json_text, Validity mode) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  size_t dim = j.at("dim").get<size_t>();
  std::vector<Point> verts;
  for (const auto& row : j.at("vertices")) {
    Point v;
    for (const auto& x : row) v.push_back(parse_rational(x.get<std::string>()));
    verts.push_back(std::move(v));
  }
  return DelzantPolytope::from_vertices(dim, std::move(verts), mode);
}

}  // namespace kbl::polytopes
