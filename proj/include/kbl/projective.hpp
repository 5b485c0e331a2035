#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kbl/exact_lp.hpp"
#include "kbl/linalg.hpp"
#include "kbl/numbers.hpp"

namespace kbl::actions {

/// Hamiltonian Killing field of z -> e^{iAt} z on P^m, as the (m+1)x(m+1)
/// Hermitian matrix A over the Gaussian rationals.
class HermitianGenerator {
 public:
  HermitianGenerator() = default;
  explicit HermitianGenerator(Mat<GaussianRational> entries);

  size_t size() const { return a_.rows(); }  // m + 1
  const Mat<GaussianRational>& entries() const { return a_; }
  const GaussianRational& operator()(size_t i, size_t j) const { return a_(i, j); }

  Rational trace() const;
  friend HermitianGenerator operator+(const HermitianGenerator& x, const HermitianGenerator& y);
  friend HermitianGenerator operator*(const Rational& c, const HermitianGenerator& x);
  friend bool operator==(const HermitianGenerator& x, const HermitianGenerator& y) {
    return x.a_ == y.a_;
  }

 private:
  Mat<GaussianRational> a_;
};

HermitianGenerator diagonal_generator(const std::vector<Rational>& d);
/// E_jk + E_kj (real symmetric pair), 0-based indices.
HermitianGenerator symmetric_pair(size_t n, size_t j, size_t k);
/// i(E_jk - E_kj), 0-based indices.
HermitianGenerator antisymmetric_pair(size_t n, size_t j, size_t k);

/// Point of P^m, stored with the first nonzero coordinate normalized to 1.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<GaussianRational> homogeneous);
  size_t dim() const { return z_.size() - 1; }  // m
  const std::vector<GaussianRational>& coords() const { return z_; }
  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.z_ == b.z_;
  }

 private:
  std::vector<GaussianRational> z_;
};

ProjectivePoint coordinate_point(size_t m, size_t j);

/// K = (circle factors given by integer weight vectors) x (a permutation
/// group on homogeneous coordinates).  Weight vectors are stored primitive
/// with zero sum (they are defined modulo a common shift).
struct GroupSpec {
  size_t m = 0;
  std::vector<std::vector<Integer>> circle_weights;  // each of length m+1
  std::vector<std::vector<size_t>> permutations;     // images, 0-based

  static GroupSpec make(size_t m, const std::vector<std::vector<long>>& weights,
                        const std::vector<std::vector<size_t>>& perms);

  /// Full torus of P^m.
  static GroupSpec full_torus(size_t m);
  static GroupSpec trivial(size_t m);
};

/// Basis data for h = h' + h'' with the exact L^2 Gram matrix.
struct LieSplit {
  size_t m = 0;
  GroupSpec group;
  std::vector<HermitianGenerator> h_basis;
  Mat<Rational> gram;  // l2_pairing on h_basis; positive definite
  std::vector<HermitianGenerator> h_prime_basis;
  std::vector<HermitianGenerator> h_doubleprime_basis;
  // Coordinates of the sub-bases with respect to h_basis.
  std::vector<Vec<Rational>> h_prime_coords;
  std::vector<Vec<Rational>> h_doubleprime_coords;
};

struct MomentVector {
  Vec<Rational> values;     // pairings against the h basis
  bool fixed_point = true;  // p is a common eigenvector of all weight matrices
};

/// Mean-zero Fubini-Study potential of A at p:
///   (p* A p)/(p* p) - tr(A)/(m+1).
/// The subtraction is the exact mean of the raw quadratic potential over
/// (P^m, omega_FS); the Monte-Carlo oracle gate verifies it before use.
Rational fs_potential(const HermitianGenerator& a, const ProjectivePoint& p);

/// Normalized L^2 pairing of the mean-zero potentials of A and B over P^m:
///   [tr A tr B + tr(AB)] / ((m+1)(m+2)) - tr A tr B / (m+1)^2.
/// Symmetric, PSD, kernel = multiples of the identity.
Rational l2_pairing(const HermitianGenerator& a, const HermitianGenerator& b);

/// Matrix model of h: commutant of the circle weights inside traceless
/// Hermitian matrices, intersected with the fixed space of the permutation
/// part acting by conjugation.  Deterministic integer-primitive basis.
std::vector<HermitianGenerator> invariant_algebra(const GroupSpec& g, size_t m);

/// h' = span of the circle-weight matrices meeting h; h'' = its Gram
/// orthocomplement in h.  Cross blocks of the Gram are exactly zero.
LieSplit split_algebra(const std::vector<HermitianGenerator>& h_basis, const GroupSpec& g);

MomentVector moment_at(const ProjectivePoint& p, const LieSplit& split);

/// Theorem conditions.  K-orbit equality constraints (same weight on points
/// in one orbit of the permutation part) are imposed inside condition (i).
struct ConditionOneResult {
  bool feasible = false;              // strictly positive weights exist
  bool degenerate = false;            // only boundary solutions (some a_j = 0)
  Vec<Rational> weights;              // strictly positive witness when feasible
  Rational min_coordinate;            // optimal min_j a_j on the simplex slice
  std::vector<Vec<Rational>> kernel;  // basis of the solution space of the linear system
  Vec<Rational> certificate;          // separating functional on failure, in
                                      // h''-basis coordinates (plus orbit rows)
  std::vector<std::pair<size_t, size_t>> orbit_pairs;  // imposed equalities
};

ConditionOneResult check_condition_i(const std::vector<ProjectivePoint>& points,
                                     const LieSplit& split, const GroupSpec& g);

struct ConditionTwoResult {
  bool spans = false;
  size_t required_rank = 0;
  size_t rank = 0;
  std::vector<size_t> witness_rows;  // point indices of a nonzero maximal minor
  Rational witness_minor;            // its determinant (nonzero iff spans)
};

ConditionTwoResult check_condition_ii(const std::vector<ProjectivePoint>& points,
                                      const LieSplit& split);

struct ConditionThreeResult {
  bool holds = false;
  std::optional<HermitianGenerator> kernel_element;  // vanishes at every point
};

ConditionThreeResult check_condition_iii(const std::vector<ProjectivePoint>& points,
                                         const LieSplit& split);

struct CscPrediction {
  bool nonconstant = false;  // moment sum nonzero forces nonconstant curvature
  Vec<Rational> moment_sum;  // against the full h basis
};

CscPrediction csc_predictor(const std::vector<ProjectivePoint>& points,
                            const Vec<Rational>& weights, const LieSplit& split);

/// Zero of the lift of the 2-jet X^1 = a z^1 + b z^2, X^2 = c z^1 + d z^2 on
/// the exceptional divisor: roots of -c L^2 + (a-d) L + b.
struct DivisorZeros {
  enum class Kind {
    roots_exact,    // roots in Q(i)
    roots_surd,     // quadratic with non-square discriminant
    point_at_infinity,
    whole_divisor,  // the polynomial vanishes identically
  };
  Kind kind;
  std::vector<GaussianRational> roots;  // exact roots (1 or 2 entries)
  // For roots_surd: L = (base +/- sqrt(disc)) / den.
  GaussianRational surd_base, surd_den, discriminant;
};

DivisorZeros lift_zero_on_divisor(const GaussianRational& a, const GaussianRational& b,
                                  const GaussianRational& c, const GaussianRational& d);

struct TorusDimResult {
  size_t dim = 0;            // rank of the induced weight lattice on T_p P^m
  bool forces_h_pp_zero = false;  // dim == m
};

TorusDimResult torus_dim_at_fixed_point(const GroupSpec& g, const ProjectivePoint& p, size_t m);

/// Orbit partition of the points under the permutation part.
std::vector<std::pair<size_t, size_t>> orbit_equalities(const std::vector<ProjectivePoint>& points,
                                                        const GroupSpec& g);

}  // namespace kbl::actions
