#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bgeom/lp.hpp"

namespace bgeom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Default tolerance for norm comparisons and LP slack.
inline constexpr double kTol = 1e-9;
/// Interior retreat used to realize strict inequalities as closed ones.
inline constexpr double kRetreat = 1e-7;

/// A linear functional in the coordinate dual of a space.
struct Functional {
  Vec coords;

  Functional() = default;
  explicit Functional(Vec c) : coords(std::move(c)) {}
  static Functional coordinate(int dim, int index, double scale = 1.0);

  int dim() const { return static_cast<int>(coords.size()); }
  double operator()(const Vec& x) const { return coords.dot(x); }
};

/// A finite-dimensional normed space given by one of a few presentations:
///
///  - Facet:    ||x|| = max_j |phi_j(x)|
///  - Vertex:   unit ball = conv{+-v_i}, norm = gauge
///  - Lp:       the l_p norm, p in [1, inf]
///  - SumInf:   l_inf direct sum of parts
///  - Sum1:     l_1 direct sum of parts
///  - Quotient: parent / span(kernel), coordinatized along the orthogonal
///              complement of the kernel
///
/// Spaces are immutable values; copies share their data.
class Space {
 public:
  enum class Kind { Facet, Vertex, Lp, SumInf, Sum1, Quotient };

  static Space facet(std::vector<Vec> functionals);
  static Space vertex(std::vector<Vec> generators);
  static Space lp(int dim, double p);
  static Space linf(int dim) { return lp(dim, kInf); }
  static Space l1(int dim) { return lp(dim, 1.0); }
  static Space l2(int dim) { return lp(dim, 2.0); }
  static Space sum_inf(std::vector<Space> parts);
  static Space sum_1(std::vector<Space> parts);
  static Space quotient(const Space& parent, std::vector<Vec> kernel);

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  int dim() const;
  Kind kind() const;

  /// Facet functionals or vertex generators.
  const std::vector<Vec>& rows() const;
  double p() const;
  const std::vector<Space>& parts() const;
  const Space& parent() const;
  /// Kernel basis as matrix columns (parent coordinates).
  const Mat& kernel() const;
  /// Orthonormal basis of the kernel's orthogonal complement, as columns.
  /// Quotient coordinates c correspond to the class of complement() * c.
  const Mat& complement() const;

  /// True when the unit ball is a polytope (every part is Facet, Vertex,
  /// l_1 or l_inf).
  bool polytopal() const;
  std::string describe() const;

 private:
  struct Data;
  explicit Space(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Presentation descriptor, the parsed form of a space-spec document.
struct SpaceSpec {
  std::string kind;  // facet | vertex | lp | sum_inf | sum_1 | quotient
  int dim = 0;
  double p = 2.0;
  std::vector<Vec> rows;
  std::vector<SpaceSpec> parts;
  std::shared_ptr<SpaceSpec> parent;
  std::vector<Vec> kernel;
};

Space construct_space(const SpaceSpec& spec);

double norm(const Space& space, const Vec& x);
double dual_norm(const Space& space, const Functional& f);

/// Every extreme point of the unit ball (both signs). Throws NotPolytopal
/// for smooth balls and TooLarge past `max_count` points.
std::vector<Vec> ball_vertices(const Space& space, std::size_t max_count = 1u << 16);

/// Extreme points of the dual ball, one representative per +- pair, so
/// that ||x|| = max_k |psi_k(x)|. For smooth balls the set is a fine sample
/// and `exact` is false.
struct NormingSet {
  std::vector<Vec> functionals;
  bool exact = true;
};
NormingSet norming_functionals(const Space& space, std::size_t max_count = 1u << 14);

/// Extreme points of the symmetric polytope {y : |a_k . y| <= 1}, both
/// signs, found by enumerating nonsingular row bases.
std::vector<Vec> symmetric_polytope_vertices(std::span<const Vec> rows, int dim,
                                             std::size_t max_count = 1u << 16);

/// Radius of an emitted ball constraint: a fixed value or an LP variable.
struct Radius {
  int var = -1;
  double value = 1.0;
  static Radius variable(int v) { return Radius{v, 0.0}; }
  static Radius constant(double r) { return Radius{-1, r}; }
};

/// Adds rows expressing ||x|| <= r over the LP variables `x`. Returns false
/// when a smooth ball had to be replaced by an inscribed polytope.
bool emit_ball(lp::Problem& lp, const Space& space, std::span<const int> x, Radius r);
/// Same for the dual ball: ||f||_* <= r.
bool emit_dual_ball(lp::Problem& lp, const Space& space, std::span<const int> f, Radius r);

/// A dual-ball functional f with f(x) = ||x||.
Functional norming_functional(const Space& space, const Vec& x);

/// Dual norm with the vertex set cached: max_v |f(v)| over ball vertices
/// when the ball is a polytope with few vertices, dual_norm() otherwise.
class DualNormEvaluator {
 public:
  explicit DualNormEvaluator(const Space& space, std::size_t max_vertices = 4096);
  double operator()(const Vec& f) const;

 private:
  Space space_;
  Mat vertices_;  // rows, empty when not cached
};

struct LinearConstraint {
  Vec a;
  double b;  // a . x <= b
};

struct LinmaxResult {
  double value;
  Vec argmax;
  bool exact;
};

/// Maximizes f over the unit ball intersected with `constraints`.
/// Throws Infeasible when the region is empty.
LinmaxResult linmax(const Space& space, const Functional& objective,
                    std::span<const LinearConstraint> constraints = {});

}  // namespace bgeom
