#pragma once

#include <span>
#include <vector>

#include "bgeom/codification.hpp"
#include "bgeom/verdict.hpp"

namespace bgeom {

/// S(B_X, f, alpha) = {x in B_X : f(x) > 1 - alpha}, f of dual norm one.
struct SliceSpec {
  Functional f;
  double alpha = 0.5;
};

/// U(center; f_1..f_n; delta) = {x : |f_i(x - center)| < delta}.
struct WeakOpenSpec {
  Vec center;
  std::vector<Functional> functionals;
  double delta = 0.5;
};

/// A real value plus whether it is exact (polytopal LP) or approximate.
struct Estimate {
  double value = 0.0;
  bool exact = true;
  std::vector<Vec> witness;
};

/// sup ||x - y|| over a closed region B_X intersected with constraints,
/// as max over norming functionals of the region's width.
Estimate region_diameter(const Space& space, std::span<const LinearConstraint> constraints);

/// Throws EmptySlice / NotInDualBall / DimensionMismatch.
Estimate slice_diameter(const Space& space, const SliceSpec& slice);
/// Throws EmptyRegion when U meets no interior point of B_X.
Estimate weak_open_diameter(const Space& space, const WeakOpenSpec& u);
/// sup || sum_i l_i (x_i - y_i) || with x_i, y_i in slice i. Witness:
/// the two combinations, then x_1, y_1, x_2, y_2, ...
Estimate cc_slice_diameter(const Space& space, std::span<const SliceSpec> slices, std::span<const double> weights);

/// ||Id + f (x) y|| through the adjoint: max over dual-ball extreme points
/// psi of ||psi + psi(y) f||_*. Euclidean spaces use the singular value.
Estimate rank1_operator_norm(const Space& space, const Functional& f, const Vec& y);
/// (1 + ||f|| ||y||) - ||Id + f (x) y||.
Estimate daugavet_defect_rank1(const Space& space, const Functional& f, const Vec& y);

struct HullResult {
  bool member = false;
  double distance = 0.0;
  Vec weights;
  bool exact = true;
};
/// Distance from z to conv(generators) in the norm of the space.
HullResult hull_membership(const Space& space, const Vec& z, std::span<const Vec> generators, double tol);

// ---- Grids -------------------------------------------------------------

/// Dual-ball extreme points (capped) plus normalized low-discrepancy
/// directions, all of dual norm one.
std::vector<Functional> functional_grid(const Space& space, std::size_t budget);
/// Unit vectors: ball vertices (capped) then normalized directions.
std::vector<Vec> unit_grid(const Space& space, std::size_t budget);
/// Interior points: 0.9 * unit_grid plus Halton points pushed into 0.9 B_X.
std::vector<Vec> interior_grid(const Space& space, std::size_t budget);

// ---- Hull characterizations -------------------------------------------

struct HullOptions {
  double hull_tol = 0.1;
  std::size_t budget = 8;
  /// Overrides the default test grid: z points for ldp, unit x for dp/dld2p.
  std::vector<Vec> grid;
  /// Extra z points for dp (x itself is always tested).
  std::vector<Vec> z_grid;
  /// Also report the smallest slice diameter over the functional grid.
  bool dual_mode = false;
};

/// Distance from z to the closed hull of midpoints (x+y)/2, x,y in B_X,
/// ||x - y|| > delta - eps. Exact on polytopal balls (column generation).
Estimate ldp_hull_distance(const Space& space, const Vec& z, double delta, double eps);
/// The ldp distance plus a convex combination of the generated pairs
/// (x_k + y_k)/2 realizing it; empty when no pair is admissible.
struct LdpDecomposition {
  double distance = 0.0;
  bool exact = true;
  std::vector<double> weights;
  std::vector<Vec> xs, ys;
};
LdpDecomposition ldp_decomposition(const Space& space, const Vec& z, double delta, double eps);
/// Distance from z to the closed hull of {y in ||x|| B_X : ||x - y|| > 2||x|| - eps}.
Estimate dp_hull_distance(const Space& space, const Vec& x, const Vec& z, double eps);

/// Defect = largest hull distance over the z grid; pass iff <= hull_tol.
Verdict ldp_check(const Space& space, double delta, double eps, const HullOptions& opt = {});
/// Pairs (x, z) with x unit and z in {x} plus the z grid scaled inside ||x|| B_X.
Verdict dp_check(const Space& space, double eps, const HullOptions& opt = {});
/// Unit x tested against its own far-point hull.
Verdict dld2p_check(const Space& space, double eps, const HullOptions& opt = {});

struct Sd2pOptions {
  int m_max = 2;
  std::size_t max_lps = 4000;
  /// LP budget when the ball is smooth (each LP carries inscribed polytopes).
  std::size_t smooth_lps = 120;
};
/// Searches y_ij in B_X, uniform alpha_j = 1/m (m <= m_max), minimizing
/// max(max_i ||x_i - sum_j alpha_j y_ij||, max_j (1 - ||mean_i y_ij||)).
/// The identity decomposition y_i1 = x_i is always scored. Pass iff that
/// defect <= eps.
Verdict sd2p_check(const Space& space, std::span<const Vec> xs, double eps, const Sd2pOptions& opt = {});

struct Dd2pInstance {
  WeakOpenSpec u;
  Vec x;  // a point of U in the ball
};
/// sup ||x - y|| over y in U intersected with B_X.
Estimate far_point_in_region(const Space& space, const Vec& x, std::span<const LinearConstraint> region);
/// Defect = max over instances of 2||x|| - sup_{y in U} ||x - y||; pass iff <= eps.
Verdict dd2p_check(const Space& space, double eps, std::span<const Dd2pInstance> instances);
/// Unit x from unit_grid, U centered at x over the first `k` grid functionals.
std::vector<Dd2pInstance> default_dd2p_instances(const Space& space, std::size_t budget, double delta, std::size_t k);

// ---- Octahedrality -----------------------------------------------------

/// Grids aligned so that OH pass implies WOH pass implies LOH pass:
/// families are symmetric, the LOH vectors are their union, the WOH
/// functionals norm every family vector, and the LOH scalars contain
/// 0 and +-1/t for every WOH t.
struct OctaGrid {
  std::vector<std::vector<Vec>> families;
  std::vector<Vec> y_candidates;
  std::vector<double> t_grid;
  std::vector<Functional> f_grid;

  std::vector<Vec> loh_vectors() const;
  std::vector<double> loh_scalars() const;
};

/// Families: unit vectors sum_j c_j b_j, c_j in {-level..level}/level, of
/// each subspace basis. y candidates: +-e_i, ball vertices and directions.
OctaGrid aligned_octa_grid(const Space& space, const std::vector<std::vector<Vec>>& subspace_bases, int level = 1,
                           std::size_t y_budget = 64, std::vector<double> t_grid = {0.25, 0.5, 1.0, 2.0, 4.0});

/// min_y max_i (1 - ||x_i + y|| / 2) per family, worst family; threshold eps/2.
Verdict oh_check(const Space& space, double eps, const OctaGrid& grid);
/// min_y max_{i,t} (1 - ||x_i + t y|| / (|f(x_i)| + t)); threshold eps.
Verdict woh_direct_check(const Space& space, double eps, const OctaGrid& grid);
/// min_y max_s (1 - ||s x + y|| / (|s| ||x|| + 1)); threshold eps.
Verdict loh_check(const Space& space, double eps, const OctaGrid& grid);

// ---- Szlenk ------------------------------------------------------------

/// Box neighborhoods |<q - p, v_i>| < delta over the first k distinct
/// (up to scalars) nonzero predual vectors of the enumeration.
struct SzlenkNbhd {
  int k = 2;
  double delta = 0.1;
};

/// Indices of cloud points whose neighborhood has dual-norm diameter >= eps.
/// Predual test vectors are realized through `code`; diameters use the dual
/// norm of code.space().
std::vector<std::size_t> szlenk_derivative(std::span<const Vec> cloud, double eps, SzlenkNbhd nbhd,
                                           const SeminormCode& code);

/// Retained fraction of the dual-ball extreme-point cloud (capped at
/// `cloud_budget`) under the derivative at eps = 2 - tol, with boxes in
/// T_mu coordinates over the first `level` enumerated vectors. Defect is
/// one minus the fraction.
Verdict woh_szlenk_check(const SeminormCode& code, SzlenkNbhd nbhd, std::size_t cloud_budget = 4096, double tol = 1e-6);

}  // namespace bgeom
