#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bgeom/geometry.hpp"

namespace bgeom {

struct OracleReport {
  double estimate = 0.0;
  double half_width = 0.0;
  std::size_t samples = 0;  // accepted points
};

using RegionPredicate = std::function<bool(const Vec&)>;

/// Largest distance between accepted Halton draws from the ball (interior
/// draws and their radial projections to the sphere). Never exceeds the
/// true diameter. half_width extrapolates the increments over the nested
/// prefixes N/2 .. N/16 assuming an N^(-1/dim) error decay. Throws
/// RegionTooThin when nothing is accepted.
OracleReport sample_diameter(const Space& space, const RegionPredicate& in_region, std::size_t samples);

RegionPredicate slice_predicate(const SliceSpec& s);
RegionPredicate weak_open_predicate(const WeakOpenSpec& u);

/// sup || sum_i l_i (x_i - y_i) || with x_i, y_i drawn from slice i.
OracleReport sample_cc_diameter(const Space& space, std::span<const SliceSpec> slices, std::span<const double> weights,
                                std::size_t samples);

/// ||Id + f (x) y|| as max over ball vertices v of ||v + f(v) y||; smooth
/// balls fall back to a direction sample unless `exact` is set, which
/// throws NotPolytopal.
double rank1_norm_oracle(const Space& space, const Functional& f, const Vec& y, bool exact = false);

/// Hull distances against explicitly sampled generators. The generator
/// sets are subsets of the true ones, so these never undershoot.
OracleReport ldp_hull_oracle(const Space& space, const Vec& z, double delta, double eps, std::size_t points);
OracleReport dp_hull_oracle(const Space& space, const Vec& x, const Vec& z, double eps, std::size_t points);

/// |value - estimate| <= band + half_width.
bool crossvalidate(double value, const OracleReport& oracle, double band);
bool crossvalidate(const Estimate& e, const OracleReport& oracle, double band);
bool crossvalidate(const Verdict& v, const OracleReport& oracle, double band);

/// One exact diameter against its sampling oracle.
struct CrossvalRow {
  std::string region;  // slice, weak-open or cc
  Estimate exact;
  OracleReport oracle;
  bool agree = false;
};

/// Standard regions of a space: slices at alpha 0.3 by two norming
/// functionals (the first two normalized rows of a Facet space), the weak
/// open set of radius 0.3 around half the first ball vertex cut by both,
/// and their cc combination with weights 1/2, 1/2. A region the sampler
/// cannot hit is reported with zero samples and agree = false.
std::vector<CrossvalRow> crossval_regions(const Space& space, std::size_t samples, double band);

}  // namespace bgeom
